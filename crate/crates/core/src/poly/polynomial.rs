use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::coefficient::Coefficient;
use super::DEGREE_CAP;
use crate::error::{Error, Result};

/// Exponent vector ordered by graded-lex: total degree first, then
/// lexicographically with `x1` most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn product(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact coefficients in Q(sqrt5).
///
/// Immutable by convention: every operation returns a new value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Coefficient) -> Self {
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Coefficient::one())
    }

    /// The coordinate `x_{i+1}` (zero-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Coefficient::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: Coefficient) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps), c);
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Coefficient)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(Monomial(e), &c);
        }
        p
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear_form(coeffs: &[Coefficient]) -> Self {
        let n = coeffs.len();
        Polynomial::from_terms(
            n,
            coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e, c.clone())
            }),
        )
    }

    /// Power sum `x1^k + ... + xn^k`.
    pub fn power_sum(n: usize, k: u32) -> Self {
        Polynomial::from_terms(
            n,
            (0..n).map(|i| {
                let mut e = vec![0; n];
                e[i] = k;
                (e, Coefficient::one())
            }),
        )
    }

    /// Elementary symmetric polynomial `e_k` in `n` variables.
    pub fn elementary(n: usize, k: usize) -> Self {
        fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, Coefficient)>) {
            if k == 0 {
                out.push((cur.clone(), Coefficient::one()));
                return;
            }
            for i in start..n {
                if n - i < k {
                    break;
                }
                cur[i] = 1;
                rec(n, k - 1, i + 1, cur, out);
                cur[i] = 0;
            }
        }
        let mut out = Vec::new();
        rec(n, k, 0, &mut vec![0; n], &mut out);
        Polynomial::from_terms(n, out)
    }

    fn add_term(&mut self, m: Monomial, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Coefficient {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_default()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map(Monomial::degree).unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Variables that occur in at least one term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.degree_in(i) > 0).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(Coefficient::is_rational)
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn try_mul(&self, rhs: &Polynomial) -> Result<Polynomial> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Ok(Polynomial::zero(self.nvars));
        }
        let d = self.degree() + rhs.degree();
        if d > DEGREE_CAP {
            return Err(Error::DegreeCap(d));
        }
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.product(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn try_pow(&self, e: u32) -> Result<Polynomial> {
        let d = self.degree().saturating_mul(e);
        if d > DEGREE_CAP {
            return Err(Error::DegreeCap(d));
        }
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Floating-point evaluation.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: x.len() });
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| c.to_f64() * m.0.iter().zip(x).map(|(&e, &xi)| xi.powi(e as i32)).product::<f64>())
            .sum())
    }

    /// Exact evaluation at a point with coordinates in Q(sqrt5).
    pub fn eval_exact(&self, x: &[Coefficient]) -> Result<Coefficient> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: x.len() });
        }
        let mut acc = Coefficient::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (&e, xi) in m.0.iter().zip(x) {
                if e > 0 {
                    t = &t * &xi.pow(e);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), &(c * &Coefficient::from_int(e as i64)));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    /// Substitutes `gs[i]` for the `i`-th variable.
    pub fn compose(&self, gs: &[Polynomial]) -> Result<Polynomial> {
        if gs.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, got: gs.len() });
        }
        let target = match gs.first() {
            Some(g) => g.nvars,
            None => {
                // constant outer polynomial with no variables
                return Ok(Polynomial::constant(0, self.coefficient(&[])));
            }
        };
        if let Some(g) = gs.iter().find(|g| g.nvars != target) {
            return Err(Error::DimensionMismatch { expected: target, got: g.nvars });
        }
        let gdeg: Vec<u32> = gs.iter().map(Polynomial::degree).collect();
        for m in self.terms.keys() {
            let bound: u32 = m.0.iter().zip(&gdeg).map(|(e, d)| e * d).sum();
            if bound > DEGREE_CAP {
                return Err(Error::DegreeCap(bound));
            }
        }
        // cache of g_i^e, filled on demand
        let mut powers: Vec<Vec<Polynomial>> = gs.iter().map(|g| vec![Polynomial::one(target), g.clone()]).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let k = powers[i].len() as u32;
                    let next = if gs[i].is_linear_form() {
                        gs[i].linear_power(k)?
                    } else {
                        powers[i].last().unwrap().try_mul(&gs[i])?
                    };
                    powers[i].push(next);
                }
                t = t.try_mul(&powers[i][e as usize])?;
            }
            out += &t;
        }
        Ok(out)
    }

    /// Homogeneous of degree exactly 1.
    pub fn is_linear_form(&self) -> bool {
        !self.terms.is_empty() && self.terms.keys().all(|m| m.degree() == 1)
    }

    /// `e`-th power of a linear form by multinomial expansion.
    pub fn linear_power(&self, e: u32) -> Result<Polynomial> {
        assert!(self.is_linear_form(), "linear_power needs a linear form");
        if e > DEGREE_CAP {
            return Err(Error::DegreeCap(e));
        }
        let vars: Vec<(usize, Coefficient)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.0.iter().position(|&x| x == 1).unwrap(), c.clone()))
            .collect();
        let pows: Vec<Vec<Coefficient>> = vars
            .iter()
            .map(|(_, c)| {
                let mut v = vec![Coefficient::one()];
                for _ in 0..e {
                    let next = v.last().unwrap() * c;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut fact = vec![BigInt::one()];
        for i in 1..=e as u64 {
            let next = fact.last().unwrap() * BigInt::from(i);
            fact.push(next);
        }
        let mut out = Polynomial::zero(self.nvars);
        let mut a = vec![0u32; vars.len()];
        fn rec(
            slot: usize,
            rest: u32,
            a: &mut Vec<u32>,
            vars: &[(usize, Coefficient)],
            pows: &[Vec<Coefficient>],
            fact: &[BigInt],
            e: u32,
            out: &mut Polynomial,
        ) {
            if slot + 1 == vars.len() {
                a[slot] = rest;
                let denom: BigInt = a.iter().map(|&k| fact[k as usize].clone()).product();
                let mut c = Coefficient::rational(BigRational::new(fact[e as usize].clone(), denom));
                let mut exps = vec![0; out.nvars];
                for (s, &k) in a.iter().enumerate() {
                    c *= &pows[s][k as usize];
                    exps[vars[s].0] = k;
                }
                out.add_term(Monomial(exps), &c);
                return;
            }
            for k in (0..=rest).rev() {
                a[slot] = k;
                rec(slot + 1, rest - k, a, vars, pows, fact, e, out);
            }
        }
        rec(0, e, &mut a, &vars, &pows, &fact, e, &mut out);
        Ok(out)
    }

    /// `self += c * other` in place.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Coefficient) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), &(v * c));
        }
    }

    /// `p(M x)` for a matrix given by rows.
    pub fn linear_substitute(&self, rows: &[Vec<Coefficient>]) -> Result<Polynomial> {
        let forms: Vec<Polynomial> = rows.iter().map(|r| Polynomial::linear_form(r)).collect();
        self.compose(&forms)
    }

    /// Reinterprets the polynomial in a larger variable space.
    pub fn extend_vars(&self, nvars: usize) -> Polynomial {
        assert!(nvars >= self.nvars);
        Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(nvars, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Drops trailing unused variables down to `nvars`.
    pub fn truncate_vars(&self, nvars: usize) -> Option<Polynomial> {
        if self.terms.keys().any(|m| m.0[nvars..].iter().any(|&e| e > 0)) {
            return None;
        }
        Some(Polynomial {
            nvars,
            terms: self.terms.iter().map(|(m, c)| (Monomial(m.0[..nvars].to_vec()), c.clone())).collect(),
        })
    }

    /// Canonical text with a custom variable namer.
    pub fn to_string_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_rational() && c.signum() < 0;
            let mag = if neg { -c } else { c.clone() };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { name(i) } else { format!("{}^{}", name(i), e) })
                .collect();
            if vars.is_empty() {
                s.push_str(&mag.to_string());
            } else if mag.is_one() {
                s.push_str(&vars.join("*"));
            } else {
                s.push_str(&format!("{}*{}", mag, vars.join("*")));
            }
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(|i| format!("x{}", i + 1)))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

/// Panics when the product exceeds the degree cap; see [`Polynomial::try_mul`].
impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial product exceeds degree cap")
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), &-c);
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn eval_simple() {
        let p = &(&x(2, 0) * &x(2, 0)) + &(&x(2, 1) * &x(2, 1));
        assert_eq!(p.eval(&[3.0, 4.0]).unwrap(), 25.0);
        assert_eq!(Polynomial::power_sum(4, 6).eval(&[1.0, 0.0, 0.0, 0.0]).unwrap(), 1.0);
        assert!(matches!(p.eval(&[1.0]), Err(Error::DimensionMismatch { expected: 2, got: 1 })));
    }

    #[test]
    fn f4_raw_sum_at_unit_vector() {
        let n = 4;
        let mut p = Polynomial::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                let plus = &x(n, i) + &x(n, j);
                let minus = &x(n, i) - &x(n, j);
                p = &p + &(&plus.try_pow(6).unwrap() + &minus.try_pow(6).unwrap());
            }
        }
        assert_eq!(p.eval(&[1.0, 0.0, 0.0, 0.0]).unwrap(), 6.0);
    }

    #[test]
    fn gradient_of_sum_of_squares() {
        let p = &(&x(2, 0) * &x(2, 0)) + &(&x(2, 1) * &x(2, 1));
        let g = p.gradient();
        assert_eq!(g[0], x(2, 0).scale(&Coefficient::from_int(2)));
        assert_eq!(g[1], x(2, 1).scale(&Coefficient::from_int(2)));
    }

    #[test]
    fn gradient_of_s4_at_d5_counterexample_point() {
        let s4 = Polynomial::power_sum(5, 4);
        let p = [1.0, 1.0, 1.0, 1.0, 0.0];
        let g: Vec<f64> = s4.gradient().iter().map(|d| d.eval(&p).unwrap()).collect();
        assert_eq!(g, vec![4.0, 4.0, 4.0, 4.0, 0.0]);
    }

    #[test]
    fn compose_examples() {
        let f = Polynomial::var(1, 0).try_pow(2).unwrap();
        let g = &x(2, 0) + &x(2, 1);
        let expect = Polynomial::from_terms(
            2,
            vec![(vec![2, 0], 1.into()), (vec![1, 1], 2.into()), (vec![0, 2], 1.into())],
        );
        assert_eq!(f.compose(&[g.clone()]).unwrap(), expect);
        assert_eq!(Polynomial::var(1, 0).compose(&[g.clone()]).unwrap(), g);
        assert!(matches!(f.compose(&[]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn degree_cap_is_enforced() {
        let p = x(1, 0).try_pow(40).unwrap();
        assert!(matches!(p.try_mul(&p), Err(Error::DegreeCap(80))));
        let f = Polynomial::var(1, 0).try_pow(5).unwrap();
        assert!(matches!(f.compose(&[x(1, 0).try_pow(13).unwrap()]), Err(Error::DegreeCap(65))));
    }

    #[test]
    fn display_is_graded_lex_descending() {
        let p = Polynomial::from_terms(
            2,
            vec![(vec![0, 0], (-3).into()), (vec![0, 2], 1.into()), (vec![2, 0], 2.into()), (vec![1, 0], (-1).into())],
        );
        assert_eq!(p.to_string(), "2*x1^2 + x2^2 - x1 - 3");
        assert_eq!(Polynomial::zero(3).to_string(), "0");
    }

    #[test]
    fn elementary_counts() {
        assert_eq!(Polynomial::elementary(5, 2).num_terms(), 10);
        assert_eq!(Polynomial::elementary(4, 4).eval(&[1.0, 2.0, 3.0, 4.0]).unwrap(), 24.0);
        assert_eq!(Polynomial::elementary(3, 0), Polynomial::one(3));
    }

    #[test]
    fn linear_power_matches_repeated_products() {
        let l = Polynomial::linear_form(&[Coefficient::from_frac(1, 2), Coefficient::zero(), Coefficient::phi()]);
        let mut acc = Polynomial::one(3);
        for e in 0..7 {
            assert_eq!(l.linear_power(e).unwrap(), acc);
            acc = &acc * &l;
        }
    }
}

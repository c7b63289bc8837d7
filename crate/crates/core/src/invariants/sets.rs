use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arrangement::{jacobian_rank, jacobian_rank_exact, Arrangement};
use crate::coxeter::{reynolds_over, Family, GroupDescriptor, RootSystem};
use crate::error::{Error, Result};
use crate::poly::{Coefficient, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Power sums for A and B (`s_{2i}` for B); orbit averages of coordinate
    /// powers for H3; `s_2` and `Re/Im (x + iy)^m` for I2(m).
    PowerSum,
    /// Elementary symmetric polynomials (in the squares for B).
    Elementary,
    /// Even power sums with `e_n` inserted at degree `n`.
    PaperD,
    /// `s_2`, the normalized sextic `g(x_1^2, ..., x_4^2)`, then orbit averages.
    F4,
    /// `s_2`, the average of `x_1^12`, then orbit averages.
    H4Surrogate,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::PowerSum => "powersum",
            Variant::Elementary => "elementary",
            Variant::PaperD => "paper-D",
            Variant::F4 => "F4",
            Variant::H4Surrogate => "H4-surrogate",
        }
    }

    pub fn default_for(g: &GroupDescriptor) -> Result<Self> {
        match g.family {
            Family::A | Family::B | Family::I2 | Family::H3 => Ok(Variant::PowerSum),
            Family::D => Ok(Variant::PaperD),
            Family::F4 => Ok(Variant::F4),
            Family::H4 => Ok(Variant::H4Surrogate),
            Family::E6 | Family::E7 | Family::E8 => {
                Err(Error::Unsupported { group: g.to_string(), what: "basic invariants".into() })
            }
        }
    }

    fn compatible(self, g: &GroupDescriptor) -> bool {
        matches!(
            (g.family, self),
            (Family::A | Family::B, Variant::PowerSum | Variant::Elementary)
                | (Family::D, Variant::PaperD)
                | (Family::I2 | Family::H3, Variant::PowerSum)
                | (Family::F4, Variant::F4)
                | (Family::H4, Variant::H4Surrogate)
        )
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "powersum" | "power-sum" => Ok(Variant::PowerSum),
            "elementary" => Ok(Variant::Elementary),
            "paper-d" | "d" => Ok(Variant::PaperD),
            "f4" => Ok(Variant::F4),
            "h4-surrogate" | "h4" => Ok(Variant::H4Surrogate),
            _ => Err(Error::IncompatibleVariant { group: "any group".into(), variant: s.to_string() }),
        }
    }
}

/// Homogeneous basic invariants `π_1, ..., π_m` in ascending degree. For A
/// the list starts with `s_1` since the action on `R^{n+1}` is not essential.
/// A prefix (`m` below the full count) is allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct BasicInvariantSet {
    pub group: GroupDescriptor,
    pub variant: Variant,
    pub polys: Vec<Polynomial>,
    /// 1-based `k` with `d_k = d_{k+1}`.
    pub degree_ties: Vec<usize>,
}

impl BasicInvariantSet {
    fn assemble(group: &GroupDescriptor, variant: Variant, polys: Vec<Polynomial>) -> Self {
        let degs: Vec<u32> = polys.iter().map(Polynomial::degree).collect();
        let degree_ties = (1..degs.len()).filter(|&k| degs[k - 1] == degs[k]).collect();
        BasicInvariantSet { group: group.clone(), variant, polys, degree_ties }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.group.ambient_dim
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.polys.iter().map(Polynomial::degree).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.len() == self.group.ambient_degrees().len()
    }

    /// Invariance under the simple reflections: exact over Q(√5), and by
    /// evaluation at sample points for I2(m).
    pub fn is_invariant(&self, p: &Polynomial) -> Result<bool> {
        if self.group.family == Family::I2 {
            let rs = RootSystem::<f64>::numeric(&self.group)?;
            let pts = [[0.37, -1.21], [1.9, 0.44], [-0.71, 0.05]];
            for s in rs.simple_reflection_matrices() {
                for x in &pts {
                    let sx: Vec<f64> = s.iter().map(|r| r[0] * x[0] + r[1] * x[1]).collect();
                    let (a, b) = (p.eval(x)?, p.eval(&sx)?);
                    if (a - b).abs() > 1e-9 * (1.0 + a.abs()) {
                        return Ok(false);
                    }
                }
            }
            return Ok(true);
        }
        let rs = RootSystem::exact(&self.group)?;
        crate::coxeter::is_invariant(p, &rs.simple_reflection_matrices())
    }

    /// Checks degrees, homogeneity, invariance and algebraic independence
    /// (full Jacobian rank at a point off every mirror).
    pub fn verify(&self) -> Result<()> {
        let expected = self.group.ambient_degrees();
        let degs = self.degrees();
        if degs.len() > expected.len() || degs[..] != expected[..degs.len()] {
            return Err(Error::Precondition(format!("degrees {degs:?} do not match {expected:?}")));
        }
        for (i, p) in self.polys.iter().enumerate() {
            if !p.is_homogeneous() || p.nvars() != self.dim() {
                return Err(Error::Precondition(format!("π_{} is not a homogeneous form on R^{}", i + 1, self.dim())));
            }
            if !self.is_invariant(p)? {
                return Err(Error::NotInvariant(format!("π_{} for {}", i + 1, self.group)));
            }
        }
        let rank = if self.group.family == Family::I2 {
            jacobian_rank(&self.polys, &[0.3711, 0.8123], self.len() - 1)?
        } else {
            jacobian_rank_exact(&self.polys, &generic_point(&self.group)?, self.len() - 1)?
        };
        if rank != self.len() {
            return Err(Error::Precondition(format!("Jacobian rank {rank} < {}: not independent", self.len())));
        }
        Ok(())
    }
}

impl fmt::Display for BasicInvariantSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.polys.iter().enumerate() {
            writeln!(f, "pi{} = {}", i + 1, p)?;
        }
        Ok(())
    }
}

/// A rational point on no reflection hyperplane of `g`.
fn generic_point(g: &GroupDescriptor) -> Result<Vec<Coefficient>> {
    const PRIMES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let arr = Arrangement::new(g)?;
    let n = arr.dim();
    for shift in 0..50 {
        let p: Vec<Coefficient> =
            (0..n).map(|i| Coefficient::from_frac(PRIMES[i % 12] + shift, PRIMES[(i + 3) % 12] + 2 * (i / 12) as i64)).collect();
        if arr.stratum_dim_exact(&p)? == n {
            return Ok(p);
        }
    }
    Err(Error::Precondition(format!("no generic point found for {g}")))
}

fn squares(n: usize) -> Vec<Polynomial> {
    (0..n).map(|i| Polynomial::var(n, i).try_pow(2).expect("degree 2")).collect()
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `Re (x + iy)^m` for even `m`, `Im (x + iy)^m` for odd `m`. The mirrors of
/// I2(m) sit at angles `π/2 + jπ/m`, and this is the one of the two that is
/// fixed by them.
fn dihedral_invariant(m: u32) -> Polynomial {
    let parity = if m % 2 == 0 { 0 } else { 1 };
    Polynomial::from_terms(
        2,
        (0..=m).filter(|j| j % 2 == parity).map(|j| {
            let sign = if (j / 2) % 2 == 0 { 1 } else { -1 };
            (vec![m - j, j], Coefficient::from_int(sign * binomial(m, j)))
        }),
    )
}

/// The F4 sextic `g(x_1^2, ..., x_4^2)` with `g = 5 s_1 s_2 - 4 s_3`, equal to
/// `1/6 Σ_{i<j} (x_i + x_j)^6 + (x_i - x_j)^6`. It takes the value 1 at
/// `e_1` and 3/2 at `(e_1 + e_2)/√2`.
pub fn f4_pi2() -> Polynomial {
    let s = |k| Polynomial::power_sum(4, k);
    let g = &(&s(1) * &s(2)).scale(&Coefficient::from_int(5)) - &s(3).scale(&Coefficient::from_int(4));
    g.compose(&squares(4)).expect("degree 6")
}

type Cache = Mutex<HashMap<Family, Vec<Polynomial>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exponent vectors with even entries and total degree `d`, `x_1^d` first.
fn even_monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = rest;
            out.push(cur.clone());
            return;
        }
        for e in (0..=rest / 2).rev() {
            cur[i] = 2 * e;
            rec(i + 1, rest - 2 * e, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; n], &mut out);
    out
}

/// The first `count` invariants of F4, H3 or H4. Beyond the fixed leading
/// ones, `π_i` is the orbit average of the first even monomial of degree
/// `d_i` that raises the exact Jacobian rank at a generic point.
fn exceptional(g: &GroupDescriptor, count: usize) -> Result<Vec<Polynomial>> {
    let mut guard = cache().lock().unwrap_or_else(|e| e.into_inner());
    let have = guard.entry(g.family).or_default();
    if have.len() >= count {
        return Ok(have[..count].to_vec());
    }
    let n = g.ambient_dim;
    let degs = g.ambient_degrees();
    let roots = RootSystem::exact(g)?;
    let point = generic_point(g)?;
    while have.len() < count {
        let i = have.len();
        let next = match (g.family, i) {
            (_, 0) => Polynomial::power_sum(n, 2),
            (Family::F4, 1) => f4_pi2(),
            (Family::H4, 1) => h4_surrogate_with(&roots)?,
            _ => {
                let mut found = None;
                for e in even_monomials(n, degs[i]) {
                    let cand = reynolds_over(&roots, &Polynomial::monomial(n, e, Coefficient::one()))?;
                    if cand.is_zero() {
                        continue;
                    }
                    let mut trial = have.clone();
                    trial.push(cand.clone());
                    if jacobian_rank_exact(&trial, &point, i)? == i + 1 {
                        found = Some(cand);
                        break;
                    }
                }
                found.ok_or_else(|| Error::Precondition(format!("no invariant of degree {} found for {g}", degs[i])))?
            }
        };
        have.push(next);
    }
    Ok(have[..count].to_vec())
}

fn h4_surrogate_with(roots: &RootSystem<Coefficient>) -> Result<Polynomial> {
    reynolds_over(roots, &Polynomial::monomial(4, vec![12, 0, 0, 0], Coefficient::one()))
}

/// The H4 degree-12 invariant used in place of the tabulated `π_2`: the
/// orbit average of `x_1^12`.
pub fn h4_surrogate() -> Result<Polynomial> {
    Ok(exceptional(&GroupDescriptor::new(Family::H4, 0)?, 2)?.pop().expect("two invariants"))
}

/// The full basic set of the named variant.
pub fn basic_invariants(g: &GroupDescriptor, variant: Variant) -> Result<BasicInvariantSet> {
    basic_invariants_prefix(g, variant, g.ambient_degrees().len())
}

/// `π_1, ..., π_count` only. For H4 this avoids the degree 20 and 30
/// averages when a sparse problem does not need them.
pub fn basic_invariants_prefix(g: &GroupDescriptor, variant: Variant, count: usize) -> Result<BasicInvariantSet> {
    if !variant.compatible(g) {
        return Err(Error::IncompatibleVariant { group: g.to_string(), variant: variant.name().to_string() });
    }
    let total = g.ambient_degrees().len();
    if count == 0 || count > total {
        return Err(Error::InvalidSparsity { k: count, n: total });
    }
    let n = g.ambient_dim;
    let mut polys: Vec<Polynomial> = match (g.family, variant) {
        (Family::A, Variant::PowerSum) => (1..=n as u32).map(|k| Polynomial::power_sum(n, k)).collect(),
        (Family::A, Variant::Elementary) => (1..=n).map(|k| Polynomial::elementary(n, k)).collect(),
        (Family::B, Variant::PowerSum) => (1..=n as u32).map(|k| Polynomial::power_sum(n, 2 * k)).collect(),
        (Family::B, Variant::Elementary) => {
            let sq = squares(n);
            (1..=n).map(|k| Polynomial::elementary(n, k).compose(&sq)).collect::<Result<_>>()?
        }
        (Family::D, Variant::PaperD) => {
            let half = n / 2;
            (1..=n)
                .map(|k| match k {
                    k if k <= half => Polynomial::power_sum(n, 2 * k as u32),
                    k if k == half + 1 => Polynomial::elementary(n, n),
                    k => Polynomial::power_sum(n, 2 * k as u32 - 2),
                })
                .collect()
        }
        (Family::I2, Variant::PowerSum) => vec![Polynomial::power_sum(2, 2), dihedral_invariant(g.param as u32)],
        _ => exceptional(g, count)?,
    };
    polys.truncate(count);
    Ok(BasicInvariantSet::assemble(g, variant, polys))
}

/// D_n with `π_{n/2+1} = α s_n + β e_n` (n even, `β ≠ 0`). The `PaperD` set
/// is `(α, β) = (0, 1)`; other choices give a different but equally valid
/// basic set, which matters for `k = n/2`.
pub fn basic_invariants_d_tie(n: usize, alpha: &Coefficient, beta: &Coefficient) -> Result<BasicInvariantSet> {
    let g = GroupDescriptor::d(n)?;
    let mut set = basic_invariants(&g, Variant::PaperD)?;
    if beta.is_zero() {
        return Err(Error::Precondition("β must be nonzero".into()));
    }
    if n % 2 == 1 {
        if alpha.is_zero() && beta.is_one() {
            return Ok(set);
        }
        return Err(Error::Precondition(format!("D{n} has no degree tie to resolve")));
    }
    let mixed = &Polynomial::power_sum(n, n as u32).scale(alpha) + &Polynomial::elementary(n, n).scale(beta);
    set.polys[n / 2] = mixed;
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_in;

    fn g(s: &str) -> GroupDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn classical_sets() {
        let b3 = basic_invariants(&g("B3"), Variant::PowerSum).unwrap();
        assert_eq!(b3.polys, (1..=3).map(|k| Polynomial::power_sum(3, 2 * k)).collect::<Vec<_>>());
        let d4 = basic_invariants(&g("D4"), Variant::PaperD).unwrap();
        assert_eq!(d4.degrees(), vec![2, 4, 4, 6]);
        assert_eq!(d4.polys[2], Polynomial::elementary(4, 4));
        assert_eq!(d4.polys[1], Polynomial::power_sum(4, 4));
        assert_eq!(d4.degree_ties, vec![2]);
        for s in ["A1", "A3", "B2", "B4", "D2", "D3", "D4", "D5", "D6", "I2(3)", "I2(6)", "I2(7)"] {
            let gg = g(s);
            basic_invariants(&gg, Variant::default_for(&gg).unwrap()).unwrap().verify().unwrap();
        }
        basic_invariants(&g("A3"), Variant::Elementary).unwrap().verify().unwrap();
        basic_invariants(&g("B3"), Variant::Elementary).unwrap().verify().unwrap();
        assert!(basic_invariants(&g("B3"), Variant::PaperD).is_err());
        assert!(Variant::default_for(&g("E6")).is_err());
    }

    #[test]
    fn d_tie_choice() {
        let a = Coefficient::from_int(2);
        let b = Coefficient::from_int(-1);
        let set = basic_invariants_d_tie(6, &a, &b).unwrap();
        set.verify().unwrap();
        assert!(basic_invariants_d_tie(6, &a, &Coefficient::zero()).is_err());
        assert!(basic_invariants_d_tie(5, &a, &b).is_err());
    }

    #[test]
    fn f4_sextic() {
        let p = f4_pi2();
        let x = parse_in("(x1+x2)^6 + (x1-x2)^6 + (x1+x3)^6 + (x1-x3)^6 + (x1+x4)^6 + (x1-x4)^6 + (x2+x3)^6 + (x2-x3)^6 + (x2+x4)^6 + (x2-x4)^6 + (x3+x4)^6 + (x3-x4)^6", "x", 4).unwrap();
        assert_eq!(p.scale(&Coefficient::from_int(6)), x);
        assert_eq!(p.eval(&[1.0, 0.0, 0.0, 0.0]).unwrap(), 1.0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((p.eval(&[h, h, 0.0, 0.0]).unwrap() - 1.5).abs() < 1e-14);
        let set = basic_invariants(&g("F4"), Variant::F4).unwrap();
        assert_eq!(set.degrees(), vec![2, 6, 8, 12]);
        set.verify().unwrap();
    }

    #[test]
    fn h3_set() {
        let set = basic_invariants(&g("H3"), Variant::PowerSum).unwrap();
        assert_eq!(set.degrees(), vec![2, 6, 10]);
        set.verify().unwrap();
    }

    #[test]
    fn h4_surrogate_spans_degree_twelve() {
        let set = basic_invariants_prefix(&g("H4"), Variant::H4Surrogate, 2).unwrap();
        set.verify().unwrap();
        let roots = RootSystem::exact(&g("H4")).unwrap();
        let r2 = reynolds_over(&roots, &Polynomial::monomial(4, vec![0, 12, 0, 0], Coefficient::one())).unwrap();
        let s6 = Polynomial::power_sum(4, 2).try_pow(6).unwrap();
        // the degree-12 invariants form a 2-dimensional space
        let pts: Vec<Vec<Coefficient>> = [[1, 0, 0, 0], [1, 1, 0, 0], [2, 1, 3, 0], [1, 2, 3, 5]]
            .iter()
            .map(|p| p.iter().map(|&v| Coefficient::from_int(v)).collect())
            .collect();
        let rows: Vec<Vec<Coefficient>> = [&set.polys[1], &r2, &s6]
            .iter()
            .map(|q| pts.iter().map(|p| q.eval_exact(p).unwrap()).collect())
            .collect();
        assert_eq!(crate::linalg::rank(&rows), 2);
        let v1 = set.polys[1].eval(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v2 = set.polys[1].eval(&[h, h, 0.0, 0.0]).unwrap();
        assert!((v1 - v2).abs() > 1e-6);
    }

    #[test]
    fn dihedral_forms() {
        assert_eq!(dihedral_invariant(3), parse_in("3*x1^2*x2 - x2^3", "x", 2).unwrap());
        assert_eq!(dihedral_invariant(4), parse_in("x1^4 - 6*x1^2*x2^2 + x2^4", "x", 2).unwrap());
    }
}

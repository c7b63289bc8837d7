use crate::error::{Error, Result};
use crate::poly::{Coefficient, Polynomial};

/// `e_1, ..., e_n` written in power-sum coordinates `y_i = s_i` via
/// `k e_k = Σ_{i=1}^k (-1)^{i-1} e_{k-i} s_i`.
pub fn elementary_in_power_sums(n: usize) -> Vec<Polynomial> {
    let mut e = vec![Polynomial::one(n)];
    for k in 1..=n {
        let mut acc = Polynomial::zero(n);
        for i in 1..=k {
            let term = &e[k - i] * &Polynomial::var(n, i - 1);
            let sign = if i % 2 == 1 { 1 } else { -1 };
            acc.add_scaled(&term, &Coefficient::from_frac(sign, k as i64));
        }
        e.push(acc);
    }
    e.remove(0);
    e
}

fn is_symmetric(p: &Polynomial) -> bool {
    let n = p.nvars();
    (0..n.saturating_sub(1)).all(|i| {
        let mut perm: Vec<Vec<Coefficient>> =
            (0..n).map(|r| (0..n).map(|c| if r == c { Coefficient::one() } else { Coefficient::zero() }).collect()).collect();
        perm.swap(i, i + 1);
        p.linear_substitute(&perm).is_ok_and(|q| &q == p)
    })
}

/// Rewrites a symmetric polynomial in `n` variables as a polynomial in the
/// power sums `y_1 = s_1, ..., y_n = s_n`.
///
/// The leading monomial `x^a` (graded lex, so `a_1 ≥ ... ≥ a_n`) is peeled
/// off with `e_1^{a_1-a_2} ... e_n^{a_n}` until nothing is left; the result
/// in the `e_i` is then composed with Newton's identities.
pub fn newton_rewrite(sym: &Polynomial, n: usize) -> Result<Polynomial> {
    if sym.nvars() != n {
        return Err(Error::DimensionMismatch { expected: n, got: sym.nvars() });
    }
    if !is_symmetric(sym) {
        return Err(Error::NotInvariant("input is not symmetric".into()));
    }
    let elem: Vec<Polynomial> = (1..=n).map(|k| Polynomial::elementary(n, k)).collect();
    let mut rest = sym.clone();
    let mut in_e = Polynomial::zero(n);
    loop {
        let lead = rest.terms().next_back().map(|(m, c)| (m.exponents().to_vec(), c.clone()));
        let Some((a, c)) = lead else { break };
        let mut z = vec![0u32; n];
        let mut prod = Polynomial::constant(n, c.clone());
        for i in 0..n {
            let e = a[i] - a.get(i + 1).copied().unwrap_or(0);
            z[i] = e;
            if e > 0 {
                prod = prod.try_mul(&elem[i].try_pow(e)?)?;
            }
        }
        rest -= &prod;
        in_e += &Polynomial::monomial(n, z, c);
    }
    in_e.compose(&elementary_in_power_sums(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_in;

    fn back(f: &Polynomial, n: usize) -> Polynomial {
        let s: Vec<Polynomial> = (1..=n as u32).map(|k| Polynomial::power_sum(n, k)).collect();
        f.compose(&s).unwrap()
    }

    #[test]
    fn documented_rewrites() {
        let e2 = Polynomial::elementary(3, 2);
        assert_eq!(newton_rewrite(&e2, 3).unwrap(), parse_in("1/2*y1^2 - 1/2*y2", "y", 3).unwrap());
        let s1s2 = &Polynomial::power_sum(3, 1) * &Polynomial::power_sum(3, 2);
        assert_eq!(newton_rewrite(&s1s2, 3).unwrap(), parse_in("y1*y2", "y", 3).unwrap());
        assert!(newton_rewrite(&Polynomial::var(3, 0), 3).is_err());
    }

    #[test]
    fn round_trip_products_of_elementaries() {
        for n in 1..=5 {
            let e: Vec<Polynomial> = (1..=n).map(|k| Polynomial::elementary(n, k)).collect();
            let p = &(&e[0] * &e[n - 1]) + &e[(n - 1) / 2].try_pow(2).unwrap();
            assert_eq!(back(&newton_rewrite(&p, n).unwrap(), n), p, "n = {n}");
        }
    }
}

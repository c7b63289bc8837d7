use std::collections::HashSet;

use rayon::prelude::*;

use super::catalog::GroupDescriptor;
use super::group::{FiniteGroup, Matrix};
use super::roots::RootSystem;
use crate::error::{Error, Result};
use crate::poly::{Coefficient, Polynomial};

/// `(1/|G|) Σ_g p(g x)`.
///
/// Row `v` of the matrix of `g` is `g⁻¹ e_v`, so the substitutions that occur
/// are exactly the orbit of the tuple `(e_v)` over the variables `p` uses,
/// each hit `|G| / |orbit|` times. The orbit is walked with the simple
/// reflections and every distinct substitution is expanded once.
pub fn reynolds_with(group: &FiniteGroup<Coefficient>, p: &Polynomial) -> Result<Polynomial> {
    reynolds_over(&group.roots, p)
}

/// [`reynolds_with`] driven by the root system alone.
pub fn reynolds_over(roots: &RootSystem<Coefficient>, p: &Polynomial) -> Result<Polynomial> {
    let n = roots.dim;
    if p.nvars() != n {
        return Err(Error::DimensionMismatch { expected: n, got: p.nvars() });
    }
    let used = p.support_vars();
    let unit = |v: usize| (0..n).map(|j| if j == v { Coefficient::one() } else { Coefficient::zero() }).collect::<Vec<_>>();
    let start: Vec<Vec<Coefficient>> = used.iter().map(|&v| unit(v)).collect();
    let mut seen: HashSet<Vec<Vec<Coefficient>>> = HashSet::new();
    seen.insert(start.clone());
    let mut orbit = vec![start];
    let mut head = 0;
    while head < orbit.len() {
        for &a in &roots.simple {
            let img: Vec<Vec<Coefficient>> = orbit[head].iter().map(|v| roots.reflect(a, v)).collect();
            if seen.insert(img.clone()) {
                orbit.push(img);
            }
        }
        head += 1;
    }

    // For homogeneous p of degree d, the keys k and -k contribute
    // (1 + (-1)^d) p(k x) together, so one of each pair is expanded.
    let mut jobs: Vec<(&Vec<Vec<Coefficient>>, i64)> = Vec::with_capacity(orbit.len());
    if p.is_homogeneous() {
        let sign = if p.degree() % 2 == 0 { 1 } else { -1 };
        let mut paired: HashSet<&Vec<Vec<Coefficient>>> = HashSet::new();
        let negs: Vec<Vec<Vec<Coefficient>>> =
            orbit.iter().map(|k| k.iter().map(|v| v.iter().map(|c| -c).collect()).collect()).collect();
        for (key, neg) in orbit.iter().zip(&negs) {
            if paired.contains(key) {
                continue;
            }
            match seen.get(neg) {
                Some(other) if other != key => {
                    paired.insert(other);
                    if sign > 0 {
                        jobs.push((key, 2));
                    }
                }
                _ => jobs.push((key, 1)),
            }
        }
    } else {
        jobs.extend(orbit.iter().map(|k| (k, 1)));
    }

    let images: Vec<Result<(Polynomial, i64)>> = jobs
        .par_iter()
        .map(|&(key, mult)| {
            let mut rows: Matrix<Coefficient> = (0..n).map(unit).collect();
            for (slot, &v) in used.iter().enumerate() {
                rows[v] = key[slot].clone();
            }
            Ok((p.linear_substitute(&rows)?, mult))
        })
        .collect();

    let mut out = Polynomial::zero(n);
    for img in images {
        let (img, mult) = img?;
        out.add_scaled(&img, &Coefficient::from_frac(mult, orbit.len() as i64));
    }
    Ok(out)
}

pub fn reynolds(g: &GroupDescriptor, p: &Polynomial) -> Result<Polynomial> {
    reynolds_with(&FiniteGroup::exact(g)?, p)
}

/// Exact check that `p(s x) = p(x)` for every generator matrix `s`.
pub fn is_invariant(p: &Polynomial, generators: &[Matrix<Coefficient>]) -> Result<bool> {
    for s in generators {
        if &p.linear_substitute(s)? != p {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn averages_of_coordinates() {
        let a2: GroupDescriptor = "A2".parse().unwrap();
        let r = reynolds(&a2, &Polynomial::var(3, 0)).unwrap();
        assert_eq!(r, Polynomial::power_sum(3, 1).scale(&Coefficient::from_frac(1, 3)));

        let b2: GroupDescriptor = "B2".parse().unwrap();
        let x1sq = Polynomial::var(2, 0).try_pow(2).unwrap();
        let r = reynolds(&b2, &x1sq).unwrap();
        assert_eq!(r, Polynomial::power_sum(2, 2).scale(&Coefficient::from_frac(1, 2)));
        assert_eq!(reynolds(&b2, &Polynomial::var(2, 1)).unwrap(), Polynomial::zero(2));
    }

    #[test]
    fn idempotent_and_invariant() {
        let grp = FiniteGroup::exact(&"H3".parse().unwrap()).unwrap();
        let p = crate::poly::parse_in("x1^4*x2^2 + x3^3 - x1", "x", 3).unwrap();
        let r = reynolds_with(&grp, &p).unwrap();
        assert!(is_invariant(&r, &grp.generators()).unwrap());
        assert_eq!(reynolds_with(&grp, &r).unwrap(), r);
        assert!(!is_invariant(&p, &grp.generators()).unwrap());
    }
}

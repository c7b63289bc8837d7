use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::arrangement::{flat_orbits, hyperplanes, Arrangement};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::invariants::SparseObjective;
use crate::linalg::Field;
use crate::optimize::{minimize_free, Composite, Smooth};
use crate::poly::{Coefficient, Polynomial};

/// One reflection hyperplane per orbit, with the invariant restricted to it.
#[derive(Debug, Clone, Serialize)]
pub struct HyperplaneRestriction {
    pub normal: Vec<f64>,
    pub orbit_size: usize,
    /// `n × (n-1)`, columns spanning the hyperplane.
    #[serde(skip)]
    pub basis: DMatrix<f64>,
    /// The restriction in coordinates `t_1..t_{n-1}` along the columns.
    #[serde(serialize_with = "as_text")]
    pub poly: Polynomial,
}

fn as_text<S: serde::Serializer>(p: &Polynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string_with(|i| format!("t{}", i + 1)))
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroSearch {
    pub found: bool,
    pub witness: Option<Vec<f64>>,
    /// Smallest `|f|` seen.
    pub best_abs: f64,
}

/// `|f| ≤ ZERO_TOL` counts as a zero.
pub const ZERO_TOL: f64 = 1e-9;

fn restrict(f: &Polynomial, columns: &[Vec<Coefficient>]) -> Result<Polynomial> {
    let n = f.nvars();
    let j = columns.len();
    let forms: Vec<Polynomial> =
        (0..n).map(|i| Polynomial::linear_form(&columns.iter().map(|c| c[i].clone()).collect::<Vec<_>>())).collect();
    if j == 0 {
        return Ok(Polynomial::constant(0, f.eval_exact(&vec![Coefficient::zero(); n])?));
    }
    f.compose(&forms)
}

/// Restrictions of `F(π_1..π_k)` to a representative of every orbit of
/// reflection hyperplanes. When `F` is at most linear in some `π_i`, the
/// invariant has a real zero iff one of the restrictions does.
pub fn restrict_to_hyperplanes(obj: &SparseObjective) -> Result<Vec<HyperplaneRestriction>> {
    let g = &obj.basis.group;
    let full = g.ambient_degrees().len();
    let linear_somewhere = obj.k < full || (0..obj.k).any(|i| obj.f.degree_in(i) <= 1);
    if !linear_somewhere {
        return Err(Error::Precondition(format!("F = {} is not at most linear in any basic invariant", obj.f)));
    }
    let f = obj.composed()?;
    let arr = Arrangement::new(g)?;
    let n = arr.dim();
    let mut out = Vec::new();
    match &arr.exact {
        Some(rs) => {
            for (h, size) in flat_orbits(rs, &hyperplanes(rs)) {
                let normal = h.normal_space[0].iter().map(Field::to_f64).collect();
                let basis = DMatrix::from_fn(n, h.dim, |i, c| h.basis[c][i].to_f64());
                out.push(HyperplaneRestriction { normal, orbit_size: size, basis, poly: restrict(&f, &h.basis)? });
            }
        }
        None => {
            let rs = &arr.numeric;
            for (h, size) in flat_orbits(rs, &hyperplanes(rs)) {
                let cols = h
                    .basis
                    .iter()
                    .map(|c| c.iter().map(|&v| Coefficient::from_f64(v).expect("finite")).collect())
                    .collect::<Vec<Vec<Coefficient>>>();
                let basis = DMatrix::from_fn(n, h.dim, |i, c| h.basis[c][i]);
                out.push(HyperplaneRestriction { normal: h.normal_space[0].clone(), orbit_size: size, basis, poly: restrict(&f, &cols)? });
            }
        }
    }
    Ok(out)
}

/// Sign sampling with bisection, then minimization of `f^2` from the most
/// promising samples.
fn zero_search(f: &Polynomial, seed: u64) -> ZeroSearch {
    let d = f.nvars();
    if d == 0 {
        let v = f.eval(&[]).unwrap_or(f64::NAN).abs();
        return ZeroSearch { found: v <= ZERO_TOL, witness: (v <= ZERO_TOL).then(Vec::new), best_abs: v };
    }
    let cf = Composite::direct(f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // the origin lies on every mirror and is a zero whenever F(π(0)) = 0
    let mut samples: Vec<(f64, Vec<f64>)> = std::iter::once(vec![0.0; d])
        .chain((0..384).map(|_| {
            let scale = 10f64.powf(rng.random_range(-1.0..1.0));
            (0..d).map(|_| rng.sample::<f64, _>(StandardNormal) * scale).collect()
        }))
        .map(|x| (cf.value(&x), x))
        .collect();
    samples.sort_by(|a, b| a.0.abs().total_cmp(&b.0.abs()));
    let best_abs = samples[0].0.abs();
    if best_abs <= ZERO_TOL {
        return ZeroSearch { found: true, witness: Some(samples[0].1.clone()), best_abs };
    }
    let pos = samples.iter().find(|s| s.0 > 0.0);
    let neg = samples.iter().find(|s| s.0 < 0.0);
    if let (Some(p), Some(q)) = (pos, neg) {
        let (mut a, mut b) = (p.1.clone(), q.1.clone());
        let mut mid = a.clone();
        for _ in 0..200 {
            mid = a.iter().zip(&b).map(|(u, v)| 0.5 * (u + v)).collect();
            let v = cf.value(&mid);
            if v.abs() <= ZERO_TOL * 1e-3 {
                break;
            }
            if v > 0.0 {
                a = mid.clone();
            } else {
                b = mid.clone();
            }
        }
        let v = cf.value(&mid).abs();
        return ZeroSearch { found: v <= ZERO_TOL, witness: Some(mid), best_abs: v.min(best_abs) };
    }
    let sq = Composite::new(&Polynomial::var(1, 0).try_pow(2).expect("square"), std::slice::from_ref(f)).expect("arity 1");
    let mut best = (best_abs, samples[0].1.clone());
    for (_, x0) in samples.iter().take(24) {
        let loc = minimize_free(&sq, x0);
        if loc.diverged {
            continue;
        }
        let v = cf.value(&loc.x).abs();
        if v < best.0 {
            best = (v, loc.x);
        }
    }
    ZeroSearch { found: best.0 <= ZERO_TOL, witness: (best.0 <= ZERO_TOL).then_some(best.1), best_abs: best.0 }
}

/// Zero of `F(π)` searched on the hyperplane representatives only; the
/// witness is returned in `R^n`.
pub fn find_zero(restrictions: &[HyperplaneRestriction], cfg: &RunConfig) -> ZeroSearch {
    let mut best = ZeroSearch { found: false, witness: None, best_abs: f64::INFINITY };
    for (i, r) in restrictions.iter().enumerate() {
        let z = zero_search(&r.poly, cfg.seed.wrapping_add(i as u64));
        if z.found {
            let t = z.witness.expect("found");
            let x = (0..r.basis.nrows()).map(|a| (0..t.len()).map(|c| r.basis[(a, c)] * t[c]).sum()).collect();
            return ZeroSearch { found: true, witness: Some(x), best_abs: z.best_abs };
        }
        best.best_abs = best.best_abs.min(z.best_abs);
    }
    best
}

/// The same search directly in `R^n`.
pub fn zero_oracle(obj: &SparseObjective, cfg: &RunConfig) -> Result<ZeroSearch> {
    Ok(zero_search(&obj.composed()?, cfg.seed ^ 0x9e37_79b9))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coxeter::GroupDescriptor;
    use crate::invariants::{basic_invariants, Variant};

    fn obj(s: &str, f: &str, k: usize) -> SparseObjective {
        let g: GroupDescriptor = s.parse().unwrap();
        let b = Arc::new(basic_invariants(&g, Variant::default_for(&g).unwrap()).unwrap());
        SparseObjective::parse(f, k, b).unwrap()
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(restrict_to_hyperplanes(&obj("B2", "y2 - 1", 2)).unwrap().len(), 2);
        assert_eq!(restrict_to_hyperplanes(&obj("A3", "y2 - 1", 2)).unwrap().len(), 1);
        assert_eq!(restrict_to_hyperplanes(&obj("I2(6)", "y2 - 1", 2)).unwrap().len(), 2);
        assert_eq!(restrict_to_hyperplanes(&obj("I2(5)", "y2 - 1", 2)).unwrap().len(), 1);
        let r = restrict_to_hyperplanes(&obj("B2", "y1", 1)).unwrap();
        assert!(r.iter().all(|h| h.poly.nvars() == 1));
        assert!(restrict_to_hyperplanes(&obj("B2", "(y1 - 1)^2 + y2^2", 2)).is_err());
    }

    #[test]
    fn zeros_agree_with_the_oracle() {
        let cfg = RunConfig::default();
        for (s, f, k, expect) in [
            ("B3", "y2 - 1", 2, true),
            ("B3", "y1 + 1/2", 1, false),
            ("A3", "y1 + y2 - 3*y3", 3, true),
            ("B3", "y1^2 - 3*y2 + 1", 2, true),
            ("B3", "y1^2 - y3 + 1", 3, true),
        ] {
            let o = obj(s, f, k);
            let z = find_zero(&restrict_to_hyperplanes(&o).unwrap(), &cfg);
            assert_eq!(z.found, expect, "{s} {f}");
            assert_eq!(zero_oracle(&o, &cfg).unwrap().found, expect, "oracle {s} {f}");
            if let Some(w) = z.witness {
                assert!(o.eval(&w).unwrap().abs() < 1e-8);
            }
        }
    }
}

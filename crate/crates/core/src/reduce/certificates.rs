use std::collections::HashSet;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{brute_oracle, solve_on_strata, Constraint, Problem, Sense, Solution};
use crate::arrangement::Arrangement;
use crate::config::RunConfig;
use crate::coxeter::{GroupDescriptor, RootSystem};
use crate::error::Result;
use crate::invariants::{basic_invariants, basic_invariants_prefix, f4_pi2, SparseObjective, Variant};
use crate::poly::{parse_in, Coefficient, Polynomial};

#[derive(Debug, Clone, Serialize)]
pub struct CriticalPoint {
    /// `(y_1, y_2, y_3, y_4)` with `y_1 = y_2` on the simplex plane.
    pub y: [f64; 4],
    pub value: f64,
    /// All `y_i > 0`.
    pub interior: bool,
    /// The point has small rational coordinates at which the gradient
    /// vanishes exactly. Always false for boundary points.
    pub exact: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct F4Certificate {
    /// `π_2 = g(x_1^2, ..., x_4^2)` and `6 π_2 = Σ (x_i ± x_j)^6`, exactly.
    pub identities_hold: bool,
    pub critical_points: Vec<CriticalPoint>,
    pub interior_values: Vec<f64>,
    pub boundary_min: CriticalPoint,
    pub boundary_max: CriticalPoint,
    pub sphere_min: Solution,
    pub sphere_max: Solution,
}

/// `g = 5 s_1 s_2 - 4 s_3` in four variables.
fn f4_g() -> Polynomial {
    parse_in(
        "5*(y1+y2+y3+y4)*(y1^2+y2^2+y3^2+y4^2) - 4*(y1^3+y2^3+y3^3+y4^3)",
        "y",
        4,
    )
    .expect("fixed text")
}

/// Best rational approximation with denominator at most `max_den`.
fn rationalize(x: f64, max_den: i64) -> BigRational {
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        let (p2, q2) = (a as i64 * p1 + p0, a as i64 * q1 + q0);
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = v - a;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    BigRational::new(BigInt::from(p1), BigInt::from(q1))
}

/// Real critical points of a bivariate polynomial by Newton's method from a
/// grid, deduplicated.
fn critical_points_2d(p: &Polynomial, lo: f64, hi: f64) -> Vec<[f64; 2]> {
    let g = p.gradient();
    let h: Vec<Vec<Polynomial>> = g.iter().map(|gi| gi.gradient()).collect();
    let mut out: Vec<[f64; 2]> = Vec::new();
    let steps = 24;
    for i in 0..=steps {
        for j in 0..=steps {
            let mut x = [lo + (hi - lo) * i as f64 / steps as f64, lo + (hi - lo) * j as f64 / steps as f64];
            let mut ok = false;
            for _ in 0..60 {
                let gv = DVector::from_iterator(2, g.iter().map(|q| q.eval(&x).unwrap_or(f64::NAN)));
                if gv.norm() < 1e-14 {
                    ok = true;
                    break;
                }
                let hm = DMatrix::from_fn(2, 2, |a, b| h[a][b].eval(&x).unwrap_or(f64::NAN));
                let Some(step) = hm.lu().solve(&(-gv)) else { break };
                x = [x[0] + step[0], x[1] + step[1]];
                if !x.iter().all(|v| v.is_finite() && v.abs() < 1e6) {
                    break;
                }
            }
            if ok && !out.iter().any(|c| (c[0] - x[0]).abs() + (c[1] - x[1]).abs() < 1e-8) {
                out.push(x);
            }
        }
    }
    out.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    out
}

/// The F4 computation: `π_2 = g(x^2)` is optimized over the 3-simplex cut by
/// `y_1 = y_2`, parametrized by `(a, b) ↦ (a, a, b, 1 - 2a - b)`.
pub fn f4_certificate(cfg: &RunConfig) -> Result<F4Certificate> {
    let g = f4_g();
    let sq: Vec<Polynomial> = (0..4).map(|i| Polynomial::var(4, i).try_pow(2)).collect::<Result<_>>()?;
    let pi2 = f4_pi2();
    let sum6 = parse_in(
        "(x1+x2)^6 + (x1-x2)^6 + (x1+x3)^6 + (x1-x3)^6 + (x1+x4)^6 + (x1-x4)^6 + (x2+x3)^6 + (x2-x3)^6 + (x2+x4)^6 + (x2-x4)^6 + (x3+x4)^6 + (x3-x4)^6",
        "x",
        4,
    )?;
    let identities_hold = g.compose(&sq)? == pi2 && pi2.scale(&Coefficient::from_int(6)) == sum6;

    let a = Polynomial::var(2, 0);
    let b = Polynomial::var(2, 1);
    let c = &(&Polynomial::one(2) - &a.scale(&Coefficient::from_int(2))) - &b;
    let plane = g.compose(&[a.clone(), a, b, c])?;
    let point = |ab: [f64; 2]| [ab[0], ab[0], ab[1], 1.0 - 2.0 * ab[0] - ab[1]];
    let grad = plane.gradient();

    let mut critical_points = Vec::new();
    for ab in critical_points_2d(&plane, -1.5, 1.5) {
        let y = point(ab);
        let q: Vec<Coefficient> = ab.iter().map(|&v| Coefficient::rational(rationalize(v, 1000))).collect();
        let exact = grad.iter().all(|gi| gi.eval_exact(&q).is_ok_and(|v| v.is_zero()));
        critical_points.push(CriticalPoint { y, value: plane.eval(&ab)?, interior: y.iter().all(|&v| v > 1e-12), exact });
    }
    let mut interior_values: Vec<f64> = critical_points.iter().filter(|c| c.interior).map(|c| c.value).collect();
    interior_values.sort_by(f64::total_cmp);

    // boundary of the triangle a, b, 1 - 2a - b >= 0: vertices and edge criticals
    let edges: [([f64; 2], [f64; 2]); 3] = [([0.0, 0.0], [0.5, 0.0]), ([0.5, 0.0], [0.0, 1.0]), ([0.0, 1.0], [0.0, 0.0])];
    let mut boundary: Vec<[f64; 2]> = vec![[0.0, 0.0], [0.5, 0.0], [0.0, 1.0]];
    for (p, q) in edges {
        let s = Polynomial::var(1, 0);
        let lin = |i: usize| &Polynomial::constant(1, Coefficient::from_f64(p[i]).expect("finite")) + &s.scale(&Coefficient::from_f64(q[i] - p[i]).expect("finite"));
        let edge = plane.compose(&[lin(0), lin(1)])?;
        // the derivative is at most quadratic
        let d = edge.derivative(0);
        let co = |e: u32| d.coefficient(&[e]).to_f64();
        let (qa, qb, qc) = (co(2), co(1), co(0));
        let mut roots = Vec::new();
        if qa.abs() > 1e-15 {
            let disc = qb * qb - 4.0 * qa * qc;
            if disc >= 0.0 {
                roots.push((-qb + disc.sqrt()) / (2.0 * qa));
                roots.push((-qb - disc.sqrt()) / (2.0 * qa));
            }
        } else if qb.abs() > 1e-15 {
            roots.push(-qc / qb);
        }
        for t in roots.into_iter().filter(|t| (0.0..=1.0).contains(t)) {
            boundary.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
    let mk = |ab: [f64; 2]| -> Result<CriticalPoint> {
        Ok(CriticalPoint { y: point(ab), value: plane.eval(&ab)?, interior: false, exact: false })
    };
    let values: Vec<CriticalPoint> = boundary.into_iter().map(mk).collect::<Result<_>>()?;
    let boundary_min = values.iter().min_by(|a, b| a.value.total_cmp(&b.value)).expect("vertices").clone();
    let boundary_max = values.iter().max_by(|a, b| a.value.total_cmp(&b.value)).expect("vertices").clone();

    let f4: GroupDescriptor = "F4".parse()?;
    let basis = Arc::new(basic_invariants(&f4, Variant::F4)?);
    let obj = SparseObjective::parse("y2", 2, basis)?;
    let sphere_min = solve_on_strata(&Problem::new(obj.clone(), Constraint::Sphere(1.0), Sense::Min), cfg)?;
    let sphere_max = solve_on_strata(&Problem::new(obj, Constraint::Sphere(1.0), Sense::Max), cfg)?;
    Ok(F4Certificate { identities_hold, critical_points, interior_values, boundary_min, boundary_max, sphere_min, sphere_max })
}

/// Distance from `x` to the orbit of `target` under the group.
pub fn orbit_distance(g: &GroupDescriptor, target: &[f64], x: &[f64]) -> Result<f64> {
    let rs = RootSystem::<f64>::numeric(g)?;
    let key = |v: &[f64]| v.iter().map(|c| (c * 1e8).round() as i64).collect::<Vec<_>>();
    let mut seen = HashSet::new();
    seen.insert(key(target));
    let mut orbit = vec![target.to_vec()];
    let mut head = 0;
    while head < orbit.len() {
        for &a in &rs.simple {
            let img = rs.reflect(a, &orbit[head]);
            if seen.insert(key(&img)) {
                orbit.push(img);
            }
        }
        head += 1;
    }
    Ok(orbit
        .iter()
        .map(|o| o.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt())
        .fold(f64::INFINITY, f64::min))
}

#[derive(Debug, Clone, Serialize)]
pub struct H4Extremizer {
    pub sense: Sense,
    pub value: f64,
    pub witness: Vec<f64>,
    pub stratum_dim: usize,
    /// Distance to the orbit of `(1, 0, 0, 0)`.
    pub distance_to_e1: f64,
    /// Distance to the orbit of `(1, 1, 0, 0)/√2`.
    pub distance_to_e12: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct H4Evidence {
    pub extremizers: Vec<H4Extremizer>,
    /// Strata values (flats of dimension 2) for comparison with the oracle.
    pub strata_min: f64,
    pub strata_max: f64,
    /// Both extremizers lie in the 2-stratum and together cover the two
    /// expected orbits.
    pub located: bool,
}

/// Optimizes the H4 degree-12 surrogate over `S^3` by dense multistart in
/// `R^4` and locates the extremizers.
pub fn h4_evidence(cfg: &RunConfig) -> Result<H4Evidence> {
    let h4: GroupDescriptor = "H4".parse()?;
    let basis = Arc::new(basic_invariants_prefix(&h4, Variant::H4Surrogate, 2)?);
    let obj = SparseObjective::parse("y2", 2, basis)?;
    let arr = Arrangement::new(&h4)?;
    let e1 = [1.0, 0.0, 0.0, 0.0];
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let e12 = [s, s, 0.0, 0.0];
    // a flat minimum pins the witness only to about the square root of
    // machine precision
    let tol = 1e-6;
    let mut extremizers = Vec::new();
    let mut strata = Vec::new();
    for sense in [Sense::Min, Sense::Max] {
        let p = Problem::new(obj.clone(), Constraint::Sphere(1.0), sense);
        let sol = brute_oracle(&p, cfg)?;
        strata.push(solve_on_strata(&p, cfg)?.value);
        extremizers.push(H4Extremizer {
            sense,
            value: sol.value,
            stratum_dim: arr.stratum_dim_tol(&sol.witness, tol)?,
            distance_to_e1: orbit_distance(&h4, &e1, &sol.witness)?,
            distance_to_e12: orbit_distance(&h4, &e12, &sol.witness)?,
            witness: sol.witness,
        });
    }
    let near_e1 = extremizers.iter().any(|e| e.distance_to_e1 <= tol);
    let near_e12 = extremizers.iter().any(|e| e.distance_to_e12 <= tol);
    let located = near_e1 && near_e12 && extremizers.iter().all(|e| e.stratum_dim <= 2);
    Ok(H4Evidence { extremizers, strata_min: strata[0], strata_max: strata[1], located })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_chain() {
        let cert = f4_certificate(&RunConfig::default()).unwrap();
        assert!(cert.identities_hold);
        assert_eq!(cert.interior_values.len(), 3);
        assert!((cert.interior_values[0] - 1.0).abs() < 1e-12);
        for v in &cert.interior_values[1..] {
            assert!((v - 11.0 / 9.0).abs() < 1e-12);
        }
        assert!(cert.critical_points.iter().filter(|c| c.interior).all(|c| c.exact));
        assert!((cert.boundary_min.value - 1.0).abs() < 1e-12);
        assert!((cert.boundary_max.value - 1.5).abs() < 1e-12);
        let bary = f4_g().eval(&[0.25; 4]).unwrap();
        assert!((bary - 1.0).abs() < 1e-15);
    }

    #[test]
    fn orbit_distances() {
        let b2: GroupDescriptor = "B2".parse().unwrap();
        assert!(orbit_distance(&b2, &[1.0, 0.0], &[0.0, -1.0]).unwrap() < 1e-12);
        assert!((orbit_distance(&b2, &[1.0, 0.0], &[0.6, 0.8]).unwrap() - (0.4f64).sqrt()).abs() < 1e-12);
    }
}

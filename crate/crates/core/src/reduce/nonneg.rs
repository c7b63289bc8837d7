use rayon::prelude::*;
use serde::Serialize;

use super::{halton_starts, orthonormal, pieces, Constraint, PieceInfo};
use crate::arrangement::Arrangement;
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::invariants::SparseObjective;
use crate::optimize::{minimize_constrained, minimize_free, minimize_sphere, Composite, Linear, Smooth};
use crate::poly::{Coefficient, Polynomial};

/// Verdict threshold: a minimum above `-NONNEG_TOL` counts as nonnegative.
pub const NONNEG_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct NonnegReport {
    pub nonneg: bool,
    pub min: f64,
    pub witness: Vec<f64>,
    pub piece: Option<PieceInfo>,
    pub stratum_dim: Option<usize>,
    /// Local descent left every bounded region.
    pub unbounded: bool,
}

/// Minimizes `f` over the `k`-stratum intersected with the constraint and
/// the inequalities `g_i ≥ 0`, all written in the same basic set.
pub fn check_nonneg(f: &SparseObjective, constraint: &Constraint, ineqs: &[SparseObjective], cfg: &RunConfig) -> Result<NonnegReport> {
    let basis = &f.basis;
    if let Some(g) = ineqs.iter().find(|g| g.basis.group != basis.group) {
        return Err(Error::Precondition(format!("inequality over {} for an objective over {}", g.basis.group, basis.group)));
    }
    let g = &basis.group;
    let n = basis.dim();
    let mut k = ineqs.iter().map(|s| s.k).fold(f.k, usize::max);
    let mut eqs: Vec<Composite> = Vec::new();
    let mut radius = None;
    match constraint {
        Constraint::Sphere(r) => {
            radius = Some(*r);
            if g.family == crate::coxeter::Family::A {
                k = k.max(2);
            }
            let c = Coefficient::from_f64(r * r).ok_or_else(|| Error::Precondition("radius".into()))?;
            eqs.push(Composite::direct(&(&Polynomial::power_sum(n, 2) - &Polynomial::constant(n, c))));
        }
        Constraint::Principal(v) => {
            k = k.max(v.len());
            for (pi, &vi) in basis.polys.iter().zip(v) {
                let c = Coefficient::from_f64(vi).ok_or_else(|| Error::Precondition("target".into()))?;
                eqs.push(Composite::direct(&(pi - &Polynomial::constant(n, c))));
            }
        }
        Constraint::None => {}
    }
    let k = k.min(n);
    let obj = Composite::new(&f.f, &basis.polys[..f.k])?;
    let gs: Vec<Composite> = ineqs.iter().map(|s| Composite::new(&s.f, &s.basis.polys[..s.k])).collect::<Result<_>>()?;
    let ps = pieces(g, k)?;

    let results: Vec<Option<(f64, Vec<f64>, bool)>> = ps
        .par_iter()
        .map(|pc| {
            let j = pc.free_vars();
            if j == 0 {
                let x = vec![0.0; n];
                let ok = eqs.iter().all(|e| e.value(&x).abs() <= cfg.feasibility_tol) && gs.iter().all(|s| s.value(&x) >= -cfg.feasibility_tol);
                return ok.then(|| (obj.value(&x), x, false));
            }
            let starts = halton_starts(j, cfg.starts_per_dim * j, cfg.seed);
            let mut best: Option<(f64, Vec<f64>, bool)> = None;
            let mut consider = |x: Vec<f64>, diverged: bool| {
                let feasible = eqs.iter().all(|e| e.value(&x).abs() <= 1e-8) && gs.iter().all(|s| s.value(&x) >= -1e-8);
                if !feasible && !diverged {
                    return;
                }
                let v = obj.value(&x);
                if best.as_ref().is_none_or(|b| v < b.0) {
                    best = Some((v, x, diverged));
                }
            };
            match (radius, gs.is_empty()) {
                (Some(r), true) => {
                    let m = orthonormal(&pc.basis)?;
                    let lin = Linear { f: &obj, m };
                    for u0 in &starts {
                        let loc = minimize_sphere(&lin, r, u0);
                        consider(lin.map(&loc.x), false);
                    }
                    if j == 1 {
                        consider(lin.map(&[-r]), false);
                        consider(lin.map(&[r]), false);
                    }
                }
                _ => {
                    let lin = Linear { f: &obj, m: pc.basis.clone() };
                    let el: Vec<Linear> = eqs.iter().map(|e| Linear { f: e, m: pc.basis.clone() }).collect();
                    let gl: Vec<Linear> = gs.iter().map(|e| Linear { f: e, m: pc.basis.clone() }).collect();
                    let er: Vec<&dyn Smooth> = el.iter().map(|e| e as &dyn Smooth).collect();
                    let gr: Vec<&dyn Smooth> = gl.iter().map(|e| e as &dyn Smooth).collect();
                    for t0 in &starts {
                        let loc = if er.is_empty() && gr.is_empty() { minimize_free(&lin, t0) } else { minimize_constrained(&lin, &er, &gr, t0) };
                        consider(lin.map(&loc.x), loc.diverged);
                    }
                }
            }
            best
        })
        .collect();

    let mut best: Option<((f64, Vec<f64>, bool), usize)> = None;
    for (i, r) in results.into_iter().enumerate() {
        if let Some(r) = r {
            let better = match &best {
                None => true,
                Some((b, bi)) => {
                    if r.2 != b.2 {
                        r.2
                    } else if (r.0 - b.0).abs() <= 1e-9 * (1.0 + b.0.abs()) {
                        ps[i].preference(&ps[*bi]).is_lt()
                    } else {
                        r.0 < b.0
                    }
                }
            };
            if better {
                best = Some((r, i));
            }
        }
    }
    let Some(((min, witness, unbounded), i)) = best else {
        // an empty feasible set makes the statement vacuous
        return Ok(NonnegReport { nonneg: true, min: f64::INFINITY, witness: vec![], piece: None, stratum_dim: None, unbounded: false });
    };
    let min = if unbounded && min < 0.0 { f64::NEG_INFINITY } else { min };
    let stratum_dim = if witness.iter().all(|v| v.is_finite()) { Some(Arrangement::new(g)?.stratum_dim(&witness)?) } else { None };
    Ok(NonnegReport {
        nonneg: min >= -NONNEG_TOL,
        min,
        witness,
        piece: Some(PieceInfo { label: ps[i].label(), free_vars: ps[i].free_vars(), kind: ps[i].kind.clone() }),
        stratum_dim,
        unbounded,
    })
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
    fn documented_verdicts() {
        let cfg = RunConfig::default();
        let r = check_nonneg(&obj("B3", "y2", 2), &Constraint::Sphere(1.0), &[], &cfg).unwrap();
        assert!(r.nonneg);
        assert!((r.min - 1.0 / 3.0).abs() < 1e-10, "{}", r.min);
        assert!(r.witness.iter().all(|v| (v.abs() - 1.0 / 3f64.sqrt()).abs() < 1e-6));

        let r = check_nonneg(&obj("B3", "y1", 1), &Constraint::None, &[], &cfg).unwrap();
        assert!(r.nonneg && r.min.abs() < 1e-12);

        let r = check_nonneg(&obj("A2", "y2 - y1^2", 2), &Constraint::None, &[], &cfg).unwrap();
        assert!(!r.nonneg);

        // s_4 - 1/4 s_2^2 >= 0 on B3 always; on the ball s_2 <= 1 as well
        let ball = obj("B3", "1 - y1", 1);
        let r = check_nonneg(&obj("B3", "y2 - 1/4*y1^2", 2), &Constraint::None, &[ball], &cfg).unwrap();
        assert!(r.nonneg, "{}", r.min);
    }
}

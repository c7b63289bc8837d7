//! The degree-principle engine: invariant problems on `R^n` solved over the
//! pieces of a low-dimensional stratum, checked against a full-dimensional
//! multistart oracle.

mod certificates;
mod hyperplanes;
mod nonneg;
mod pieces;

pub use certificates::{f4_certificate, h4_evidence, orbit_distance, CriticalPoint, F4Certificate, H4Evidence, H4Extremizer};
pub use hyperplanes::{find_zero, restrict_to_hyperplanes, zero_oracle, HyperplaneRestriction, ZeroSearch};
pub use nonneg::{check_nonneg, NonnegReport};
pub use pieces::{pieces, Piece, PieceKind};

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::config::RunConfig;
use crate::coxeter::{Family, GroupDescriptor};
use crate::error::{Error, Result};
use crate::invariants::{BasicInvariantSet, SparseObjective};
use crate::optimize::{least_squares, minimize_constrained, minimize_free, minimize_sphere, Composite, Linear, Negated, Smooth};
use crate::poly::{Coefficient, Polynomial};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Constraint {
    /// `|x| = r`.
    Sphere(f64),
    /// `π_i(x) = v_i` for `i = 1..j`.
    Principal(Vec<f64>),
    None,
}

impl FromStr for Constraint {
    type Err = Error;

    /// `sphere:R`, `principal:v1,..,vj` or `none`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { pos: 0, msg: format!("constraint `{s}`: {msg}") };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad("expected a number"));
        match s.split_once(':') {
            Some(("sphere", r)) => Ok(Constraint::Sphere(num(r)?)),
            Some(("principal", vs)) => Ok(Constraint::Principal(vs.split(',').map(num).collect::<Result<_>>()?)),
            None if s == "none" => Ok(Constraint::None),
            _ => Err(bad("expected sphere:R, principal:v1,..,vj or none")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Min,
    Max,
    Feasible,
}

impl FromStr for Sense {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min" => Ok(Sense::Min),
            "max" => Ok(Sense::Max),
            "feasible" | "feasibility" => Ok(Sense::Feasible),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown sense `{s}`") }),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub objective: SparseObjective,
    pub constraint: Constraint,
    pub sense: Sense,
    /// The caller vouches that the objective is coercive, which licenses
    /// solving without a compact constraint.
    pub coercive: bool,
    /// Extra coordinates on which the group acts trivially. Nonzero means the
    /// action is not essential and the degree principle does not apply.
    pub fixed_dims: usize,
}

impl Problem {
    pub fn new(objective: SparseObjective, constraint: Constraint, sense: Sense) -> Self {
        Problem { objective, constraint, sense, coercive: false, fixed_dims: 0 }
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.objective.basis.group
    }

    pub fn basis(&self) -> &Arc<BasicInvariantSet> {
        &self.objective.basis
    }

    /// The stratum the degree principle points to. The sphere is `π_2 = r^2`
    /// for A, so A sphere problems are at least 2-sparse.
    pub fn strata_k(&self) -> usize {
        let k = self.objective.k;
        let n = self.group().ambient_dim;
        let k = match &self.constraint {
            Constraint::Sphere(_) if self.group().family == Family::A => k.max(2),
            Constraint::Principal(v) => k.max(v.len()),
            _ => k,
        };
        k.min(n)
    }

    fn check(&self) -> Result<()> {
        if self.fixed_dims > 0 {
            return Err(Error::Precondition(format!(
                "{} acting on R^{} with {} fixed coordinates is not essential",
                self.group(),
                self.group().ambient_dim + self.fixed_dims,
                self.fixed_dims
            )));
        }
        match &self.constraint {
            Constraint::Sphere(r) if !(*r > 0.0) => Err(Error::Precondition("sphere radius must be positive".into())),
            Constraint::Principal(v) if v.is_empty() || v.len() > self.basis().len() => {
                Err(Error::InvalidSparsity { k: v.len(), n: self.basis().len() })
            }
            Constraint::None if !self.coercive && self.sense != Sense::Feasible => Err(Error::Precondition(
                "unconstrained problems need a compact constraint or the coercive flag".into(),
            )),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Solved,
    InfeasibleNumerically,
    UnboundedSuspected,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Solved => 0,
            Status::InfeasibleNumerically => 2,
            Status::UnboundedSuspected => 0,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Solved => "solved",
            Status::InfeasibleNumerically => "infeasible-numerically",
            Status::UnboundedSuspected => "unbounded-suspected",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PieceInfo {
    pub label: String,
    pub free_vars: usize,
    #[serde(flatten)]
    pub kind: PieceKind,
}

#[derive(Debug, Clone, Serialize)]
pub struct Solution {
    pub status: Status,
    pub value: f64,
    pub witness: Vec<f64>,
    pub piece: Option<PieceInfo>,
    /// Largest constraint violation at the witness.
    pub residual: f64,
    pub stratum_dim: Option<usize>,
    /// Fewer than two starts reached the reported value.
    pub low_confidence: bool,
    pub warnings: Vec<String>,
}

/// Compiled objective and constraints in `x`.
struct Setup {
    f: Composite,
    eqs: Vec<Composite>,
    /// `x` is confined to the orthogonal complement of this vector.
    linear: Option<DVector<f64>>,
    radius: Option<f64>,
    /// Typical coordinate size used to scale starting points.
    scale: f64,
    sense: Sense,
    tol: f64,
}

/// Orthonormal basis of the complement of `r` in `R^j`, as columns.
fn complement(r: &DVector<f64>) -> DMatrix<f64> {
    let j = r.len();
    let norm = r.norm();
    if norm == 0.0 {
        return DMatrix::identity(j, j);
    }
    // Householder reflection taking e_1 to r/|r|; its other columns span r^⊥
    let mut w = r / norm;
    w[0] -= 1.0;
    let h = if w.norm() < 1e-14 { DMatrix::identity(j, j) } else { DMatrix::identity(j, j) - 2.0 * &w * w.transpose() / w.norm_squared() };
    h.columns(1, j - 1).into_owned()
}

impl Setup {
    fn new(p: &Problem, tol: f64) -> Result<Self> {
        let basis = p.basis();
        let k = p.objective.k;
        let f = Composite::new(&p.objective.f, &basis.polys[..k])?;
        let n = basis.dim();
        let mut linear = None;
        let mut radius = None;
        let (eqs, scale) = match &p.constraint {
            Constraint::Sphere(r) => {
                radius = Some(*r);
                (vec![], *r)
            }
            Constraint::Principal(v) => {
                // s_1 = 0 is a linear subspace and s_2 = r^2 then a sphere in it
                let mut rest = 0;
                if basis.polys[0] == Polynomial::power_sum(n, 1) && v[0] == 0.0 {
                    linear = Some(DVector::from_element(n, 1.0));
                    rest = 1;
                }
                if rest < v.len() && basis.polys[rest] == Polynomial::power_sum(n, 2) && v[rest] > 0.0 {
                    radius = Some(v[rest].sqrt());
                    rest += 1;
                }
                let mut eqs = Vec::with_capacity(v.len());
                let mut scale = radius.unwrap_or(0.0);
                for (pi, &vi) in basis.polys.iter().zip(v).skip(rest) {
                    let c = Coefficient::from_f64(vi).ok_or_else(|| Error::Precondition(format!("target {vi} is not finite")))?;
                    eqs.push(Composite::direct(&(pi - &Polynomial::constant(n, c))));
                    if pi.degree() > 0 && radius.is_none() {
                        scale = scale.max(vi.abs().powf(1.0 / pi.degree() as f64));
                    }
                }
                (eqs, if scale > 0.0 { scale } else { 1.0 })
            }
            Constraint::None => (vec![], 1.0),
        };
        Ok(Setup { f, eqs, linear, radius, scale, sense: p.sense, tol })
    }

    fn feasible(&self, c: &Candidate) -> bool {
        c.violation <= self.tol || (self.radius.is_some() && self.eqs.is_empty() && c.violation <= 1e-9)
    }

    /// Strict improvement of `a` over `b`, ignoring piece preference.
    fn better(&self, a: &Candidate, b: &Candidate) -> bool {
        match (self.feasible(a), self.feasible(b)) {
            (true, false) => return true,
            (false, true) => return false,
            (false, false) => return a.violation < b.violation,
            _ => {}
        }
        if a.diverged != b.diverged {
            return a.diverged;
        }
        match self.sense {
            Sense::Min => a.value < b.value,
            Sense::Max => a.value > b.value,
            Sense::Feasible => a.violation < b.violation,
        }
    }

    fn same_value(&self, a: &Candidate, b: &Candidate) -> bool {
        match self.sense {
            Sense::Feasible => self.feasible(a) && self.feasible(b),
            _ => self.feasible(a) == self.feasible(b) && (a.value - b.value).abs() <= 1e-9 * (1.0 + a.value.abs()),
        }
    }

    fn candidate(&self, x: Vec<f64>, diverged: bool) -> Candidate {
        let value = self.f.value(&x);
        let mut violation = self.eqs.iter().map(|e| e.value(&x).abs()).fold(0.0, f64::max);
        if let Some(r) = self.radius {
            violation = violation.max((x.iter().map(|v| v * v).sum::<f64>().sqrt() - r).abs());
        }
        if let Some(a) = &self.linear {
            violation = violation.max(a.iter().zip(&x).map(|(u, v)| u * v).sum::<f64>().abs());
        }
        Candidate { value, x, violation, diverged, hits: 1 }
    }

    /// Multistart over one piece; starts are points of `[-1, 1]^j`.
    fn run_piece(&self, piece: &Piece, starts: &[Vec<f64>]) -> Option<Candidate> {
        let (basis, starts) = match &self.linear {
            Some(a) => {
                let k = complement(&(piece.basis.transpose() * a));
                let starts: Vec<Vec<f64>> =
                    starts.iter().map(|t| (k.transpose() * DVector::from_column_slice(t)).iter().copied().collect()).collect();
                (&piece.basis * k, starts)
            }
            None => (piece.basis.clone(), starts.to_vec()),
        };
        let j = basis.ncols();
        let mut found: Vec<Candidate> = Vec::new();
        if let Some(r) = self.radius {
            if j == 0 {
                return None;
            }
            // orthonormal coordinates on the piece turn the sphere into |u| = r
            let m = orthonormal(&basis)?;
            let lin = Linear { f: &self.f, m: m.clone() };
            let neg = Negated(&lin);
            let obj: &dyn Smooth = if self.sense == Sense::Max { &neg } else { &lin };
            if !self.eqs.is_empty() {
                let sphere = Composite::direct(&(&Polynomial::power_sum(j, 2) - &Polynomial::constant(j, Coefficient::from_f64(r * r)?)));
                let eq_lin: Vec<Linear> = self.eqs.iter().map(|e| Linear { f: e, m: m.clone() }).collect();
                let mut eq_refs: Vec<&dyn Smooth> = eq_lin.iter().map(|e| e as &dyn Smooth).collect();
                eq_refs.push(&sphere);
                for u0 in &starts {
                    let norm = u0.iter().map(|v| v * v).sum::<f64>().sqrt();
                    let u0: Vec<f64> = if norm > 0.0 { u0.iter().map(|v| v * r / norm).collect() } else { u0.clone() };
                    let loc = if self.sense == Sense::Feasible { least_squares(&eq_refs, &u0) } else { minimize_constrained(obj, &eq_refs, &[], &u0) };
                    found.push(self.candidate(lin.map(&loc.x), loc.diverged));
                }
            } else if j == 1 {
                // both points of the 0-sphere: nothing left to find
                for s in [r, -r] {
                    found.push(self.candidate(lin.map(&[s]), false));
                }
                let mut best = self.reduce(found)?;
                best.hits = best.hits.max(2);
                return Some(best);
            } else {
                for u0 in &starts {
                    let loc = minimize_sphere(obj, r, u0);
                    found.push(self.candidate(lin.map(&loc.x), false));
                }
            }
        } else {
            let lin = Linear { f: &self.f, m: basis.clone() };
            let neg = Negated(&lin);
            let obj: &dyn Smooth = if self.sense == Sense::Max { &neg } else { &lin };
            let eq_lin: Vec<Linear> = self.eqs.iter().map(|e| Linear { f: e, m: basis.clone() }).collect();
            let eq_refs: Vec<&dyn Smooth> = eq_lin.iter().map(|e| e as &dyn Smooth).collect();
            if j == 0 {
                return Some(self.candidate(vec![0.0; piece.ambient()], false));
            }
            for t0 in &starts {
                let t0: Vec<f64> = t0.iter().map(|v| v * self.scale).collect();
                let loc = match (self.sense, eq_refs.is_empty()) {
                    (Sense::Feasible, false) => least_squares(&eq_refs, &t0),
                    (Sense::Feasible, true) => minimize_free(obj, &t0),
                    (_, false) => minimize_constrained(obj, &eq_refs, &[], &t0),
                    (_, true) => minimize_free(obj, &t0),
                };
                found.push(self.candidate(lin.map(&loc.x), loc.diverged));
            }
        }
        self.reduce(found)
    }

    /// Best candidate, counting how many others reached it.
    fn reduce(&self, found: Vec<Candidate>) -> Option<Candidate> {
        let mut best: Option<Candidate> = None;
        for c in &found {
            if best.as_ref().is_none_or(|b| self.better(c, b)) {
                best = Some(c.clone());
            }
        }
        let mut best = best?;
        best.hits = found.iter().filter(|c| self.same_value(c, &best)).count();
        Some(best)
    }
}

#[derive(Debug, Clone)]
struct Candidate {
    value: f64,
    x: Vec<f64>,
    violation: f64,
    diverged: bool,
    hits: usize,
}

const PRIMES: [u8; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Deterministic low-discrepancy points of `[-1, 1]^j`.
pub fn halton_starts(j: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let offset = 1 + (seed % 997) as usize;
    (0..count)
        .map(|i| (0..j).map(|d| 2.0 * halton::number(PRIMES[d % PRIMES.len()], offset + i) - 1.0).collect())
        .collect()
}

pub(crate) fn gaussian_starts(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..n).map(|_| rng.sample::<f64, _>(StandardNormal) * 0.6).collect()).collect()
}

fn finish(p: &Problem, setup: &Setup, best: Option<(Candidate, Option<&Piece>)>, warnings: Vec<String>) -> Result<Solution> {
    let n = p.group().ambient_dim;
    let Some((c, piece)) = best else {
        return Ok(Solution {
            status: Status::InfeasibleNumerically,
            value: f64::NAN,
            witness: vec![],
            piece: None,
            residual: f64::INFINITY,
            stratum_dim: None,
            low_confidence: true,
            warnings,
        });
    };
    let status = if !setup.feasible(&c) {
        Status::InfeasibleNumerically
    } else if c.diverged {
        Status::UnboundedSuspected
    } else {
        Status::Solved
    };
    let stratum_dim = if c.x.len() == n && c.x.iter().all(|v| v.is_finite()) {
        Some(Arrangement::new(p.group())?.stratum_dim(&c.x)?)
    } else {
        None
    };
    Ok(Solution {
        status,
        value: c.value,
        witness: c.x,
        piece: piece.map(|pc| PieceInfo { label: pc.label(), free_vars: pc.free_vars(), kind: pc.kind.clone() }),
        residual: c.violation,
        stratum_dim,
        low_confidence: c.hits < 2,
        warnings,
    })
}

/// Optimizes over every piece of the `k`-stratum, where `k` is the sparsity
/// of the problem, and returns the best piece's optimum.
pub fn solve_on_strata(p: &Problem, cfg: &RunConfig) -> Result<Solution> {
    p.check()?;
    let mut warnings = Vec::new();
    if p.group().family == Family::H4 {
        warnings.push("H4: the reduction to strata rests on a conjecture; compare with the oracle".to_string());
    }
    let setup = Setup::new(p, cfg.feasibility_tol)?;
    let ps = pieces(p.group(), p.strata_k())?;
    if ps.is_empty() {
        return Err(Error::InvalidSparsity { k: p.strata_k(), n: p.group().ambient_dim });
    }
    let results: Vec<Option<Candidate>> = ps
        .par_iter()
        .map(|pc| {
            let j = pc.free_vars();
            setup.run_piece(pc, &halton_starts(j, (cfg.starts_per_dim * j).max(1), cfg.seed))
        })
        .collect();
    let mut best: Option<(Candidate, &Piece)> = None;
    for (c, pc) in results.into_iter().zip(&ps) {
        let Some(c) = c else { continue };
        let replace = match &best {
            None => true,
            Some((b, bp)) => {
                if setup.same_value(&c, b) {
                    pc.preference(bp) == Ordering::Less
                } else {
                    setup.better(&c, b)
                }
            }
        };
        if replace {
            best = Some((c, pc));
        }
    }
    finish(p, &setup, best.map(|(c, pc)| (c, Some(pc))), warnings)
}

/// Multistart directly in `R^n`, without any use of the strata.
pub fn brute_oracle(p: &Problem, cfg: &RunConfig) -> Result<Solution> {
    p.check()?;
    let n = p.group().ambient_dim;
    if n > 8 {
        return Err(Error::Precondition(format!("the oracle is limited to n <= 8, got {n}")));
    }
    let setup = Setup::new(p, cfg.feasibility_tol)?;
    let space = Piece::space(n);
    let starts = gaussian_starts(n, cfg.oracle_starts.max(1), cfg.seed);
    let bests: Vec<Candidate> = starts.par_chunks(8).filter_map(|chunk| setup.run_piece(&space, chunk)).collect();
    let best = setup.reduce(bests.clone()).map(|mut b| {
        b.hits = bests.iter().filter(|c| setup.same_value(c, &b)).map(|c| c.hits).sum();
        b
    });
    let mut sol = finish(p, &setup, best.map(|c| (c, None)), vec![])?;
    if sol.low_confidence {
        sol.warnings.push("budget exhausted: the best value was reached by a single start".into());
    }
    Ok(sol)
}

/// Searches `X_j(q) = {x : π_i(x) = v_i, i ≤ j}` for a point, over the
/// `j`-stratum. "infeasible-numerically" only means that no point was found
/// with the configured budget.
pub fn nonempty_principal(basis: Arc<BasicInvariantSet>, targets: &[f64], cfg: &RunConfig) -> Result<Solution> {
    let obj = SparseObjective::new(Polynomial::var(1, 0), basis)?;
    let p = Problem::new(obj, Constraint::Principal(targets.to_vec()), Sense::Feasible);
    solve_on_strata(&p, cfg)
}

/// Stratum dimension of `(x, z)` for the group acting on `R^n × R^m`
/// trivially on the last `m` coordinates: the lifted mirrors are `H × R^m`.
pub fn lifted_stratum_dim(g: &GroupDescriptor, point: &[f64]) -> Result<usize> {
    let n = g.ambient_dim;
    if point.len() < n {
        return Err(Error::DimensionMismatch { expected: n, got: point.len() });
    }
    Ok(Arrangement::new(g)?.stratum_dim(&point[..n])? + point.len() - n)
}

/// Orthonormal columns spanning the column space of `basis`.
pub(crate) fn orthonormal(basis: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let gram = basis.transpose() * basis;
    let chol = gram.cholesky()?;
    // B L^{-T}, so that (B L^{-T})^T (B L^{-T}) = L^{-1} G L^{-T} = I
    Some(chol.l().solve_lower_triangular(&basis.transpose())?.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{basic_invariants, Variant};

    fn basis(s: &str) -> Arc<BasicInvariantSet> {
        let g: GroupDescriptor = s.parse().unwrap();
        Arc::new(basic_invariants(&g, Variant::default_for(&g).unwrap()).unwrap())
    }

    #[test]
    fn orthonormal_columns() {
        let b = DMatrix::from_row_slice(3, 2, &[1.0, 1.0, 0.0, 2.0, -1.0, 0.5]);
        let m = orthonormal(&b).unwrap();
        assert!((m.transpose() * &m - DMatrix::identity(2, 2)).norm() < 1e-12);
        // same column space
        assert!((&m * (m.transpose() * &b) - &b).norm() < 1e-12);
    }

    fn problem(s: &str, f: &str, k: usize, c: Constraint, sense: Sense) -> Problem {
        Problem::new(SparseObjective::parse(f, k, basis(s)).unwrap(), c, sense)
    }

    #[test]
    fn f4_sextic_extremes() {
        let cfg = RunConfig::default();
        let lo = solve_on_strata(&problem("F4", "y2", 2, Constraint::Sphere(1.0), Sense::Min), &cfg).unwrap();
        let hi = solve_on_strata(&problem("F4", "y2", 2, Constraint::Sphere(1.0), Sense::Max), &cfg).unwrap();
        assert!((lo.value - 1.0).abs() < 1e-10, "{}", lo.value);
        assert!((hi.value - 1.5).abs() < 1e-10, "{}", hi.value);
        assert!(lo.stratum_dim.unwrap() <= 1 && hi.stratum_dim.unwrap() <= 1);
    }

    #[test]
    fn norm_is_constant_on_sphere() {
        let cfg = RunConfig::default();
        for s in ["B3", "D4", "H3", "I2(5)"] {
            let sol = solve_on_strata(&problem(s, "y1", 1, Constraint::Sphere(1.0), Sense::Max), &cfg).unwrap();
            assert!((sol.value - 1.0).abs() < 1e-12, "{s}");
        }
    }

    #[test]
    fn a2_principal_minimum() {
        let cfg = RunConfig::default();
        let p = problem("A2", "y3", 3, Constraint::Principal(vec![0.0, 1.0]), Sense::Min);
        let sol = solve_on_strata(&p, &cfg).unwrap();
        let expect = -1.0 / 6f64.sqrt();
        assert_eq!(sol.status, Status::Solved);
        assert!((sol.value - expect).abs() < 1e-9, "{}", sol.value);
        let oracle = brute_oracle(&p, &cfg).unwrap();
        assert!((oracle.value - sol.value).abs() < 1e-6);
        let w = &sol.witness;
        assert!((w[0] - w[1]).abs() < 1e-9 || (w[1] - w[2]).abs() < 1e-9 || (w[0] - w[2]).abs() < 1e-9);
    }

    #[test]
    fn principal_feasibility() {
        let cfg = RunConfig::default();
        let sol = nonempty_principal(basis("B3"), &[3.0, 3.0], &cfg).unwrap();
        assert_eq!(sol.status, Status::Solved);
        assert!(sol.witness.iter().all(|v| (v.abs() - 1.0).abs() < 1e-8));
        let sol = nonempty_principal(basis("A2"), &[0.0], &cfg).unwrap();
        assert_eq!(sol.status, Status::Solved);
        assert!(sol.stratum_dim.unwrap() <= 1);
        let sol = nonempty_principal(basis("B2"), &[1.0, 2.0], &cfg).unwrap();
        assert_eq!(sol.status, Status::InfeasibleNumerically);
    }

    #[test]
    fn preconditions() {
        let cfg = RunConfig::default();
        let mut p = problem("B3", "y1", 1, Constraint::Sphere(1.0), Sense::Min);
        p.fixed_dims = 1;
        assert!(solve_on_strata(&p, &cfg).is_err());
        let p = problem("B3", "y2", 2, Constraint::None, Sense::Min);
        assert!(solve_on_strata(&p, &cfg).is_err());
        assert_eq!("principal:1,2".parse::<Constraint>().unwrap(), Constraint::Principal(vec![1.0, 2.0]));
        assert!("sphere:x".parse::<Constraint>().is_err());
    }

    #[test]
    fn non_essential_lift_misses_the_arrangement() {
        // points of X in (Bn-counter form): generic p, free last coordinate
        let b3: GroupDescriptor = "B3".parse().unwrap();
        for z in [-2.0, 0.0, 3.5] {
            assert_eq!(lifted_stratum_dim(&b3, &[0.3, 1.1, 2.4, z]).unwrap(), 4);
        }
    }
}

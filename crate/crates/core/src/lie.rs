//! Trace-power problems on `sl_n` and `so_n` moved to the Weyl groups
//! `A_{n-1}`, `B_m` and `D_m` through eigenvalues and rotation blocks.

use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::coxeter::GroupDescriptor;
use crate::error::{Error, Result};
use crate::invariants::{basic_invariants, BasicInvariantSet, SparseObjective, Variant};
use crate::optimize::{least_squares, minimize_constrained, minimize_free, minimize_sphere, Composite, Linear, Negated, Smooth};
use crate::poly::{parse_with, Coefficient, Polynomial};
use crate::reduce::{gaussian_starts, orthonormal, Constraint, Problem, Sense, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LieKind {
    /// Trace-zero matrices.
    Sl,
    /// Skew-symmetric matrices.
    So,
}

impl fmt::Display for LieKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LieKind::Sl => "sl",
            LieKind::So => "so",
        })
    }
}

impl FromStr for LieKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sl" => Ok(LieKind::Sl),
            "so" => Ok(LieKind::So),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown Lie algebra kind `{s}`") }),
        }
    }
}

const TRACE_TOL: f64 = 1e-12;

/// A point of `sl_n` or `so_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixPoint {
    pub n: usize,
    /// Row-major.
    pub entries: Vec<Vec<f64>>,
    pub kind: LieKind,
}

impl MatrixPoint {
    pub fn new(kind: LieKind, entries: Vec<Vec<f64>>) -> Result<Self> {
        let n = entries.len();
        if let Some(r) = entries.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: r.len() });
        }
        match kind {
            LieKind::Sl => {
                let tr: f64 = (0..n).map(|i| entries[i][i]).sum();
                if tr.abs() > TRACE_TOL {
                    return Err(Error::Precondition(format!("trace {tr:e} is not zero")));
                }
            }
            LieKind::So => {
                if (0..n).any(|i| (0..n).any(|j| entries[i][j] != -entries[j][i])) {
                    return Err(Error::Precondition("matrix is not skew-symmetric".into()));
                }
            }
        }
        Ok(MatrixPoint { n, entries, kind })
    }

    /// `diag(λ - mean(λ))`.
    pub fn diagonal(lambda: &[f64]) -> Self {
        let n = lambda.len();
        let mean = lambda.iter().sum::<f64>() / n.max(1) as f64;
        let mut entries = vec![vec![0.0; n]; n];
        for (i, l) in lambda.iter().enumerate() {
            entries[i][i] = l - mean;
        }
        let drift: f64 = (0..n).map(|i| entries[i][i]).sum();
        if n > 0 {
            entries[n - 1][n - 1] -= drift;
        }
        MatrixPoint { n, entries, kind: LieKind::Sl }
    }

    /// Blocks `[[0, a_i], [-a_i, 0]]` down the diagonal, padded with zeros
    /// to size `n`.
    pub fn block_diagonal(a: &[f64], n: usize) -> Result<Self> {
        if 2 * a.len() > n {
            return Err(Error::DimensionMismatch { expected: n / 2, got: a.len() });
        }
        let mut entries = vec![vec![0.0; n]; n];
        for (i, &v) in a.iter().enumerate() {
            entries[2 * i][2 * i + 1] = v;
            entries[2 * i + 1][2 * i] = -v;
        }
        Ok(MatrixPoint { n, entries, kind: LieKind::So })
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.entries[i][j])
    }
}

fn trace_power<T>(a: &[Vec<T>], k: usize, zero: &T) -> T
where
    T: Clone + Add<Output = T> + Mul<Output = T>,
{
    let n = a.len();
    let mut p: Vec<Vec<T>> = a.to_vec();
    for _ in 1..k {
        p = (0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(zero.clone(), |s, l| s + p[i][l].clone() * a[l][j].clone())).collect())
            .collect();
    }
    (0..n).fold(zero.clone(), |s, i| s + p[i][i].clone())
}

/// Expansion along the first remaining row.
fn pf_expand<T>(idx: &[usize], entry: &dyn Fn(usize, usize) -> T, zero: &T) -> T
where
    T: Clone + Add<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    match idx {
        [] => unreachable!("odd size is rejected earlier"),
        [i, j] => entry(*i, *j),
        [first, rest @ ..] => {
            let mut acc = zero.clone();
            for (pos, &j) in rest.iter().enumerate() {
                let minor: Vec<usize> = rest.iter().copied().filter(|&l| l != j).collect();
                let term = entry(*first, j) * pf_expand(&minor, entry, zero);
                acc = if pos % 2 == 0 { acc + term } else { acc + -term };
            }
            acc
        }
    }
}

/// `tr(A^k)` for each requested `k` in `2..=n`.
pub fn trace_powers(a: &MatrixPoint, ks: &[usize]) -> Result<Vec<f64>> {
    if let Some(&k) = ks.iter().find(|&&k| k < 2 || k > a.n) {
        return Err(Error::Precondition(format!("trace power {k} is outside 2..={}", a.n)));
    }
    Ok(ks.iter().map(|&k| trace_power(&a.entries, k, &0.0)).collect())
}

/// Pfaffian with `pf([[0, a], [-a, 0]]) = a`.
pub fn pfaffian(a: &MatrixPoint) -> Result<f64> {
    if a.kind != LieKind::So {
        return Err(Error::Precondition("the Pfaffian needs a skew-symmetric matrix".into()));
    }
    if a.n % 2 == 1 {
        return Err(Error::Precondition(format!("the Pfaffian needs even size, got {}", a.n)));
    }
    if a.n == 0 {
        return Ok(1.0);
    }
    let idx: Vec<usize> = (0..a.n).collect();
    Ok(pf_expand(&idx, &|i, j| a.entries[i][j], &0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Coord {
    Trace(usize),
    Pf,
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Trace(k) => write!(f, "t{k}"),
            Coord::Pf => f.write_str("pf"),
        }
    }
}

/// Each coordinate is `scale * π_index` in the Weyl basic set.
#[derive(Debug, Clone)]
struct Layout {
    kind: LieKind,
    n: usize,
    basis: Arc<BasicInvariantSet>,
    coords: Vec<(Coord, usize, i64)>,
}

impl Layout {
    fn new(kind: LieKind, n: usize) -> Result<Self> {
        let unsupported = |what: String| Error::Unsupported { group: format!("{kind}_{n}"), what };
        match kind {
            LieKind::Sl => {
                if n < 2 {
                    return Err(unsupported("size below 2".into()));
                }
                let g = GroupDescriptor::a(n - 1)?;
                let basis = Arc::new(basic_invariants(&g, Variant::PowerSum)?);
                let coords = (2..=n).map(|k| (Coord::Trace(k), k - 1, 1)).collect();
                Ok(Layout { kind, n, basis, coords })
            }
            LieKind::So => {
                if n < 3 {
                    return Err(unsupported("size below 3".into()));
                }
                let m = n / 2;
                let g = if n % 2 == 1 { GroupDescriptor::b(m)? } else { GroupDescriptor::d(m)? };
                let basis = Arc::new(basic_invariants(&g, Variant::default_for(&g)?)?);
                let pf = (n % 2 == 0).then(|| Polynomial::elementary(m, m));
                let mut coords = Vec::new();
                for (i, p) in basis.polys.iter().enumerate() {
                    if Some(p) == pf.as_ref() {
                        coords.push((Coord::Pf, i, 1));
                        continue;
                    }
                    let k = (1..=m as u32)
                        .find(|&k| *p == Polynomial::power_sum(m, 2 * k))
                        .ok_or_else(|| unsupported(format!("basic invariant {p}")))?;
                    // the eigenvalues ±i a_j give tr(A^2k) = 2 (-1)^k s_2k(a)
                    coords.push((Coord::Trace(2 * k as usize), i, if k % 2 == 0 { 2 } else { -2 }));
                }
                Ok(Layout { kind, n, basis, coords })
            }
        }
    }

    fn names(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.0.to_string()).collect()
    }

    fn check_names(&self, text: &str) -> Result<()> {
        let names = self.names();
        for word in text.split(|c: char| !c.is_ascii_alphanumeric() && c != '_') {
            let starts_alpha = word.chars().next().is_some_and(|c| c.is_ascii_alphabetic());
            if starts_alpha && word != "sqrt5" && !names.iter().any(|n| n == word) {
                return Err(Error::Unsupported {
                    group: format!("{}_{}", self.kind, self.n),
                    what: format!("invariant `{word}`; available: {}", names.join(", ")),
                });
            }
        }
        Ok(())
    }

    fn parse(&self, text: &str) -> Result<Polynomial> {
        self.check_names(text)?;
        let names = self.names();
        parse_with(text, names.len(), &|s| names.iter().position(|n| n == s))
    }

    fn values(&self, a: &MatrixPoint) -> Result<Vec<f64>> {
        self.coords
            .iter()
            .map(|(c, _, _)| match c {
                Coord::Trace(k) => Ok(trace_powers(a, &[*k])?[0]),
                Coord::Pf => pfaffian(a),
            })
            .collect()
    }
}

/// Names of the invariant coordinates of `kind_n` in the order used by
/// objectives and principal constraints.
pub fn coordinates(kind: LieKind, n: usize) -> Result<Vec<String>> {
    Ok(Layout::new(kind, n)?.names())
}

/// Parses an objective in the coordinates returned by [`coordinates`].
pub fn parse_objective(kind: LieKind, n: usize, text: &str) -> Result<Polynomial> {
    Layout::new(kind, n)?.parse(text)
}

/// Invariant coordinates of a matrix, in [`coordinates`] order.
pub fn invariant_values(a: &MatrixPoint) -> Result<Vec<f64>> {
    Layout::new(a.kind, a.n)?.values(a)
}

/// The Weyl-group problem equivalent to a trace-power problem, with the
/// map back to matrices.
#[derive(Debug, Clone)]
pub struct LieReduction {
    pub kind: LieKind,
    pub n: usize,
    pub problem: Problem,
    layout: Layout,
}

impl LieReduction {
    /// Diagonal (sl) or block-diagonal (so) matrix of a Weyl witness.
    pub fn lift(&self, witness: &[f64]) -> Result<MatrixPoint> {
        let dim = self.problem.group().ambient_dim;
        if witness.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: witness.len() });
        }
        match self.kind {
            LieKind::Sl => Ok(MatrixPoint::diagonal(witness)),
            LieKind::So => MatrixPoint::block_diagonal(witness, self.n),
        }
    }

    pub fn lift_solution(&self, sol: &Solution) -> Result<Option<MatrixPoint>> {
        if sol.witness.is_empty() {
            return Ok(None);
        }
        self.lift(&sol.witness).map(Some)
    }

    pub fn coordinates(&self) -> Vec<String> {
        self.layout.names()
    }
}

/// Rewrites `F` (in the invariant coordinates) as a problem over `A_{n-1}`
/// for `sl_n`, `B_m` for `so_{2m+1}` or `D_m` for `so_{2m}`.
///
/// The sphere is the Frobenius sphere. Principal targets are values of the
/// first coordinates. For `sl_n` the constraint `s_1 = 0` is always added,
/// so the result is a principal problem even without a constraint.
pub fn lie_reduce(kind: LieKind, n: usize, f: &Polynomial, constraint: &Constraint, sense: Sense) -> Result<LieReduction> {
    let layout = Layout::new(kind, n)?;
    let ncoords = layout.coords.len();
    if f.nvars() != ncoords {
        return Err(Error::ArityMismatch { expected: ncoords, got: f.nvars() });
    }
    let used = f.support_vars();
    let k = used.iter().map(|&c| layout.coords[c].1 + 1).max().unwrap_or(1);
    let forms: Vec<Polynomial> = layout
        .coords
        .iter()
        .map(|&(_, i, s)| if i < k { Polynomial::var(k, i).scale(&Coefficient::from_int(s)) } else { Polynomial::zero(k) })
        .collect();
    let objective = SparseObjective::new(f.compose(&forms)?, layout.basis.clone())?;
    if let Constraint::Principal(v) = constraint {
        if v.is_empty() || v.len() > ncoords {
            return Err(Error::InvalidSparsity { k: v.len(), n: ncoords });
        }
    }
    let weyl = match (kind, constraint) {
        (LieKind::Sl, Constraint::Sphere(r)) => Constraint::Principal(vec![0.0, r * r]),
        (LieKind::Sl, Constraint::Principal(v)) => Constraint::Principal(std::iter::once(0.0).chain(v.iter().copied()).collect()),
        (LieKind::Sl, Constraint::None) => Constraint::Principal(vec![0.0]),
        (LieKind::So, Constraint::Sphere(r)) => Constraint::Sphere(r / std::f64::consts::SQRT_2),
        (LieKind::So, Constraint::Principal(v)) => {
            Constraint::Principal(v.iter().zip(&layout.coords).map(|(x, &(_, _, s))| x / s as f64).collect())
        }
        (LieKind::So, Constraint::None) => Constraint::None,
    };
    Ok(LieReduction { kind, n, problem: Problem::new(objective, weyl, sense), layout })
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixOptimum {
    pub value: f64,
    pub witness: MatrixPoint,
    /// Largest constraint violation at the witness.
    pub residual: f64,
}

/// The subspace as columns of length `n^2` (row-major entries).
fn subspace(kind: LieKind, n: usize) -> DMatrix<f64> {
    let mut cols: Vec<Vec<f64>> = Vec::new();
    let e = |i: usize, j: usize, a: f64, b: f64| {
        let mut c = vec![0.0; n * n];
        c[i * n + j] += a;
        c[j * n + i] += b;
        c
    };
    for i in 0..n {
        for j in i + 1..n {
            cols.push(match kind {
                LieKind::Sl => e(i, j, 1.0, 1.0),
                LieKind::So => e(i, j, 1.0, -1.0),
            });
        }
    }
    if kind == LieKind::Sl {
        for i in 0..n - 1 {
            let mut c = vec![0.0; n * n];
            c[i * n + i] = 1.0;
            c[(n - 1) * n + n - 1] = -1.0;
            cols.push(c);
        }
    }
    DMatrix::from_fn(n * n, cols.len(), |r, c| cols[c][r])
}

/// Multistart directly over symmetric trace-zero (sl) or skew-symmetric (so)
/// matrices, without using eigenvalues. Symmetric trace-zero matrices are
/// diagonalizable, so their trace powers cover those of `sl_n`.
pub fn matrix_oracle(kind: LieKind, n: usize, f: &Polynomial, constraint: &Constraint, sense: Sense, cfg: &RunConfig) -> Result<MatrixOptimum> {
    let layout = Layout::new(kind, n)?;
    if f.nvars() != layout.coords.len() {
        return Err(Error::ArityMismatch { expected: layout.coords.len(), got: f.nvars() });
    }
    if n > 6 {
        return Err(Error::Precondition(format!("the matrix oracle is limited to n <= 6, got {n}")));
    }
    let nv = n * n;
    let a: Vec<Vec<Polynomial>> = (0..n).map(|i| (0..n).map(|j| Polynomial::var(nv, i * n + j)).collect()).collect();
    let zero = Polynomial::zero(nv);
    let idx: Vec<usize> = (0..n).collect();
    let inner: Vec<Polynomial> = layout
        .coords
        .iter()
        .map(|(c, _, _)| match c {
            Coord::Trace(k) => trace_power(&a, *k, &zero),
            Coord::Pf => pf_expand(&idx, &|i, j| a[i][j].clone(), &zero),
        })
        .collect();
    let obj = Composite::new(f, &inner)?;
    let m = orthonormal(&subspace(kind, n)).ok_or_else(|| Error::Precondition("degenerate matrix subspace".into()))?;
    let lin = Linear { f: &obj, m: m.clone() };
    let neg = Negated(&lin);
    let target: &dyn Smooth = if sense == Sense::Max { &neg } else { &lin };

    let eqs: Vec<Composite> = match constraint {
        Constraint::Principal(v) => {
            if v.is_empty() || v.len() > inner.len() {
                return Err(Error::InvalidSparsity { k: v.len(), n: inner.len() });
            }
            v.iter()
                .zip(&inner)
                .map(|(&vi, p)| {
                    let c = Coefficient::from_f64(vi).ok_or_else(|| Error::Precondition(format!("target {vi} is not finite")))?;
                    Ok(Composite::direct(&(p - &Polynomial::constant(nv, c))))
                })
                .collect::<Result<_>>()?
        }
        _ => vec![],
    };
    let eq_lin: Vec<Linear> = eqs.iter().map(|e| Linear { f: e, m: m.clone() }).collect();
    let eq_refs: Vec<&dyn Smooth> = eq_lin.iter().map(|e| e as &dyn Smooth).collect();
    let radius = match constraint {
        Constraint::Sphere(r) if *r > 0.0 => Some(*r),
        Constraint::Sphere(_) => return Err(Error::Precondition("sphere radius must be positive".into())),
        _ => None,
    };
    let d = m.ncols();
    let starts = gaussian_starts(d, cfg.oracle_starts.max(1), cfg.seed);
    let runs: Vec<(f64, f64, Vec<f64>)> = starts
        .par_iter()
        .map(|u0| {
            let loc = match (radius, sense, eq_refs.is_empty()) {
                (Some(r), _, _) => minimize_sphere(target, r, u0),
                (None, Sense::Feasible, false) => least_squares(&eq_refs, u0),
                (None, _, false) => minimize_constrained(target, &eq_refs, &[], u0),
                (None, _, true) => minimize_free(target, u0),
            };
            let x = DVector::from_column_slice(&loc.x);
            let violation = match radius {
                Some(r) => (x.norm() - r).abs(),
                None => eq_lin.iter().map(|e| e.value(&loc.x).abs()).fold(0.0, f64::max),
            };
            (lin.value(&loc.x), violation, loc.x)
        })
        .collect();
    let feasible = |v: f64| v <= 1e-8;
    let better = |a: &(f64, f64, Vec<f64>), b: &(f64, f64, Vec<f64>)| match (feasible(a.1), feasible(b.1)) {
        (true, false) => true,
        (false, true) => false,
        (false, false) => a.1 < b.1,
        _ => match sense {
            Sense::Min => a.0 < b.0,
            Sense::Max => a.0 > b.0,
            Sense::Feasible => a.1 < b.1,
        },
    };
    let mut best = &runs[0];
    for r in &runs[1..] {
        if better(r, best) {
            best = r;
        }
    }
    let flat = lin.map(&best.2);
    let mut entries: Vec<Vec<f64>> = (0..n).map(|i| flat[i * n..(i + 1) * n].to_vec()).collect();
    // restore the exact structure lost to rounding in `M u`
    for i in 0..n {
        for j in 0..i {
            entries[i][j] = match kind {
                LieKind::Sl => entries[j][i],
                LieKind::So => -entries[j][i],
            };
        }
        if kind == LieKind::So {
            entries[i][i] = 0.0;
        }
    }
    let witness = match kind {
        LieKind::Sl => {
            let mut e = entries;
            let tr: f64 = (0..n).map(|i| e[i][i]).sum();
            e[n - 1][n - 1] -= tr;
            MatrixPoint { n, entries: e, kind }
        }
        LieKind::So => MatrixPoint { n, entries, kind },
    };
    Ok(MatrixOptimum { value: best.0, witness, residual: best.1 })
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::reduce::solve_on_strata;

    fn random_skew(n: usize, rng: &mut ChaCha8Rng) -> MatrixPoint {
        let mut e = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v: f64 = rng.random_range(-1.0..1.0);
                e[i][j] = v;
                e[j][i] = -v;
            }
        }
        MatrixPoint::new(LieKind::So, e).unwrap()
    }

    #[test]
    fn traces_and_pfaffians() {
        let a = MatrixPoint::new(LieKind::Sl, vec![vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        assert_eq!(trace_powers(&a, &[2]).unwrap(), vec![2.0]);
        assert!(trace_powers(&a, &[3]).is_err());

        let b = MatrixPoint::block_diagonal(&[0.5, 2.0], 4).unwrap();
        let t2 = trace_powers(&b, &[2]).unwrap()[0];
        assert!((t2 + 2.0 * (0.25 + 4.0)).abs() < 1e-12);
        assert_eq!(pfaffian(&MatrixPoint::block_diagonal(&[3.0], 2).unwrap()).unwrap(), 3.0);
        assert!((pfaffian(&b).unwrap() - 1.0).abs() < 1e-12);
        assert!(pfaffian(&MatrixPoint::block_diagonal(&[1.0], 3).unwrap()).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [4, 6] {
            for _ in 0..10 {
                let a = random_skew(n, &mut rng);
                let pf = pfaffian(&a).unwrap();
                assert!((pf * pf - a.matrix().determinant()).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn trace_powers_match_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=5 {
            let mut e = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in i..n {
                    let v: f64 = rng.random_range(-1.0..1.0);
                    e[i][j] = v;
                    e[j][i] = v;
                }
            }
            let tr: f64 = (0..n).map(|i| e[i][i]).sum::<f64>() / n as f64;
            for (i, row) in e.iter_mut().enumerate() {
                row[i] -= tr;
            }
            let a = MatrixPoint { n, entries: e, kind: LieKind::Sl };
            let eig = a.matrix().symmetric_eigenvalues();
            let ks: Vec<usize> = (2..=n).collect();
            for (k, t) in ks.iter().zip(trace_powers(&a, &ks).unwrap()) {
                let s: f64 = eig.iter().map(|l| l.powi(*k as i32)).sum();
                assert!((t - s).abs() < 1e-8, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn coordinate_layouts() {
        assert_eq!(coordinates(LieKind::Sl, 4).unwrap(), ["t2", "t3", "t4"]);
        assert_eq!(coordinates(LieKind::So, 5).unwrap(), ["t2", "t4"]);
        assert_eq!(coordinates(LieKind::So, 4).unwrap(), ["t2", "pf"]);
        assert_eq!(coordinates(LieKind::So, 8).unwrap(), ["t2", "t4", "pf", "t6"]);
        assert!(matches!(parse_objective(LieKind::So, 5, "t3"), Err(Error::Unsupported { .. })));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [4, 5, 6] {
            let a = random_skew(n, &mut rng);
            let vals = invariant_values(&a).unwrap();
            // the block form with the same eigenvalues has the same coordinates
            let eig = a.matrix().complex_eigenvalues();
            let mut ims: Vec<f64> = eig.iter().map(|z| z.im).filter(|v| *v > 1e-9).collect();
            ims.sort_by(f64::total_cmp);
            let mut b = MatrixPoint::block_diagonal(&ims, n).unwrap();
            if n % 2 == 0 && vals[1].signum() != pfaffian(&b).unwrap().signum() {
                b = MatrixPoint::block_diagonal(&[-ims[0]].into_iter().chain(ims[1..].iter().copied()).collect::<Vec<_>>(), n).unwrap();
            }
            for (x, y) in vals.iter().zip(invariant_values(&b).unwrap()) {
                assert!((x - y).abs() < 1e-8, "n={n}");
            }
        }
    }

    #[test]
    fn sl3_cubic_matches_the_matrix_oracle() {
        let cfg = RunConfig::default();
        let f = parse_objective(LieKind::Sl, 3, "t3").unwrap();
        let red = lie_reduce(LieKind::Sl, 3, &f, &Constraint::Sphere(1.0), Sense::Min).unwrap();
        assert_eq!(red.problem.group().to_string(), "A2");
        assert_eq!(red.problem.constraint, Constraint::Principal(vec![0.0, 1.0]));
        let sol = solve_on_strata(&red.problem, &cfg).unwrap();
        assert!((sol.value + 1.0 / 6f64.sqrt()).abs() < 1e-8);
        let a = red.lift_solution(&sol).unwrap().unwrap();
        let t = trace_powers(&a, &[2, 3]).unwrap();
        assert!((t[0] - 1.0).abs() < 1e-8 && (t[1] - sol.value).abs() < 1e-8);
        let o = matrix_oracle(LieKind::Sl, 3, &f, &Constraint::Sphere(1.0), Sense::Min, &cfg).unwrap();
        assert!((o.value - sol.value).abs() < 1e-6, "{} vs {}", o.value, sol.value);
    }

    #[test]
    fn so4_maps_to_two_block_parameters() {
        let cfg = RunConfig::default();
        let f = parse_objective(LieKind::So, 4, "pf").unwrap();
        let red = lie_reduce(LieKind::So, 4, &f, &Constraint::Sphere(2.0), Sense::Max).unwrap();
        assert_eq!(red.problem.group().to_string(), "D2");
        assert_eq!(red.problem.group().ambient_dim, 2);
        let sol = solve_on_strata(&red.problem, &cfg).unwrap();
        // |pf| = |a b| with a^2 + b^2 = 2 peaks at 1
        assert!((sol.value - 1.0).abs() < 1e-8, "{}", sol.value);
        let a = red.lift_solution(&sol).unwrap().unwrap();
        assert!((a.matrix().norm() - 2.0).abs() < 1e-8);
        assert!((pfaffian(&a).unwrap() - 1.0).abs() < 1e-8);
        let o = matrix_oracle(LieKind::So, 4, &f, &Constraint::Sphere(2.0), Sense::Max, &cfg).unwrap();
        assert!((o.value - 1.0).abs() < 1e-6);

        let c = parse_objective(LieKind::Sl, 4, "7").unwrap();
        let red = lie_reduce(LieKind::Sl, 4, &c, &Constraint::Sphere(1.0), Sense::Min).unwrap();
        assert_eq!(solve_on_strata(&red.problem, &cfg).unwrap().value, 7.0);
    }
}

//! Basic invariant sets, Newton rewriting and sparsity bookkeeping.

mod newton;
mod sets;

pub use newton::{elementary_in_power_sums, newton_rewrite};
pub use sets::{basic_invariants, basic_invariants_d_tie, basic_invariants_prefix, f4_pi2, h4_surrogate, BasicInvariantSet, Variant};

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{parse_in, Polynomial};

/// An objective or constraint written in the first `k` basic invariants:
/// the polynomial `F(y_1, ..., y_k)` stands for `F(π_1(x), ..., π_k(x))`.
#[derive(Debug, Clone)]
pub struct SparseObjective {
    pub f: Polynomial,
    pub k: usize,
    pub basis: Arc<BasicInvariantSet>,
}

impl SparseObjective {
    pub fn new(f: Polynomial, basis: Arc<BasicInvariantSet>) -> Result<Self> {
        let k = f.nvars();
        if k == 0 || k > basis.len() {
            return Err(Error::InvalidSparsity { k, n: basis.len() });
        }
        Ok(SparseObjective { f, k, basis })
    }

    /// Parses `F` in `y1..yk`.
    pub fn parse(text: &str, k: usize, basis: Arc<BasicInvariantSet>) -> Result<Self> {
        if k == 0 || k > basis.len() {
            return Err(Error::InvalidSparsity { k, n: basis.len() });
        }
        Self::new(parse_in(text, "y", k)?, basis)
    }

    /// Smallest `k'` such that `F` only involves `y_1..y_k'`.
    pub fn effective_k(&self) -> usize {
        self.f.support_vars().last().map_or(0, |&v| v + 1)
    }

    /// `F(π_1, ..., π_k)` as a polynomial in `x`.
    pub fn composed(&self) -> Result<Polynomial> {
        self.f.compose(&self.basis.polys[..self.k])
    }

    /// Exact (or, for I2, numeric) invariance of the composed polynomial.
    pub fn verify_invariant(&self) -> Result<()> {
        let f = self.composed()?;
        if self.basis.is_invariant(&f)? {
            Ok(())
        } else {
            Err(Error::NotInvariant(format!("F({}) over {}", self.f, self.basis.group)))
        }
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        let y = self.basis.polys[..self.k].iter().map(|p| p.eval(x)).collect::<Result<Vec<_>>>()?;
        self.f.eval(&y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SparsityVerdict {
    /// `d_{k+1} > d_k`, so `R[π_1..π_k]` does not depend on the basic set.
    Independent,
    /// `d_{k+1} = d_k`: the span of the first `k` invariants depends on the
    /// choice of basic set.
    TieAmbiguous,
}

#[derive(Debug, Clone, Serialize)]
pub struct SparsityReport {
    pub group: String,
    pub k: usize,
    pub degree_k: u32,
    pub degree_next: Option<u32>,
    pub verdict: SparsityVerdict,
}

impl fmt::Display for SparsityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.verdict {
            SparsityVerdict::Independent => "independent",
            SparsityVerdict::TieAmbiguous => "tie-ambiguous",
        };
        match self.degree_next {
            Some(d) => write!(f, "{} k={}: {} (d_k={}, d_k+1={})", self.group, self.k, v, self.degree_k, d),
            None => write!(f, "{} k={}: {} (d_k={}, last)", self.group, self.k, v, self.degree_k),
        }
    }
}

/// Whether `k`-sparsity is a property of the ring `R[π_1..π_k]` alone.
pub fn sparsity_report(basis: &BasicInvariantSet, k: usize) -> Result<SparsityReport> {
    let degs = basis.degrees();
    if k == 0 || k > degs.len() {
        return Err(Error::InvalidSparsity { k, n: degs.len() });
    }
    let next = degs.get(k).copied();
    let verdict = if next == Some(degs[k - 1]) { SparsityVerdict::TieAmbiguous } else { SparsityVerdict::Independent };
    Ok(SparsityReport { group: basis.group.to_string(), k, degree_k: degs[k - 1], degree_next: next, verdict })
}

pub fn sparsity_certificate(obj: &SparseObjective) -> SparsityReport {
    sparsity_report(&obj.basis, obj.k).expect("objective sparsity is validated on construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::GroupDescriptor;

    fn set(s: &str) -> Arc<BasicInvariantSet> {
        let g: GroupDescriptor = s.parse().unwrap();
        Arc::new(basic_invariants(&g, Variant::default_for(&g).unwrap()).unwrap())
    }

    #[test]
    fn sparsity_verdicts() {
        let b5 = set("B5");
        assert_eq!(sparsity_report(&b5, 2).unwrap().verdict, SparsityVerdict::Independent);
        let d6 = set("D6");
        assert_eq!(d6.degrees(), vec![2, 4, 6, 6, 8, 10]);
        assert_eq!(sparsity_report(&d6, 3).unwrap().verdict, SparsityVerdict::TieAmbiguous);
        let d5 = set("D5");
        assert_eq!(sparsity_report(&d5, 2).unwrap().verdict, SparsityVerdict::Independent);
        assert!(sparsity_report(&d5, 6).is_err());
    }

    #[test]
    fn composed_objectives_are_invariant() {
        let b3 = set("B3");
        let obj = SparseObjective::parse("y1^2 - 3*y2 + y1*y2", 2, b3.clone()).unwrap();
        obj.verify_invariant().unwrap();
        assert_eq!(obj.effective_k(), 2);
        let x = [0.3, -1.1, 0.7];
        let direct = obj.composed().unwrap().eval(&x).unwrap();
        assert!((obj.eval(&x).unwrap() - direct).abs() < 1e-12);
        assert!(SparseObjective::parse("y4", 4, b3).is_err());
        let i5 = set("I2(5)");
        SparseObjective::parse("y2^2 + y1", 2, i5).unwrap().verify_invariant().unwrap();
    }
}

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::poly::{Coefficient, Polynomial};

/// Singular values below this fraction of the largest (or of 1) count as zero.
pub const RANK_TOL: f64 = 1e-9;

fn check(basics: &[Polynomial], dim: usize, k: usize) -> Result<()> {
    if k + 1 > basics.len() {
        return Err(Error::Precondition(format!("k + 1 = {} exceeds the {} basic invariants", k + 1, basics.len())));
    }
    if let Some(b) = basics.iter().find(|b| b.nvars() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, got: b.nvars() });
    }
    Ok(())
}

/// Rank of `Jac_p(π_1, ..., π_{k+1})` at a point with exact coordinates.
pub fn jacobian_rank_exact(basics: &[Polynomial], p: &[Coefficient], k: usize) -> Result<usize> {
    check(basics, p.len(), k)?;
    let rows = basics[..=k]
        .iter()
        .map(|b| b.gradient().iter().map(|g| g.eval_exact(p)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(rank(&rows))
}

/// Floating-point rank via singular values.
pub fn jacobian_rank(basics: &[Polynomial], p: &[f64], k: usize) -> Result<usize> {
    check(basics, p.len(), k)?;
    let n = p.len();
    let mut m = DMatrix::<f64>::zeros(k + 1, n);
    for (i, b) in basics[..=k].iter().enumerate() {
        for (j, g) in b.gradient().iter().enumerate() {
            m[(i, j)] = g.eval(p)?;
        }
    }
    let sv = m.singular_values();
    let scale = sv.iter().cloned().fold(1.0f64, f64::max);
    Ok(sv.iter().filter(|&&s| s > RANK_TOL * scale).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Coefficient> {
        v.iter().map(|&x| Coefficient::from_int(x)).collect()
    }

    #[test]
    fn vandermonde_ranks() {
        let a: Vec<Polynomial> = (1..=3).map(|i| Polynomial::power_sum(3, i)).collect();
        assert_eq!(jacobian_rank_exact(&a, &q(&[1, 2, 3]), 2).unwrap(), 3);
        assert_eq!(jacobian_rank(&a, &[1.0, 2.0, 3.0], 2).unwrap(), 3);
        assert_eq!(jacobian_rank_exact(&a, &q(&[1, 1, 3]), 2).unwrap(), 2);

        let b: Vec<Polynomial> = (1..=5).map(|i| Polynomial::power_sum(5, 2 * i)).collect();
        assert_eq!(jacobian_rank_exact(&b, &q(&[1, 1, 1, 1, 0]), 1).unwrap(), 1);
        assert_eq!(jacobian_rank(&b, &[1.0, 1.0, 1.0, 1.0, 0.0], 1).unwrap(), 1);
        assert!(jacobian_rank(&b, &[1.0; 5], 5).is_err());
    }
}

//! Reflection arrangements: hyperplanes, flats, strata and the Jacobian
//! rank criterion.

mod flats;
mod jacobian;
mod patterns;

pub use flats::{flat_from_roots, flat_orbits, flats, flats_by_subsets, hyperplanes, Flat};
pub use jacobian::{jacobian_rank, jacobian_rank_exact, RANK_TOL};
pub use patterns::{partitions, patterns, PatternFamily, StratumPattern};

use crate::coxeter::{Family, GroupDescriptor, RootSystem};
use crate::error::{Error, Result};
use crate::linalg::{dot, rank};
use crate::poly::Coefficient;

/// Relative tolerance on `|⟨α,p⟩| / (‖α‖‖p‖)` for numeric stratum membership.
pub const STRATUM_TOL: f64 = 1e-9;

/// The arrangement of a catalog group, with exact roots where they exist.
#[derive(Debug, Clone)]
pub struct Arrangement {
    pub group: GroupDescriptor,
    pub exact: Option<RootSystem<Coefficient>>,
    pub numeric: RootSystem<f64>,
}

impl Arrangement {
    pub fn new(g: &GroupDescriptor) -> Result<Self> {
        if g.family == Family::I2 {
            return Ok(Arrangement { group: g.clone(), exact: None, numeric: RootSystem::numeric(g)? });
        }
        let exact = RootSystem::exact(g)?;
        let numeric = exact.to_numeric();
        Ok(Arrangement { group: g.clone(), exact: Some(exact), numeric })
    }

    pub fn dim(&self) -> usize {
        self.numeric.dim
    }

    pub fn hyperplane_count(&self) -> usize {
        self.numeric.positive.len()
    }

    /// Rank of the positive roots at the given positions, exactly when possible.
    fn root_rank(&self, which: &[usize]) -> usize {
        match &self.exact {
            Some(rs) => rank(&which.iter().map(|&i| rs.roots[rs.positive[i]].clone()).collect::<Vec<_>>()),
            None => rank(&which.iter().map(|&i| self.numeric.roots[self.numeric.positive[i]].clone()).collect::<Vec<_>>()),
        }
    }

    /// Positions of the positive roots orthogonal to `p` (relative tolerance).
    pub fn vanishing_roots(&self, p: &[f64]) -> Result<Vec<usize>> {
        self.vanishing_roots_tol(p, STRATUM_TOL)
    }

    pub fn vanishing_roots_tol(&self, p: &[f64], tol: f64) -> Result<Vec<usize>> {
        if p.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: p.len() });
        }
        let pn = p.iter().map(|x| x * x).sum::<f64>().sqrt();
        Ok((0..self.numeric.positive.len())
            .filter(|&i| {
                let a = &self.numeric.roots[self.numeric.positive[i]];
                let an = dot(a, a).sqrt();
                dot(a, p).abs() <= tol * an * pn
            })
            .collect())
    }

    /// Smallest `i` with `p ∈ H_i`: the ambient dimension minus the rank of
    /// the roots vanishing at `p`. For A this counts the fixed line.
    pub fn stratum_dim(&self, p: &[f64]) -> Result<usize> {
        self.stratum_dim_tol(p, STRATUM_TOL)
    }

    /// Same with a caller-chosen relative tolerance, for points known only
    /// to the accuracy of an optimizer.
    pub fn stratum_dim_tol(&self, p: &[f64], tol: f64) -> Result<usize> {
        let v = self.vanishing_roots_tol(p, tol)?;
        Ok(self.dim() - self.root_rank(&v))
    }

    /// Exact version for points with coordinates in Q(√5).
    pub fn stratum_dim_exact(&self, p: &[Coefficient]) -> Result<usize> {
        let rs = self.exact.as_ref().ok_or_else(|| Error::NotExact(self.group.to_string()))?;
        if p.len() != rs.dim {
            return Err(Error::DimensionMismatch { expected: rs.dim, got: p.len() });
        }
        let v: Vec<usize> =
            (0..rs.positive.len()).filter(|&i| dot(&rs.roots[rs.positive[i]], p).is_zero()).collect();
        Ok(rs.dim - self.root_rank(&v))
    }
}

pub fn stratum_dim(g: &GroupDescriptor, p: &[f64]) -> Result<usize> {
    Arrangement::new(g)?.stratum_dim(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stratum_dims() {
        let d5 = Arrangement::new(&"D5".parse().unwrap()).unwrap();
        assert_eq!(d5.stratum_dim(&[1.0, 1.0, 1.0, 1.0, 0.0]).unwrap(), 2);
        let b5 = Arrangement::new(&"B5".parse().unwrap()).unwrap();
        assert_eq!(b5.stratum_dim(&[1.0, 1.0, 1.0, 1.0, 0.0]).unwrap(), 1);
        let b3 = Arrangement::new(&"B3".parse().unwrap()).unwrap();
        assert_eq!(b3.stratum_dim(&[1.0, 2.0, 3.0]).unwrap(), 3);
        for s in ["B3", "F4", "H4", "I2(7)", "D4"] {
            let a = Arrangement::new(&s.parse().unwrap()).unwrap();
            assert_eq!(a.stratum_dim(&vec![0.0; a.dim()]).unwrap(), 0, "{s}");
        }
        let q = |v: &[i64]| v.iter().map(|&x| Coefficient::from_int(x)).collect::<Vec<_>>();
        assert_eq!(d5.stratum_dim_exact(&q(&[1, 1, 1, 1, 0])).unwrap(), 2);
        let a2 = Arrangement::new(&"A2".parse().unwrap()).unwrap();
        assert_eq!(a2.stratum_dim_exact(&q(&[1, 1, 2])).unwrap(), 2);
        assert_eq!(a2.stratum_dim(&[0.5, 0.5, 0.5]).unwrap(), 1);
    }
}

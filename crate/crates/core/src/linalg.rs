//! Row reduction over exact and floating-point scalars.

use std::fmt::Debug;
use std::hash::Hash;

use crate::poly::Coefficient;

/// Scalars the arrangement code can row-reduce over.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    /// Hashable canonical form used to deduplicate flats.
    type Key: Clone + Debug + Hash + Eq + Send + Sync;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Division by a nonzero scalar.
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn to_f64(&self) -> f64;
    fn key(&self) -> Self::Key;
    /// Pivot preference; larger is better.
    fn pivot_weight(&self) -> f64;
    /// Equality up to the scalar type's resolution.
    fn close(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl Field for Coefficient {
    type Key = Coefficient;

    fn zero() -> Self {
        Coefficient::zero()
    }
    fn one() -> Self {
        Coefficient::one()
    }
    fn from_i64(n: i64) -> Self {
        Coefficient::from_int(n)
    }
    fn is_zero(&self) -> bool {
        Coefficient::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self.checked_div(rhs).expect("pivot is nonzero")
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_f64(&self) -> f64 {
        Coefficient::to_f64(self)
    }
    fn key(&self) -> Self::Key {
        self.clone()
    }
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

/// Absolute zero threshold for floating-point row reduction.
pub const FLOAT_EPS: f64 = 1e-9;

impl Field for f64 {
    type Key = i64;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn is_zero(&self) -> bool {
        self.abs() < FLOAT_EPS
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn key(&self) -> i64 {
        let k = (self * 1e7).round() as i64;
        if k == 0 {
            0
        } else {
            k
        }
    }
    fn pivot_weight(&self) -> f64 {
        self.abs()
    }
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// Reduced row-echelon form in place; zero rows are dropped. Returns the
/// pivot columns.
pub fn rref<F: Field>(rows: &mut Vec<Vec<F>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let best = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .max_by(|&i, &j| rows[i][c].pivot_weight().total_cmp(&rows[j][c].pivot_weight()));
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let inv = F::one().div(&rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = v.mul(&inv);
        }
        rows[r][c] = F::one();
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in 0..ncols {
                let delta = f.mul(&rows[r][j]);
                rows[i][j] = rows[i][j].sub(&delta);
            }
            rows[i][c] = F::zero();
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    for row in rows.iter_mut() {
        for v in row.iter_mut() {
            if v.is_zero() {
                *v = F::zero();
            }
        }
    }
    pivots
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<F: Field>(m: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    let mut aug: Vec<Vec<F>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols).map(|j| (0..inner).fold(F::zero(), |acc, k| acc.add(&row[k].mul(&b[k][j])))).collect()
        })
        .collect()
}

pub fn transpose<F: Field>(a: &[Vec<F>]) -> Vec<Vec<F>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : rows·x = 0}` in `ncols` unknowns.
pub fn kernel_basis<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = m[r][f].neg();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Coefficient {
        Coefficient::from_int(n)
    }

    #[test]
    fn exact_rank_and_kernel() {
        let rows = vec![vec![q(1), q(-1), q(0)], vec![q(0), q(1), q(-1)], vec![q(1), q(0), q(-1)]];
        assert_eq!(rank(&rows), 2);
        let k = kernel_basis(&rows, 3);
        assert_eq!(k, vec![vec![q(1), q(1), q(1)]]);
    }

    #[test]
    fn float_rank_tolerates_noise() {
        let rows = vec![vec![1.0, 2.0], vec![2.0, 4.0 + 1e-12]];
        assert_eq!(rank(&rows), 1);
        let mut m = vec![vec![0.0, 2.0], vec![3.0, 0.0]];
        assert_eq!(rref(&mut m), vec![0, 1]);
    }

    #[test]
    fn exact_inverse() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
        assert!(inverse(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
    }
}

use std::collections::HashMap;

use rayon::prelude::*;

use super::catalog::GroupDescriptor;
use super::roots::RootSystem;
use crate::error::{Error, Result};
use crate::linalg::{inverse, kernel_basis, mat_mul, transpose, Field};
use crate::poly::Coefficient;

/// Largest group order [`FiniteGroup::generate`] will enumerate.
pub const ORDER_CAP: u64 = 1_000_000;

pub type Matrix<F> = Vec<Vec<F>>;

/// A finite reflection group stored as permutations of its roots, with
/// matrices reconstructed on demand.
#[derive(Debug, Clone)]
pub struct FiniteGroup<F: Field> {
    pub roots: RootSystem<F>,
    perms: Vec<Vec<u16>>,
    /// `[simple roots | fixed-space basis]` as columns, inverted.
    basis_inv: Matrix<F>,
    fixed: Vec<Vec<F>>,
}

impl<F: Field> FiniteGroup<F> {
    /// Breadth-first closure over the simple reflections.
    pub fn generate(roots: RootSystem<F>) -> Result<Self> {
        let order = roots.group.order();
        if order > ORDER_CAP as u128 {
            return Err(Error::OrderCap { order: order.min(u64::MAX as u128) as u64, cap: ORDER_CAP });
        }
        let gens: Vec<Vec<u16>> = roots.simple.iter().map(|&a| roots.reflection_permutation(a)).collect();
        let identity: Vec<u16> = (0..roots.roots.len() as u16).collect();
        let mut index: HashMap<Vec<u16>, usize> = HashMap::new();
        index.insert(identity.clone(), 0);
        let mut perms = vec![identity];
        let mut head = 0;
        while head < perms.len() {
            for g in &gens {
                // s∘w as a map on root indices
                let next: Vec<u16> = perms[head].iter().map(|&i| g[i as usize]).collect();
                if !index.contains_key(&next) {
                    index.insert(next.clone(), perms.len());
                    perms.push(next);
                }
            }
            head += 1;
        }

        let simple = roots.simple_roots();
        let fixed = kernel_basis(&simple, roots.dim);
        let mut cols = simple.clone();
        cols.extend(fixed.iter().cloned());
        let basis_inv = inverse(&transpose(&cols)).ok_or_else(|| Error::Precondition("simple roots are dependent".into()))?;
        Ok(FiniteGroup { roots, perms, basis_inv, fixed })
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.roots.group
    }

    pub fn permutation(&self, i: usize) -> &[u16] {
        &self.perms[i]
    }

    /// Matrix of element `i`: sends each simple root to its image root and
    /// fixes the orthogonal complement of the root span.
    pub fn matrix(&self, i: usize) -> Matrix<F> {
        let p = &self.perms[i];
        let mut cols: Vec<Vec<F>> = self.roots.simple.iter().map(|&a| self.roots.roots[p[a] as usize].clone()).collect();
        cols.extend(self.fixed.iter().cloned());
        mat_mul(&transpose(&cols), &self.basis_inv)
    }

    /// Selected rows of the matrix of element `i`.
    pub fn matrix_rows(&self, i: usize, rows: &[usize]) -> Matrix<F> {
        let p = &self.perms[i];
        let n = self.roots.dim;
        rows.iter()
            .map(|&r| {
                let coords: Vec<F> = self
                    .roots
                    .simple
                    .iter()
                    .map(|&a| self.roots.roots[p[a] as usize][r].clone())
                    .chain(self.fixed.iter().map(|f| f[r].clone()))
                    .collect();
                (0..n)
                    .map(|j| coords.iter().zip(&self.basis_inv).fold(F::zero(), |acc, (c, row)| acc.add(&c.mul(&row[j]))))
                    .collect()
            })
            .collect()
    }

    pub fn matrices(&self) -> Vec<Matrix<F>> {
        (0..self.order()).into_par_iter().map(|i| self.matrix(i)).collect()
    }

    pub fn generators(&self) -> Vec<Matrix<F>> {
        self.roots.simple_reflection_matrices()
    }
}

impl FiniteGroup<Coefficient> {
    pub fn exact(g: &GroupDescriptor) -> Result<Self> {
        Self::generate(RootSystem::exact(g)?)
    }
}

impl FiniteGroup<f64> {
    pub fn numeric(g: &GroupDescriptor) -> Result<Self> {
        Self::generate(RootSystem::numeric(g)?)
    }
}

/// All elements of `g` as matrices. Exact for every family with exact roots,
/// floating point for I2(m).
pub fn generate_group(g: &GroupDescriptor) -> Result<Vec<Matrix<Coefficient>>> {
    Ok(FiniteGroup::exact(g)?.matrices())
}

pub fn is_orthogonal<F: Field>(m: &[Vec<F>]) -> bool {
    let p = mat_mul(&transpose(m), m);
    p.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, v)| v.close(&if i == j { F::one() } else { F::zero() })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_degree_products() {
        for s in ["A1", "A2", "A3", "B2", "B3", "D4", "F4", "H3"] {
            let g: GroupDescriptor = s.parse().unwrap();
            assert_eq!(FiniteGroup::exact(&g).unwrap().order() as u128, g.order(), "{s}");
        }
        for m in [3, 4, 7] {
            let g = GroupDescriptor::i2(m).unwrap();
            assert_eq!(FiniteGroup::numeric(&g).unwrap().order(), 2 * m);
        }
    }

    #[test]
    fn matrices_are_orthogonal_and_closed() {
        let grp = FiniteGroup::exact(&"B3".parse().unwrap()).unwrap();
        let ms = grp.matrices();
        assert!(ms.iter().all(|m| is_orthogonal(m)));
        for a in ms.iter().step_by(7) {
            for b in ms.iter().step_by(5) {
                assert!(ms.contains(&mat_mul(a, b)));
            }
        }
        for i in [0, 5, 17] {
            assert_eq!(grp.matrix_rows(i, &[2, 0]), vec![ms[i][2].clone(), ms[i][0].clone()]);
        }
        let a2 = FiniteGroup::exact(&"A2".parse().unwrap()).unwrap();
        let ms = a2.matrices();
        assert_eq!(ms.len(), 6);
        // permutation matrices on R^3
        for m in &ms {
            assert!(m.iter().all(|r| r.iter().filter(|v| v.is_one()).count() == 1));
        }
    }

    #[test]
    fn order_cap_is_enforced() {
        let e8: GroupDescriptor = "A9".parse().unwrap();
        assert!(matches!(FiniteGroup::exact(&e8), Err(Error::OrderCap { .. })));
    }
}

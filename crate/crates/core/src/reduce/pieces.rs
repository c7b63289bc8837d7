use std::cmp::Ordering;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::arrangement::{flat_orbits, flats, patterns, Arrangement, Flat, PatternFamily, StratumPattern};
use crate::coxeter::GroupDescriptor;
use crate::error::Result;
use crate::linalg::Field;
use crate::poly::Coefficient;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PieceKind {
    Pattern(StratumPattern),
    Flat {
        dim: usize,
        orbit_size: usize,
        /// Positions of the positive roots vanishing on the flat.
        normals: Vec<usize>,
    },
    Space,
}

/// A linear subspace `x = B t` standing for one group orbit of pieces of
/// the `k`-stratum.
#[derive(Debug, Clone)]
pub struct Piece {
    pub kind: PieceKind,
    /// `n × j`, columns spanning the piece.
    pub basis: DMatrix<f64>,
    /// The columns over Q(√5), when the group has exact roots.
    pub exact_basis: Option<Vec<Vec<Coefficient>>>,
    order: Vec<usize>,
}

impl Piece {
    pub fn free_vars(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.nrows()
    }

    pub fn embed(&self, t: &[f64]) -> Vec<f64> {
        (0..self.ambient()).map(|i| (0..t.len()).map(|j| self.basis[(i, j)] * t[j]).sum()).collect()
    }

    pub fn label(&self) -> String {
        match &self.kind {
            PieceKind::Pattern(p) => p.to_string(),
            PieceKind::Flat { dim, orbit_size, .. } => format!("flat dim={dim} orbit={orbit_size}"),
            PieceKind::Space => "space".to_string(),
        }
    }

    /// Smallest `j` first, then lexicographic multiplicities (or flat order).
    pub fn preference(&self, other: &Piece) -> Ordering {
        self.free_vars().cmp(&other.free_vars()).then_with(|| self.order.cmp(&other.order))
    }

    pub fn space(n: usize) -> Piece {
        let exact = (0..n).map(|j| (0..n).map(|i| if i == j { Coefficient::one() } else { Coefficient::zero() }).collect()).collect();
        Piece { kind: PieceKind::Space, basis: DMatrix::identity(n, n), exact_basis: Some(exact), order: vec![] }
    }

    pub fn from_pattern(p: &StratumPattern) -> Piece {
        let rows = p.embedding_matrix();
        let j = p.free_vars();
        let basis = DMatrix::from_fn(p.n, j, |i, c| rows[i][c]);
        let exact = (0..j)
            .map(|c| rows.iter().map(|r| Coefficient::from_int(r[c] as i64)).collect())
            .collect();
        Piece { kind: PieceKind::Pattern(p.clone()), basis, exact_basis: Some(exact), order: p.multiplicities.clone() }
    }

    fn from_flat<F: Field>(f: &Flat<F>, orbit_size: usize, index: usize, exact: Option<Vec<Vec<Coefficient>>>) -> Piece {
        let n = f.basis.first().map_or(0, Vec::len);
        let basis = DMatrix::from_fn(n, f.dim, |i, c| f.basis[c][i].to_f64());
        Piece {
            kind: PieceKind::Flat { dim: f.dim, orbit_size, normals: f.normals.clone() },
            basis,
            exact_basis: exact,
            order: vec![index],
        }
    }
}

/// Pieces covering the `k`-stratum up to the group action: the sign and
/// multiplicity patterns for A, B and D, and one representative per orbit
/// of `k`-dimensional flats otherwise.
pub fn pieces(g: &GroupDescriptor, k: usize) -> Result<Vec<Piece>> {
    let n = g.ambient_dim;
    if let Some(fam) = PatternFamily::of(g) {
        return Ok(patterns(fam, n, k.min(n))?.iter().map(Piece::from_pattern).collect());
    }
    if k >= n {
        return Ok(vec![Piece::space(n)]);
    }
    let arr = Arrangement::new(g)?;
    let out = match &arr.exact {
        Some(rs) => flat_orbits(rs, &flats(rs, k))
            .into_iter()
            .enumerate()
            .map(|(i, (f, size))| {
                let exact = f.basis.clone();
                Piece::from_flat(&f, size, i, Some(exact))
            })
            .collect(),
        None => flat_orbits(&arr.numeric, &flats(&arr.numeric, k))
            .into_iter()
            .enumerate()
            .map(|(i, (f, size))| Piece::from_flat(&f, size, i, None))
            .collect(),
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn piece_counts() {
        let f4: GroupDescriptor = "F4".parse().unwrap();
        let ps = pieces(&f4, 2).unwrap();
        assert!(ps.iter().all(|p| p.free_vars() == 2));
        assert!(!ps.is_empty());
        let i6 = GroupDescriptor::i2(6).unwrap();
        assert_eq!(pieces(&i6, 1).unwrap().len(), 2);
        assert_eq!(pieces(&i6, 2).unwrap().len(), 1);
        let b2: GroupDescriptor = "B2".parse().unwrap();
        let ps = pieces(&b2, 1).unwrap();
        assert_eq!(ps.len(), 3);
        assert_eq!(ps[0].embed(&[2.0]), vec![2.0, 2.0]);
    }
}

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::coxeter::RootSystem;
use crate::linalg::{dot, kernel_basis, rref, Field};

/// An intersection of reflection hyperplanes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Flat<F: Field> {
    /// Dimension in the ambient space.
    pub dim: usize,
    /// Reduced row-echelon basis of the flat itself.
    pub basis: Vec<Vec<F>>,
    /// Reduced row-echelon basis of the span of the vanishing roots.
    pub normal_space: Vec<Vec<F>>,
    /// Positions in `RootSystem::positive` of every root vanishing on the
    /// flat, ascending. Two flats are equal iff these lists are.
    pub normals: Vec<usize>,
}

impl<F: Field> Flat<F> {
    pub fn codim(&self) -> usize {
        self.normal_space.len()
    }

    pub fn contains(&self, p: &[F]) -> bool {
        self.normal_space.iter().all(|r| dot(r, p).is_zero())
    }
}

/// Builds the flat cut out by the given roots (positions in the positive list).
pub fn flat_from_roots<F: Field>(rs: &RootSystem<F>, roots: &[usize]) -> Flat<F> {
    let mut normal: Vec<Vec<F>> = roots.iter().map(|&i| rs.roots[rs.positive[i]].clone()).collect();
    if normal.is_empty() {
        normal.push(vec![F::zero(); rs.dim]);
    }
    rref(&mut normal);
    let basis = {
        let mut b = kernel_basis(&normal, rs.dim);
        rref(&mut b);
        b
    };
    let normals = (0..rs.positive.len())
        .filter(|&i| {
            let alpha = &rs.roots[rs.positive[i]];
            basis.iter().all(|v| dot(alpha, v).is_zero())
        })
        .collect();
    Flat { dim: rs.dim - normal.len(), basis, normal_space: normal, normals }
}

/// One flat per positive root.
pub fn hyperplanes<F: Field>(rs: &RootSystem<F>) -> Vec<Flat<F>> {
    (0..rs.positive.len()).map(|i| flat_from_roots(rs, &[i])).collect()
}

/// All flats of the given ambient dimension, built level by level by
/// intersecting with one more hyperplane and deduplicating.
pub fn flats<F: Field>(rs: &RootSystem<F>, dim: usize) -> Vec<Flat<F>> {
    if dim > rs.dim {
        return Vec::new();
    }
    let whole = flat_from_roots(rs, &[]);
    let mut level = vec![whole];
    while let Some(first) = level.first() {
        if first.dim <= dim {
            break;
        }
        let candidates: Vec<Flat<F>> = level
            .par_iter()
            .flat_map_iter(|f| {
                (0..rs.positive.len()).filter(|i| !f.normals.contains(i)).map(move |i| {
                    let mut roots = f.normals.clone();
                    roots.push(i);
                    flat_from_roots(rs, &roots)
                })
            })
            .collect();
        let mut seen = HashSet::new();
        let next: Vec<Flat<F>> = candidates.into_iter().filter(|f| seen.insert(f.normals.clone())).collect();
        if next.is_empty() {
            // the essential rank is reached before `dim`
            return Vec::new();
        }
        level = next;
    }
    level.sort_by(|a, b| a.normals.cmp(&b.normals));
    level.into_iter().filter(|f| f.dim == dim).collect()
}

/// Independent count: every set of `codim` positive roots of full rank,
/// deduplicated by closure. Exponential; meant as a cross-check.
pub fn flats_by_subsets<F: Field>(rs: &RootSystem<F>, dim: usize) -> Vec<Flat<F>> {
    let codim = rs.dim.saturating_sub(dim);
    let m = rs.positive.len();
    let mut seen: HashMap<Vec<usize>, Flat<F>> = HashMap::new();
    let mut idx: Vec<usize> = (0..codim).collect();
    if codim > m {
        return Vec::new();
    }
    loop {
        let f = flat_from_roots(rs, &idx);
        if f.dim == dim {
            seen.entry(f.normals.clone()).or_insert(f);
        }
        // next combination
        let mut i = codim;
        loop {
            if i == 0 {
                let mut out: Vec<Flat<F>> = seen.into_values().collect();
                out.sort_by(|a, b| a.normals.cmp(&b.normals));
                return out;
            }
            i -= 1;
            if idx[i] < m - codim + i {
                idx[i] += 1;
                for j in i + 1..codim {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Permutation of positive-root positions induced by the reflection in the
/// `s`-th simple root, ignoring signs.
fn positive_action<F: Field>(rs: &RootSystem<F>, s: usize) -> Vec<usize> {
    let perm = rs.reflection_permutation(rs.simple[s]);
    let pos_of: HashMap<usize, usize> = rs.positive.iter().enumerate().map(|(p, &r)| (r, p)).collect();
    rs.positive
        .iter()
        .map(|&r| {
            let img = perm[r] as usize;
            match pos_of.get(&img) {
                Some(&p) => p,
                None => {
                    let neg: Vec<F> = rs.roots[img].iter().map(F::neg).collect();
                    pos_of[&rs.find(&neg).expect("negatives of roots are roots")]
                }
            }
        })
        .collect()
}

/// Splits flats into orbits under the group; returns one representative per
/// orbit (the first in the input order) with the orbit size.
pub fn flat_orbits<F: Field>(rs: &RootSystem<F>, flats: &[Flat<F>]) -> Vec<(Flat<F>, usize)> {
    let actions: Vec<Vec<usize>> = (0..rs.simple.len()).map(|s| positive_action(rs, s)).collect();
    let index: HashMap<Vec<usize>, usize> = flats.iter().enumerate().map(|(i, f)| (f.normals.clone(), i)).collect();
    let mut orbit_of = vec![usize::MAX; flats.len()];
    let mut out = Vec::new();
    for start in 0..flats.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        orbit_of[start] = id;
        let mut stack = vec![start];
        let mut size = 1;
        while let Some(f) = stack.pop() {
            for act in &actions {
                let mut img: Vec<usize> = flats[f].normals.iter().map(|&i| act[i]).collect();
                img.sort_unstable();
                if let Some(&j) = index.get(&img) {
                    if orbit_of[j] == usize::MAX {
                        orbit_of[j] = id;
                        size += 1;
                        stack.push(j);
                    }
                }
            }
        }
        out.push((flats[start].clone(), size));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::GroupDescriptor;
    use crate::poly::Coefficient;

    fn rs(s: &str) -> RootSystem<Coefficient> {
        RootSystem::exact(&s.parse::<GroupDescriptor>().unwrap()).unwrap()
    }

    #[test]
    fn hyperplane_counts() {
        assert_eq!(hyperplanes(&rs("B3")).len(), 9);
        assert_eq!(hyperplanes(&rs("H3")).len(), 15);
        assert_eq!(hyperplanes(&rs("A1")).len(), 1);
    }

    #[test]
    fn small_flat_lattices() {
        let a2 = rs("A2");
        assert_eq!(flats(&a2, 2).len(), 3);
        let line = flats(&a2, 1);
        assert_eq!(line.len(), 1);
        assert_eq!(line[0].basis, vec![vec![Coefficient::one(); 3]]);
        assert_eq!(flats(&a2, 0).len(), 0);
        assert_eq!(flats(&rs("B2"), 0).len(), 1);
        assert_eq!(flats(&rs("B3"), 1).len(), 13);
    }

    #[test]
    fn two_enumerations_agree() {
        for (s, dim) in [("F4", 2), ("F4", 1), ("H3", 1), ("D4", 2)] {
            let r = rs(s);
            let a: Vec<Vec<usize>> = flats(&r, dim).into_iter().map(|f| f.normals).collect();
            let b: Vec<Vec<usize>> = flats_by_subsets(&r, dim).into_iter().map(|f| f.normals).collect();
            assert_eq!(a, b, "{s} dim {dim}");
        }
    }

    #[test]
    fn hyperplane_orbits_follow_root_lengths() {
        for (s, count) in [("B2", 2), ("B3", 2), ("A3", 1), ("D4", 1), ("F4", 2), ("H3", 1)] {
            let r = rs(s);
            assert_eq!(flat_orbits(&r, &hyperplanes(&r)).len(), count, "{s}");
        }
        let i2 = RootSystem::numeric(&GroupDescriptor::i2(6).unwrap()).unwrap();
        assert_eq!(flat_orbits(&i2, &hyperplanes(&i2)).len(), 2);
        let i2 = RootSystem::numeric(&GroupDescriptor::i2(5).unwrap()).unwrap();
        assert_eq!(flat_orbits(&i2, &hyperplanes(&i2)).len(), 1);
    }
}

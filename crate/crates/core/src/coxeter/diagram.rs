use serde::{Deserialize, Serialize};

use super::catalog::{Family, GroupDescriptor};

/// Coxeter graph on the simple roots. Edges carry the bond label `m_ij >= 3`;
/// absent edges mean `m_ij = 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinDiagram {
    pub nodes: usize,
    /// `(i, j, m)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize, u32)>,
}

impl DynkinDiagram {
    pub fn new(nodes: usize, edges: impl IntoIterator<Item = (usize, usize, u32)>) -> Self {
        let mut edges: Vec<(usize, usize, u32)> =
            edges.into_iter().filter(|e| e.2 > 2).map(|(i, j, m)| (i.min(j), i.max(j), m)).collect();
        edges.sort_unstable();
        edges.dedup();
        DynkinDiagram { nodes, edges }
    }

    /// Standard labelling: chains left to right, B/F4 with the short roots
    /// last, D with the fork on the final two nodes, H with the 5-bond
    /// first, E in Bourbaki numbering (node 2 hangs off node 4).
    pub fn of(g: &GroupDescriptor) -> Self {
        let chain = |n: usize| (1..n).map(|i| (i - 1, i, 3)).collect::<Vec<_>>();
        let n = g.rank;
        match g.family {
            Family::A => Self::new(n, chain(n)),
            Family::B => {
                let mut e = chain(n);
                if let Some(last) = e.last_mut() {
                    last.2 = 4;
                }
                Self::new(n, e)
            }
            Family::D => {
                if n == 2 {
                    return Self::new(2, []);
                }
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1, 3));
                Self::new(n, e)
            }
            Family::I2 => Self::new(2, [(0, 1, g.param as u32)]),
            Family::H3 => Self::new(3, [(0, 1, 5), (1, 2, 3)]),
            Family::H4 => Self::new(4, [(0, 1, 5), (1, 2, 3), (2, 3, 3)]),
            Family::F4 => Self::new(4, [(0, 1, 3), (1, 2, 4), (2, 3, 3)]),
            Family::E6 | Family::E7 | Family::E8 => {
                // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4 (0-based below)
                let mut e = vec![(0, 2, 3), (1, 3, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1, 3)));
                Self::new(n, e)
            }
        }
    }

    pub fn bond(&self, i: usize, j: usize) -> u32 {
        let (a, b) = (i.min(j), i.max(j));
        self.edges.iter().find(|e| e.0 == a && e.1 == b).map_or(2, |e| e.2)
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b, _)| if a == i { Some(b) } else if b == i { Some(a) } else { None })
            .collect()
    }

    /// Connected components of the subdiagram induced on `nodes`, each sorted.
    pub fn components(&self, nodes: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.nodes];
        let inside = |v: usize| nodes.contains(&v);
        let mut sorted = nodes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut out = Vec::new();
        for &start in &sorted {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if inside(w) && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The subdiagram on `nodes`, relabelled `0..nodes.len()` in the given order.
    pub fn induced(&self, nodes: &[usize]) -> DynkinDiagram {
        let pos = |v: usize| nodes.iter().position(|&u| u == v);
        DynkinDiagram::new(
            nodes.len(),
            self.edges.iter().filter_map(|&(a, b, m)| Some((pos(a)?, pos(b)?, m))),
        )
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.nodes).collect();
        self.components(&all).len() <= 1
    }

    /// Bond label from `cos^2` of the angle between two simple roots.
    pub fn bond_from_cos2(c2: f64) -> u32 {
        if c2 < 1e-9 {
            return 2;
        }
        let angle = c2.sqrt().min(1.0).acos();
        (std::f64::consts::PI / angle).round() as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_diagrams_are_connected_trees() {
        for s in ["A1", "A5", "B2", "B6", "D2", "D3", "D7", "I2(9)", "H3", "H4", "F4", "E6", "E7", "E8"] {
            let g: GroupDescriptor = s.parse().unwrap();
            let d = DynkinDiagram::of(&g);
            assert_eq!(d.nodes, g.rank);
            if g.family != Family::D || g.rank > 2 {
                assert!(d.is_connected(), "{s}");
                assert_eq!(d.edges.len(), g.rank - 1, "{s}");
            }
        }
    }

    #[test]
    fn e8_minus_branch_node() {
        let d = DynkinDiagram::of(&"E8".parse().unwrap());
        let rest: Vec<usize> = (0..8).filter(|&v| v != 3).collect();
        let sizes: Vec<usize> = d.components(&rest).iter().map(Vec::len).collect();
        let mut s = sizes.clone();
        s.sort_unstable();
        assert_eq!(s, vec![1, 2, 4]);
    }

    #[test]
    fn bonds_from_angles() {
        assert_eq!(DynkinDiagram::bond_from_cos2(0.0), 2);
        assert_eq!(DynkinDiagram::bond_from_cos2(0.25), 3);
        assert_eq!(DynkinDiagram::bond_from_cos2(0.5), 4);
        assert_eq!(DynkinDiagram::bond_from_cos2((3.0 + 5f64.sqrt()) / 8.0), 5);
        assert_eq!(DynkinDiagram::bond_from_cos2(0.75), 6);
        let c = (std::f64::consts::PI / 11.0).cos();
        assert_eq!(DynkinDiagram::bond_from_cos2(c * c), 11);
    }
}

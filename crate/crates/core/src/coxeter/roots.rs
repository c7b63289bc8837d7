use super::catalog::{Family, GroupDescriptor};
use super::diagram::DynkinDiagram;
use crate::error::{Error, Result};
use crate::linalg::{dot, Field};
use crate::poly::Coefficient;

/// A root system with a chosen positive and simple system. Roots are stored
/// in full (both signs); `simple` is ordered to match [`DynkinDiagram::of`].
#[derive(Debug, Clone)]
pub struct RootSystem<F: Field> {
    pub group: GroupDescriptor,
    pub dim: usize,
    pub roots: Vec<Vec<F>>,
    pub positive: Vec<usize>,
    pub simple: Vec<usize>,
}

fn unit<F: Field>(n: usize, i: usize, s: i64) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::from_i64(s);
    v
}

fn with_negatives<F: Field>(mut pos: Vec<Vec<F>>) -> Vec<Vec<F>> {
    let neg: Vec<Vec<F>> = pos.iter().map(|v| v.iter().map(F::neg).collect()).collect();
    pos.extend(neg);
    pos
}

fn pm_pairs<F: Field>(n: usize, plus: bool) -> Vec<Vec<F>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = unit::<F>(n, i, 1);
            v[j] = F::from_i64(if plus { 1 } else { -1 });
            out.push(v);
        }
    }
    out
}

/// All sign choices on the nonzero entries of `v`, in a fixed order.
fn all_signs(v: &[Coefficient]) -> Vec<Vec<Coefficient>> {
    let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    (0..1u32 << nz.len())
        .map(|mask| {
            let mut w = v.to_vec();
            for (b, &i) in nz.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    w[i] = -&w[i];
                }
            }
            w
        })
        .collect()
}

fn even_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if cur.len() == n {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if cur[i] > cur[j] {
                        inv += 1;
                    }
                }
            }
            if inv % 2 == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn dedup_push(out: &mut Vec<Vec<Coefficient>>, v: Vec<Coefficient>) {
    if !out.contains(&v) {
        out.push(v);
    }
}

fn icosian_roots(n: usize) -> Vec<Vec<Coefficient>> {
    let half = Coefficient::from_frac(1, 2);
    let phi = Coefficient::phi();
    let phi_inv = &phi - &Coefficient::one();
    let mut out: Vec<Vec<Coefficient>> = Vec::new();
    for i in 0..n {
        dedup_push(&mut out, unit(n, i, 1));
        dedup_push(&mut out, unit(n, i, -1));
    }
    if n == 4 {
        for s in all_signs(&vec![half.clone(); 4]) {
            dedup_push(&mut out, s);
        }
    }
    let mut base = vec![&phi * &half, half.clone(), &phi_inv * &half];
    base.resize(n, Coefficient::zero());
    for perm in even_permutations(n) {
        let permuted: Vec<Coefficient> = perm.iter().map(|&p| base[p].clone()).collect();
        for s in all_signs(&permuted) {
            dedup_push(&mut out, s);
        }
    }
    out
}

/// Positivity functional with pairwise distinct power-of-two weights.
fn functional<F: Field>(n: usize) -> Vec<F> {
    (0..n).map(|i| F::from_i64(1i64 << (n - 1 - i))).collect()
}

impl<F: Field> RootSystem<F> {
    fn assemble(group: GroupDescriptor, dim: usize, roots: Vec<Vec<F>>, functional: Vec<F>) -> Result<Self> {
        let mut positive = Vec::new();
        for (i, r) in roots.iter().enumerate() {
            let c = dot(&functional, r);
            if c.is_zero() {
                return Err(Error::Precondition(format!("positivity functional vanishes on a root of {group}")));
            }
            if c.to_f64() > 0.0 {
                positive.push(i);
            }
        }
        let mut rs = RootSystem { group, dim, roots, positive, simple: Vec::new() };
        let candidates: Vec<usize> = rs
            .positive
            .iter()
            .copied()
            .filter(|&a| {
                rs.positive.iter().all(|&b| {
                    if a == b {
                        return true;
                    }
                    let img = rs.reflect(a, &rs.roots[b]);
                    rs.find(&img).is_some_and(|k| rs.positive.contains(&k))
                })
            })
            .collect();
        let target = DynkinDiagram::of(&rs.group);
        rs.simple = rs
            .order_simple(&candidates, &target)
            .ok_or_else(|| Error::Unclassifiable(format!("simple system of {} does not match its diagram", rs.group)))?;
        Ok(rs)
    }

    fn order_simple(&self, cands: &[usize], target: &DynkinDiagram) -> Option<Vec<usize>> {
        if cands.len() != target.nodes {
            return None;
        }
        let mut cur = Vec::new();
        if self.search(cands, target, &mut cur) {
            Some(cur)
        } else {
            None
        }
    }

    fn search(&self, cands: &[usize], target: &DynkinDiagram, cur: &mut Vec<usize>) -> bool {
        let pos = cur.len();
        if pos == target.nodes {
            // B and F4 are symmetric as graphs; put the long roots first
            return match self.group.family {
                Family::B | Family::F4 => {
                    let first = self.norm2(cur[0]).to_f64();
                    let last = self.norm2(cur[pos - 1]).to_f64();
                    first >= last - 1e-12
                }
                _ => true,
            };
        }
        for &c in cands {
            if cur.contains(&c) {
                continue;
            }
            let ok = cur.iter().enumerate().all(|(i, &prev)| self.bond(prev, c) == target.bond(i, pos));
            if ok {
                cur.push(c);
                if self.search(cands, target, cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }

    fn norm2(&self, i: usize) -> F {
        dot(&self.roots[i], &self.roots[i])
    }

    fn bond(&self, i: usize, j: usize) -> u32 {
        let ip = dot(&self.roots[i], &self.roots[j]).to_f64();
        let c2 = ip * ip / (self.norm2(i).to_f64() * self.norm2(j).to_f64());
        DynkinDiagram::bond_from_cos2(c2)
    }

    /// `s_α(v) = v − 2⟨α,v⟩/⟨α,α⟩ α` for the root with index `a`.
    pub fn reflect(&self, a: usize, v: &[F]) -> Vec<F> {
        let alpha = &self.roots[a];
        let f = F::from_i64(2).mul(&dot(alpha, v)).div(&self.norm2(a));
        v.iter().zip(alpha).map(|(x, y)| x.sub(&f.mul(y))).collect()
    }

    pub fn find(&self, v: &[F]) -> Option<usize> {
        self.roots.iter().position(|r| r.iter().zip(v).all(|(a, b)| a.close(b)))
    }

    pub fn simple_roots(&self) -> Vec<Vec<F>> {
        self.simple.iter().map(|&i| self.roots[i].clone()).collect()
    }

    pub fn positive_roots(&self) -> Vec<Vec<F>> {
        self.positive.iter().map(|&i| self.roots[i].clone()).collect()
    }

    /// Matrix of the reflection in the root with index `a`. It is symmetric,
    /// so its rows are the images of the unit vectors.
    pub fn reflection_matrix(&self, a: usize) -> Vec<Vec<F>> {
        (0..self.dim).map(|i| self.reflect(a, &unit::<F>(self.dim, i, 1))).collect()
    }

    pub fn simple_reflection_matrices(&self) -> Vec<Vec<Vec<F>>> {
        self.simple.iter().map(|&a| self.reflection_matrix(a)).collect()
    }

    /// Diagram read off the simple roots' mutual angles.
    pub fn diagram(&self) -> DynkinDiagram {
        let s = &self.simple;
        let mut edges = Vec::new();
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                edges.push((i, j, self.bond(s[i], s[j])));
            }
        }
        DynkinDiagram::new(s.len(), edges)
    }

    /// Every reflection of every root lands on a root.
    pub fn is_closed(&self) -> bool {
        (0..self.roots.len()).all(|a| self.roots.iter().all(|b| self.find(&self.reflect(a, b)).is_some()))
    }

    /// Permutation of root indices induced by the reflection in root `a`.
    pub fn reflection_permutation(&self, a: usize) -> Vec<u16> {
        self.roots
            .iter()
            .map(|b| self.find(&self.reflect(a, b)).expect("root systems are closed under reflections") as u16)
            .collect()
    }
}

impl RootSystem<Coefficient> {
    /// Exact roots over Q(√5). Unavailable for I2(m) (coordinates involve
    /// cos(π/m)) and for the E-series, whose groups are never generated.
    pub fn exact(g: &GroupDescriptor) -> Result<Self> {
        let n = g.ambient_dim;
        let roots: Vec<Vec<Coefficient>> = match g.family {
            Family::A => with_negatives(pm_pairs(n, false)),
            Family::B => {
                let mut pos = pm_pairs(n, false);
                pos.extend(pm_pairs(n, true));
                pos.extend((0..n).map(|i| unit(n, i, 1)));
                with_negatives(pos)
            }
            Family::D => {
                let mut pos = pm_pairs(n, false);
                pos.extend(pm_pairs(n, true));
                with_negatives(pos)
            }
            Family::F4 => {
                let mut pos = pm_pairs(4, false);
                pos.extend(pm_pairs(4, true));
                pos.extend((0..4).map(|i| unit(4, i, 1)));
                let mut all = with_negatives(pos);
                all.extend(all_signs(&vec![Coefficient::from_frac(1, 2); 4]));
                all
            }
            Family::H3 | Family::H4 => icosian_roots(n),
            Family::I2 => return Err(Error::NotExact(g.to_string())),
            Family::E6 | Family::E7 | Family::E8 => {
                return Err(Error::Unsupported { group: g.to_string(), what: "root system construction".into() })
            }
        };
        Self::assemble(g.clone(), n, roots, functional(n))
    }

    pub fn to_numeric(&self) -> RootSystem<f64> {
        RootSystem {
            group: self.group.clone(),
            dim: self.dim,
            roots: self.roots.iter().map(|r| r.iter().map(Coefficient::to_f64).collect()).collect(),
            positive: self.positive.clone(),
            simple: self.simple.clone(),
        }
    }
}

impl RootSystem<f64> {
    /// Floating-point roots for every family with a root construction,
    /// including I2(m) with unit roots at angles `jπ/m`.
    pub fn numeric(g: &GroupDescriptor) -> Result<Self> {
        if g.family != Family::I2 {
            return Ok(RootSystem::exact(g)?.to_numeric());
        }
        let m = g.param;
        let step = std::f64::consts::PI / m as f64;
        let roots = (0..2 * m).map(|j| vec![(j as f64 * step).cos(), (j as f64 * step).sin()]).collect();
        let angle = std::f64::consts::FRAC_PI_2 - step / 2.0;
        Self::assemble(g.clone(), 2, roots, vec![angle.cos(), angle.sin()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(s: &str) -> RootSystem<Coefficient> {
        RootSystem::exact(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn root_counts() {
        for (s, count) in [("A1", 2), ("A3", 12), ("B2", 8), ("B4", 32), ("D4", 24), ("D5", 40), ("F4", 48), ("H3", 30), ("H4", 120)]
        {
            let r = exact(s);
            assert_eq!(r.roots.len(), count, "{s}");
            assert_eq!(r.positive.len() * 2, count, "{s}");
        }
        for m in 3..=12 {
            let r = RootSystem::numeric(&GroupDescriptor::i2(m).unwrap()).unwrap();
            assert_eq!(r.roots.len(), 2 * m);
        }
    }

    #[test]
    fn closure_and_diagrams() {
        for s in ["A4", "B3", "D4", "D2", "F4", "H3", "H4"] {
            let r = exact(s);
            assert!(r.is_closed(), "{s}");
            assert_eq!(r.diagram(), DynkinDiagram::of(&r.group), "{s}");
        }
        for m in [3, 5, 8] {
            let r = RootSystem::numeric(&GroupDescriptor::i2(m).unwrap()).unwrap();
            assert!(r.is_closed());
            assert_eq!(r.diagram(), DynkinDiagram::of(&r.group));
        }
    }

    #[test]
    fn standard_simple_roots() {
        let f = |v: &[i64]| v.iter().map(|&x| Coefficient::from_int(x)).collect::<Vec<_>>();
        let b = exact("B3");
        assert_eq!(b.simple_roots(), vec![f(&[1, -1, 0]), f(&[0, 1, -1]), f(&[0, 0, 1])]);
        let d = exact("D4");
        assert_eq!(d.simple_roots()[3], f(&[0, 0, 1, 1]));
        let f4 = exact("F4");
        let s = f4.simple_roots();
        assert!(dot(&s[0], &s[0]) == Coefficient::from_int(2) && dot(&s[3], &s[3]) == Coefficient::from_int(1));
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coxeter::{Family, GroupDescriptor};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternFamily {
    A,
    B,
    D,
}

impl PatternFamily {
    pub fn of(g: &GroupDescriptor) -> Option<Self> {
        match g.family {
            Family::A => Some(PatternFamily::A),
            Family::B => Some(PatternFamily::B),
            Family::D => Some(PatternFamily::D),
            _ => None,
        }
    }
}

/// A family of points up to the group action: `multiplicities[i]` copies of
/// the free value `t_i`, then `zeros` zero coordinates. For D, `sign_bit =
/// -1` negates the final coordinate of the last block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StratumPattern {
    pub family: PatternFamily,
    pub n: usize,
    pub multiplicities: Vec<usize>,
    pub zeros: usize,
    pub sign_bit: i8,
}

impl StratumPattern {
    pub fn free_vars(&self) -> usize {
        self.multiplicities.len()
    }

    /// Columns of the linear map `t ↦ x`, as an `n × j` matrix.
    pub fn embedding_matrix(&self) -> Vec<Vec<f64>> {
        let j = self.free_vars();
        let mut rows = Vec::with_capacity(self.n);
        for (b, &m) in self.multiplicities.iter().enumerate() {
            for _ in 0..m {
                let mut r = vec![0.0; j];
                r[b] = 1.0;
                rows.push(r);
            }
        }
        if self.sign_bit < 0 {
            if let Some(last) = rows.last_mut() {
                last[j - 1] = -1.0;
            }
        }
        rows.resize(self.n, vec![0.0; j]);
        rows
    }

    pub fn embed(&self, t: &[f64]) -> Result<Vec<f64>> {
        if t.len() != self.free_vars() {
            return Err(Error::DimensionMismatch { expected: self.free_vars(), got: t.len() });
        }
        Ok(self.embedding_matrix().iter().map(|r| r.iter().zip(t).map(|(a, b)| a * b).sum()).collect())
    }
}

impl fmt::Display for StratumPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.multiplicities.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", m.join(","))?;
        if self.zeros > 0 {
            write!(f, " zeros={}", self.zeros)?;
        }
        if self.sign_bit < 0 {
            write!(f, " sign=-")?;
        }
        Ok(())
    }
}

/// Partitions of `m` into at most `parts` parts, descending lexicographic.
pub fn partitions(m: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if parts == 0 {
            return;
        }
        for first in (1..=max.min(rest)).rev() {
            cur.push(first);
            rec(rest - first, first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, parts, &mut Vec::new(), &mut out);
    out
}

/// Orbit representatives covering the `k`-stratum. A: at most `k` distinct
/// coordinates. B: at most `k` distinct nonzero absolute values. D: the B
/// description, except that exactly one zero allows only `k - 1` values.
pub fn patterns(family: PatternFamily, n: usize, k: usize) -> Result<Vec<StratumPattern>> {
    if n == 0 || k > n {
        return Err(Error::InvalidSparsity { k, n });
    }
    let mk = |mult: Vec<usize>, zeros: usize, sign_bit: i8| StratumPattern { family, n, multiplicities: mult, zeros, sign_bit };
    let mut out = Vec::new();
    match family {
        PatternFamily::A => {
            out.extend(partitions(n, k).into_iter().map(|p| mk(p, 0, 1)));
        }
        PatternFamily::B | PatternFamily::D => {
            for zeros in 0..=n {
                let budget = if family == PatternFamily::D && zeros == 1 { k.saturating_sub(1) } else { k };
                for p in partitions(n - zeros, budget) {
                    let all_even = !p.is_empty() && p.iter().all(|m| m % 2 == 0);
                    out.push(mk(p.clone(), zeros, 1));
                    // with no zero and only even blocks, e_n cannot turn negative
                    if family == PatternFamily::D && zeros == 0 && all_even {
                        out.push(mk(p, zeros, -1));
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_enumerations() {
        let a = patterns(PatternFamily::A, 5, 2).unwrap();
        let m: Vec<Vec<usize>> = a.iter().map(|p| p.multiplicities.clone()).collect();
        assert_eq!(m, vec![vec![5], vec![4, 1], vec![3, 2]]);

        let b = patterns(PatternFamily::B, 2, 1).unwrap();
        let s: Vec<(Vec<usize>, usize)> = b.iter().map(|p| (p.multiplicities.clone(), p.zeros)).collect();
        assert_eq!(s, vec![(vec![2], 0), (vec![1], 1), (vec![], 2)]);

        for p in patterns(PatternFamily::D, 6, 3).unwrap() {
            if p.zeros == 1 {
                assert!(p.free_vars() <= 2);
            }
        }
        let d = patterns(PatternFamily::D, 4, 1).unwrap();
        assert!(d.iter().all(|p| p.zeros != 1));
        assert!(d.iter().any(|p| p.sign_bit < 0));
    }

    #[test]
    fn embedding() {
        let p = StratumPattern { family: PatternFamily::A, n: 5, multiplicities: vec![3, 2], zeros: 0, sign_bit: 1 };
        assert_eq!(p.embed(&[1.0, 2.0]).unwrap(), vec![1.0, 1.0, 1.0, 2.0, 2.0]);
        let q = StratumPattern { family: PatternFamily::B, n: 2, multiplicities: vec![1], zeros: 1, sign_bit: 1 };
        assert_eq!(q.embed(&[3.0]).unwrap(), vec![3.0, 0.0]);
        let r = StratumPattern { family: PatternFamily::D, n: 4, multiplicities: vec![2, 2], zeros: 0, sign_bit: -1 };
        assert_eq!(r.embed(&[1.0, 2.0]).unwrap(), vec![1.0, 1.0, 2.0, -2.0]);
        assert!(p.embed(&[1.0]).is_err());
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(6, 6).len(), 11);
        assert_eq!(partitions(6, 2).len(), 4);
        assert_eq!(partitions(0, 3), vec![Vec::<usize>::new()]);
    }
}

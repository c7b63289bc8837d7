use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
    I2,
    H3,
    H4,
    F4,
    E6,
    E7,
    E8,
}

impl Family {
    pub fn letter(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
            Family::I2 => "I2",
            Family::H3 => "H3",
            Family::H4 => "H4",
            Family::F4 => "F4",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
        }
    }
}

/// Classification data for one irreducible finite reflection group.
///
/// `A(n)` is realized on `R^{n+1}` by permuting coordinates, so it is not
/// essential; all other entries act essentially on `R^rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub family: Family,
    /// Rank for A/B/D, the dihedral label `m` for I2, unused otherwise.
    pub param: usize,
    pub rank: usize,
    pub ambient_dim: usize,
    pub essential: bool,
    /// Degrees of the basic invariants on the essential part, ascending.
    pub degrees: Vec<u32>,
}

fn invalid(family: &str, msg: &str) -> Error {
    Error::InvalidParameter { family: family.to_string(), msg: msg.to_string() }
}

impl GroupDescriptor {
    /// Looks up a catalog entry. `param` is the rank for A, B and D, `m`
    /// for I2 and ignored for exceptional types.
    pub fn new(family: Family, param: usize) -> Result<Self> {
        let (rank, ambient, essential, mut degrees): (usize, usize, bool, Vec<u32>) = match family {
            Family::A => {
                if param < 1 {
                    return Err(invalid("A", "rank must be at least 1"));
                }
                (param, param + 1, false, (2..=param as u32 + 1).collect())
            }
            Family::B => {
                if param < 1 {
                    return Err(invalid("B", "rank must be at least 1"));
                }
                (param, param, true, (1..=param as u32).map(|i| 2 * i).collect())
            }
            Family::D => {
                if param < 2 {
                    return Err(invalid("D", "rank must be at least 2"));
                }
                let n = param as u32;
                let mut d: Vec<u32> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                (param, param, true, d)
            }
            Family::I2 => {
                if param < 3 {
                    return Err(invalid("I2", "m must be at least 3"));
                }
                (2, 2, true, vec![2, param as u32])
            }
            Family::H3 => (3, 3, true, vec![2, 6, 10]),
            Family::H4 => (4, 4, true, vec![2, 12, 20, 30]),
            Family::F4 => (4, 4, true, vec![2, 6, 8, 12]),
            Family::E6 => (6, 6, true, vec![2, 5, 6, 8, 9, 12]),
            Family::E7 => (7, 7, true, vec![2, 6, 8, 10, 12, 14, 18]),
            Family::E8 => (8, 8, true, vec![2, 8, 12, 14, 18, 20, 24, 30]),
        };
        degrees.sort_unstable();
        let param = match family {
            Family::A | Family::B | Family::D | Family::I2 => param,
            _ => rank,
        };
        Ok(GroupDescriptor { family, param, rank, ambient_dim: ambient, essential, degrees })
    }

    pub fn a(n: usize) -> Result<Self> {
        Self::new(Family::A, n)
    }
    pub fn b(n: usize) -> Result<Self> {
        Self::new(Family::B, n)
    }
    pub fn d(n: usize) -> Result<Self> {
        Self::new(Family::D, n)
    }
    pub fn i2(m: usize) -> Result<Self> {
        Self::new(Family::I2, m)
    }

    /// `|G| = Π d_i`.
    pub fn order(&self) -> u128 {
        self.degrees.iter().map(|&d| d as u128).product()
    }

    pub fn top_degree(&self) -> u32 {
        *self.degrees.last().expect("catalog entries have rank >= 1")
    }

    /// Degrees of a basic invariant set on the ambient space: the essential
    /// degrees preceded by a 1 for each fixed direction.
    pub fn ambient_degrees(&self) -> Vec<u32> {
        let mut d = vec![1; self.ambient_dim - self.rank];
        d.extend(&self.degrees);
        d
    }

    /// `d_k` on the ambient space, 1-based; `d_0 = 0`.
    pub fn ambient_degree(&self, k: usize) -> Option<u32> {
        if k == 0 {
            return Some(0);
        }
        self.ambient_degrees().get(k - 1).copied()
    }

    pub fn is_exceptional_e(&self) -> bool {
        matches!(self.family, Family::E6 | Family::E7 | Family::E8)
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A | Family::B | Family::D => write!(f, "{}{}", self.family.letter(), self.param),
            Family::I2 => write!(f, "I2({})", self.param),
            other => write!(f, "{}", other.letter()),
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    /// Accepts `A5`, `B4`, `D6`, `I2(7)`, `H3`, `H4`, `F4`, `E6`, `E7`, `E8`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let unknown = || Error::UnknownGroup(s.to_string());
        match t {
            "H3" => return Self::new(Family::H3, 3),
            "H4" => return Self::new(Family::H4, 4),
            "F4" => return Self::new(Family::F4, 4),
            "E6" => return Self::new(Family::E6, 6),
            "E7" => return Self::new(Family::E7, 7),
            "E8" => return Self::new(Family::E8, 8),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("I2(") {
            let m: usize = rest.strip_suffix(')').ok_or_else(unknown)?.parse().map_err(|_| unknown())?;
            return Self::new(Family::I2, m);
        }
        let (letter, num) = t.split_at(1.min(t.len()));
        let fam = match letter {
            "A" => Family::A,
            "B" => Family::B,
            "D" => Family::D,
            _ => return Err(unknown()),
        };
        let n: usize = num.parse().map_err(|_| unknown())?;
        Self::new(fam, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_of_selected_entries() {
        assert_eq!("F4".parse::<GroupDescriptor>().unwrap().degrees, vec![2, 6, 8, 12]);
        assert_eq!("H3".parse::<GroupDescriptor>().unwrap().degrees, vec![2, 6, 10]);
        assert_eq!(GroupDescriptor::a(1).unwrap().degrees, vec![2]);
        assert_eq!(GroupDescriptor::d(5).unwrap().degrees, vec![2, 4, 5, 6, 8]);
        assert_eq!(GroupDescriptor::d(6).unwrap().degrees, vec![2, 4, 6, 6, 8, 10]);
        assert_eq!("H4".parse::<GroupDescriptor>().unwrap().order(), 14400);
        assert_eq!("E8".parse::<GroupDescriptor>().unwrap().order(), 696_729_600);
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["A5", "B4", "D6", "I2(7)", "H3", "H4", "F4", "E6", "E7", "E8"] {
            assert_eq!(s.parse::<GroupDescriptor>().unwrap().to_string(), s);
        }
        assert!(matches!("G2".parse::<GroupDescriptor>(), Err(Error::UnknownGroup(_))));
        assert!(matches!("I2(2)".parse::<GroupDescriptor>(), Err(Error::InvalidParameter { .. })));
        assert!(matches!("A0".parse::<GroupDescriptor>(), Err(Error::InvalidParameter { .. })));
        assert!(matches!("D1".parse::<GroupDescriptor>(), Err(Error::InvalidParameter { .. })));
    }

    #[test]
    fn first_degree_is_two_for_essential_entries() {
        for s in ["B3", "D4", "I2(5)", "H3", "H4", "F4", "E6", "E7", "E8"] {
            let g: GroupDescriptor = s.parse().unwrap();
            assert_eq!(g.degrees[0], 2);
            assert!(g.degrees.windows(2).all(|w| w[0] <= w[1]));
        }
        let a = GroupDescriptor::a(3).unwrap();
        assert_eq!(a.ambient_degrees(), vec![1, 2, 3, 4]);
        assert!(!a.essential);
    }
}

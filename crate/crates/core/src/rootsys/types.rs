use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{frac, q};
use crate::rootsys::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::Config(format!(
                "unknown root system family {other:?}"
            ))),
        }
    }
}

/// Irreducible reduced Cartan type, e.g. `B3` or `E6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    /// Validated constructor: `A_n (n≥1)`, `B_n (n≥2)`, `C_n (n≥3)`,
    /// `D_n (n≥4)`, `E6/E7/E8`, `F4`, `G2`.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::Config(format!(
                "{family}{rank} is not an irreducible reduced root system in scope"
            )))
        }
    }

    /// Parse labels such as `"A3"`, `"E8"`, `"G2"`; `rank` overrides a
    /// missing numeric suffix.
    pub fn parse(label: &str, rank: Option<usize>) -> Result<Self> {
        let label = label.trim();
        let (fam, digits) = label.split_at(label.len().min(1));
        let family: Family = fam.parse()?;
        let parsed_rank = if digits.is_empty() {
            None
        } else {
            Some(
                digits
                    .parse::<usize>()
                    .map_err(|_| Error::Config(format!("bad root system label {label:?}")))?,
            )
        };
        let rank = match (parsed_rank, rank) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::Config(format!(
                    "label {label:?} conflicts with rank {b}"
                )))
            }
            (Some(a), _) => a,
            (None, Some(b)) => b,
            (None, None) => return Err(Error::Config(format!("missing rank for {label:?}"))),
        };
        Self::new(family, rank)
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// Type of the dual root system.
    pub fn dual(&self) -> Self {
        let family = match self.family {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        };
        Self {
            family,
            rank: self.rank,
        }
    }

    /// Dimension of the Bourbaki ambient space.
    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::B | Family::C | Family::D | Family::F => self.rank,
            Family::E => 8,
            Family::G => 3,
        }
    }

    /// `|W|` from the classification.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match self.rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Simple roots in the Bourbaki plates' ambient coordinates.
    pub(crate) fn bourbaki_simple_roots(&self) -> Vec<Weight> {
        let n = self.rank;
        let dim = self.ambient_dim();
        let e = |i: usize| Weight::unit(dim, i);
        let half = frac(1, 2);
        match self.family {
            Family::A => (0..n).map(|i| &e(i) - &e(i + 1)).collect(),
            Family::B => {
                let mut s: Vec<Weight> = (0..n - 1).map(|i| &e(i) - &e(i + 1)).collect();
                s.push(e(n - 1));
                s
            }
            Family::C => {
                let mut s: Vec<Weight> = (0..n - 1).map(|i| &e(i) - &e(i + 1)).collect();
                s.push(e(n - 1) * q(2));
                s
            }
            Family::D => {
                let mut s: Vec<Weight> = (0..n - 1).map(|i| &e(i) - &e(i + 1)).collect();
                s.push(&e(n - 2) + &e(n - 1));
                s
            }
            Family::G => vec![&e(0) - &e(1), Weight::from_ints(&[-2, 1, 1])],
            Family::F => vec![
                &e(1) - &e(2),
                &e(2) - &e(3),
                e(3),
                Weight::new(vec![half, -half, -half, -half]),
            ],
            Family::E => {
                let mut s = vec![
                    Weight::new(vec![half, -half, -half, -half, -half, -half, -half, half]),
                    &e(0) + &e(1),
                ];
                for i in 0..6 {
                    s.push(&e(i + 1) - &e(i));
                }
                s.truncate(n);
                s
            }
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

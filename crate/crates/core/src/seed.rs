//! Standard seed quivers for the simply laced Dynkin and affine families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::QuiverError;
use crate::quiver::Quiver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
    #[serde(rename = "A-tilde")]
    ATilde,
    #[serde(rename = "D-tilde")]
    DTilde,
    #[serde(rename = "E-tilde")]
    ETilde,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::A, Family::D, Family::E, Family::ATilde, Family::DTilde, Family::ETilde];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
            Family::ATilde => "A-tilde",
            Family::DTilde => "D-tilde",
            Family::ETilde => "E-tilde",
        }
    }

    /// Whether a seed of this family exists on `n` vertices.
    pub fn is_defined(self, n: usize) -> bool {
        match self {
            Family::A => n >= 1,
            Family::D => n >= 4,
            Family::E => n >= 6,
            Family::ATilde => n >= 3,
            Family::DTilde => n >= 5,
            Family::ETilde => (7..=9).contains(&n),
        }
    }

    /// Finite mutation class: every family except E on 10 or more vertices.
    pub fn is_mutation_finite(self, n: usize) -> bool {
        !(self == Family::E && n >= 10)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = QuiverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' ' | '~'))
            .collect::<String>()
            .to_ascii_lowercase();
        match norm.as_str() {
            "a" => Ok(Family::A),
            "d" => Ok(Family::D),
            "e" => Ok(Family::E),
            "atilde" | "at" => Ok(Family::ATilde),
            "dtilde" | "dt" => Ok(Family::DTilde),
            "etilde" | "et" => Ok(Family::ETilde),
            _ => Err(QuiverError::UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedSpec {
    pub family: Family,
    pub n: usize,
}

impl SeedSpec {
    pub fn new(family: Family, n: usize) -> Result<Self, QuiverError> {
        if !family.is_defined(n) {
            return Err(QuiverError::InvalidSeed { family: family.to_string(), n });
        }
        Ok(SeedSpec { family, n })
    }
}

/// The seed quiver of `spec`. For A-tilde this is the orientation with a
/// single reversed arrow; see [`seed_orientations`] for the full set.
pub fn seed(spec: SeedSpec) -> Result<Quiver, QuiverError> {
    Ok(seed_orientations(spec)?.remove(0))
}

/// One representative per mutation class of the family on `spec.n` vertices.
///
/// Every family except A-tilde has a single class. The cycle underlying
/// A-tilde on `n` vertices has one class per unordered split `p + q = n`,
/// `1 <= p <= q`, where `p` arrows run against the other `q`.
pub fn seed_orientations(spec: SeedSpec) -> Result<Vec<Quiver>, QuiverError> {
    let SeedSpec { family, n } = spec;
    if !family.is_defined(n) {
        return Err(QuiverError::InvalidSeed { family: family.to_string(), n });
    }
    let arrows: Vec<(usize, usize)> = match family {
        Family::A => (0..n - 1).map(|i| (i, i + 1)).collect(),
        Family::D => {
            let c = n - 3;
            let mut a: Vec<_> = (0..c).map(|i| (i, i + 1)).collect();
            a.push((c, n - 2));
            a.push((c, n - 1));
            a
        }
        Family::E => {
            let mut a = alternating_chain(n - 1);
            a.push((2, n - 1));
            a
        }
        Family::ETilde => {
            let mut a;
            match n {
                7 => {
                    a = alternating_chain(5);
                    a.push((2, 5));
                    a.push((5, 6));
                }
                8 => {
                    a = alternating_chain(7);
                    a.push((3, 7));
                }
                _ => {
                    a = alternating_chain(8);
                    a.push((2, 8));
                }
            }
            a
        }
        Family::DTilde => {
            // Leaves 0, 1 hang off 2; leaves n-2, n-1 hang off n-3; the path
            // 2..=n-3 is oriented away from its middle vertex.
            let (left, right) = (2, n - 3);
            let c = (left + right) / 2;
            let mut a = vec![(left, 0), (left, 1)];
            a.extend((left..c).map(|i| (i + 1, i)));
            a.extend((c..right).map(|i| (i, i + 1)));
            a.push((right, n - 2));
            a.push((right, n - 1));
            a
        }
        Family::ATilde => {
            return (1..=n / 2)
                .map(|p| {
                    let q = n - p;
                    let arrows: Vec<(usize, usize, i32)> = (0..n)
                        .map(|i| {
                            let j = (i + 1) % n;
                            if i < q {
                                (i, j, 1)
                            } else {
                                (j, i, 1)
                            }
                        })
                        .collect();
                    Quiver::new(n, &arrows)
                })
                .collect();
        }
    };
    let weighted: Vec<(usize, usize, i32)> = arrows.into_iter().map(|(s, t)| (s, t, 1)).collect();
    Ok(vec![Quiver::new(n, &weighted)?])
}

/// Path `0 - 1 - ... - (len-1)` with every even vertex a source.
fn alternating_chain(len: usize) -> Vec<(usize, usize)> {
    (0..len.saturating_sub(1))
        .map(|i| if i % 2 == 0 { (i, i + 1) } else { (i + 1, i) })
        .collect()
}

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{SearchError, MAX_GROUND_SIZE};
use crate::decimal;
use crate::fs::{fs_enumerate_capped, FsSpec};

/// A finite ground set as given by the caller.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroundSet {
    /// Explicit integers, sorted ascending and distinct.
    Integers(#[serde(with = "decimal::vec")] Vec<BigInt>),
    /// `{1, ..., n}`.
    Interval(u64),
    /// The finite-sums set of a spec.
    Fs(FsSpec),
    /// Words of length `n` over `[0,t)`.
    Cube { t: u32, n: u32 },
}

impl GroundSet {
    pub fn kind(&self) -> &'static str {
        match self {
            GroundSet::Integers(_) => "integers",
            GroundSet::Interval(_) => "interval",
            GroundSet::Fs(_) => "fs",
            GroundSet::Cube { .. } => "cube",
        }
    }

    pub fn resolve(&self) -> Result<Ground, SearchError> {
        Ground::new(self)
    }
}

/// A ground set with its elements indexed `0..len`.
#[derive(Debug, Clone)]
pub struct Ground {
    kind: &'static str,
    elements: Elements,
}

#[derive(Debug, Clone)]
enum Elements {
    Values {
        values: Vec<BigInt>,
        index: HashMap<BigInt, u32>,
        spec: Option<FsSpec>,
    },
    /// Element `i` is the word whose coordinate `p` is digit `p` of `i` in
    /// base `t`, least significant first.
    Cube { t: u32, n: u32 },
}

fn too_large(size: u128) -> SearchError {
    SearchError::TooLarge {
        what: "ground set",
        size,
        cap: MAX_GROUND_SIZE as u128,
    }
}

impl Ground {
    fn new(g: &GroundSet) -> Result<Self, SearchError> {
        let values = |values: Vec<BigInt>, spec| {
            if values.len() > MAX_GROUND_SIZE {
                return Err(too_large(values.len() as u128));
            }
            let index = values
                .iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), i as u32))
                .collect();
            Ok(Elements::Values {
                values,
                index,
                spec,
            })
        };
        let elements = match g {
            GroundSet::Integers(v) => {
                if v.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(crate::fs::FsError::NotSorted.into());
                }
                values(v.clone(), None)?
            }
            GroundSet::Interval(n) => {
                if *n as u128 > MAX_GROUND_SIZE as u128 {
                    return Err(too_large(*n as u128));
                }
                values((1..=*n).map(BigInt::from).collect(), None)?
            }
            GroundSet::Fs(spec) => {
                let v = fs_enumerate_capped(spec, MAX_GROUND_SIZE as u128)?;
                values(v, Some(spec.clone()))?
            }
            &GroundSet::Cube { t, n } => {
                if t < 2 || n < 1 {
                    return Err(SearchError::InvalidParameter(
                        "a cube needs t >= 2 and n >= 1".into(),
                    ));
                }
                let size = (t as u128).checked_pow(n).unwrap_or(u128::MAX);
                if size > MAX_GROUND_SIZE as u128 {
                    return Err(too_large(size));
                }
                Elements::Cube { t, n }
            }
        };
        Ok(Ground {
            kind: g.kind(),
            elements,
        })
    }

    pub fn kind(&self) -> &'static str {
        self.kind
    }

    pub fn len(&self) -> usize {
        match &self.elements {
            Elements::Values { values, .. } => values.len(),
            Elements::Cube { t, n } => (*t as usize).pow(*n),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The integer values, for integer ground sets.
    pub fn values(&self) -> Option<&[BigInt]> {
        match &self.elements {
            Elements::Values { values, .. } => Some(values),
            Elements::Cube { .. } => None,
        }
    }

    pub fn index_of(&self, v: &BigInt) -> Option<u32> {
        match &self.elements {
            Elements::Values { index, .. } => index.get(v).copied(),
            Elements::Cube { .. } => None,
        }
    }

    pub fn spec(&self) -> Option<&FsSpec> {
        match &self.elements {
            Elements::Values { spec, .. } => spec.as_ref(),
            Elements::Cube { .. } => None,
        }
    }

    /// `(t, n)` for a cube.
    pub fn cube(&self) -> Option<(u32, u32)> {
        match self.elements {
            Elements::Cube { t, n } => Some((t, n)),
            Elements::Values { .. } => None,
        }
    }

    /// Coordinates of cube element `i`.
    pub fn word(&self, i: u32) -> Option<Vec<u32>> {
        let (t, n) = self.cube()?;
        let mut rest = i;
        Some(
            (0..n)
                .map(|_| {
                    let d = rest % t;
                    rest /= t;
                    d
                })
                .collect(),
        )
    }

    /// Index of the cube word with the given coordinates.
    pub fn word_index(&self, digits: &[u32]) -> Option<u32> {
        let (t, _) = self.cube()?;
        Some(digits.iter().rev().fold(0u32, |acc, &d| acc * t + d))
    }

    /// Human-readable element: a decimal value or a word such as `(0,1)`.
    pub fn label(&self, i: u32) -> String {
        match &self.elements {
            Elements::Values { values, .. } => values[i as usize].to_string(),
            Elements::Cube { .. } => {
                let w = self.word(i).expect("cube element");
                let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
                format!("({})", parts.join(","))
            }
        }
    }
}

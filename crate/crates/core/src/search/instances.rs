//! Materializes every instance of a target inside a ground set as a sorted
//! list of element indices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Coloring, Ground, GroundSet, SearchError, Target, MAX_ENUMERATION};
use crate::criteria::LinearSystem;
use crate::decimal;
use crate::fs::{Cell, ParametricWord};

/// How an instance arose.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Shape {
    Ap {
        #[serde(with = "decimal")]
        a: BigInt,
        #[serde(with = "decimal")]
        d: BigInt,
        len: usize,
    },
    Brauer {
        #[serde(with = "decimal")]
        a: BigInt,
        #[serde(with = "decimal")]
        d: BigInt,
        len: usize,
        s: u64,
    },
    Word {
        word: String,
        dim: u32,
    },
    Solution {
        #[serde(with = "decimal::vec")]
        x: Vec<BigInt>,
    },
    Shifted {
        #[serde(with = "decimal")]
        m: BigInt,
        #[serde(with = "decimal::vec")]
        ys: Vec<BigInt>,
        /// Generator numbers (1-based) summed into each `y_j`.
        blocks: Vec<Vec<usize>>,
        /// Fixed digit of every generator outside the blocks (0 inside).
        alpha: Vec<u32>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    /// Element indices, ascending and distinct.
    pub members: Vec<u32>,
    pub shape: Shape,
}

/// A monochromatic instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub color: u8,
    pub elements: Vec<String>,
    pub shape: Shape,
}

fn check_enumeration(size: u128) -> Result<(), SearchError> {
    if size > MAX_ENUMERATION {
        return Err(SearchError::TooLarge {
            what: "instance enumeration",
            size,
            cap: MAX_ENUMERATION,
        });
    }
    Ok(())
}

fn incompatible(ground: &Ground, target: &Target) -> SearchError {
    SearchError::IncompatibleTarget {
        target: target.name().into(),
        ground: ground.kind().into(),
    }
}

/// All instances of `target` in `ground`, sorted by member list. When two
/// shapes give the same members the first generated one is kept.
pub fn instances(ground: &Ground, target: &Target) -> Result<Vec<Instance>, SearchError> {
    let mut out = match target {
        &Target::Ap { len } => {
            if len < 2 {
                return Err(SearchError::InvalidParameter(
                    "progressions need len >= 2".into(),
                ));
            }
            let values = ground
                .values()
                .ok_or_else(|| incompatible(ground, target))?;
            progressions(ground, values, len, None)?
        }
        &Target::Brauer { len, s } => {
            if len < 2 || s < 1 {
                return Err(SearchError::InvalidParameter(
                    "Brauer targets need len >= 2 and s >= 1".into(),
                ));
            }
            let values = ground
                .values()
                .ok_or_else(|| incompatible(ground, target))?;
            progressions(ground, values, len, Some(s))?
        }
        Target::Line => {
            let (t, n) = ground.cube().ok_or_else(|| incompatible(ground, target))?;
            subspaces(ground, t, n, 1)?
        }
        &Target::Subspace { dim } => {
            if dim < 1 {
                return Err(SearchError::InvalidParameter(
                    "subspaces need dim >= 1".into(),
                ));
            }
            let (t, n) = ground.cube().ok_or_else(|| incompatible(ground, target))?;
            subspaces(ground, t, n, dim)?
        }
        Target::EquationSolution { system, distinct } => {
            let values = ground
                .values()
                .ok_or_else(|| incompatible(ground, target))?;
            solutions(ground, values, system, *distinct)?
        }
        &Target::ShiftedFs { t } => {
            if t < 1 {
                return Err(SearchError::InvalidParameter(
                    "shifted sets need t >= 1".into(),
                ));
            }
            let spec = ground.spec().ok_or_else(|| incompatible(ground, target))?;
            if !spec.shift().is_zero() {
                return Err(SearchError::InvalidParameter(
                    "shifted targets need an unshifted finite-sums ground set".into(),
                ));
            }
            super::shifted::structured_instances(ground, spec, t)?
        }
    };
    out.sort_by(|a, b| a.members.cmp(&b.members));
    out.dedup_by(|b, a| a.members == b.members);
    Ok(out)
}

fn progressions(
    ground: &Ground,
    values: &[BigInt],
    len: usize,
    brauer: Option<u64>,
) -> Result<Vec<Instance>, SearchError> {
    let n = values.len();
    check_enumeration((n as u128) * (n as u128) / 2)?;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = &values[j] - &values[i];
            let mut members = vec![i as u32, j as u32];
            let mut cur = values[j].clone();
            let complete = (2..len).all(|_| {
                cur += &d;
                ground.index_of(&cur).map(|ix| members.push(ix)).is_some()
            });
            if !complete {
                continue;
            }
            let shape = match brauer {
                None => Shape::Ap {
                    a: values[i].clone(),
                    d,
                    len,
                },
                Some(s) => {
                    let Some(ix) = ground.index_of(&(&d * s)) else {
                        continue;
                    };
                    members.push(ix);
                    members.sort_unstable();
                    members.dedup();
                    Shape::Brauer {
                        a: values[i].clone(),
                        d,
                        len,
                        s,
                    }
                }
            };
            out.push(Instance { members, shape });
        }
    }
    Ok(out)
}

/// Parametric words with variables `1..=dim`, each variable first occurring
/// after the previous one's first occurrence.
fn subspaces(ground: &Ground, t: u32, n: u32, dim: u32) -> Result<Vec<Instance>, SearchError> {
    let alphabet = t + dim;
    check_enumeration((alphabet as u128).checked_pow(n).unwrap_or(u128::MAX))?;
    let mut out = Vec::new();
    let mut word = vec![0u32; n as usize];
    loop {
        // Symbols >= t stand for variables.
        let mut next_var = 0;
        let canonical = word.iter().all(|&s| {
            if s < t {
                return true;
            }
            let v = s - t;
            if v == next_var {
                next_var += 1;
            }
            v < next_var
        });
        if canonical && next_var == dim {
            let cells: Vec<Cell> = word
                .iter()
                .map(|&s| {
                    if s < t {
                        Cell::Digit(s)
                    } else {
                        Cell::Var(s - t)
                    }
                })
                .collect();
            let pw = ParametricWord::new(cells, t)?;
            let mut members: Vec<u32> = pw
                .points()
                .iter()
                .map(|p| ground.word_index(p.digits()).expect("cube ground"))
                .collect();
            members.sort_unstable();
            out.push(Instance {
                members,
                shape: Shape::Word {
                    word: pw.to_string(),
                    dim,
                },
            });
        }
        // Odometer, first coordinate fastest.
        let mut p = 0;
        loop {
            if p == word.len() {
                return Ok(out);
            }
            word[p] += 1;
            if word[p] < alphabet {
                break;
            }
            word[p] = 0;
            p += 1;
        }
    }
}

fn solutions(
    ground: &Ground,
    values: &[BigInt],
    system: &LinearSystem,
    distinct: bool,
) -> Result<Vec<Instance>, SearchError> {
    let n = system.cols();
    let size = values.len();
    check_enumeration(
        (size as u128)
            .checked_pow(n as u32 - 1)
            .unwrap_or(u128::MAX),
    )?;
    let rows = system.entries();
    let last = n - 1;
    let pivot = rows
        .iter()
        .find(|r| !r[last].is_zero())
        .expect("no zero columns");
    let mut out = Vec::new();
    if size == 0 {
        return Ok(out);
    }
    let mut idx = vec![0usize; last];
    loop {
        let partial: BigInt = idx
            .iter()
            .enumerate()
            .map(|(i, &e)| &pivot[i] * &values[e])
            .sum();
        let (q, rem) = (-partial).div_rem(&pivot[last]);
        if rem.is_zero() {
            if let Some(ix) = ground.index_of(&q) {
                let mut x: Vec<BigInt> = idx.iter().map(|&e| values[e].clone()).collect();
                x.push(q);
                let mut members: Vec<u32> = idx.iter().map(|&e| e as u32).collect();
                members.push(ix);
                members.sort_unstable();
                let all_distinct = members.windows(2).all(|w| w[0] != w[1]);
                if system.is_solution(&x) && (all_distinct || !distinct) {
                    members.dedup();
                    out.push(Instance {
                        members,
                        shape: Shape::Solution { x },
                    });
                }
            }
        }
        // Odometer, last free variable fastest.
        let mut p = last;
        loop {
            if p == 0 {
                return Ok(out);
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < size {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// The first monochromatic instance in member order, if any.
pub fn find_mono(
    ground: &GroundSet,
    target: &Target,
    coloring: &Coloring,
) -> Result<Option<Witness>, SearchError> {
    let g = ground.resolve()?;
    if coloring.len() != g.len() {
        return Err(SearchError::ColoringMismatch {
            expected: g.len(),
            actual: coloring.len(),
        });
    }
    let all = instances(&g, target)?;
    Ok(first_mono(&g, &all, &coloring.colors))
}

pub(crate) fn first_mono(g: &Ground, all: &[Instance], colors: &[u8]) -> Option<Witness> {
    all.iter()
        .find(|inst| {
            let c = colors[inst.members[0] as usize];
            inst.members.iter().all(|&m| colors[m as usize] == c)
        })
        .map(|inst| Witness {
            color: colors[inst.members[0] as usize],
            elements: inst.members.iter().map(|&m| g.label(m)).collect(),
            shape: inst.shape.clone(),
        })
}

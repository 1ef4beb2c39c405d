//! Monochromatic shifted finite-sums sets `m + FS^k(y_1, ..., y_t)` inside a
//! colored `FS^k(x_1, ..., x_n)`, where each `y_j` sums a block of
//! generators and `m` fixes a digit on every generator outside the blocks.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::instances::{first_mono, instances, Instance, Shape};
use super::{Coloring, Ground, GroundSet, SearchError, Target, MAX_ENUMERATION};
use crate::decimal;
use crate::fs::FsSpec;

/// A monochromatic `m + FS^k(ys)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedFs {
    #[serde(with = "decimal")]
    pub m: BigInt,
    #[serde(with = "decimal::vec")]
    pub ys: Vec<BigInt>,
    pub blocks: Vec<Vec<usize>>,
    pub alpha: Vec<u32>,
    pub color: u8,
    pub elements: Vec<String>,
}

pub(crate) fn structured_instances(
    ground: &Ground,
    spec: &FsSpec,
    t: usize,
) -> Result<Vec<Instance>, SearchError> {
    let gens = spec.generators();
    let (n, k) = (gens.len(), spec.k() as usize);
    let alphabet = t + k;
    let size = (alphabet as u128)
        .checked_pow(n as u32)
        .and_then(|s| s.checked_mul((k as u128).checked_pow(t as u32)?))
        .unwrap_or(u128::MAX);
    if size > MAX_ENUMERATION {
        return Err(SearchError::TooLarge {
            what: "shifted-set enumeration",
            size,
            cap: MAX_ENUMERATION,
        });
    }
    let mut out = Vec::new();
    // label < t: generator joins block `label`; otherwise its digit is `label - t`.
    let mut labels = vec![0usize; n];
    loop {
        let mut blocks = vec![Vec::new(); t];
        let mut ys = vec![BigInt::default(); t];
        let mut m = BigInt::default();
        let mut alpha = vec![0u32; n];
        for (i, &l) in labels.iter().enumerate() {
            if l < t {
                blocks[l].push(i + 1);
                ys[l] += &gens[i];
            } else {
                alpha[i] = (l - t) as u32;
                m += &gens[i] * (l - t);
            }
        }
        let ordered = blocks.iter().all(|b| !b.is_empty()) && ys.windows(2).all(|w| w[0] < w[1]);
        if ordered {
            let mut members = Vec::with_capacity(k.pow(t as u32));
            let mut delta = vec![0usize; t];
            'sums: loop {
                let mut p = t;
                loop {
                    if p == 0 {
                        break 'sums;
                    }
                    p -= 1;
                    delta[p] += 1;
                    if delta[p] < k {
                        break;
                    }
                    delta[p] = 0;
                }
                let v: BigInt = &m + delta.iter().zip(&ys).map(|(&d, y)| y * d).sum::<BigInt>();
                members.push(ground.index_of(&v).expect("digits stay below k"));
            }
            members.sort_unstable();
            members.dedup();
            out.push(Instance {
                members,
                shape: Shape::Shifted {
                    m,
                    ys,
                    blocks,
                    alpha,
                },
            });
        }
        let mut p = n;
        loop {
            if p == 0 {
                return Ok(out);
            }
            p -= 1;
            labels[p] += 1;
            if labels[p] < alphabet {
                break;
            }
            labels[p] = 0;
        }
    }
}

/// The first monochromatic structured `m + FS^k(y_1, ..., y_t)` in member
/// order. Only the shifted sums must share a color, not `m` itself.
pub fn find_shifted_fs(
    spec: &FsSpec,
    coloring: &Coloring,
    t: usize,
) -> Result<Option<ShiftedFs>, SearchError> {
    let ground = GroundSet::Fs(spec.clone());
    let g = ground.resolve()?;
    if coloring.len() != g.len() {
        return Err(SearchError::ColoringMismatch {
            expected: g.len(),
            actual: coloring.len(),
        });
    }
    let target = Target::ShiftedFs { t };
    let all = instances(&g, &target)?;
    let Some(w) = first_mono(&g, &all, &coloring.colors) else {
        return Ok(None);
    };
    if !super::verify::witness_is_valid(&ground, &target, coloring, &w)? {
        return Err(SearchError::VerificationFailed(format!("{w:?}")));
    }
    let Shape::Shifted {
        m,
        ys,
        blocks,
        alpha,
    } = w.shape
    else {
        unreachable!("shifted targets yield shifted shapes")
    };
    Ok(Some(ShiftedFs {
        m,
        ys,
        blocks,
        alpha,
        color: w.color,
        elements: w.elements,
    }))
}

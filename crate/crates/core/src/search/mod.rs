//! Exhaustive coloring search: does every `r`-coloring of a finite ground set
//! contain a monochromatic target? Also small van der Waerden, Brauer and
//! Hales-Jewett numbers, shifted finite-sums sets inside colorings, and the
//! digitwise solution test over distinct-sums sets.

mod dfs;
mod ground;
mod instances;
mod numbers;
mod pseudo_neat;
mod shifted;
pub mod verify;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::{CriteriaError, LinearSystem};
use crate::fs::FsError;

pub use dfs::{forall_colorings, forall_on_hypergraph, Outcome, SearchOptions, Status, Verdict};
pub use ground::{Ground, GroundSet};
pub use instances::{find_mono, instances, Instance, Shape, Witness};
pub use numbers::{brauer_number, hj_number, vdw_number, NumberResult, NumberStatus};
pub use pseudo_neat::{check_pseudo_neat, verify_digit_matrix, PseudoNeat};
pub use shifted::{find_shifted_fs, ShiftedFs};

pub const DEFAULT_BUDGET: u64 = 100_000_000;
pub const DEFAULT_SEED: u64 = 0x5eed;
/// Largest ground set the search will materialize.
pub const MAX_GROUND_SIZE: usize = 1 << 20;
/// Largest number of candidate tuples an instance enumeration may visit.
pub const MAX_ENUMERATION: u128 = 1 << 27;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Fs(#[from] FsError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error("target {target} does not apply to a {ground} ground set")]
    IncompatibleTarget { target: String, ground: String },
    #[error("{what} of size {size} exceeds the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: u128,
        cap: u128,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("coloring has {actual} entries but the ground set has {expected}")]
    ColoringMismatch { expected: usize, actual: usize },
    #[error("independent verification failed: {0}")]
    VerificationFailed(String),
}

impl SearchError {
    pub fn code(&self) -> &'static str {
        match self {
            SearchError::Fs(e) => e.code(),
            SearchError::Criteria(e) => e.code(),
            SearchError::IncompatibleTarget { .. } => "incompatible-target",
            SearchError::TooLarge { .. } => "enumeration-too-large",
            SearchError::VerificationFailed(_) => "verification-failed",
            _ => "invalid-input",
        }
    }
}

/// The structure sought inside one color class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Target {
    /// `a, a+d, ..., a+(len-1)d` with `d >= 1`.
    Ap { len: usize },
    /// An arithmetic progression of length `len` together with `s*d`.
    Brauer { len: usize, s: u64 },
    /// A combinatorial line of the cube.
    Line,
    /// A combinatorial subspace of the given dimension.
    Subspace { dim: u32 },
    /// A solution of `A x = 0` with all `x_i` in the ground set.
    EquationSolution {
        system: LinearSystem,
        distinct: bool,
    },
    /// `m + FS^k(y_1, ..., y_t)` built from disjoint generator blocks, with
    /// `k` and the generators taken from a finite-sums ground set.
    ShiftedFs { t: usize },
}

impl Target {
    pub fn name(&self) -> &'static str {
        match self {
            Target::Ap { .. } => "ap",
            Target::Brauer { .. } => "brauer",
            Target::Line => "line",
            Target::Subspace { .. } => "subspace",
            Target::EquationSolution { .. } => "equation-solution",
            Target::ShiftedFs { .. } => "shifted-fs",
        }
    }
}

/// A color per ground-set element, colors numbered from 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: Vec<u8>,
}

impl Coloring {
    pub fn new(colors: Vec<u8>) -> Self {
        Coloring { colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of colors actually used.
    pub fn used(&self) -> usize {
        let mut seen = [false; 256];
        self.colors.iter().for_each(|&c| seen[c as usize] = true);
        seen.iter().filter(|&&s| s).count()
    }

    /// Relabels colors so they first appear in the order 0, 1, 2, ...
    pub fn canonical(&self) -> Coloring {
        let mut map = [u8::MAX; 256];
        let mut next = 0u8;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                if map[c as usize] == u8::MAX {
                    map[c as usize] = next;
                    next += 1;
                }
                map[c as usize]
            })
            .collect();
        Coloring { colors }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    /// Uniform random coloring from a seeded ChaCha stream.
    pub fn random(len: usize, r: u8, seed: u64) -> Coloring {
        assert!(r >= 1, "at least one color is needed");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Coloring {
            colors: (0..len).map(|_| rng.gen_range(0..r)).collect(),
        }
    }

    /// Colors `x` by the parity of `floor(log2 x)`, so `x` and `2x` always
    /// differ. Values must be positive.
    pub fn doubling_bands(values: &[num_bigint::BigInt]) -> Coloring {
        Coloring {
            colors: values
                .iter()
                .map(|v| {
                    assert!(
                        v.sign() == num_bigint::Sign::Plus,
                        "values must be positive"
                    );
                    ((v.bits() - 1) % 2) as u8
                })
                .collect(),
        }
    }
}

//! Finite-sums sets `FS^k`, their digit words, and the correspondence between
//! combinatorial lines of the cube `[0,k)^n` and arithmetic progressions.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decimal;

/// Default limit on the number of digit words `k^n` an enumeration may visit.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FsError {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generators must be positive and strictly increasing")]
    NotIncreasing,
    #[error("multiplicity bound k must be at least 2, got {0}")]
    BadMultiplicity(u32),
    #[error("shift must be non-negative")]
    NegativeShift,
    #[error("enumeration of {size} words exceeds the cap of {cap}")]
    EnumerationTooLarge { size: u128, cap: u128 },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("digit bound mismatch: expected k = {expected}, got k = {actual}")]
    BoundMismatch { expected: u32, actual: u32 },
    #[error("digit {digit} is out of range for k = {k}")]
    DigitOutOfRange { digit: u32, k: u32 },
    #[error("{0} is not a member of the finite-sums set")]
    NotAMember(BigInt),
    #[error("{0} has several digit representations: the generators do not have distinct sums")]
    AmbiguousRepresentation(BigInt),
    #[error("{0} has no signed digit representation within the bound")]
    NoRepresentation(BigInt),
    #[error("digit bound {bound} must be below half of the base {base}")]
    BoundTooLarge { bound: BigInt, base: BigInt },
    #[error("progression term {0} is not in the finite-sums set")]
    TermNotInSet(BigInt),
    #[error("input is empty")]
    EmptyInput,
    #[error("values must be sorted ascending and distinct")]
    NotSorted,
    #[error("values must be non-negative")]
    NegativeValue,
    #[error("invalid parametric word: {0}")]
    InvalidWord(String),
    #[error("invalid arithmetic progression: {0}")]
    InvalidProgression(String),
}

impl FsError {
    pub fn code(&self) -> &'static str {
        match self {
            FsError::EnumerationTooLarge { .. } => "enumeration-too-large",
            FsError::DimensionMismatch { .. } | FsError::BoundMismatch { .. } => {
                "dimension-mismatch"
            }
            FsError::NotAMember(_) => "not-a-member",
            FsError::AmbiguousRepresentation(_) => "ambiguous-representation",
            FsError::NoRepresentation(_) => "no-representation",
            FsError::TermNotInSet(_) => "term-not-in-set",
            FsError::EmptyInput => "empty-input",
            _ => "invalid-input",
        }
    }
}

/// A truncated finite-sums set `shift + FS^k(x_1, ..., x_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FsSpecRepr", into = "FsSpecRepr")]
pub struct FsSpec {
    generators: Vec<BigInt>,
    k: u32,
    shift: BigInt,
}

#[derive(Serialize, Deserialize)]
struct FsSpecRepr {
    #[serde(with = "decimal::vec")]
    generators: Vec<BigInt>,
    k: u32,
    #[serde(with = "decimal", default)]
    shift: BigInt,
}

impl TryFrom<FsSpecRepr> for FsSpec {
    type Error = FsError;

    fn try_from(r: FsSpecRepr) -> Result<Self, FsError> {
        FsSpec::new(r.generators, r.k)?.with_shift(r.shift)
    }
}

impl From<FsSpec> for FsSpecRepr {
    fn from(s: FsSpec) -> Self {
        FsSpecRepr {
            generators: s.generators,
            k: s.k,
            shift: s.shift,
        }
    }
}

impl FsSpec {
    pub fn new(generators: Vec<BigInt>, k: u32) -> Result<Self, FsError> {
        validate_generators(&generators)?;
        if k < 2 {
            return Err(FsError::BadMultiplicity(k));
        }
        Ok(FsSpec {
            generators,
            k,
            shift: BigInt::zero(),
        })
    }

    pub fn from_u64s(generators: &[u64], k: u32) -> Result<Self, FsError> {
        Self::new(generators.iter().map(|&g| BigInt::from(g)).collect(), k)
    }

    pub fn with_shift(mut self, shift: BigInt) -> Result<Self, FsError> {
        if shift.is_negative() {
            return Err(FsError::NegativeShift);
        }
        self.shift = shift;
        Ok(self)
    }

    pub fn generators(&self) -> &[BigInt] {
        &self.generators
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn shift(&self) -> &BigInt {
        &self.shift
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `k^n`, saturating.
    pub fn word_count(&self) -> u128 {
        saturating_pow(self.k as u128, self.generators.len())
    }

    /// Largest element of `FS^k` before shifting: `(k-1) * sum(x_i)`.
    pub fn max_unshifted(&self) -> BigInt {
        let total: BigInt = self.generators.iter().sum();
        total * (self.k - 1)
    }
}

fn validate_generators(generators: &[BigInt]) -> Result<(), FsError> {
    if generators.is_empty() {
        return Err(FsError::EmptyGenerators);
    }
    if !generators[0].is_positive() || generators.windows(2).any(|w| w[0] >= w[1]) {
        return Err(FsError::NotIncreasing);
    }
    Ok(())
}

fn saturating_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Values whose magnitude stays below this bound can be handled in `i128`
/// with room for a doubling and a difference.
fn fits_i128(v: &BigInt) -> bool {
    v.bits() < 120
}

/// All sums `sum e_i x_i` with `e_i < k`, including the zero word, in word
/// order (first digit fastest).
fn raw_sums_i128(gens: &[i128], k: u32) -> Vec<i128> {
    let mut sums = vec![0i128];
    for &x in gens {
        let base = sums.len();
        sums.reserve(base * (k as usize - 1));
        for e in 1..k as i128 {
            for i in 0..base {
                let v = sums[i] + e * x;
                sums.push(v);
            }
        }
    }
    sums
}

fn raw_sums_big(gens: &[BigInt], k: u32) -> Vec<BigInt> {
    let mut sums = vec![BigInt::zero()];
    for x in gens {
        let base = sums.len();
        for e in 1..k {
            let step = x * e;
            for i in 0..base {
                let v = &sums[i] + &step;
                sums.push(v);
            }
        }
    }
    sums
}

fn as_i128s(values: &[BigInt]) -> Option<Vec<i128>> {
    values
        .iter()
        .map(|v| if fits_i128(v) { v.to_i128() } else { None })
        .collect()
}

/// Enumerates `shift + FS^k(x_1..x_n)` sorted ascending without duplicates,
/// using [`DEFAULT_ENUMERATION_CAP`].
pub fn fs_enumerate(spec: &FsSpec) -> Result<Vec<BigInt>, FsError> {
    fs_enumerate_capped(spec, DEFAULT_ENUMERATION_CAP)
}

pub fn fs_enumerate_capped(spec: &FsSpec, cap: u128) -> Result<Vec<BigInt>, FsError> {
    let size = spec.word_count();
    if size > cap {
        return Err(FsError::EnumerationTooLarge { size, cap });
    }
    let unshifted: Vec<BigInt> =
        match as_i128s(&spec.generators).filter(|_| fits_i128(&spec.max_unshifted())) {
            Some(gens) => {
                let mut sums = raw_sums_i128(&gens, spec.k);
                sums.sort_unstable();
                sums.dedup();
                sums.into_iter().skip(1).map(BigInt::from).collect()
            }
            None => {
                let mut sums = raw_sums_big(&spec.generators, spec.k);
                sums.sort_unstable();
                sums.dedup();
                sums.into_iter().skip(1).collect()
            }
        };
    if spec.shift.is_zero() {
        Ok(unshifted)
    } else {
        Ok(unshifted.into_iter().map(|v| v + &spec.shift).collect())
    }
}

/// Whether the word-to-sum map is injective on `[0,k)^n`.
///
/// Generators that grow faster than the largest sum of their predecessors are
/// accepted without enumeration; otherwise all `k^n` sums are compared.
pub fn has_distinct_sums(spec: &FsSpec) -> bool {
    let km1 = BigInt::from(spec.k - 1);
    let mut prefix_max = BigInt::zero();
    let mut superincreasing = true;
    for x in &spec.generators {
        if *x <= prefix_max {
            superincreasing = false;
            break;
        }
        prefix_max += x * &km1;
    }
    if superincreasing {
        return true;
    }
    match as_i128s(&spec.generators).filter(|_| fits_i128(&spec.max_unshifted())) {
        Some(gens) => injective_sums(&gens, spec.k, 0i128, |s, e, x| s + e as i128 * x),
        None => injective_sums(&spec.generators, spec.k, BigInt::zero(), |s, e, x| {
            s + x * e
        }),
    }
}

fn injective_sums<T, F>(gens: &[T], k: u32, zero: T, step: F) -> bool
where
    T: Clone + Eq + std::hash::Hash,
    F: Fn(&T, u32, &T) -> T,
{
    let mut sums = vec![zero];
    for x in gens {
        let mut seen: HashSet<T> = sums.iter().cloned().collect();
        let base = sums.len();
        for e in 1..k {
            for i in 0..base {
                let v = step(&sums[i], e, x);
                if !seen.insert(v.clone()) {
                    return false;
                }
                sums.push(v);
            }
        }
    }
    true
}

/// Generators with `x_1 = seed` and `x_{j+1} = 2 max FS^k(x_1..x_j) + 1`.
pub fn sparse_generators(k: u32, n: usize, seed: &BigInt) -> Result<FsSpec, FsError> {
    if n == 0 {
        return Err(FsError::EmptyGenerators);
    }
    if k < 2 {
        return Err(FsError::BadMultiplicity(k));
    }
    if !seed.is_positive() {
        return Err(FsError::NotIncreasing);
    }
    let mut gens = Vec::with_capacity(n);
    let mut max = BigInt::zero();
    let mut next = seed.clone();
    for _ in 0..n {
        max += &next * (k - 1);
        gens.push(next);
        next = &max * 2u32 + 1u32;
    }
    FsSpec::new(gens, k)
}

/// Digit ranges of the ĪP enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IpBarIndexing {
    /// `e_i` in `[0, i)` for `i = 1..N`, so the first digit is always 0.
    #[default]
    Literal,
    /// `e_i` in `[0, i+1)`.
    Shifted,
}

impl IpBarIndexing {
    fn digit_bound(self, position: usize) -> u32 {
        match self {
            IpBarIndexing::Literal => position as u32,
            IpBarIndexing::Shifted => position as u32 + 1,
        }
    }
}

/// Enumerates `{ sum_{i<=N} e_i x_i : e_i in [0, i) }`, zero included.
pub fn ip_bar_enumerate(
    generators: &[BigInt],
    count: usize,
    indexing: IpBarIndexing,
) -> Result<Vec<BigInt>, FsError> {
    ip_bar_enumerate_capped(generators, count, indexing, DEFAULT_ENUMERATION_CAP)
}

pub fn ip_bar_enumerate_capped(
    generators: &[BigInt],
    count: usize,
    indexing: IpBarIndexing,
    cap: u128,
) -> Result<Vec<BigInt>, FsError> {
    validate_generators(generators)?;
    if count == 0 || count > generators.len() {
        return Err(FsError::DimensionMismatch {
            expected: generators.len(),
            actual: count,
        });
    }
    let size = (1..=count).fold(1u128, |acc, i| {
        acc.saturating_mul(indexing.digit_bound(i) as u128)
    });
    if size > cap {
        return Err(FsError::EnumerationTooLarge { size, cap });
    }
    let mut sums = vec![BigInt::zero()];
    for (i, x) in generators[..count].iter().enumerate() {
        let bound = indexing.digit_bound(i + 1);
        let base = sums.len();
        for e in 1..bound {
            let step = x * e;
            for j in 0..base {
                let v = &sums[j] + &step;
                sums.push(v);
            }
        }
    }
    sums.sort_unstable();
    sums.dedup();
    Ok(sums)
}

/// A digit vector `(e_1, ..., e_n)` with every `e_i < k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EpsilonWord {
    digits: Vec<u32>,
    k: u32,
}

impl EpsilonWord {
    pub fn new(digits: Vec<u32>, k: u32) -> Result<Self, FsError> {
        if k < 2 {
            return Err(FsError::BadMultiplicity(k));
        }
        if let Some(&digit) = digits.iter().find(|&&d| d >= k) {
            return Err(FsError::DigitOutOfRange { digit, k });
        }
        Ok(EpsilonWord { digits, k })
    }

    pub fn zero(len: usize, k: u32) -> Self {
        EpsilonWord {
            digits: vec![0; len],
            k,
        }
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }
}

impl fmt::Display for EpsilonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

fn check_dims(spec: &FsSpec, len: usize, k: u32) -> Result<(), FsError> {
    if len != spec.len() {
        return Err(FsError::DimensionMismatch {
            expected: spec.len(),
            actual: len,
        });
    }
    if k != spec.k {
        return Err(FsError::BoundMismatch {
            expected: spec.k,
            actual: k,
        });
    }
    Ok(())
}

/// `shift + sum e_i x_i`.
pub fn word_to_sum(word: &EpsilonWord, spec: &FsSpec) -> Result<BigInt, FsError> {
    check_dims(spec, word.len(), word.k)?;
    Ok(word
        .digits
        .iter()
        .zip(&spec.generators)
        .fold(spec.shift.clone(), |acc, (&e, x)| acc + x * e))
}

/// Inverse of [`word_to_sum`]; requires distinct sums.
pub fn sum_to_word(s: &BigInt, spec: &FsSpec) -> Result<EpsilonWord, FsError> {
    if !has_distinct_sums(spec) {
        return Err(FsError::AmbiguousRepresentation(s.clone()));
    }
    let target = s - &spec.shift;
    if target.is_negative() {
        return Err(FsError::NotAMember(s.clone()));
    }
    let mut prefix_max = Vec::with_capacity(spec.len() + 1);
    prefix_max.push(BigInt::zero());
    for x in &spec.generators {
        let next = prefix_max.last().unwrap() + x * (spec.k - 1);
        prefix_max.push(next);
    }
    let mut digits = vec![0u32; spec.len()];
    let mut found: Vec<Vec<u32>> = Vec::new();
    representations(
        &target,
        spec,
        &prefix_max,
        spec.len(),
        &mut digits,
        &mut found,
    );
    match found.len() {
        0 => Err(FsError::NotAMember(s.clone())),
        1 => Ok(EpsilonWord {
            digits: found.pop().unwrap(),
            k: spec.k,
        }),
        _ => Err(FsError::AmbiguousRepresentation(s.clone())),
    }
}

/// Depth-first search for digit vectors summing to `target`, from the last
/// generator down. Stops after two hits.
fn representations(
    target: &BigInt,
    spec: &FsSpec,
    prefix_max: &[BigInt],
    j: usize,
    digits: &mut [u32],
    found: &mut Vec<Vec<u32>>,
) {
    if found.len() >= 2 {
        return;
    }
    if j == 0 {
        if target.is_zero() {
            found.push(digits.to_vec());
        }
        return;
    }
    let x = &spec.generators[j - 1];
    let mut rest = target.clone();
    for e in 0..spec.k {
        if rest.is_negative() {
            break;
        }
        if rest <= prefix_max[j - 1] {
            digits[j - 1] = e;
            representations(&rest, spec, prefix_max, j - 1, digits, found);
            digits[j - 1] = 0;
        }
        rest -= x;
    }
}

/// Writes `x = sum_{i=1}^m g_i B^i` with `|g_i| <= bound`, if possible.
///
/// With `2 * bound < B` the digits are unique, so the balanced residue at
/// each position is forced.
pub fn signed_digit_decompose(
    x: &BigInt,
    base: &BigInt,
    m: usize,
    bound: &BigInt,
) -> Result<Vec<BigInt>, FsError> {
    if *base < BigInt::from(2) || bound.is_negative() || bound * 2u32 >= *base {
        return Err(FsError::BoundTooLarge {
            bound: bound.clone(),
            base: base.clone(),
        });
    }
    let no_rep = || FsError::NoRepresentation(x.clone());
    let (mut rest, rem) = x.div_rem(base);
    if !rem.is_zero() {
        return Err(no_rep());
    }
    let mut digits = Vec::with_capacity(m);
    for _ in 0..m {
        let r = rest.mod_floor(base);
        let digit = if r <= *bound {
            r
        } else if base - &r <= *bound {
            r - base
        } else {
            return Err(no_rep());
        };
        rest = (rest - &digit) / base;
        digits.push(digit);
    }
    if rest.is_zero() {
        Ok(digits)
    } else {
        Err(no_rep())
    }
}

/// One cell of a parametric word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Digit(u32),
    /// Variable index, 0-based.
    Var(u32),
}

/// A word over `[0,k) ∪ {v_1, ..., v_d}` in which every variable occurs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParametricWord {
    cells: Vec<Cell>,
    k: u32,
    dim: u32,
}

impl ParametricWord {
    pub fn new(cells: Vec<Cell>, k: u32) -> Result<Self, FsError> {
        if k < 2 {
            return Err(FsError::BadMultiplicity(k));
        }
        let mut dim = 0u32;
        for c in &cells {
            match *c {
                Cell::Digit(d) if d >= k => {
                    return Err(FsError::DigitOutOfRange { digit: d, k });
                }
                Cell::Var(v) => dim = dim.max(v + 1),
                Cell::Digit(_) => {}
            }
        }
        if dim == 0 {
            return Err(FsError::InvalidWord("no variable cell".into()));
        }
        for v in 0..dim {
            if !cells.contains(&Cell::Var(v)) {
                return Err(FsError::InvalidWord(format!(
                    "variable {} does not occur",
                    v + 1
                )));
            }
        }
        Ok(ParametricWord { cells, k, dim })
    }

    pub fn parse(s: &str, k: u32) -> Result<Self, FsError> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let cells = body
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                if let Some(idx) = tok.strip_prefix('*') {
                    if idx.is_empty() {
                        return Ok(Cell::Var(0));
                    }
                    match idx.parse::<u32>() {
                        Ok(i) if i >= 1 => Ok(Cell::Var(i - 1)),
                        _ => Err(FsError::InvalidWord(format!("bad variable {tok:?}"))),
                    }
                } else {
                    tok.parse::<u32>()
                        .map(Cell::Digit)
                        .map_err(|_| FsError::InvalidWord(format!("bad cell {tok:?}")))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        ParametricWord::new(cells, k)
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Substitutes `values[v]` for variable `v`.
    pub fn point(&self, values: &[u32]) -> EpsilonWord {
        debug_assert_eq!(values.len(), self.dim as usize);
        let digits = self
            .cells
            .iter()
            .map(|c| match *c {
                Cell::Digit(d) => d,
                Cell::Var(v) => values[v as usize],
            })
            .collect();
        EpsilonWord { digits, k: self.k }
    }

    /// All `k^d` points, variable 1 varying slowest.
    pub fn points(&self) -> Vec<EpsilonWord> {
        let d = self.dim as usize;
        let total = saturating_pow(self.k as u128, d) as usize;
        let mut out = Vec::with_capacity(total);
        let mut values = vec![0u32; d];
        for _ in 0..total {
            out.push(self.point(&values));
            for slot in values.iter_mut().rev() {
                *slot += 1;
                if *slot < self.k {
                    break;
                }
                *slot = 0;
            }
        }
        out
    }
}

impl fmt::Display for ParametricWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match *c {
                Cell::Digit(d) => write!(f, "{d}")?,
                Cell::Var(v) if self.dim == 1 => {
                    debug_assert_eq!(v, 0);
                    write!(f, "*")?
                }
                Cell::Var(v) => write!(f, "*{}", v + 1)?,
            }
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct ParametricWordRepr {
    word: String,
    k: u32,
}

impl Serialize for ParametricWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ParametricWordRepr {
            word: self.to_string(),
            k: self.k,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParametricWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ParametricWordRepr::deserialize(d)?;
        ParametricWord::parse(&r.word, r.k).map_err(serde::de::Error::custom)
    }
}

/// `start, start + step, ..., start + (len-1) step` with `step >= 1`.
///
/// `start` may be 0 only for progressions read off a combinatorial line at
/// variable value 0; [`ArithProgression::includes_zero`] flags that case.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ApRepr", into = "ApRepr")]
pub struct ArithProgression {
    start: BigInt,
    step: BigInt,
    len: usize,
}

#[derive(Serialize, Deserialize)]
struct ApRepr {
    #[serde(with = "decimal")]
    a: BigInt,
    #[serde(with = "decimal")]
    d: BigInt,
    len: usize,
    #[serde(default)]
    includes_zero: bool,
}

impl TryFrom<ApRepr> for ArithProgression {
    type Error = FsError;
    fn try_from(r: ApRepr) -> Result<Self, FsError> {
        ArithProgression::new(r.a, r.d, r.len)
    }
}

impl From<ArithProgression> for ApRepr {
    fn from(ap: ArithProgression) -> Self {
        let includes_zero = ap.includes_zero();
        ApRepr {
            a: ap.start,
            d: ap.step,
            len: ap.len,
            includes_zero,
        }
    }
}

impl ArithProgression {
    pub fn new(start: BigInt, step: BigInt, len: usize) -> Result<Self, FsError> {
        if start.is_negative() {
            return Err(FsError::InvalidProgression("negative initial term".into()));
        }
        if !step.is_positive() {
            return Err(FsError::InvalidProgression(
                "difference must be positive".into(),
            ));
        }
        if len < 2 {
            return Err(FsError::InvalidProgression(
                "length must be at least 2".into(),
            ));
        }
        Ok(ArithProgression { start, step, len })
    }

    pub fn start(&self) -> &BigInt {
        &self.start
    }

    pub fn step(&self) -> &BigInt {
        &self.step
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn includes_zero(&self) -> bool {
        self.start.is_zero()
    }

    pub fn terms(&self) -> Vec<BigInt> {
        (0..self.len)
            .map(|j| &self.start + &self.step * j)
            .collect()
    }
}

impl fmt::Display for ArithProgression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, t) in self.terms().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "}}")
    }
}

/// Image of a combinatorial line under the word-to-sum map.
pub fn line_to_ap(word: &ParametricWord, spec: &FsSpec) -> Result<ArithProgression, FsError> {
    if word.dim != 1 {
        return Err(FsError::InvalidWord(format!(
            "a line needs exactly one variable, got {}",
            word.dim
        )));
    }
    check_dims(spec, word.len(), word.k)?;
    let mut start = spec.shift.clone();
    let mut step = BigInt::zero();
    for (c, x) in word.cells.iter().zip(&spec.generators) {
        match *c {
            Cell::Digit(d) => start += x * d,
            Cell::Var(_) => step += x,
        }
    }
    ArithProgression::new(start, step, spec.k as usize)
}

/// The parametric word whose line is the progression's term set, if any.
pub fn ap_to_line(ap: &ArithProgression, spec: &FsSpec) -> Result<Option<ParametricWord>, FsError> {
    let mut words = Vec::with_capacity(ap.len);
    for term in ap.terms() {
        match sum_to_word(&term, spec) {
            Ok(w) => words.push(w),
            Err(FsError::NotAMember(t)) => return Err(FsError::TermNotInSet(t)),
            Err(e) => return Err(e),
        }
    }
    if ap.len != spec.k as usize {
        return Ok(None);
    }
    let mut cells = Vec::with_capacity(spec.len());
    for pos in 0..spec.len() {
        let first = words[0].digits[pos];
        if words.iter().all(|w| w.digits[pos] == first) {
            cells.push(Cell::Digit(first));
        } else if words
            .iter()
            .enumerate()
            .all(|(j, w)| w.digits[pos] as usize == j)
        {
            cells.push(Cell::Var(0));
        } else {
            return Ok(None);
        }
    }
    if !cells.contains(&Cell::Var(0)) {
        return Ok(None);
    }
    ParametricWord::new(cells, spec.k).map(Some)
}

/// Longest arithmetic progression inside a sorted set, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApScan {
    pub length: usize,
    pub witness: Option<ArithProgression>,
}

/// Longest arithmetic progression with positive difference contained in
/// `values`. Among longest ones the witness has the smallest start, then the
/// smallest difference.
pub fn max_ap_length(values: &[BigInt]) -> Result<ApScan, FsError> {
    if values.is_empty() {
        return Err(FsError::EmptyInput);
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(FsError::NotSorted);
    }
    if values[0].is_negative() {
        return Err(FsError::NegativeValue);
    }
    if values.len() == 1 {
        return Ok(ApScan {
            length: 1,
            witness: None,
        });
    }
    let (len, i, j) = match as_i128s(values) {
        Some(small) => longest_ap(&small),
        None => longest_ap(values),
    };
    let step = &values[j] - &values[i];
    Ok(ApScan {
        length: len,
        witness: Some(ArithProgression::new(values[i].clone(), step, len)?),
    })
}

/// Returns `(length, first index, second index)`. Each pair is extended only
/// from the start of its maximal progression, so the total extension work is
/// bounded by the number of pairs.
fn longest_ap<T>(v: &[T]) -> (usize, usize, usize)
where
    T: Ord + Clone + From<i64>,
    for<'a> &'a T: std::ops::Sub<&'a T, Output = T>
        + std::ops::Add<&'a T, Output = T>
        + std::ops::Mul<&'a T, Output = T>,
{
    let mut best = (2usize, 0usize, 1usize);
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            let d = &v[j] - &v[i];
            // Differences only grow with j; stop once the current best cannot be beaten.
            if &v[i] + &(&d * &T::from(best.0 as i64)) > v[n - 1] {
                break;
            }
            let prev = &v[i] - &d;
            if v[..i].binary_search(&prev).is_ok() {
                continue;
            }
            let mut count = 2;
            let mut next = &v[j] + &d;
            let mut lo = j + 1;
            while let Ok(pos) = v[lo..].binary_search(&next) {
                count += 1;
                lo += pos + 1;
                next = &next + &d;
            }
            if count > best.0 {
                best = (count, i, j);
            }
        }
    }
    best
}

impl FromStr for ParametricWord {
    type Err = FsError;

    /// Parses a word and infers `k` as one more than the largest digit
    /// (at least 2). Prefer [`ParametricWord::parse`] when `k` is known.
    fn from_str(s: &str) -> Result<Self, FsError> {
        let probe = ParametricWord::parse(s, u32::MAX)?;
        let max_digit = probe
            .cells
            .iter()
            .filter_map(|c| match c {
                Cell::Digit(d) => Some(*d),
                Cell::Var(_) => None,
            })
            .max()
            .unwrap_or(0);
        ParametricWord::new(probe.cells, (max_digit + 1).max(2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn bigs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn spec(gens: &[u64], k: u32) -> FsSpec {
        FsSpec::from_u64s(gens, k).unwrap()
    }

    /// Independent enumeration: walk every word with an odometer.
    fn naive_fs(gens: &[i64], k: u32, shift: i64) -> Vec<i64> {
        let n = gens.len();
        let mut digits = vec![0u32; n];
        let mut out = Vec::new();
        loop {
            let mut carry = true;
            for d in digits.iter_mut() {
                if !carry {
                    break;
                }
                *d += 1;
                carry = *d == k;
                if carry {
                    *d = 0;
                }
            }
            if carry {
                break;
            }
            out.push(
                shift
                    + digits
                        .iter()
                        .zip(gens)
                        .map(|(&e, &x)| e as i64 * x)
                        .sum::<i64>(),
            );
        }
        out.sort();
        out.dedup();
        out
    }

    /// Cubic scan for the longest progression.
    fn naive_longest_ap(v: &[i64]) -> usize {
        if v.len() < 2 {
            return v.len();
        }
        let set: HashSet<i64> = v.iter().copied().collect();
        let mut best = 2;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let d = v[j] - v[i];
                let mut len = 2;
                while set.contains(&(v[i] + d * len as i64)) {
                    len += 1;
                }
                best = best.max(len);
            }
        }
        best
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(fs_enumerate(&spec(&[1], 3)).unwrap(), bigs(&[1, 2]));
        assert_eq!(
            fs_enumerate(&spec(&[1, 5], 3)).unwrap(),
            bigs(&[1, 2, 5, 6, 7, 10, 11, 12])
        );
        let shifted = spec(&[3, 9], 2).with_shift(big(4)).unwrap();
        assert_eq!(fs_enumerate(&shifted).unwrap(), bigs(&[7, 13, 16]));
    }

    #[test]
    fn enumerate_respects_cap() {
        let s = spec(&[1, 2, 3], 4);
        assert!(matches!(
            fs_enumerate_capped(&s, 63),
            Err(FsError::EnumerationTooLarge { size: 64, cap: 63 })
        ));
        assert!(fs_enumerate_capped(&s, 64).is_ok());
    }

    #[test]
    fn enumerate_large_values_takes_bigint_path() {
        let huge = BigInt::from(2).pow(130);
        let s = FsSpec::new(vec![huge.clone(), &huge * 3], 2).unwrap();
        assert_eq!(
            fs_enumerate(&s).unwrap(),
            vec![huge.clone(), &huge * 3, &huge * 4]
        );
    }

    #[test]
    fn spec_validation() {
        assert_eq!(FsSpec::from_u64s(&[], 2), Err(FsError::EmptyGenerators));
        assert_eq!(FsSpec::from_u64s(&[2, 2], 2), Err(FsError::NotIncreasing));
        assert_eq!(FsSpec::from_u64s(&[0, 2], 2), Err(FsError::NotIncreasing));
        assert_eq!(FsSpec::from_u64s(&[1], 1), Err(FsError::BadMultiplicity(1)));
        assert_eq!(
            spec(&[1], 2).with_shift(big(-1)),
            Err(FsError::NegativeShift)
        );
    }

    #[test]
    fn spec_json_uses_decimal_strings() {
        let s = spec(&[1, 5], 3).with_shift(big(2)).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"generators":["1","5"],"k":3,"shift":"2"}"#);
        let back: FsSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        let bad = serde_json::from_str::<FsSpec>(r#"{"generators":["5","1"],"k":3}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn distinct_sums_examples() {
        assert!(!has_distinct_sums(&spec(&[1, 2], 3)));
        assert!(has_distinct_sums(&spec(&[1, 5], 3)));
        assert!(has_distinct_sums(&spec(&[7, 49], 3)));
        // Not superincreasing but still injective: 2 = 2*1 collides only for k >= 3.
        assert!(has_distinct_sums(&spec(&[1, 2], 2)));
        assert!(!has_distinct_sums(&spec(&[1, 2, 3], 2)));
    }

    #[test]
    fn sparse_examples() {
        let one = BigInt::one();
        assert_eq!(
            sparse_generators(3, 2, &one).unwrap().generators(),
            bigs(&[1, 5])
        );
        assert_eq!(
            sparse_generators(2, 3, &one).unwrap().generators(),
            bigs(&[1, 3, 9])
        );
        assert_eq!(
            sparse_generators(2, 1, &big(7)).unwrap().generators(),
            bigs(&[7])
        );
        assert!(sparse_generators(2, 0, &one).is_err());
    }

    #[test]
    fn sparse_generators_have_distinct_sums() {
        for k in 2..=5 {
            for n in 1..=8 {
                let s = sparse_generators(k, n, &BigInt::one()).unwrap();
                assert!(has_distinct_sums(&s), "k={k} n={n}");
                if s.word_count() <= 1 << 16 {
                    let fs = fs_enumerate(&s).unwrap();
                    assert_eq!(fs.len() as u128, s.word_count() - 1);
                }
            }
        }
    }

    #[test]
    fn ip_bar_examples() {
        let lit = IpBarIndexing::Literal;
        assert_eq!(
            ip_bar_enumerate(&bigs(&[1, 2]), 2, lit).unwrap(),
            bigs(&[0, 2])
        );
        assert_eq!(
            ip_bar_enumerate(&bigs(&[1, 2, 4]), 3, lit).unwrap(),
            bigs(&[0, 2, 4, 6, 8, 10])
        );
        assert_eq!(
            ip_bar_enumerate(&bigs(&[3, 8, 20]), 1, lit).unwrap(),
            bigs(&[0])
        );
        assert_eq!(
            ip_bar_enumerate(&bigs(&[1, 2]), 2, IpBarIndexing::Shifted).unwrap(),
            bigs(&[0, 1, 2, 3, 4, 5])
        );
        assert!(ip_bar_enumerate(&bigs(&[1, 2]), 3, lit).is_err());
    }

    #[test]
    fn ip_bar_contains_smaller_multiplicity_sets() {
        // Digits of position i range over [0, i), so positions k..N admit every
        // digit below k.
        let gens: Vec<BigInt> = (0..7).map(|i| BigInt::from(10u64.pow(i))).collect();
        let n = gens.len();
        let ipbar: HashSet<BigInt> = ip_bar_enumerate(&gens, n, IpBarIndexing::Literal)
            .unwrap()
            .into_iter()
            .collect();
        for k in 2..=n {
            let tail = FsSpec::new(gens[k - 1..].to_vec(), k as u32).unwrap();
            for v in fs_enumerate(&tail).unwrap() {
                assert!(ipbar.contains(&v), "k={k} missing {v}");
            }
        }
    }

    #[test]
    fn word_sum_examples() {
        let s = spec(&[1, 5], 3);
        let w = EpsilonWord::new(vec![1, 2], 3).unwrap();
        assert_eq!(word_to_sum(&w, &s).unwrap(), big(11));
        let shifted = s.clone().with_shift(big(3)).unwrap();
        assert_eq!(
            word_to_sum(&EpsilonWord::new(vec![2, 2], 3).unwrap(), &shifted).unwrap(),
            big(15)
        );
        assert_eq!(
            word_to_sum(&EpsilonWord::zero(2, 3), &shifted).unwrap(),
            big(3)
        );
        assert!(matches!(
            word_to_sum(&EpsilonWord::zero(3, 3), &s),
            Err(FsError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            word_to_sum(&EpsilonWord::zero(2, 4), &s),
            Err(FsError::BoundMismatch { .. })
        ));

        assert_eq!(sum_to_word(&big(11), &s).unwrap().digits(), &[1, 2]);
        assert!(sum_to_word(&big(0), &s).unwrap().is_zero());
        assert!(sum_to_word(&big(3), &shifted).unwrap().is_zero());
        assert_eq!(sum_to_word(&big(4), &s), Err(FsError::NotAMember(big(4))));
        assert_eq!(sum_to_word(&big(13), &s), Err(FsError::NotAMember(big(13))));
        assert_eq!(
            sum_to_word(&big(2), &spec(&[1, 2], 3)),
            Err(FsError::AmbiguousRepresentation(big(2)))
        );
    }

    #[test]
    fn signed_digit_examples() {
        let ten = big(10);
        assert_eq!(
            signed_digit_decompose(&big(0), &ten, 3, &big(4)).unwrap(),
            bigs(&[0, 0, 0])
        );
        assert_eq!(
            signed_digit_decompose(&big(-170), &ten, 2, &big(4)).unwrap(),
            bigs(&[3, -2])
        );
        assert_eq!(
            signed_digit_decompose(&big(50), &ten, 2, &big(4)),
            Err(FsError::NoRepresentation(big(50)))
        );
        // Needs a third digit.
        assert!(signed_digit_decompose(&big(1000), &ten, 2, &big(4)).is_err());
        // Not a multiple of B: the sum starts at B^1.
        assert!(signed_digit_decompose(&big(7), &ten, 2, &big(4)).is_err());
        assert!(matches!(
            signed_digit_decompose(&big(0), &ten, 2, &big(5)),
            Err(FsError::BoundTooLarge { .. })
        ));
    }

    #[test]
    fn line_examples() {
        let s = spec(&[1, 5], 3);
        let ap = line_to_ap(&ParametricWord::parse("(*,0)", 3).unwrap(), &s).unwrap();
        assert_eq!((ap.start(), ap.step(), ap.len()), (&big(0), &big(1), 3));
        assert!(ap.includes_zero());
        let ap = line_to_ap(&ParametricWord::parse("(1,*)", 3).unwrap(), &s).unwrap();
        assert_eq!(ap.terms(), bigs(&[1, 6, 11]));
        assert!(!ap.includes_zero());
        let ap = line_to_ap(&ParametricWord::parse("(*,*)", 3).unwrap(), &s).unwrap();
        assert_eq!((ap.start(), ap.step()), (&big(0), &big(6)));
        assert!(ap.includes_zero());

        let plane = ParametricWord::parse("(*1,*2)", 3).unwrap();
        assert!(matches!(
            line_to_ap(&plane, &s),
            Err(FsError::InvalidWord(_))
        ));
        let short = ParametricWord::parse("(*)", 3).unwrap();
        assert!(matches!(
            line_to_ap(&short, &s),
            Err(FsError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ap_to_line_examples() {
        let s = spec(&[1, 5], 3);
        let ap = ArithProgression::new(big(1), big(5), 3).unwrap();
        let w = ap_to_line(&ap, &s).unwrap().unwrap();
        assert_eq!(w.to_string(), "(1,*)");

        // Base-3 generators; {5,7,9} has words (2,1,0,0), (1,2,0,0), (0,0,1,0).
        let base3 = spec(&[1, 3, 9, 27], 3);
        let ap = ArithProgression::new(big(5), big(2), 3).unwrap();
        assert_eq!(ap_to_line(&ap, &base3).unwrap(), None);

        let two = sparse_generators(2, 2, &BigInt::one()).unwrap();
        let x = two.generators().to_vec();
        let ap = ArithProgression::new(x[0].clone(), x[1].clone(), 2).unwrap();
        assert_eq!(ap_to_line(&ap, &two).unwrap().unwrap().to_string(), "(1,*)");

        let ap = ArithProgression::new(big(2), big(2), 3).unwrap();
        assert_eq!(ap_to_line(&ap, &s), Err(FsError::TermNotInSet(big(4))));
    }

    #[test]
    fn word_parsing_and_display() {
        let w = ParametricWord::parse("(*1,2,*2,*1)", 3).unwrap();
        assert_eq!(w.dim(), 2);
        assert_eq!(w.to_string(), "(*1,2,*2,*1)");
        assert_eq!(w.points().len(), 9);
        assert_eq!(w.points()[4].digits(), &[1, 2, 1, 1]);
        assert!(ParametricWord::parse("(0,1)", 3).is_err());
        assert!(ParametricWord::parse("(*2,0)", 3).is_err());
        assert!(ParametricWord::parse("(3,*)", 3).is_err());
        let inferred: ParametricWord = "(1,0,*,2)".parse().unwrap();
        assert_eq!(inferred.k(), 3);
        let json = serde_json::to_string(&inferred).unwrap();
        assert_eq!(json, r#"{"word":"(1,0,*,2)","k":3}"#);
    }

    #[test]
    fn max_ap_examples() {
        let scan = max_ap_length(&bigs(&[1, 2, 3, 5])).unwrap();
        assert_eq!(scan.length, 3);
        assert_eq!(
            scan.witness.unwrap(),
            ArithProgression::new(big(1), big(1), 3).unwrap()
        );
        let scan = max_ap_length(&bigs(&[1, 10])).unwrap();
        assert_eq!(scan.length, 2);
        assert_eq!(
            scan.witness.unwrap(),
            ArithProgression::new(big(1), big(9), 2).unwrap()
        );
        assert_eq!(max_ap_length(&bigs(&[4])).unwrap().length, 1);
        assert_eq!(max_ap_length(&[]), Err(FsError::EmptyInput));
        assert_eq!(max_ap_length(&bigs(&[2, 1])), Err(FsError::NotSorted));
        assert_eq!(max_ap_length(&bigs(&[-1, 1])), Err(FsError::NegativeValue));

        let fs = fs_enumerate(&sparse_generators(3, 4, &BigInt::one()).unwrap()).unwrap();
        assert_eq!(max_ap_length(&fs).unwrap().length, 3);
    }

    proptest! {
        #[test]
        fn enumeration_matches_odometer(
            gens in proptest::collection::btree_set(1i64..60, 1..5),
            k in 2u32..5,
            shift in 0i64..20,
        ) {
            let gens: Vec<i64> = gens.into_iter().collect();
            let s = FsSpec::new(bigs(&gens), k).unwrap().with_shift(big(shift)).unwrap();
            prop_assert_eq!(fs_enumerate(&s).unwrap(), bigs(&naive_fs(&gens, k, shift)));
            let injective = naive_fs(&gens, k, 0).len() as u128 == s.word_count() - 1;
            prop_assert_eq!(has_distinct_sums(&s), injective);
        }

        #[test]
        fn longest_ap_matches_cubic_scan(set in proptest::collection::btree_set(0i64..120, 1..40)) {
            let v: Vec<i64> = set.into_iter().collect();
            let scan = max_ap_length(&bigs(&v)).unwrap();
            prop_assert_eq!(scan.length, naive_longest_ap(&v));
            if let Some(ap) = scan.witness {
                for t in ap.terms() {
                    prop_assert!(v.contains(&t.to_i64().unwrap()));
                }
            }
        }

        #[test]
        fn word_round_trip(
            k in 2u32..6,
            n in 1usize..7,
            seed in 1u64..20,
            raw in proptest::collection::vec(0u32..1000, 7),
            shift in 0u64..50,
        ) {
            let s = sparse_generators(k, n, &BigInt::from(seed)).unwrap()
                .with_shift(BigInt::from(shift)).unwrap();
            let w = EpsilonWord::new(raw[..n].iter().map(|d| d % k).collect(), k).unwrap();
            let sum = word_to_sum(&w, &s).unwrap();
            prop_assert_eq!(sum_to_word(&sum, &s).unwrap(), w);
        }

        #[test]
        fn signed_digits_invert_evaluation(
            half in 1i64..50,
            extra in 1i64..20,
            m in 1usize..6,
            raw in proptest::collection::vec(-1000i64..1000, 6),
            raw2 in proptest::collection::vec(-1000i64..1000, 6),
        ) {
            let bound = half;
            let base = BigInt::from(2 * bound + extra);
            let eval = |digits: &[i64]| -> BigInt {
                digits.iter().enumerate()
                    .map(|(i, &g)| BigInt::from(g) * base.pow(i as u32 + 1))
                    .sum()
            };
            let g: Vec<i64> = raw[..m].iter().map(|v| v.rem_euclid(2 * bound + 1) - bound).collect();
            let h: Vec<i64> = raw2[..m].iter().map(|v| v.rem_euclid(2 * bound + 1) - bound).collect();
            let x = eval(&g);
            prop_assert_eq!(signed_digit_decompose(&x, &base, m, &BigInt::from(bound)).unwrap(), bigs(&g));
            if g != h {
                prop_assert_ne!(x, eval(&h));
            }
        }
    }

    #[test]
    fn two_term_progressions_need_not_be_lines() {
        // For k = 2 any pair is a progression, but {x_1, x_2} has the
        // incomparable words (1,0) and (0,1).
        let s = sparse_generators(2, 2, &BigInt::one()).unwrap();
        let ap = ArithProgression::new(big(1), big(2), 2).unwrap();
        assert_eq!(ap_to_line(&ap, &s).unwrap(), None);
    }

    #[test]
    fn anti_diagonal_progression_is_not_a_line() {
        // 2, 6, 10 = (2,0), (1,1), (0,2) over (1, 5): a progression whose
        // first digit decreases while the second increases.
        let s = sparse_generators(3, 3, &BigInt::one()).unwrap();
        let ap = ArithProgression::new(big(2), big(4), 3).unwrap();
        assert_eq!(ap_to_line(&ap, &s).unwrap(), None);
    }

    /// Positions of a progression's words are constant, count up with the
    /// term index, or count down with it.
    fn classify(words: &[EpsilonWord], k: u32) -> Option<(bool, bool)> {
        let (mut up, mut down) = (false, false);
        for pos in 0..words[0].len() {
            let col: Vec<u32> = words.iter().map(|w| w.digits()[pos]).collect();
            if col.iter().all(|&d| d == col[0]) {
                continue;
            }
            if col.iter().enumerate().all(|(j, &d)| d as usize == j) {
                up = true;
            } else if col
                .iter()
                .enumerate()
                .all(|(j, &d)| d as usize == k as usize - 1 - j)
            {
                down = true;
            } else {
                return None;
            }
        }
        Some((up, down))
    }

    #[test]
    fn sparse_progressions_are_lines_or_reflected_lines() {
        // A k-term progression in a sparse set is a combinatorial line exactly
        // when none of its varying positions counts down; the line maps back to
        // the same progression.
        for k in 2u32..=3 {
            for n in 1..=5 {
                let s = sparse_generators(k, n, &BigInt::one()).unwrap();
                let fs = fs_enumerate(&s).unwrap();
                let vals: Vec<i64> = fs.iter().map(|v| v.to_i64().unwrap()).collect();
                let set: HashSet<i64> = vals.iter().copied().collect();
                for i in 0..vals.len() {
                    for j in i + 1..vals.len() {
                        let d = vals[j] - vals[i];
                        if !(2..k as i64).all(|t| set.contains(&(vals[i] + t * d))) {
                            continue;
                        }
                        let ap = ArithProgression::new(big(vals[i]), big(d), k as usize).unwrap();
                        let words: Vec<EpsilonWord> = ap
                            .terms()
                            .iter()
                            .map(|t| sum_to_word(t, &s).unwrap())
                            .collect();
                        let (up, down) = classify(&words, k)
                            .unwrap_or_else(|| panic!("k={k} n={n} {ap} is not line-shaped"));
                        match ap_to_line(&ap, &s).unwrap() {
                            Some(word) => {
                                assert!(up && !down);
                                assert_eq!(line_to_ap(&word, &s).unwrap(), ap);
                            }
                            None => assert!(down, "k={k} n={n} {ap}"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sparse_sets_have_no_longer_progressions() {
        for k in 2u32..=4 {
            for n in 3..=6 {
                let s = sparse_generators(k, n, &BigInt::one()).unwrap();
                let scan = max_ap_length(&fs_enumerate(&s).unwrap()).unwrap();
                assert_eq!(scan.length, k as usize, "k={k} n={n}");
            }
        }
    }
}

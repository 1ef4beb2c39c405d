//! Regularity criteria for integer linear systems `A x = 0`: zero-sum column
//! subsets and the covers they form, separating covers, Rado's columns
//! condition, shift invariance and the signature bound for shift-invariant
//! equations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decimal;
use crate::linalg::{self, Row};

pub const DEFAULT_COLUMN_CAP: usize = 22;
pub const DEFAULT_ROW_CAP: usize = 8;
/// Column sets are bit masks, so no cap may exceed this.
pub const MAX_COLUMNS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error("matrix must have at least one row and one column")]
    EmptySystem,
    #[error("matrix rows have different lengths")]
    RaggedRows,
    #[error("column {0} is zero")]
    ZeroColumn(usize),
    #[error("{cols} columns exceed the cap of {cap}")]
    TooManyColumns { cols: usize, cap: usize },
    #[error("{rows} rows exceed the cap of {cap}")]
    TooManyRows { rows: usize, cap: usize },
    #[error("cover is not certified: {0}")]
    UncertifiedCover(String),
    #[error("coefficient list contains a zero")]
    ZeroCoefficient,
    #[error("invalid shift-invariant equation: {0}")]
    InvalidEquation(String),
    #[error("gcd({a}, {b}) is not 1")]
    NotCoprime { a: BigInt, b: BigInt },
    #[error("coefficients must be positive")]
    NonPositive,
}

impl CriteriaError {
    pub fn code(&self) -> &'static str {
        match self {
            CriteriaError::TooManyColumns { .. } | CriteriaError::TooManyRows { .. } => {
                "cap-exceeded"
            }
            CriteriaError::UncertifiedCover(_) => "uncertified-cover",
            CriteriaError::ZeroCoefficient => "zero-coefficient",
            CriteriaError::NotCoprime { .. } => "not-coprime",
            _ => "invalid-input",
        }
    }
}

/// Size limits for the subset enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_cols: usize,
    pub max_rows: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_cols: DEFAULT_COLUMN_CAP,
            max_rows: DEFAULT_ROW_CAP,
        }
    }
}

impl Caps {
    fn check(&self, sys: &LinearSystem) -> Result<(), CriteriaError> {
        let cap = self.max_cols.min(MAX_COLUMNS);
        if sys.cols > cap {
            return Err(CriteriaError::TooManyColumns {
                cols: sys.cols,
                cap,
            });
        }
        if sys.rows > self.max_rows {
            return Err(CriteriaError::TooManyRows {
                rows: sys.rows,
                cap: self.max_rows,
            });
        }
        Ok(())
    }
}

/// An `l x n` integer matrix with no zero column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct LinearSystem {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BigInt>>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    #[serde(with = "decimal::matrix")]
    entries: Vec<Vec<BigInt>>,
}

impl TryFrom<MatrixRepr> for LinearSystem {
    type Error = CriteriaError;
    fn try_from(r: MatrixRepr) -> Result<Self, CriteriaError> {
        if r.entries.len() != r.rows || r.entries.iter().any(|row| row.len() != r.cols) {
            return Err(CriteriaError::RaggedRows);
        }
        LinearSystem::from_rows(r.entries)
    }
}

impl From<LinearSystem> for MatrixRepr {
    fn from(s: LinearSystem) -> Self {
        MatrixRepr {
            rows: s.rows,
            cols: s.cols,
            entries: s.entries,
        }
    }
}

impl LinearSystem {
    pub fn from_rows(entries: Vec<Vec<BigInt>>) -> Result<Self, CriteriaError> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(CriteriaError::EmptySystem);
        }
        if entries.iter().any(|r| r.len() != cols) {
            return Err(CriteriaError::RaggedRows);
        }
        if let Some(c) = (0..cols).find(|&c| entries.iter().all(|r| r[c].is_zero())) {
            return Err(CriteriaError::ZeroColumn(c + 1));
        }
        Ok(LinearSystem {
            rows,
            cols,
            entries,
        })
    }

    /// A single equation `sum a_i x_i = 0` as a `1 x n` system.
    pub fn equation(coefficients: Vec<BigInt>) -> Result<Self, CriteriaError> {
        Self::from_rows(vec![coefficients])
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, CriteriaError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    /// Column `i` (0-based).
    pub fn column(&self, i: usize) -> Vec<BigInt> {
        self.entries.iter().map(|r| r[i].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|i| self.column(i)).collect()
    }

    /// `A x`.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols, "vector length must match column count");
        self.entries
            .iter()
            .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_solution(&self, x: &[BigInt]) -> bool {
        x.len() == self.cols && self.apply(x).iter().all(Zero::is_zero)
    }

    /// Sum of the columns in `set`.
    pub fn column_sum(&self, set: ColumnSet) -> Vec<BigInt> {
        self.entries
            .iter()
            .map(|r| set.indices().map(|i| &r[i]).sum())
            .collect()
    }

    fn full_set(&self) -> ColumnSet {
        ColumnSet::full(self.cols)
    }
}

/// A set of column indices stored as a bit mask (bit `i` = column `i+1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ColumnSet(u64);

impl ColumnSet {
    pub const EMPTY: ColumnSet = ColumnSet(0);

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_COLUMNS);
        if n == 64 {
            ColumnSet(u64::MAX)
        } else {
            ColumnSet((1u64 << n) - 1)
        }
    }

    pub fn from_mask(mask: u64) -> Self {
        ColumnSet(mask)
    }

    /// From 1-based column numbers.
    pub fn from_one_based(cols: &[usize]) -> Option<Self> {
        cols.iter().try_fold(ColumnSet(0), |acc, &c| {
            (1..=MAX_COLUMNS)
                .contains(&c)
                .then(|| ColumnSet(acc.0 | 1 << (c - 1)))
        })
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ColumnSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ColumnSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ColumnSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// 0-based indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            (m != 0).then(|| {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                i
            })
        })
    }

    pub fn one_based(self) -> Vec<usize> {
        self.indices().map(|i| i + 1).collect()
    }
}

impl fmt::Display for ColumnSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for ColumnSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColumnSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let cols = Vec::<usize>::deserialize(d)?;
        ColumnSet::from_one_based(&cols)
            .ok_or_else(|| serde::de::Error::custom("column numbers must lie in 1..=64"))
    }
}

/// A family `I_1, ..., I_m` of column sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetCover {
    pub subsets: Vec<ColumnSet>,
}

impl SubsetCover {
    pub fn new(subsets: Vec<ColumnSet>) -> Self {
        SubsetCover { subsets }
    }

    pub fn from_one_based(sets: &[&[usize]]) -> Option<Self> {
        sets.iter()
            .map(|s| ColumnSet::from_one_based(s))
            .collect::<Option<Vec<_>>>()
            .map(SubsetCover::new)
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn union(&self) -> ColumnSet {
        self.subsets
            .iter()
            .fold(ColumnSet::EMPTY, |acc, s| acc.union(*s))
    }

    /// Whether every pair of distinct columns is split by some subset.
    pub fn separates(&self, n: usize) -> bool {
        (0..n).all(|i| {
            (i + 1..n).all(|j| self.subsets.iter().any(|s| s.contains(i) != s.contains(j)))
        })
    }

    /// Checks that the subsets are non-empty, sum to zero and cover all columns.
    pub fn certify(&self, sys: &LinearSystem) -> Result<(), CriteriaError> {
        let uncertified = |m: String| Err(CriteriaError::UncertifiedCover(m));
        if self.subsets.is_empty() {
            return uncertified("no subsets".into());
        }
        let full = sys.full_set();
        for s in &self.subsets {
            if s.is_empty() {
                return uncertified("empty subset".into());
            }
            if !s.is_subset(full) {
                return uncertified(format!("{s} mentions a column beyond {}", sys.cols));
            }
            if !sys.column_sum(*s).iter().all(Zero::is_zero) {
                return uncertified(format!("columns {s} do not sum to zero"));
            }
        }
        if self.union() != full {
            return uncertified(format!(
                "columns {} are not covered",
                full.difference(self.union())
            ));
        }
        Ok(())
    }
}

/// Visits non-empty subsets of `cols` (0-based indices into `vectors`) in
/// lexicographic order of their sorted index lists and reports the ones whose
/// vectors sum to zero. The visitor returns `false` to stop.
fn for_each_zero_sum<F>(vectors: &[Vec<BigInt>], cols: &[usize], mut visit: F)
where
    F: FnMut(ColumnSet) -> bool,
{
    let small: Option<Vec<Vec<i128>>> = vectors
        .iter()
        .map(|v| v.iter().map(|x| x.to_i64().map(i128::from)).collect())
        .collect();
    match small {
        Some(v) => zero_sum_dfs(&v, cols, 0i128, &mut visit),
        None => zero_sum_dfs(vectors, cols, BigInt::zero(), &mut visit),
    }
}

fn zero_sum_dfs<T, F>(vectors: &[Vec<T>], cols: &[usize], zero: T, visit: &mut F)
where
    T: Clone + PartialEq + for<'a> std::ops::AddAssign<&'a T> + for<'a> std::ops::SubAssign<&'a T>,
    F: FnMut(ColumnSet) -> bool,
{
    let dim = vectors.first().map_or(0, Vec::len);
    let mut acc = vec![zero.clone(); dim];

    fn go<T, F>(
        vectors: &[Vec<T>],
        cols: &[usize],
        start: usize,
        mask: u64,
        acc: &mut [T],
        zero: &T,
        visit: &mut F,
    ) -> bool
    where
        T: Clone
            + PartialEq
            + for<'a> std::ops::AddAssign<&'a T>
            + for<'a> std::ops::SubAssign<&'a T>,
        F: FnMut(ColumnSet) -> bool,
    {
        for p in start..cols.len() {
            let c = cols[p];
            for (a, x) in acc.iter_mut().zip(&vectors[c]) {
                *a += x;
            }
            let m = mask | 1 << c;
            let keep_going = (!acc.iter().all(|a| a == zero) || visit(ColumnSet(m)))
                && go(vectors, cols, p + 1, m, acc, zero, visit);
            for (a, x) in acc.iter_mut().zip(&vectors[c]) {
                *a -= x;
            }
            if !keep_going {
                return false;
            }
        }
        true
    }

    go(vectors, cols, 0, 0, &mut acc, &zero, visit);
}

/// All non-empty column sets with zero sum, in lexicographic order.
pub fn zero_sum_subsets(sys: &LinearSystem) -> Result<Vec<ColumnSet>, CriteriaError> {
    zero_sum_subsets_with(sys, Caps::default())
}

pub fn zero_sum_subsets_with(
    sys: &LinearSystem,
    caps: Caps,
) -> Result<Vec<ColumnSet>, CriteriaError> {
    caps.check(sys)?;
    let cols: Vec<usize> = (0..sys.cols).collect();
    let mut out = Vec::new();
    for_each_zero_sum(&sys.columns(), &cols, |s| {
        out.push(s);
        true
    });
    Ok(out)
}

/// Picks subsets from `family` (in order) until `score` reports no progress.
/// Ties go to the earliest subset.
fn greedy<F>(family: &[ColumnSet], mut score: F) -> Vec<ColumnSet>
where
    F: FnMut(&[ColumnSet], ColumnSet) -> usize,
{
    let mut chosen: Vec<ColumnSet> = Vec::new();
    loop {
        let best = family.iter().map(|&s| (score(&chosen, s), s)).fold(
            (0, ColumnSet::EMPTY),
            |best, cur| if cur.0 > best.0 { cur } else { best },
        );
        if best.0 == 0 {
            return chosen;
        }
        chosen.push(best.1);
    }
}

/// A zero-sum cover of all columns if one exists, chosen greedily by the
/// number of newly covered columns.
pub fn check_ip_cover(sys: &LinearSystem) -> Result<Option<SubsetCover>, CriteriaError> {
    check_ip_cover_with(sys, Caps::default())
}

pub fn check_ip_cover_with(
    sys: &LinearSystem,
    caps: Caps,
) -> Result<Option<SubsetCover>, CriteriaError> {
    let family = zero_sum_subsets_with(sys, caps)?;
    let full = sys.full_set();
    let all = family.iter().fold(ColumnSet::EMPTY, |a, s| a.union(*s));
    if all != full {
        return Ok(None);
    }
    let chosen = greedy(&family, |chosen, s| {
        let covered = chosen.iter().fold(ColumnSet::EMPTY, |a, c| a.union(*c));
        s.difference(covered).len()
    });
    Ok(Some(SubsetCover::new(chosen)))
}

/// Number of column pairs that are not yet split by `chosen` but are split
/// by `candidate`.
fn newly_separated(n: usize, chosen: &[ColumnSet], candidate: ColumnSet) -> usize {
    // Group columns by their membership pattern in the chosen sets.
    let mut classes: Vec<(Vec<bool>, usize, usize)> = Vec::new();
    for i in 0..n {
        let sig: Vec<bool> = chosen.iter().map(|s| s.contains(i)).collect();
        let inside = candidate.contains(i);
        match classes.iter_mut().find(|c| c.0 == sig) {
            Some(c) => {
                if inside {
                    c.1 += 1
                } else {
                    c.2 += 1
                }
            }
            None => classes.push((sig, inside as usize, !inside as usize)),
        }
    }
    classes.iter().map(|c| c.1 * c.2).sum()
}

/// A zero-sum cover that also separates every pair of columns, if one exists.
pub fn check_separation(sys: &LinearSystem) -> Result<Option<SubsetCover>, CriteriaError> {
    check_separation_with(sys, Caps::default())
}

pub fn check_separation_with(
    sys: &LinearSystem,
    caps: Caps,
) -> Result<Option<SubsetCover>, CriteriaError> {
    let family = zero_sum_subsets_with(sys, caps)?;
    let n = sys.cols;
    let whole = SubsetCover::new(family.clone());
    if whole.union() != sys.full_set() || !whole.separates(n) {
        return Ok(None);
    }
    let chosen = greedy(&family, |chosen, s| {
        let covered = chosen.iter().fold(ColumnSet::EMPTY, |a, c| a.union(*c));
        s.difference(covered).len() + newly_separated(n, chosen, s)
    });
    let cover = SubsetCover::new(chosen);
    debug_assert!(cover.separates(n));
    Ok(Some(cover))
}

/// One term of a span witness: `coefficient * column`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessTerm {
    /// 0-based column index.
    pub column: usize,
    pub coefficient: BigRational,
}

impl Serialize for WitnessTerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            column: usize,
            coefficient: String,
        }
        Repr {
            column: self.column + 1,
            coefficient: linalg::rational_string(&self.coefficient),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WitnessTerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            column: usize,
            coefficient: String,
        }
        let r = Repr::deserialize(d)?;
        if r.column == 0 {
            return Err(serde::de::Error::custom("columns are numbered from 1"));
        }
        Ok(WitnessTerm {
            column: r.column - 1,
            coefficient: linalg::parse_rational(&r.coefficient)
                .map_err(serde::de::Error::custom)?,
        })
    }
}

/// A columns-condition certificate: blocks `A_1 | ... | A_t` and, for every
/// block after the first, the rational combination of earlier columns that
/// equals the block's column sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockOrdering {
    pub blocks: Vec<ColumnSet>,
    /// `witnesses[0]` is always empty.
    pub witnesses: Vec<Vec<WitnessTerm>>,
}

impl BlockOrdering {
    /// Columns (0-based) in block order, ascending within each block.
    pub fn permutation(&self) -> Vec<usize> {
        self.blocks.iter().flat_map(|b| b.indices()).collect()
    }
}

/// Checks a block ordering from first principles: the blocks partition the
/// columns, the first block sums to zero, and each later block sums to the
/// recorded combination of columns from strictly earlier blocks.
pub fn verify_block_ordering(sys: &LinearSystem, ord: &BlockOrdering) -> Result<(), String> {
    if ord.blocks.is_empty() {
        return Err("no blocks".into());
    }
    if ord.witnesses.len() != ord.blocks.len() {
        return Err("one witness list per block is required".into());
    }
    let mut seen = ColumnSet::EMPTY;
    for (b, block) in ord.blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(format!("block {} is empty", b + 1));
        }
        if !block.intersection(seen).is_empty() {
            return Err(format!("block {} repeats a column", b + 1));
        }
        let sum = linalg::to_rational(&sys.column_sum(*block));
        let mut combo = vec![BigRational::zero(); sys.rows];
        for term in &ord.witnesses[b] {
            if !seen.contains(term.column) {
                return Err(format!(
                    "block {} uses column {} which is not to its left",
                    b + 1,
                    term.column + 1
                ));
            }
            for (t, row) in sys.entries.iter().enumerate() {
                combo[t] += &term.coefficient * BigRational::from_integer(row[term.column].clone());
            }
        }
        if sum != combo {
            return Err(format!("block {} sum differs from its witness", b + 1));
        }
        seen = seen.union(*block);
    }
    if seen != sys.full_set() {
        return Err("blocks do not cover every column".into());
    }
    Ok(())
}

/// Expresses `target` in terms of the columns `earlier` (0-based).
fn span_witness(
    sys: &LinearSystem,
    earlier: &[usize],
    target: &[BigInt],
) -> Option<Vec<WitnessTerm>> {
    let cols: Vec<Row> = earlier
        .iter()
        .map(|&c| linalg::to_rational(&sys.column(c)))
        .collect();
    let coeffs = linalg::solve_in_span(&cols, &linalg::to_rational(target))?;
    let mut terms: Vec<WitnessTerm> = earlier
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .map(|(&column, coefficient)| WitnessTerm {
            column,
            coefficient,
        })
        .collect();
    terms.sort_by_key(|t| t.column);
    Some(terms)
}

/// Searches for a columns-condition block ordering.
///
/// Once some columns are placed, a subset of the rest is a valid next block
/// iff its columns sum to zero modulo the span of the placed ones; and taking
/// any valid block never destroys the validity of another (its remainder is
/// still valid afterwards). So the lexicographically first valid block is
/// taken at each step and failure at any step is final.
pub fn check_columns_condition(sys: &LinearSystem) -> Result<Option<BlockOrdering>, CriteriaError> {
    check_columns_condition_with(sys, Caps::default())
}

pub fn check_columns_condition_with(
    sys: &LinearSystem,
    caps: Caps,
) -> Result<Option<BlockOrdering>, CriteriaError> {
    caps.check(sys)?;
    let mut placed: Vec<usize> = Vec::new();
    let mut remaining: Vec<usize> = (0..sys.cols).collect();
    let mut blocks = Vec::new();
    let mut witnesses = Vec::new();
    while !remaining.is_empty() {
        // Integer rows spanning the annihilator of the placed columns.
        let placed_rows: Vec<Row> = placed
            .iter()
            .map(|&c| linalg::to_rational(&sys.column(c)))
            .collect();
        let projector: Vec<Vec<BigInt>> = linalg::nullspace(&placed_rows, sys.rows)
            .iter()
            .map(|y| linalg::integer_scale(y))
            .collect();
        let residues: Vec<Vec<BigInt>> = (0..sys.cols)
            .map(|c| {
                let col = sys.column(c);
                projector
                    .iter()
                    .map(|p| p.iter().zip(&col).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .collect();
        let mut found = None;
        for_each_zero_sum(&residues, &remaining, |s| {
            found = Some(s);
            false
        });
        let Some(block) = found else {
            return Ok(None);
        };
        let witness = if placed.is_empty() {
            Vec::new()
        } else {
            span_witness(sys, &placed, &sys.column_sum(block))
                .expect("residue test guarantees span membership")
        };
        placed.extend(block.indices());
        remaining.retain(|&c| !block.contains(c));
        blocks.push(block);
        witnesses.push(witness);
    }
    let ord = BlockOrdering { blocks, witnesses };
    debug_assert_eq!(verify_block_ordering(sys, &ord), Ok(()));
    Ok(Some(ord))
}

/// Converts a certified cover into a block ordering: redundant subsets are
/// dropped, block `k` is `I_k` minus the earlier blocks, and its witness is
/// `-1` on every column of `I_k` already placed.
pub fn cover_to_blocks(
    sys: &LinearSystem,
    cover: &SubsetCover,
) -> Result<BlockOrdering, CriteriaError> {
    cover.certify(sys)?;
    let mut placed = ColumnSet::EMPTY;
    let mut blocks = Vec::new();
    let mut witnesses = Vec::new();
    for &subset in &cover.subsets {
        let fresh = subset.difference(placed);
        if fresh.is_empty() {
            continue;
        }
        let witness = subset
            .intersection(placed)
            .indices()
            .map(|column| WitnessTerm {
                column,
                coefficient: -BigRational::one(),
            })
            .collect();
        blocks.push(fresh);
        witnesses.push(witness);
        placed = placed.union(fresh);
    }
    Ok(BlockOrdering { blocks, witnesses })
}

/// `a_1 + ... + a_n == 0`.
pub fn is_shift_invariant(coefficients: &[BigInt]) -> Result<bool, CriteriaError> {
    if coefficients.iter().any(Zero::is_zero) {
        return Err(CriteriaError::ZeroCoefficient);
    }
    Ok(coefficients.iter().sum::<BigInt>().is_zero())
}

/// `a_1 x_1 + ... + a_r x_r = a_{r+1} x_{r+1} + ... + a_n x_n` with positive
/// coefficients, both sides sorted ascending and summing to the same value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EqRepr", into = "EqRepr")]
pub struct ShiftInvariantEq {
    left: Vec<BigInt>,
    right: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct EqRepr {
    #[serde(with = "decimal::vec")]
    left: Vec<BigInt>,
    #[serde(with = "decimal::vec")]
    right: Vec<BigInt>,
}

impl TryFrom<EqRepr> for ShiftInvariantEq {
    type Error = CriteriaError;
    fn try_from(r: EqRepr) -> Result<Self, CriteriaError> {
        ShiftInvariantEq::new(r.left, r.right)
    }
}

impl From<ShiftInvariantEq> for EqRepr {
    fn from(e: ShiftInvariantEq) -> Self {
        EqRepr {
            left: e.left,
            right: e.right,
        }
    }
}

impl ShiftInvariantEq {
    pub fn new(mut left: Vec<BigInt>, mut right: Vec<BigInt>) -> Result<Self, CriteriaError> {
        if left.is_empty() || right.is_empty() {
            return Err(CriteriaError::InvalidEquation(
                "both sides need a term".into(),
            ));
        }
        if left.iter().chain(&right).any(|a| !a.is_positive()) {
            return Err(CriteriaError::NonPositive);
        }
        if left.iter().sum::<BigInt>() != right.iter().sum::<BigInt>() {
            return Err(CriteriaError::InvalidEquation(
                "the two sides must have equal coefficient sums".into(),
            ));
        }
        left.sort();
        right.sort();
        Ok(ShiftInvariantEq { left, right })
    }

    pub fn from_i64(left: &[i64], right: &[i64]) -> Result<Self, CriteriaError> {
        Self::new(
            left.iter().map(|&a| BigInt::from(a)).collect(),
            right.iter().map(|&a| BigInt::from(a)).collect(),
        )
    }

    /// Splits signed coefficients of `sum a_i x_i = 0`: positive ones go left,
    /// negated negative ones go right.
    pub fn from_coefficients(coefficients: &[BigInt]) -> Result<Self, CriteriaError> {
        if !is_shift_invariant(coefficients)? {
            return Err(CriteriaError::InvalidEquation(
                "coefficients do not sum to zero".into(),
            ));
        }
        let left = coefficients
            .iter()
            .filter(|a| a.is_positive())
            .cloned()
            .collect();
        let right = coefficients
            .iter()
            .filter(|a| a.is_negative())
            .map(|a| -a)
            .collect();
        Self::new(left, right)
    }

    pub fn left(&self) -> &[BigInt] {
        &self.left
    }

    pub fn right(&self) -> &[BigInt] {
        &self.right
    }

    /// Number of variables `n`.
    pub fn len(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `r`, the number of left-hand terms.
    pub fn split(&self) -> usize {
        self.left.len()
    }

    /// Coefficients of `sum c_i x_i = 0`: the left side, then the negated
    /// right side.
    pub fn signed_coefficients(&self) -> Vec<BigInt> {
        self.left
            .iter()
            .cloned()
            .chain(self.right.iter().map(|a| -a))
            .collect()
    }

    pub fn to_system(&self) -> LinearSystem {
        LinearSystem::equation(self.signed_coefficients()).expect("coefficients are non-zero")
    }

    /// The same equation with the sides exchanged.
    pub fn swapped(&self) -> Self {
        ShiftInvariantEq {
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    /// Common value of both coefficient sums.
    pub fn sigma(&self) -> BigInt {
        self.left.iter().sum()
    }
}

impl fmt::Display for ShiftInvariantEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |coeffs: &[BigInt], offset: usize| {
            coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| format!("{a}x{}", i + offset + 1))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        write!(
            f,
            "{} = {}",
            side(&self.left, 0),
            side(&self.right, self.left.len())
        )
    }
}

/// Which side plays the role of `x_1` in the signature bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `max{a_1 + a_r, a_n}`.
    Left,
    /// `max{a_r, a_{r+1} + a_n}`.
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tightness {
    /// Three variables with coprime coefficients on the two-term side: the
    /// bound is also necessary.
    #[serde(rename = "iff-3var")]
    Iff3var,
    SufficientOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignatureBound {
    #[serde(with = "decimal")]
    pub bound: BigInt,
    pub tightness: Tightness,
    pub selected: Family,
    #[serde(with = "decimal")]
    pub left_max: BigInt,
    #[serde(with = "decimal")]
    pub right_max: BigInt,
}

/// `min{ max{a_1 + a_r, a_n}, max{a_r, a_{r+1} + a_n} }`: every `k` above it
/// admits distinct solutions in distinct-sums `FS^k` sets.
pub fn signature_bound(eq: &ShiftInvariantEq) -> SignatureBound {
    let (l, r) = (&eq.left, &eq.right);
    let (a1, ar) = (&l[0], &l[l.len() - 1]);
    let (ar1, an) = (&r[0], &r[r.len() - 1]);
    let left_max = (a1 + ar).max(an.clone());
    let right_max = ar.clone().max(ar1 + an);
    let selected = if left_max <= right_max {
        Family::Left
    } else {
        Family::Right
    };
    let bound = left_max.clone().min(right_max.clone());
    let pair = match (l.len(), r.len()) {
        (2, 1) => Some((&l[0], &l[1])),
        (1, 2) => Some((&r[0], &r[1])),
        _ => None,
    };
    let tightness = match pair {
        Some((a, b)) if a.gcd(b).is_one() => Tightness::Iff3var,
        _ => Tightness::SufficientOnly,
    };
    SignatureBound {
        bound,
        tightness,
        selected,
        left_max,
        right_max,
    }
}

/// `a + b`: the threshold above which every `k`-IP-set holds a distinct
/// solution of `a x + b y = (a+b) z`.
pub fn basecase_threshold(a: &BigInt, b: &BigInt) -> Result<BigInt, CriteriaError> {
    if !a.is_positive() || !b.is_positive() {
        return Err(CriteriaError::NonPositive);
    }
    if !a.gcd(b).is_one() {
        return Err(CriteriaError::NotCoprime {
            a: a.clone(),
            b: b.clone(),
        });
    }
    Ok(a + b)
}

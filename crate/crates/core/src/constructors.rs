//! Explicit solutions built from covers, from the two-generator base case and
//! from ε-vectors for shift-invariant equations. Every constructor checks its
//! identity exactly before returning.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::{
    ColumnSet, CriteriaError, Family, LinearSystem, ShiftInvariantEq, SubsetCover,
};
use crate::decimal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructorError {
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("all parameters must be positive")]
    NonPositive,
    #[error("equation is not shift-invariant")]
    NotShiftInvariant,
    #[error("the construction needs at least three variables, got {0}")]
    TooFewVariables(usize),
}

impl ConstructorError {
    pub fn code(&self) -> &'static str {
        match self {
            ConstructorError::Criteria(e) => e.code(),
            ConstructorError::LengthMismatch { .. } => "length-mismatch",
            ConstructorError::NotShiftInvariant => "not-shift-invariant",
            _ => "invalid-input",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Cover,
    Basecase,
    Epsilon,
    Example19,
    Shift,
}

/// A verified solution of `A x = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionVector {
    #[serde(with = "decimal::vec")]
    pub values: Vec<BigInt>,
    pub provenance: Provenance,
    pub distinct: bool,
    /// Each equation restated with the concrete values.
    pub identity: Vec<String>,
    /// Generators `y_j` the values are built from.
    #[serde(with = "decimal::vec")]
    pub generators: Vec<BigInt>,
    /// `digits[i][j]` is the multiplicity of `y_j` in `x_i`, when the values
    /// are finite sums of the generators.
    #[serde(skip_serializing_if = "Option::is_none", with = "decimal::opt_matrix")]
    pub digits: Option<Vec<Vec<BigInt>>>,
    pub system: LinearSystem,
}

impl SolutionVector {
    fn build(
        system: LinearSystem,
        values: Vec<BigInt>,
        provenance: Provenance,
        generators: Vec<BigInt>,
        digits: Option<Vec<Vec<BigInt>>>,
    ) -> Self {
        assert!(
            system.is_solution(&values),
            "{provenance:?} construction produced a non-solution {values:?}"
        );
        if let Some(d) = &digits {
            for (x, row) in values.iter().zip(d) {
                let combo: BigInt = row.iter().zip(&generators).map(|(e, y)| e * y).sum();
                assert_eq!(&combo, x, "digit row does not reproduce its value");
            }
        }
        let identity = identity_strings(&system, &values);
        SolutionVector {
            distinct: pairwise_distinct(&values),
            values,
            provenance,
            identity,
            generators,
            digits,
            system,
        }
    }

    /// Largest digit, if digits are recorded.
    pub fn max_digit(&self) -> Option<BigInt> {
        self.digits
            .as_ref()
            .and_then(|d| d.iter().flatten().max().cloned())
    }
}

fn pairwise_distinct(values: &[BigInt]) -> bool {
    let mut v = values.to_vec();
    v.sort();
    v.windows(2).all(|w| w[0] != w[1])
}

fn identity_strings(sys: &LinearSystem, x: &[BigInt]) -> Vec<String> {
    sys.entries()
        .iter()
        .map(|row| {
            let mut s = String::new();
            for (a, v) in row.iter().zip(x).filter(|(a, _)| !a.is_zero()) {
                let sign = if a.is_negative() { "-" } else { "+" };
                if s.is_empty() {
                    if a.is_negative() {
                        s.push('-');
                    }
                } else {
                    s.push_str(&format!(" {sign} "));
                }
                s.push_str(&format!("{}*{v}", a.abs()));
            }
            s.push_str(" = 0");
            s
        })
        .collect()
}

fn require_positive(values: &[BigInt]) -> Result<(), ConstructorError> {
    if values.iter().all(Signed::is_positive) {
        Ok(())
    } else {
        Err(ConstructorError::NonPositive)
    }
}

fn check_len(expected: usize, actual: usize) -> Result<(), ConstructorError> {
    if expected == actual {
        Ok(())
    } else {
        Err(ConstructorError::LengthMismatch { expected, actual })
    }
}

/// `x_i = sum_j 1_{I_j}(i) y_j` for a certified zero-sum cover.
pub fn solution_from_cover(
    sys: &LinearSystem,
    cover: &SubsetCover,
    ys: &[BigInt],
) -> Result<SolutionVector, ConstructorError> {
    cover.certify(sys)?;
    check_len(cover.len(), ys.len())?;
    require_positive(ys)?;
    let digits: Vec<Vec<BigInt>> = (0..sys.cols())
        .map(|i| {
            cover
                .subsets
                .iter()
                .map(|s| BigInt::from(s.contains(i) as u8))
                .collect()
        })
        .collect();
    let values = digits
        .iter()
        .map(|row| row.iter().zip(ys).map(|(e, y)| e * y).sum())
        .collect();
    Ok(SolutionVector::build(
        sys.clone(),
        values,
        Provenance::Cover,
        ys.to_vec(),
        Some(digits),
    ))
}

/// `(y1, y1 + (a+b) y2, y1 + b y2)` solving `a x + b y = (a+b) z`.
pub fn basecase_solution(
    a: &BigInt,
    b: &BigInt,
    y1: &BigInt,
    y2: &BigInt,
) -> Result<SolutionVector, ConstructorError> {
    require_positive(&[a.clone(), b.clone(), y1.clone(), y2.clone()])?;
    if !a.gcd(b).is_one() {
        return Err(CriteriaError::NotCoprime {
            a: a.clone(),
            b: b.clone(),
        }
        .into());
    }
    let ab = a + b;
    let sys = LinearSystem::equation(vec![a.clone(), b.clone(), -&ab])?;
    let one = BigInt::one();
    let digits = vec![
        vec![one.clone(), BigInt::zero()],
        vec![one.clone(), ab.clone()],
        vec![one, b.clone()],
    ];
    let values = vec![y1.clone(), y1 + &ab * y2, y1 + b * y2];
    Ok(SolutionVector::build(
        sys,
        values,
        Provenance::Basecase,
        vec![y1.clone(), y2.clone()],
        Some(digits),
    ))
}

/// One of the two ε-vector families for a shift-invariant equation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpsilonFamily {
    pub side: Family,
    /// `vectors[j]` is `ε_{j+2}`, in the equation's variable order.
    #[serde(with = "decimal::matrix")]
    pub vectors: Vec<Vec<BigInt>>,
    #[serde(with = "decimal")]
    pub max_entry: BigInt,
}

/// The family with the smaller maximum entry, plus the other one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpsilonMatrix {
    pub chosen: EpsilonFamily,
    pub alternative: EpsilonFamily,
}

impl EpsilonMatrix {
    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.chosen.vectors
    }

    pub fn max_entry(&self) -> &BigInt {
        &self.chosen.max_entry
    }
}

/// The vectors with `x_1` taken from the left side: for `j <= r`,
/// `(0, a_j, ..., a_1 + a_j, ..., a_j)` with the sum at position `j`, and for
/// `j > r`, `a_j` at position 1 and `a_1` at position `j`.
fn epsilon_family(eq: &ShiftInvariantEq) -> Vec<Vec<BigInt>> {
    let a = eq
        .left()
        .iter()
        .chain(eq.right())
        .cloned()
        .collect::<Vec<_>>();
    let (n, r) = (a.len(), eq.split());
    (1..n)
        .map(|j| {
            let mut v = vec![BigInt::zero(); n];
            if j < r {
                for (i, e) in v.iter_mut().enumerate().skip(1) {
                    *e = if i == j { &a[0] + &a[j] } else { a[j].clone() };
                }
            } else {
                v[0] = a[j].clone();
                v[j] = a[0].clone();
            }
            v
        })
        .collect()
}

fn family_max(vectors: &[Vec<BigInt>]) -> BigInt {
    vectors.iter().flatten().max().cloned().unwrap_or_default()
}

/// Builds both ε-families (the second from the equation with its sides
/// exchanged, mapped back to the original variable order) and keeps the one
/// with the smaller maximum entry. Ties keep the left family.
pub fn epsilon_matrix(eq: &ShiftInvariantEq) -> Result<EpsilonMatrix, ConstructorError> {
    let n = eq.len();
    if n < 3 {
        return Err(ConstructorError::TooFewVariables(n));
    }
    let sys = eq.to_system();
    let left = epsilon_family(eq);
    // In the swapped equation the original right side comes first.
    let r = eq.split();
    let unswap = |v: Vec<BigInt>| -> Vec<BigInt> {
        let (head, tail) = v.split_at(n - r);
        tail.iter().chain(head).cloned().collect()
    };
    let right: Vec<Vec<BigInt>> = epsilon_family(&eq.swapped())
        .into_iter()
        .map(unswap)
        .collect();
    for v in left.iter().chain(&right) {
        assert!(sys.is_solution(v), "ε-vector {v:?} does not solve {eq}");
        assert!(v.iter().all(|e| !e.is_negative()));
    }
    let make = |side, vectors: Vec<Vec<BigInt>>| EpsilonFamily {
        side,
        max_entry: family_max(&vectors),
        vectors,
    };
    let (l, r) = (make(Family::Left, left), make(Family::Right, right));
    Ok(if l.max_entry <= r.max_entry {
        EpsilonMatrix {
            chosen: l,
            alternative: r,
        }
    } else {
        EpsilonMatrix {
            chosen: r,
            alternative: l,
        }
    })
}

/// `x = sum_j y_j ε_j`.
pub fn solution_from_epsilon(
    eq: &ShiftInvariantEq,
    em: &EpsilonMatrix,
    ys: &[BigInt],
) -> Result<SolutionVector, ConstructorError> {
    let n = eq.len();
    check_len(n - 1, ys.len())?;
    check_len(n - 1, em.vectors().len())?;
    require_positive(ys)?;
    let digits: Vec<Vec<BigInt>> = (0..n)
        .map(|i| em.vectors().iter().map(|v| v[i].clone()).collect())
        .collect();
    let values: Vec<BigInt> = digits
        .iter()
        .map(|row| row.iter().zip(ys).map(|(e, y)| e * y).sum())
        .collect();
    require_positive(&values)?;
    Ok(SolutionVector::build(
        eq.to_system(),
        values,
        Provenance::Epsilon,
        ys.to_vec(),
        Some(digits),
    ))
}

/// `(y2 + y1, y2 + 7 y1, y2, y2 + 2 y1)` solving
/// `3 x1 + 5 x2 + 11 x3 = 19 x4`, with every digit below 8.
pub fn example_19_solution(y1: &BigInt, y2: &BigInt) -> Result<SolutionVector, ConstructorError> {
    require_positive(&[y1.clone(), y2.clone()])?;
    let eq = ShiftInvariantEq::from_i64(&[3, 5, 11], &[19])?;
    let d = |e1: i64, e2: i64| vec![BigInt::from(e1), BigInt::from(e2)];
    let digits = vec![d(1, 1), d(7, 1), d(0, 1), d(2, 1)];
    let ys = vec![y1.clone(), y2.clone()];
    let values = digits
        .iter()
        .map(|row| row.iter().zip(&ys).map(|(e, y)| e * y).sum())
        .collect();
    Ok(SolutionVector::build(
        eq.to_system(),
        values,
        Provenance::Example19,
        ys,
        Some(digits),
    ))
}

/// Adds `m` to every entry; requires every row of the system to sum to zero.
pub fn shift_solution(
    sol: &SolutionVector,
    m: &BigInt,
) -> Result<SolutionVector, ConstructorError> {
    if m.is_negative() {
        return Err(ConstructorError::NonPositive);
    }
    let invariant = sol
        .system
        .entries()
        .iter()
        .all(|row| row.iter().sum::<BigInt>().is_zero());
    if !invariant {
        return Err(ConstructorError::NotShiftInvariant);
    }
    if m.is_zero() {
        return Ok(sol.clone());
    }
    let values = sol.values.iter().map(|x| x + m).collect();
    Ok(SolutionVector::build(
        sol.system.clone(),
        values,
        Provenance::Shift,
        sol.generators.clone(),
        None,
    ))
}

/// Pairs of positions holding equal values.
pub fn collisions(values: &[BigInt]) -> Vec<ColumnSet> {
    let mut out = Vec::new();
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] == values[j] {
                out.push(ColumnSet::from_mask(1 << i | 1 << j));
            }
        }
    }
    out
}

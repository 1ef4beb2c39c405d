//! Small van der Waerden, Brauer and Hales-Jewett numbers by increasing the
//! ground set until every coloring is forced.

use serde::{Deserialize, Serialize};

use super::{forall_colorings, Coloring, GroundSet, SearchError, SearchOptions, Status, Target};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NumberStatus {
    Found,
    UnknownBeyondCap,
    InconclusiveBudget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NumberResult {
    pub status: NumberStatus,
    /// Least size at which every coloring is forced.
    pub value: Option<u64>,
    /// Largest size with a known avoiding coloring.
    pub counterexample_at: Option<u64>,
    pub counterexample: Option<Coloring>,
    /// Size at which the budget ran out.
    pub stopped_at: Option<u64>,
    pub explored: u64,
    pub budget: u64,
    pub seed: Option<u64>,
}

fn least_forced(
    r: u8,
    cap: u64,
    opts: &SearchOptions,
    ground: impl Fn(u64) -> GroundSet,
    target: &Target,
) -> Result<NumberResult, SearchError> {
    if cap < 1 {
        return Err(SearchError::InvalidParameter(
            "cap must be at least 1".into(),
        ));
    }
    let mut result = NumberResult {
        status: NumberStatus::UnknownBeyondCap,
        value: None,
        counterexample_at: None,
        counterexample: None,
        stopped_at: None,
        explored: 0,
        budget: opts.budget,
        seed: opts.seed,
    };
    for n in 1..=cap {
        let spent = SearchOptions {
            budget: opts.budget.saturating_sub(result.explored),
            ..*opts
        };
        let v = forall_colorings(&ground(n), r, target, &spent)?;
        result.explored += v.explored;
        match v.status {
            Status::Holds => {
                result.status = NumberStatus::Found;
                result.value = Some(n);
                return Ok(result);
            }
            Status::Counterexample => {
                result.counterexample_at = Some(n);
                result.counterexample = v.counterexample;
            }
            Status::InconclusiveBudget => {
                result.status = NumberStatus::InconclusiveBudget;
                result.stopped_at = Some(n);
                return Ok(result);
            }
        }
    }
    Ok(result)
}

/// Least `n <= cap` such that every `r`-coloring of `{1..n}` has a
/// monochromatic `k`-term progression.
pub fn vdw_number(
    r: u8,
    k: usize,
    cap: u64,
    opts: &SearchOptions,
) -> Result<NumberResult, SearchError> {
    least_forced(r, cap, opts, GroundSet::Interval, &Target::Ap { len: k })
}

/// Least `n <= cap` such that every `r`-coloring of `{1..n}` has a
/// monochromatic `{a, a+d, ..., a+(k-1)d, s*d}`.
pub fn brauer_number(
    r: u8,
    k: usize,
    s: u64,
    cap: u64,
    opts: &SearchOptions,
) -> Result<NumberResult, SearchError> {
    least_forced(
        r,
        cap,
        opts,
        GroundSet::Interval,
        &Target::Brauer { len: k, s },
    )
}

/// Least `n <= cap` such that every `r`-coloring of `[0,t)^n` has a
/// monochromatic combinatorial line.
pub fn hj_number(
    r: u8,
    t: u32,
    cap: u64,
    opts: &SearchOptions,
) -> Result<NumberResult, SearchError> {
    if t < 2 {
        return Err(SearchError::InvalidParameter("t must be at least 2".into()));
    }
    let cap = cap.min(u32::MAX as u64);
    least_forced(
        r,
        cap,
        opts,
        |n| GroundSet::Cube { t, n: n as u32 },
        &Target::Line,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::verify::has_monochromatic;

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn van_der_waerden_values() {
        let w = vdw_number(2, 3, 12, &opts()).unwrap();
        assert_eq!(w.value, Some(9));
        assert_eq!(w.counterexample_at, Some(8));
        let c = w.counterexample.unwrap();
        assert!(!has_monochromatic(&GroundSet::Interval(8), &Target::Ap { len: 3 }, &c).unwrap());
        assert_eq!(vdw_number(2, 2, 5, &opts()).unwrap().value, Some(3));
        for k in 2..6 {
            assert_eq!(vdw_number(1, k, 10, &opts()).unwrap().value, Some(k as u64));
        }
        let capped = vdw_number(2, 3, 5, &opts()).unwrap();
        assert_eq!(capped.status, NumberStatus::UnknownBeyondCap);
        assert_eq!(capped.value, None);
    }

    #[test]
    fn results_are_monotone_in_n() {
        let t = Target::Ap { len: 3 };
        let holds: Vec<bool> = (1..=12)
            .map(|n| {
                forall_colorings(&GroundSet::Interval(n), 2, &t, &opts())
                    .unwrap()
                    .holds
                    .unwrap()
            })
            .collect();
        assert!(holds.windows(2).all(|w| !w[0] || w[1]));
    }

    #[test]
    fn brauer_values() {
        assert_eq!(brauer_number(1, 2, 1, 5, &opts()).unwrap().value, Some(2));
        let b = brauer_number(2, 2, 1, 20, &opts()).unwrap();
        let value = b.value.unwrap();
        assert!(value >= 3);
        let c = b.counterexample.unwrap();
        assert!(!has_monochromatic(
            &GroundSet::Interval(value - 1),
            &Target::Brauer { len: 2, s: 1 },
            &c
        )
        .unwrap());
        let b = brauer_number(2, 3, 1, 8, &opts()).unwrap();
        assert_eq!(b.status, NumberStatus::UnknownBeyondCap);
    }

    #[test]
    fn hales_jewett_values() {
        let h = hj_number(2, 2, 4, &opts()).unwrap();
        assert_eq!(h.value, Some(2));
        assert_eq!(h.counterexample_at, Some(1));
        assert_eq!(h.counterexample.unwrap().colors, vec![0, 1]);
        for t in 2..5 {
            assert_eq!(hj_number(1, t, 3, &opts()).unwrap().value, Some(1));
        }
    }

    #[test]
    fn hales_jewett_three_letters_within_cap() {
        let h = hj_number(2, 3, 3, &opts()).unwrap();
        assert_eq!(h.status, NumberStatus::UnknownBeyondCap);
        assert_eq!(h.counterexample_at, Some(3));
    }
}

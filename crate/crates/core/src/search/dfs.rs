//! Depth-first search over colorings, elements in ascending index order.
//!
//! An instance is checked when its largest member is colored, so a partial
//! coloring is extended only while no instance is monochromatic. Colors are
//! tried in increasing order, so the first complete coloring found is the
//! lexicographically least one avoiding every instance. With canonical
//! pruning a new element may use at most one color beyond those already
//! used; the least avoiding coloring is canonical, so the answer is the same.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::instances::{instances, Witness};
use super::{Coloring, GroundSet, SearchError, Target, DEFAULT_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of color assignments.
    pub budget: u64,
    /// Restrict to colorings whose colors first appear in increasing order.
    pub canonical: bool,
    /// Worker threads; 1 runs a plain sequential search. Results do not
    /// depend on the count once it exceeds 1.
    pub threads: usize,
    /// Recorded in the verdict only.
    pub seed: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            canonical: true,
            threads: 1,
            seed: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Counterexample,
    InconclusiveBudget,
}

/// Result of a universal coloring question.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    /// `None` when the budget ran out.
    pub holds: Option<bool>,
    pub status: Status,
    pub witness: Option<Witness>,
    pub counterexample: Option<Coloring>,
    pub explored: u64,
    pub budget: u64,
    pub seed: Option<u64>,
}

/// Outcome of the raw hypergraph search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub coloring: Option<Vec<u8>>,
    pub explored: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Run {
    Stopped,
    Exhausted,
    OutOfBudget,
    Aborted,
}

struct Hypergraph {
    n: usize,
    r: u16,
    /// For each element, the other members of every edge it closes.
    closing: Vec<Vec<Vec<u32>>>,
}

impl Hypergraph {
    fn new(n: usize, r: u8, edges: &[Vec<u32>]) -> Self {
        let mut closing = vec![Vec::new(); n];
        for e in edges {
            let (&last, rest) = e.split_last().expect("edges are non-empty");
            closing[last as usize].push(rest.to_vec());
        }
        Hypergraph {
            n,
            r: r as u16,
            closing,
        }
    }

    fn allowed(&self, colors: &[u8], i: usize, c: u8) -> bool {
        self.closing[i]
            .iter()
            .all(|rest| rest.iter().any(|&m| colors[m as usize] != c))
    }

    /// Extends `colors[..from]` through positions `from..to`, calling `leaf`
    /// on each valid assignment of `colors[..to]`; `leaf` returns `false` to
    /// stop there.
    fn run(
        &self,
        colors: &mut [u8],
        from: usize,
        to: usize,
        opts: &SearchOptions,
        abort: &(dyn Fn() -> bool + Sync),
        mut leaf: impl FnMut(&[u8]) -> bool,
    ) -> (Run, u64) {
        if from == to {
            let r = if leaf(&colors[..to]) {
                Run::Exhausted
            } else {
                Run::Stopped
            };
            return (r, 0);
        }
        let mut nodes = 0u64;
        let mut next = vec![0u16; to + 1];
        // used[i]: number of colors appearing in colors[..i].
        let mut used = vec![0u16; to + 1];
        used[from] = colors[..from]
            .iter()
            .map(|&c| c as u16 + 1)
            .max()
            .unwrap_or(0);
        let mut i = from;
        loop {
            if i == to {
                if !leaf(&colors[..to]) {
                    return (Run::Stopped, nodes);
                }
                i -= 1;
                continue;
            }
            let limit = if opts.canonical {
                self.r.min(used[i] + 1)
            } else {
                self.r
            };
            let mut c = next[i];
            while c < limit && !self.allowed(colors, i, c as u8) {
                c += 1;
            }
            if c < limit {
                colors[i] = c as u8;
                next[i] = c + 1;
                nodes += 1;
                if nodes > opts.budget {
                    return (Run::OutOfBudget, nodes);
                }
                if nodes & 0xfff == 0 && abort() {
                    return (Run::Aborted, nodes);
                }
                used[i + 1] = used[i].max(c + 1);
                i += 1;
                next[i] = 0;
            } else {
                if i == from {
                    return (Run::Exhausted, nodes);
                }
                i -= 1;
            }
        }
    }

    fn solve(&self, opts: &SearchOptions) -> Outcome {
        let mut colors = vec![0u8; self.n];
        if opts.threads <= 1 {
            let (run, explored) = self.run(&mut colors, 0, self.n, opts, &|| false, |_| false);
            return match run {
                Run::Stopped => Outcome {
                    status: Status::Counterexample,
                    coloring: Some(colors),
                    explored,
                },
                Run::Exhausted => Outcome {
                    status: Status::Holds,
                    coloring: None,
                    explored,
                },
                Run::OutOfBudget | Run::Aborted => Outcome {
                    status: Status::InconclusiveBudget,
                    coloring: None,
                    explored,
                },
            };
        }
        self.solve_split(opts)
    }

    /// Splits the search at a fixed depth and explores the prefixes in
    /// parallel. Only prefixes up to the first successful one contribute to
    /// the result, so it does not depend on scheduling.
    fn solve_split(&self, opts: &SearchOptions) -> Outcome {
        let mut depth = 0;
        let mut width = 1u64;
        while depth < self.n && width * (self.r as u64) <= 4096 {
            width *= self.r as u64;
            depth += 1;
        }
        let mut prefixes: Vec<Vec<u8>> = Vec::new();
        let mut colors = vec![0u8; self.n];
        let (run, mut explored) = self.run(&mut colors, 0, depth, opts, &|| false, |p| {
            prefixes.push(p.to_vec());
            true
        });
        if run == Run::OutOfBudget {
            return Outcome {
                status: Status::InconclusiveBudget,
                coloring: None,
                explored,
            };
        }
        let best = AtomicUsize::new(usize::MAX);
        let work = |(idx, prefix): (usize, &Vec<u8>)| {
            if idx > best.load(Ordering::Relaxed) {
                return (Run::Aborted, 0, None);
            }
            let mut colors = prefix.clone();
            colors.resize(self.n, 0);
            let abort = || best.load(Ordering::Relaxed) < idx;
            let (run, nodes) = self.run(&mut colors, depth, self.n, opts, &abort, |_| false);
            if run == Run::Stopped {
                best.fetch_min(idx, Ordering::Relaxed);
            }
            (run, nodes, (run == Run::Stopped).then_some(colors))
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .expect("thread pool");
        let results: Vec<_> = pool.install(|| prefixes.par_iter().enumerate().map(work).collect());
        for (run, nodes, coloring) in results {
            explored += nodes;
            let status = match run {
                Run::Exhausted if explored <= opts.budget => continue,
                Run::Stopped if explored <= opts.budget => Status::Counterexample,
                _ => Status::InconclusiveBudget,
            };
            return Outcome {
                status,
                coloring: coloring.filter(|_| status == Status::Counterexample),
                explored,
            };
        }
        Outcome {
            status: Status::Holds,
            coloring: None,
            explored,
        }
    }
}

/// Searches all `r`-colorings of `0..n` for one in which no edge is
/// monochromatic. Edges are sorted member lists.
pub fn forall_on_hypergraph(n: usize, r: u8, edges: &[Vec<u32>], opts: &SearchOptions) -> Outcome {
    assert!(r >= 1, "at least one color is needed");
    Hypergraph::new(n, r, edges).solve(opts)
}

/// Decides whether every `r`-coloring of `ground` has a monochromatic
/// instance of `target`. A counterexample is re-checked by the independent
/// verifier before it is returned.
pub fn forall_colorings(
    ground: &GroundSet,
    r: u8,
    target: &Target,
    opts: &SearchOptions,
) -> Result<Verdict, SearchError> {
    if r == 0 {
        return Err(SearchError::InvalidParameter(
            "at least one color is needed".into(),
        ));
    }
    let g = ground.resolve()?;
    let edges: Vec<Vec<u32>> = instances(&g, target)?
        .into_iter()
        .map(|i| i.members)
        .collect();
    let out = forall_on_hypergraph(g.len(), r, &edges, opts);
    let counterexample = out.coloring.map(Coloring::new);
    if let Some(c) = &counterexample {
        if super::verify::has_monochromatic(ground, target, c)? {
            return Err(SearchError::VerificationFailed(format!(
                "coloring {:?} contains a monochromatic {}",
                c.colors,
                target.name()
            )));
        }
    }
    Ok(Verdict {
        holds: match out.status {
            Status::Holds => Some(true),
            Status::Counterexample => Some(false),
            Status::InconclusiveBudget => None,
        },
        status: out.status,
        witness: None,
        counterexample,
        explored: out.explored,
        budget: opts.budget,
        seed: opts.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::LinearSystem;
    use proptest::prelude::*;

    /// Every coloring in lexicographic order, no pruning at all.
    fn brute_force(n: usize, r: u8, edges: &[Vec<u32>]) -> Option<Vec<u8>> {
        let total = (r as u64).pow(n as u32);
        (0..total).find_map(|mut code| {
            let mut colors = vec![0u8; n];
            for slot in colors.iter_mut().rev() {
                *slot = (code % r as u64) as u8;
                code /= r as u64;
            }
            let bad = edges.iter().any(|e| {
                e.iter()
                    .all(|&m| colors[m as usize] == colors[e[0] as usize])
            });
            (!bad).then_some(colors)
        })
    }

    #[test]
    fn nine_forces_three_term_progressions() {
        let opts = SearchOptions::default();
        let v =
            forall_colorings(&GroundSet::Interval(9), 2, &Target::Ap { len: 3 }, &opts).unwrap();
        assert_eq!(v.holds, Some(true));
        let v =
            forall_colorings(&GroundSet::Interval(8), 2, &Target::Ap { len: 3 }, &opts).unwrap();
        assert_eq!(v.status, Status::Counterexample);
        assert_eq!(
            v.counterexample.unwrap().colors,
            vec![0, 0, 1, 1, 0, 0, 1, 1]
        );
    }

    #[test]
    fn doubling_pairs_never_force() {
        let sys = LinearSystem::from_i64(&[&[2, -1]]).unwrap();
        let t = Target::EquationSolution {
            system: sys,
            distinct: true,
        };
        for n in [10, 50, 100] {
            let v = forall_colorings(&GroundSet::Interval(n), 2, &t, &SearchOptions::default())
                .unwrap();
            assert_eq!(v.status, Status::Counterexample);
        }
    }

    #[test]
    fn budget_is_reported_not_raised() {
        let opts = SearchOptions {
            budget: 5,
            ..SearchOptions::default()
        };
        let v =
            forall_colorings(&GroundSet::Interval(9), 2, &Target::Ap { len: 3 }, &opts).unwrap();
        assert_eq!(v.status, Status::InconclusiveBudget);
        assert_eq!(v.holds, None);
        let opts = SearchOptions {
            budget: 5,
            threads: 3,
            ..SearchOptions::default()
        };
        let v =
            forall_colorings(&GroundSet::Interval(9), 2, &Target::Ap { len: 3 }, &opts).unwrap();
        assert_eq!(v.status, Status::InconclusiveBudget);
    }

    #[test]
    fn singleton_edges_force_everything() {
        let out = forall_on_hypergraph(3, 2, &[vec![1]], &SearchOptions::default());
        assert_eq!(out.status, Status::Holds);
        let out = forall_on_hypergraph(0, 2, &[], &SearchOptions::default());
        assert_eq!(out.coloring, Some(vec![]));
    }

    #[test]
    fn verdict_json_layout() {
        let v = forall_colorings(
            &GroundSet::Interval(8),
            2,
            &Target::Ap { len: 3 },
            &SearchOptions::default(),
        )
        .unwrap();
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.starts_with(r#"{"holds":false,"status":"counterexample","witness":null,"counterexample":{"colors":[0,0,1,1,0,0,1,1]}"#), "{json}");
    }

    fn hypergraph() -> impl Strategy<Value = (usize, u8, Vec<Vec<u32>>)> {
        (1usize..=12, 2u8..=3).prop_flat_map(|(n, r)| {
            let edge = proptest::collection::btree_set(0..n as u32, 1..=4)
                .prop_map(|s| s.into_iter().collect::<Vec<u32>>());
            (Just(n), Just(r), proptest::collection::vec(edge, 0..25))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn pruned_search_matches_brute_force((n, r, edges) in hypergraph()) {
            let expected = brute_force(n, r, &edges);
            for canonical in [true, false] {
                for threads in [1, 2, 4] {
                    let opts = SearchOptions { canonical, threads, ..SearchOptions::default() };
                    let out = forall_on_hypergraph(n, r, &edges, &opts);
                    prop_assert_eq!(&out.coloring, &expected);
                    let status = if expected.is_some() { Status::Counterexample } else { Status::Holds };
                    prop_assert_eq!(out.status, status);
                }
            }
        }

        #[test]
        fn worker_count_does_not_change_results((n, r, edges) in hypergraph()) {
            let run = |threads| forall_on_hypergraph(n, r, &edges, &SearchOptions { threads, ..SearchOptions::default() });
            let two = run(2);
            prop_assert_eq!(&run(3), &two);
            prop_assert_eq!(&run(8), &two);
        }
    }
}

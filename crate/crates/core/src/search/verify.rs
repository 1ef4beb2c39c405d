//! Straight-line checks of search results. Nothing here goes through the
//! instance lists the search uses: ground sets are rebuilt from their
//! definitions and targets are scanned directly.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::instances::{Shape, Witness};
use super::{Coloring, GroundSet, SearchError, Target, MAX_ENUMERATION};
use crate::decimal;
use crate::fs::{fs_enumerate, ParametricWord};

enum Colored {
    Values(HashMap<BigInt, u8>, Vec<BigInt>),
    Cube { t: u32, n: u32, colors: Vec<u8> },
}

fn colored(ground: &GroundSet, coloring: &Coloring) -> Result<Colored, SearchError> {
    let values: Vec<BigInt> = match ground {
        GroundSet::Integers(v) => v.clone(),
        GroundSet::Interval(n) => (1..=*n).map(BigInt::from).collect(),
        GroundSet::Fs(spec) => fs_enumerate(spec)?,
        &GroundSet::Cube { t, n } => {
            let size = (t as usize).pow(n);
            if coloring.colors.len() != size {
                return Err(SearchError::ColoringMismatch {
                    expected: size,
                    actual: coloring.colors.len(),
                });
            }
            return Ok(Colored::Cube {
                t,
                n,
                colors: coloring.colors.clone(),
            });
        }
    };
    if coloring.colors.len() != values.len() {
        return Err(SearchError::ColoringMismatch {
            expected: values.len(),
            actual: coloring.colors.len(),
        });
    }
    let map = values
        .iter()
        .cloned()
        .zip(coloring.colors.iter().copied())
        .collect();
    Ok(Colored::Values(map, values))
}

fn cube_color(t: u32, colors: &[u8], word: &[u32]) -> u8 {
    let mut index = 0usize;
    let mut place = 1usize;
    for &d in word {
        index += d as usize * place;
        place *= t as usize;
    }
    colors[index]
}

fn same_color(colors: impl IntoIterator<Item = Option<u8>>) -> Option<u8> {
    let mut it = colors.into_iter();
    let first = it.next()??;
    for c in it {
        if c? != first {
            return None;
        }
    }
    Some(first)
}

fn pow_checked(base: usize, exp: usize) -> Result<(), SearchError> {
    let size = (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX);
    if size > MAX_ENUMERATION {
        return Err(SearchError::TooLarge {
            what: "verification",
            size,
            cap: MAX_ENUMERATION,
        });
    }
    Ok(())
}

/// Whether some instance of `target` is monochromatic under `coloring`.
pub fn has_monochromatic(
    ground: &GroundSet,
    target: &Target,
    coloring: &Coloring,
) -> Result<bool, SearchError> {
    let incompatible = || SearchError::IncompatibleTarget {
        target: target.name().into(),
        ground: ground.kind().into(),
    };
    match (colored(ground, coloring)?, target) {
        (Colored::Values(map, values), &Target::Ap { len }) => {
            Ok(progression_scan(&map, &values, len, None))
        }
        (Colored::Values(map, values), &Target::Brauer { len, s }) => {
            Ok(progression_scan(&map, &values, len, Some(s)))
        }
        (Colored::Values(map, values), Target::EquationSolution { system, distinct }) => {
            let n = system.cols();
            pow_checked(values.len(), n)?;
            let mut idx = vec![0usize; n];
            if values.is_empty() {
                return Ok(false);
            }
            loop {
                let x: Vec<BigInt> = idx.iter().map(|&i| values[i].clone()).collect();
                let unique: BTreeSet<&BigInt> = x.iter().collect();
                if (!distinct || unique.len() == n)
                    && system.is_solution(&x)
                    && same_color(x.iter().map(|v| map.get(v).copied())).is_some()
                {
                    return Ok(true);
                }
                let mut p = 0;
                loop {
                    if p == n {
                        return Ok(false);
                    }
                    idx[p] += 1;
                    if idx[p] < values.len() {
                        break;
                    }
                    idx[p] = 0;
                    p += 1;
                }
            }
        }
        (Colored::Values(map, _), &Target::ShiftedFs { t }) => {
            let GroundSet::Fs(spec) = ground else {
                return Err(incompatible());
            };
            let gens = spec.generators();
            let k = spec.k() as usize;
            pow_checked(t + k, gens.len())?;
            let mut labels = vec![0usize; gens.len()];
            loop {
                let mut ys = vec![BigInt::zero(); t];
                let mut counts = vec![0usize; t];
                let mut m = spec.shift().clone();
                for (g, &l) in gens.iter().zip(&labels) {
                    if l < t {
                        ys[l] += g;
                        counts[l] += 1;
                    } else {
                        m += g * (l - t);
                    }
                }
                if counts.iter().all(|&c| c > 0) {
                    let sums = shifted_sums(&m, &ys, k);
                    if same_color(sums.iter().map(|v| map.get(v).copied())).is_some() {
                        return Ok(true);
                    }
                }
                let mut p = 0;
                loop {
                    if p == labels.len() {
                        return Ok(false);
                    }
                    labels[p] += 1;
                    if labels[p] < t + k {
                        break;
                    }
                    labels[p] = 0;
                    p += 1;
                }
            }
        }
        (Colored::Cube { t, n, colors }, Target::Line) => cube_scan(t, n, 1, &colors),
        (Colored::Cube { t, n, colors }, &Target::Subspace { dim }) => {
            cube_scan(t, n, dim, &colors)
        }
        _ => Err(incompatible()),
    }
}

fn progression_scan(
    map: &HashMap<BigInt, u8>,
    values: &[BigInt],
    len: usize,
    s: Option<u64>,
) -> bool {
    for a in values {
        for b in values.iter().filter(|b| *b > a) {
            let d = b - a;
            let mut members: Vec<BigInt> = (0..len).map(|i| a + &d * i).collect();
            if let Some(s) = s {
                members.push(&d * s);
            }
            if same_color(members.iter().map(|v| map.get(v).copied())).is_some() {
                return true;
            }
        }
    }
    false
}

fn shifted_sums(m: &BigInt, ys: &[BigInt], k: usize) -> Vec<BigInt> {
    let mut out = vec![m.clone()];
    for y in ys {
        out = out
            .iter()
            .flat_map(|base| (0..k).map(move |d| base + y * d))
            .collect();
    }
    // Drop the all-zero choice, which is `m` itself.
    out.remove(0);
    out
}

/// Every word over `[0,t) ∪ {v_1..v_dim}` using all variables.
fn cube_scan(t: u32, n: u32, dim: u32, colors: &[u8]) -> Result<bool, SearchError> {
    let alphabet = (t + dim) as usize;
    pow_checked(alphabet, n as usize)?;
    let mut word = vec![0u32; n as usize];
    loop {
        let vars_present = (0..dim).all(|v| word.contains(&(t + v)));
        if vars_present {
            let mut vals = vec![0u32; dim as usize];
            let mut cols = Vec::new();
            loop {
                let point: Vec<u32> = word
                    .iter()
                    .map(|&s| if s < t { s } else { vals[(s - t) as usize] })
                    .collect();
                cols.push(Some(cube_color(t, colors, &point)));
                let mut p = 0;
                loop {
                    if p == vals.len() {
                        break;
                    }
                    vals[p] += 1;
                    if vals[p] < t {
                        break;
                    }
                    vals[p] = 0;
                    p += 1;
                }
                if p == vals.len() {
                    break;
                }
            }
            if same_color(cols).is_some() {
                return Ok(true);
            }
        }
        let mut p = 0;
        loop {
            if p == word.len() {
                return Ok(false);
            }
            word[p] += 1;
            if (word[p] as usize) < alphabet {
                break;
            }
            word[p] = 0;
            p += 1;
        }
    }
}

fn parse_word(label: &str) -> Option<Vec<u32>> {
    label
        .strip_prefix('(')?
        .strip_suffix(')')?
        .split(',')
        .map(|d| d.trim().parse().ok())
        .collect()
}

/// Checks that a witness is monochromatic in the stated color and that its
/// elements are exactly the instance its shape describes.
pub fn witness_is_valid(
    ground: &GroundSet,
    target: &Target,
    coloring: &Coloring,
    w: &Witness,
) -> Result<bool, SearchError> {
    let colored = colored(ground, coloring)?;
    let color_of = |label: &String| -> Option<u8> {
        match &colored {
            Colored::Values(map, _) => map.get(&decimal::parse(label).ok()?).copied(),
            Colored::Cube { t, n, colors } => {
                let word = parse_word(label)?;
                (word.len() == *n as usize && word.iter().all(|d| d < t))
                    .then(|| cube_color(*t, colors, &word))
            }
        }
    };
    if same_color(w.elements.iter().map(color_of)) != Some(w.color) {
        return Ok(false);
    }
    let expected: BTreeSet<String> = match (&w.shape, target) {
        (Shape::Ap { a, d, len }, Target::Ap { len: want }) => {
            if len != want || !d.is_positive() {
                return Ok(false);
            }
            (0..*len).map(|i| (a + d * i).to_string()).collect()
        }
        (
            Shape::Brauer { a, d, len, s },
            Target::Brauer {
                len: want,
                s: want_s,
            },
        ) => {
            if len != want || s != want_s || !d.is_positive() {
                return Ok(false);
            }
            let mut e: BTreeSet<String> = (0..*len).map(|i| (a + d * i).to_string()).collect();
            e.insert((d * *s).to_string());
            e
        }
        (Shape::Word { word, dim }, Target::Line | Target::Subspace { .. }) => {
            let want = match target {
                Target::Subspace { dim } => *dim,
                _ => 1,
            };
            let GroundSet::Cube { t, n } = ground else {
                return Ok(false);
            };
            let Ok(pw) = ParametricWord::parse(word, *t) else {
                return Ok(false);
            };
            if pw.dim() != want || *dim != want || pw.len() != *n as usize {
                return Ok(false);
            }
            pw.points()
                .iter()
                .map(|p| {
                    let parts: Vec<String> = p.digits().iter().map(ToString::to_string).collect();
                    format!("({})", parts.join(","))
                })
                .collect()
        }
        (Shape::Solution { x }, Target::EquationSolution { system, distinct }) => {
            let unique: BTreeSet<&BigInt> = x.iter().collect();
            if !system.is_solution(x) || (*distinct && unique.len() != x.len()) {
                return Ok(false);
            }
            x.iter().map(ToString::to_string).collect()
        }
        (
            Shape::Shifted {
                m,
                ys,
                blocks,
                alpha,
            },
            &Target::ShiftedFs { t },
        ) => {
            let GroundSet::Fs(spec) = ground else {
                return Ok(false);
            };
            let gens = spec.generators();
            let k = spec.k();
            if blocks.len() != t || ys.len() != t || alpha.len() != gens.len() {
                return Ok(false);
            }
            let mut seen = BTreeSet::new();
            for (b, y) in blocks.iter().zip(ys) {
                let sum: BigInt = b.iter().filter_map(|&i| gens.get(i.wrapping_sub(1))).sum();
                if b.is_empty() || &sum != y || !b.iter().all(|&i| seen.insert(i)) {
                    return Ok(false);
                }
            }
            let m_check: BigInt = gens.iter().zip(alpha).map(|(g, &a)| g * a).sum();
            let alpha_ok = alpha
                .iter()
                .enumerate()
                .all(|(i, &a)| a < k && (a == 0 || !seen.contains(&(i + 1))));
            if &m_check != m || !alpha_ok {
                return Ok(false);
            }
            shifted_sums(m, ys, k as usize)
                .iter()
                .map(|v| (v + spec.shift()).to_string())
                .collect()
        }
        _ => return Ok(false),
    };
    let got: BTreeSet<String> = w.elements.iter().cloned().collect();
    Ok(got == expected && got.len() == w.elements.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::find_mono;

    #[test]
    fn verifier_agrees_with_known_colorings() {
        let g = GroundSet::Interval(8);
        let t = Target::Ap { len: 3 };
        assert!(!has_monochromatic(&g, &t, &Coloring::new(vec![0, 0, 1, 1, 0, 0, 1, 1])).unwrap());
        assert!(has_monochromatic(&g, &t, &Coloring::new(vec![0, 1, 0, 1, 0, 1, 0, 1])).unwrap());
        let cube = GroundSet::Cube { t: 2, n: 1 };
        assert!(!has_monochromatic(&cube, &Target::Line, &Coloring::new(vec![0, 1])).unwrap());
        assert!(has_monochromatic(&cube, &Target::Line, &Coloring::new(vec![1, 1])).unwrap());
    }

    #[test]
    fn tampered_witnesses_fail() {
        let g = GroundSet::Interval(9);
        let t = Target::Ap { len: 3 };
        let c = Coloring::new(vec![0, 1, 0, 1, 0, 1, 0, 1, 0]);
        let w = find_mono(&g, &t, &c).unwrap().unwrap();
        assert!(witness_is_valid(&g, &t, &c, &w).unwrap());
        let mut bad = w.clone();
        bad.elements[2] = "7".into();
        assert!(!witness_is_valid(&g, &t, &c, &bad).unwrap());
        let mut bad = w.clone();
        bad.color = 1;
        assert!(!witness_is_valid(&g, &t, &c, &bad).unwrap());
    }
}

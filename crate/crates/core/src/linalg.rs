//! Exact linear algebra over the rationals, sized for small coefficient
//! matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Row = Vec<BigRational>;

pub fn to_rational(v: &[BigInt]) -> Row {
    v.iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect()
}

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn rref(m: &mut [Row]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : M x = 0}` for an `rows x cols` matrix.
pub fn nullspace(m: &[Row], cols: usize) -> Vec<Row> {
    let mut a: Vec<Row> = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Coefficients `c` with `sum_j c_j columns[j] = target`, free variables set
/// to zero, or `None` when `target` is outside the span.
pub fn solve_in_span(columns: &[Row], target: &[BigRational]) -> Option<Row> {
    let l = target.len();
    let n = columns.len();
    // Augmented l x (n+1) matrix.
    let mut a: Vec<Row> = (0..l)
        .map(|t| {
            let mut row: Row = columns.iter().map(|c| c[t].clone()).collect();
            row.push(target[t].clone());
            row
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.contains(&n) {
        return None;
    }
    let mut c = vec![BigRational::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        c[p] = a[r][n].clone();
    }
    Some(c)
}

/// Smallest integer multiple of a rational vector with coprime entries.
pub fn integer_scale(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Formats as `p/q` with a positive denominator.
pub fn rational_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (crate::decimal::parse(p)?, crate::decimal::parse(q)?),
        None => (crate::decimal::parse(s)?, BigInt::one()),
    };
    if q.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    let r = BigRational::new(p, q);
    debug_assert!(r.denom().is_positive());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn mat(rows: &[&[i64]]) -> Vec<Row> {
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect()
    }

    fn apply(m: &[Row], x: &[BigRational]) -> Row {
        m.iter()
            .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    #[test]
    fn nullspace_of_rank_one_row() {
        let m = mat(&[&[1, 1, -1]]);
        let basis = nullspace(&m, 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(apply(&m, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn nullspace_full_rank_is_empty() {
        let m = mat(&[&[1, 0], &[0, 2]]);
        assert!(nullspace(&m, 2).is_empty());
        // No rows: everything is in the kernel.
        assert_eq!(nullspace(&[], 3).len(), 3);
    }

    #[test]
    fn solve_recovers_combination() {
        let cols = mat(&[&[1, 2], &[3, 4]]);
        let target = vec![q(5), q(8)];
        let c = solve_in_span(&cols, &target).unwrap();
        // 1*(1,2) + 4/3*(3,4)? check by recombining.
        let back: Row = (0..2)
            .map(|t| cols.iter().zip(&c).map(|(col, ci)| &col[t] * ci).sum())
            .collect();
        assert_eq!(back, target);
        assert!(solve_in_span(&mat(&[&[1, 1]]), &[q(1), q(2)]).is_none());
        assert_eq!(solve_in_span(&[], &[q(0)]), Some(vec![]));
        assert_eq!(solve_in_span(&[], &[q(1)]), None);
    }

    #[test]
    fn scaling_and_formatting() {
        let v = vec![
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(-1), BigInt::from(3)),
            q(0),
        ];
        assert_eq!(
            integer_scale(&v),
            vec![BigInt::from(3), BigInt::from(-2), BigInt::from(0)]
        );
        assert_eq!(
            integer_scale(&[q(4), q(6)]),
            vec![BigInt::from(2), BigInt::from(3)]
        );
        assert_eq!(rational_string(&v[1]), "-1/3");
        assert_eq!(rational_string(&q(-1)), "-1/1");
        assert_eq!(
            parse_rational("-2/4").unwrap(),
            BigRational::new((-1).into(), 2.into())
        );
        assert_eq!(parse_rational("7").unwrap(), q(7));
        assert!(parse_rational("1/0").is_err());
    }
}

//! Exact scalar and small dense linear algebra over Q.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// A point of Q^n.
pub type RationalVector = Vec<BigRational>;
/// A point of Z^n (weight lattice).
pub type LatticeVector = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational {0:?}: expected \"p\" or \"p/q\" with integers p, q and q != 0")]
pub struct MalformedRational(pub String);

/// Parses `"p"` or `"p/q"`. Decimal and exponent notation are rejected.
pub fn parse_rational(text: &str) -> Result<BigRational, MalformedRational> {
    let err = || MalformedRational(text.to_string());
    let valid = |s: &str| {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    if !valid(num) || !valid(den) {
        return Err(err());
    }
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(num, den))
}

/// Renders a rational as `"p"` or `"p/q"` in lowest terms.
pub fn format_rational(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn format_vector(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn to_rational_vector(v: &[i64]) -> RationalVector {
    v.iter().map(|&x| rat(x)).collect()
}

/// Returns the integer vector if every coordinate is integral and fits in i64.
pub fn to_lattice_vector(v: &[BigRational]) -> Option<LatticeVector> {
    v.iter().map(|x| if x.is_integer() { x.numer().to_i64() } else { None }).collect()
}

pub fn dot_int_rat(a: &[i64], x: &[BigRational]) -> BigRational {
    a.iter().zip(x).fold(BigRational::zero(), |acc, (&ai, xi)| acc + xi * BigInt::from(ai))
}

pub fn dot_int(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Scales a nonzero rational vector to the primitive integer vector with the
/// same direction.
pub fn primitive_direction(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Row-reduced echelon data of a rational matrix.
pub(crate) struct Echelon {
    pub rows: Vec<Vec<BigRational>>,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination; `rows` is m x k. Returns reduced rows and pivot
/// columns.
pub(crate) fn row_reduce(mut rows: Vec<Vec<BigRational>>) -> Echelon {
    let m = rows.len();
    let k = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { rows, pivots }
}

pub(crate) fn rank(rows: &[Vec<BigRational>]) -> usize {
    row_reduce(rows.to_vec()).pivots.len()
}

/// Solves the square system `a x = b`; `None` if singular.
pub(crate) fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<RationalVector> {
    let n = a.len();
    let augmented: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let ech = row_reduce(augmented);
    if ech.pivots.len() != n || ech.pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some(ech.rows.iter().map(|r| r[n].clone()).collect())
}

/// Inverse of a square matrix; `None` if singular.
pub(crate) fn inverse(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let augmented: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    let ech = row_reduce(augmented);
    if ech.pivots.len() < n || ech.pivots[n - 1] >= n {
        return None;
    }
    Some(ech.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant by fraction-free elimination over Q.
pub(crate) fn determinant(a: &[Vec<BigRational>]) -> BigRational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for j in c..n {
                let delta = &f * &m[c][j];
                m[i][j] -= delta;
            }
        }
    }
    det
}

#[cfg(test)]
pub(crate) fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
    rows.iter().map(|r| to_rational_vector(r)).collect()
}

pub(crate) fn abs_int(x: &BigRational) -> BigInt {
    x.abs().to_integer()
}

pub(crate) fn squared_norm(v: &[BigRational]) -> BigRational {
    v.iter().fold(BigRational::zero(), |acc, x| acc + x * x)
}

/// Largest `p / 2^k` whose square is strictly below `bound` (bound > 0), for
/// the smallest `k >= min_bits` giving `p > 0`.
pub fn rational_below_sqrt(bound: &BigRational, min_bits: u32) -> BigRational {
    assert!(bound.is_positive(), "bound must be positive");
    let mut bits = min_bits;
    loop {
        let scale = BigInt::one() << bits;
        let scaled = bound * BigRational::from_integer(&scale * &scale);
        let mut p = scaled.floor().to_integer().sqrt();
        while p.is_positive() && BigRational::from_integer(&p * &p) >= scaled {
            p -= 1;
        }
        if p.is_positive() {
            return BigRational::new(p, scale);
        }
        bits += 4;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_renders_rationals() {
        assert_eq!(parse_rational("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3));
        assert_eq!(parse_rational("4/8").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("3/-6").unwrap(), ratio(-1, 2));
        for bad in ["0.5", "1e3", "1/0", "", "/2", "1/", "a/b", " 1", "1 /2", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should be rejected");
        }
        assert_eq!(format_rational(&ratio(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(-7)), "-7");
    }

    #[test]
    fn determinant_and_inverse() {
        let a = int_matrix(&[&[0, 1], &[-2, -1]]);
        assert_eq!(determinant(&a), rat(2));
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0], vec![ratio(-1, 2), ratio(-1, 2)]);
        assert_eq!(inv[1], vec![rat(1), rat(0)]);
        let singular = int_matrix(&[&[1, 2], &[2, 4]]);
        assert!(inverse(&singular).is_none());
        assert_eq!(determinant(&singular), rat(0));
        assert_eq!(rank(&singular), 1);
    }

    #[test]
    fn solves_square_systems() {
        let a = int_matrix(&[&[1, 1], &[1, -1]]);
        let x = solve(&a, &[rat(3), rat(1)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
    }

    #[test]
    fn primitive_directions() {
        let v = vec![ratio(-1, 2), rat(1)];
        assert_eq!(primitive_direction(&v), vec![BigInt::from(-1), BigInt::from(2)]);
    }

    #[test]
    fn sqrt_lower_bound_is_strict() {
        let b = ratio(1, 8);
        let e = rational_below_sqrt(&b, 8);
        assert!(&e * &e < b);
        let step = BigRational::new(BigInt::one(), BigInt::from(256));
        let next = &e + step;
        assert!(&next * &next >= b);
        let e = rational_below_sqrt(&rat(1), 2);
        assert_eq!(e, ratio(3, 4));
    }
}

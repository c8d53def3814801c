use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::GeometryError;
use crate::rational::{dot_int, dot_int_rat};

/// `{ x : <normal, x> + offset >= 0 }` with a primitive inward normal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    normal: Vec<i64>,
    offset: BigRational,
    /// `offset` as an exact `num / den` pair in i128, when it fits.
    small: Option<(i128, i128)>,
}

impl Halfspace {
    /// Builds a halfspace; a non-primitive normal is divided by its gcd (the
    /// offset scales with it, so the point set is unchanged).
    pub fn new(normal: Vec<i64>, offset: BigRational) -> Result<Self, GeometryError> {
        let g = normal.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        if g == 0 {
            return Err(GeometryError::ZeroNormal);
        }
        let normal: Vec<i64> = normal.into_iter().map(|x| x / g).collect();
        let offset = offset / BigRational::from_integer(BigInt::from(g));
        Ok(Self::from_parts(normal, offset))
    }

    fn from_parts(normal: Vec<i64>, offset: BigRational) -> Self {
        let small = match (offset.numer().to_i64(), offset.denom().to_i64()) {
            (Some(n), Some(d)) => Some((n as i128, d as i128)),
            _ => None,
        };
        Self { normal, offset, small }
    }

    pub fn normal(&self) -> &[i64] {
        &self.normal
    }

    pub fn offset(&self) -> &BigRational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `<normal, x> + offset`.
    pub fn slack(&self, x: &[BigRational]) -> BigRational {
        dot_int_rat(&self.normal, x) + &self.offset
    }

    /// Sign of the slack at a lattice point.
    pub fn slack_sign(&self, x: &[i64]) -> Ordering {
        if let Some((num, den)) = self.small {
            let dot = self
                .normal
                .iter()
                .zip(x)
                .try_fold(0i128, |acc, (&a, &b)| acc.checked_add((a as i128).checked_mul(b as i128)?));
            if let Some(v) = dot.and_then(|d| d.checked_mul(den)).and_then(|d| d.checked_add(num)) {
                return v.cmp(&0);
            }
        }
        let slack = BigRational::from_integer(BigInt::from(dot_int(&self.normal, x))) + &self.offset;
        if slack.is_positive() {
            Ordering::Greater
        } else if slack.is_zero() {
            Ordering::Equal
        } else {
            Ordering::Less
        }
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        !self.slack(x).is_negative()
    }

    /// The same boundary hyperplane with the opposite side.
    pub fn flipped(&self) -> Self {
        Self::from_parts(self.normal.iter().map(|x| -x).collect(), -self.offset.clone())
    }

    /// Image under `x -> x + shift`.
    pub fn translated(&self, shift: &[i64]) -> Self {
        let delta = BigRational::from_integer(BigInt::from(dot_int(&self.normal, shift)));
        Self::from_parts(self.normal.clone(), &self.offset - delta)
    }

    /// Image under `x -> g x` given `g^{-T}` (the normal transforms
    /// contragrediently; the offset is unchanged).
    pub(crate) fn transformed(&self, inverse_transpose: &[Vec<i64>]) -> Self {
        let normal = inverse_transpose.iter().map(|row| dot_int(row, &self.normal)).collect();
        Self::from_parts(normal, self.offset.clone())
    }

    /// Squared Euclidean distance from `x` to the boundary hyperplane.
    pub fn squared_distance(&self, x: &[BigRational]) -> BigRational {
        let s = self.slack(x);
        let norm2: i64 = self.normal.iter().map(|a| a * a).sum();
        &s * &s / BigRational::from_integer(BigInt::from(norm2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio, to_rational_vector};

    #[test]
    fn normalizes_to_primitive_normal() {
        let h = Halfspace::new(vec![2, -4], rat(3)).unwrap();
        assert_eq!(h.normal(), &[1, -2]);
        assert_eq!(h.offset(), &ratio(3, 2));
        assert_eq!(Halfspace::new(vec![0, 0], rat(1)), Err(GeometryError::ZeroNormal));
    }

    #[test]
    fn slack_sign_matches_exact_slack() {
        let h = Halfspace::new(vec![-1, -1], ratio(1, 2)).unwrap();
        for x in -3..=3 {
            for y in -3..=3 {
                let exact = h.slack(&to_rational_vector(&[x, y]));
                let expected = exact.cmp(&BigRational::zero());
                assert_eq!(h.slack_sign(&[x, y]), expected);
            }
        }
    }

    #[test]
    fn distance_to_hypotenuse() {
        let h = Halfspace::new(vec![-1, -1], ratio(1, 2)).unwrap();
        assert_eq!(h.squared_distance(&to_rational_vector(&[0, 0])), ratio(1, 8));
    }

    #[test]
    fn translation_moves_the_boundary() {
        let h = Halfspace::new(vec![1, 0], rat(0)).unwrap().translated(&[2, 5]);
        assert_eq!(h.slack_sign(&[2, 0]), Ordering::Equal);
        assert_eq!(h.slack_sign(&[1, 0]), Ordering::Less);
    }
}

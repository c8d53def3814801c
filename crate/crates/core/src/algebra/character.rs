use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, LaurentPoly};
use crate::rational::dot_int;

/// A virtual character of the torus `T^n`: a Laurent polynomial in
/// `t1, ..., tn` with integer coefficients, no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    num_vars: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

fn check_len(expected: usize, got: usize) -> Result<(), AlgebraError> {
    if expected == got {
        Ok(())
    } else {
        Err(AlgebraError::DimensionMismatch { expected, got })
    }
}

impl Character {
    pub fn zero(num_vars: usize) -> Self {
        Self { num_vars, terms: BTreeMap::new() }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::term(vec![0; num_vars], BigInt::one())
    }

    fn term(exponent: Vec<i64>, coeff: BigInt) -> Self {
        let num_vars = exponent.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        Self { num_vars, terms }
    }

    /// `t^xi` for a weight of the expected length.
    pub fn monomial(num_vars: usize, xi: &[i64]) -> Result<Self, AlgebraError> {
        check_len(num_vars, xi.len())?;
        Ok(Self::term(xi.to_vec(), BigInt::one()))
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Vec<i64>, BigInt)>,
    {
        let mut out = Self::zero(num_vars);
        for (e, c) in terms {
            check_len(num_vars, e.len())?;
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, exponent: Vec<i64>, coeff: BigInt) {
        debug_assert_eq!(exponent.len(), self.num_vars);
        use std::collections::btree_map::Entry;
        match self.terms.entry(exponent) {
            Entry::Vacant(e) => {
                if !coeff.is_zero() {
                    e.insert(coeff);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, exponent: &[i64]) -> BigInt {
        self.terms.get(exponent).cloned().unwrap_or_default()
    }

    /// Value at `t = 1`, the virtual dimension.
    pub fn dimension(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        check_len(self.num_vars, rhs.num_vars)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        check_len(self.num_vars, rhs.num_vars)?;
        let mut out = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies by `t^shift`.
    pub fn shift(&self, shift: &[i64]) -> Result<Self, AlgebraError> {
        check_len(self.num_vars, shift.len())?;
        Ok(self.map_exponents(self.num_vars, |e| e.iter().zip(shift).map(|(x, y)| x + y).collect()))
    }

    /// Applies an exponent map; the result has `num_vars` variables.
    pub fn map_exponents(&self, num_vars: usize, f: impl Fn(&[i64]) -> Vec<i64>) -> Self {
        let mut out = Self::zero(num_vars);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Substitutes `t_i = q^{a_i}`.
    pub fn specialize(&self, a: &[i64]) -> Result<LaurentPoly, AlgebraError> {
        check_len(self.num_vars, a.len())?;
        Ok(LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (dot_int(e, a), c.clone()))))
    }

    /// Terms in display order: total degree `sum |e_i|` ascending, then
    /// exponent descending.
    pub fn display_terms(&self) -> Vec<(&Vec<i64>, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| display_order(a, b));
        v
    }
}

fn display_order(a: &[i64], b: &[i64]) -> Ordering {
    let l1 = |e: &[i64]| e.iter().map(|x| x.unsigned_abs()).sum::<u64>();
    l1(a).cmp(&l1(b)).then_with(|| b.cmp(a))
}

fn monomial_text(e: &[i64]) -> String {
    let factors: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| if x == 1 { format!("t{}", i + 1) } else { format!("t{}^{}", i + 1, x) })
        .collect();
    factors.join("*")
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.display_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mono = monomial_text(e);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Neg for &Character {
    type Output = Character;

    fn neg(self) -> Character {
        Character { num_vars: self.num_vars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Add for &Character {
    type Output = Character;

    /// Panics when the variable counts differ; see [`Character::checked_add`].
    fn add(self, rhs: &Character) -> Character {
        self.checked_add(rhs).expect("characters in the same number of variables")
    }
}

impl Sub for &Character {
    type Output = Character;

    fn sub(self, rhs: &Character) -> Character {
        self.checked_sub(rhs).expect("characters in the same number of variables")
    }
}

impl Mul for &Character {
    type Output = Character;

    fn mul(self, rhs: &Character) -> Character {
        self.checked_mul(rhs).expect("characters in the same number of variables")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(n: usize, terms: &[(&[i64], i64)]) -> Character {
        Character::from_terms(n, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c)))).unwrap()
    }

    #[test]
    fn monomials() {
        assert_eq!(Character::monomial(2, &[0, 0]).unwrap(), Character::one(2));
        assert_eq!(Character::monomial(2, &[1, 0]).unwrap().to_string(), "t1");
        assert_eq!(Character::monomial(2, &[-1, 2]).unwrap().to_string(), "t1^-1*t2^2");
        assert_eq!(Character::monomial(2, &[1]), Err(AlgebraError::DimensionMismatch { expected: 2, got: 1 }));
    }

    #[test]
    fn ring_operations() {
        let a = ch(2, &[(&[0, 0], 1), (&[1, 0], 1)]);
        let b = ch(2, &[(&[0, 0], 1), (&[0, 1], -1)]);
        assert_eq!((&a * &b).to_string(), "1 + t1 - t2 - t1*t2");
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).to_string(), "0");
        let t = ch(1, &[(&[0], 1), (&[1], 1)]);
        assert_eq!(&t * &t, ch(1, &[(&[0], 1), (&[1], 2), (&[2], 1)]));
        assert_eq!((&t * &t).to_string(), "1 + 2*t1 + t1^2");
        assert!(a.checked_mul(&t).is_err());
    }

    #[test]
    fn rendering_order() {
        let c = ch(2, &[(&[1, -1], -1), (&[0, 1], 1), (&[1, 0], 1), (&[0, 0], 1)]);
        assert_eq!(c.to_string(), "1 + t1 + t2 - t1*t2^-1");
    }

    #[test]
    fn specialization() {
        let c = ch(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(c.specialize(&[1, 2]).unwrap().to_string(), "1 + q + q^2");
        assert_eq!(c.specialize(&[1, 1]).unwrap().to_string(), "1 + 2*q");
        let m = Character::monomial(2, &[1, -1]).unwrap();
        assert_eq!(m.specialize(&[3, 5]).unwrap().to_string(), "q^-2");
        assert!(c.specialize(&[1]).is_err());
    }

    #[test]
    fn dimensions() {
        let c = ch(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(c.dimension(), BigInt::from(3));
        assert_eq!(Character::zero(2).dimension(), BigInt::zero());
        let d = &Character::monomial(2, &[1, 0]).unwrap() - &Character::monomial(2, &[0, 1]).unwrap();
        assert_eq!(d.dimension(), BigInt::zero());
    }
}

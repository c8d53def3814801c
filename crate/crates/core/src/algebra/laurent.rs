use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{PolyQ, RationalFunction};

/// Univariate Laurent polynomial over Z in `q`, stored as a polynomial
/// times `q^low`. Canonical: no zero coefficients at either end.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        Self::normalized(exp, vec![c])
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c;
        }
        let Some((&low, _)) = map.iter().next() else { return Self::zero() };
        let high = *map.keys().next_back().expect("nonempty");
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in map {
            coeffs[(e - low) as usize] = c;
        }
        Self::normalized(low, coeffs)
    }

    fn normalized(mut low: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        low += lead as i64;
        Self { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (self.low + i as i64, c))
    }

    pub fn coefficient(&self, exp: i64) -> BigInt {
        let i = exp - self.low;
        if i < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// The same element of Q(q), with negative powers moved into the
    /// denominator.
    pub fn to_rational_function(&self) -> RationalFunction {
        if self.is_zero() {
            return RationalFunction::zero();
        }
        let poly = PolyQ::new(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect());
        if self.low >= 0 {
            RationalFunction::from_poly(poly.shift(self.low as usize))
        } else {
            let den = PolyQ::monomial(BigRational::one(), (-self.low) as usize);
            RationalFunction::new(poly, den).expect("monomial denominator is nonzero")
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
                first = false;
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mono = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
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

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let terms = self.terms().chain(rhs.terms()).map(|(e, c)| (e, c.clone()));
        LaurentPoly::from_terms(terms.collect::<Vec<_>>())
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPoly::normalized(self.low + rhs.low, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn canonical_form_and_rendering() {
        assert_eq!(lp(&[(0, 1), (1, 1), (2, 1)]).to_string(), "1 + q + q^2");
        assert_eq!(lp(&[(-2, 1)]).to_string(), "q^-2");
        assert_eq!(lp(&[(3, 1), (3, -1)]), LaurentPoly::zero());
        assert_eq!(lp(&[(1, -2), (0, 3)]).to_string(), "3 - 2*q");
        assert_eq!(lp(&[(5, 2), (-1, 1)]).min_exponent(), Some(-1));
    }

    #[test]
    fn arithmetic() {
        let a = lp(&[(0, 1), (1, 1)]);
        assert_eq!(&a * &a, lp(&[(0, 1), (1, 2), (2, 1)]));
        assert_eq!(&a - &a, LaurentPoly::zero());
        let b = lp(&[(-1, 1)]);
        assert_eq!(&a * &b, lp(&[(-1, 1), (0, 1)]));
        assert_eq!((&a * &b).eval_at_one(), BigInt::from(2));
    }

    #[test]
    fn to_rational_function_roundtrip() {
        let a = lp(&[(-2, 1), (0, 3)]);
        let f = a.to_rational_function();
        assert_eq!(f.as_laurent(), Some(a));
    }
}

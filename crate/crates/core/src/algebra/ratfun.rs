use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AlgebraError, LaurentPoly, PolyQ};

/// Element of Q(q) in lowest terms with a monic denominator, so that
/// structural equality is field equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: PolyQ,
    den: PolyQ,
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    pub fn new(num: PolyQ, den: PolyQ) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: PolyQ, den: PolyQ) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (q, r) = num.div_rem(&den);
        if r.is_zero() {
            return Self { num: q, den: PolyQ::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) { (num, den) } else { (num.div_rem(&g).0, den.div_rem(&g).0) };
        let lc = den.leading().expect("nonzero denominator").recip();
        Self { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn zero() -> Self {
        Self { num: PolyQ::zero(), den: PolyQ::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(PolyQ::one())
    }

    pub fn from_poly(p: PolyQ) -> Self {
        Self { num: p, den: PolyQ::one() }
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        p.to_rational_function()
    }

    /// `1 / (1 - q^k)` for `k >= 1`.
    pub fn geometric(k: usize) -> Self {
        Self::reduce(PolyQ::one(), PolyQ::one_minus_power(k))
    }

    /// `q^k` for any integer `k`.
    pub fn q_power(k: i64) -> Self {
        LaurentPoly::monomial(BigInt::one(), k).to_rational_function()
    }

    pub fn numerator(&self) -> &PolyQ {
        &self.num
    }

    pub fn denominator(&self) -> &PolyQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(self * &rhs.inv()?)
    }

    /// The Laurent polynomial this equals, when the denominator is a power
    /// of `q` and every coefficient is an integer.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        let shift = self.den.valuation()?;
        if self.den.degree() != Some(shift) {
            return None;
        }
        let mut terms = Vec::new();
        for (k, c) in self.num.coeffs().iter().enumerate() {
            if !c.is_integer() {
                return None;
            }
            if !c.is_zero() {
                terms.push((k as i64 - shift as i64, c.to_integer()));
            }
        }
        Some(LaurentPoly::from_terms(terms))
    }

    /// Value at `q = 1`, when defined.
    pub fn eval_at_one(&self) -> Option<BigRational> {
        let one = BigRational::one();
        let d = self.den.eval(&one);
        (!d.is_zero()).then(|| self.num.eval(&one) / d)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::reduce(num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

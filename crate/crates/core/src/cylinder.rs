//! The folded cylinder model: the mode equations
//! `a_m' = 2 pi (1 + t) (m - rho) a_m` and `b_m' = -2 pi (1 + t) (m - rho) b_m`
//! have no nonzero square-integrable solution, so the fold contributes zero.
//!
//! `rho` is exact and piecewise polynomial: `r^2` on `|r| <= 1/4`, a cubic
//! Hermite blend on `1/4 <= |r| <= 1/2`, and `1/2` beyond. The blend is C^1
//! rather than smooth; only the constant tail enters the certificates.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::{format_rational, rat, ratio};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CylinderError {
    #[error("t must be nonnegative, got {}", format_rational(.0))]
    NegativeT(BigRational),
    #[error("certificate for mode {m} failed verification")]
    InvalidCertificate { m: i64 },
}

/// The fold profile `rho` and its antiderivative.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FoldProfile;

/// Blend `p(s) = c3 s^3 + c2 s^2 + c1 s + c0` with `s = 4|r| - 1`.
const BLEND: [(i64, i64); 4] = [(1, 16), (1, 8), (17, 16), (-3, 4)];

fn blend_coeffs() -> [BigRational; 4] {
    BLEND.map(|(p, q)| ratio(p, q))
}

fn horner(coeffs: &[BigRational], s: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * s + c)
}

impl FoldProfile {
    pub fn inner_knot() -> BigRational {
        ratio(1, 4)
    }

    pub fn outer_knot() -> BigRational {
        ratio(1, 2)
    }

    /// Coefficients of the blend in `s = 4|r| - 1`, ascending.
    pub fn blend_coefficients() -> [BigRational; 4] {
        blend_coeffs()
    }

    pub fn rho(r: &BigRational) -> BigRational {
        let a = r.abs();
        if a <= Self::inner_knot() {
            &a * &a
        } else if a <= Self::outer_knot() {
            horner(&blend_coeffs(), &(a * rat(4) - rat(1)))
        } else {
            ratio(1, 2)
        }
    }

    /// `rho'(r)`.
    pub fn rho_derivative(r: &BigRational) -> BigRational {
        let a = r.abs();
        let d = if a <= Self::inner_knot() {
            &a * rat(2)
        } else if a <= Self::outer_knot() {
            let c = blend_coeffs();
            let s = &a * rat(4) - rat(1);
            // d/dr p(4r - 1) = 4 p'(s)
            (&c[1] + &s * (&c[2] * rat(2) + &s * (&c[3] * rat(3)))) * rat(4)
        } else {
            BigRational::zero()
        };
        if r.is_negative() {
            -d
        } else {
            d
        }
    }

    /// `R(r) = int_0^r rho`, an odd function.
    pub fn antiderivative(r: &BigRational) -> BigRational {
        let a = r.abs();
        let value = if a <= Self::inner_knot() {
            &a * &a * &a / rat(3)
        } else if a <= Self::outer_knot() {
            let c = blend_coeffs();
            // P(s) = int_0^s p, and int_{1/4}^{a} p(4u - 1) du = P(4a - 1) / 4
            let integral = [BigRational::zero(), c[0].clone(), &c[1] / rat(2), &c[2] / rat(3), &c[3] / rat(4)];
            ratio(1, 192) + horner(&integral, &(&a * rat(4) - rat(1))) / rat(4)
        } else {
            ratio(5, 64) + (&a - Self::outer_knot()) / rat(2)
        };
        if r.is_negative() {
            -value
        } else {
            value
        }
    }

    /// One-sided value and slope agreement at both knots, and the bounds
    /// `0 <= rho <= 1/2` on the blend (which is monotone).
    pub fn check_smoothness() -> bool {
        let c = blend_coeffs();
        let p = |s: i64| horner(&c, &rat(s));
        let dp = |s: i64| (&c[1] + rat(s) * (&c[2] * rat(2) + rat(s) * (&c[3] * rat(3)))) * rat(4);
        let values = p(0) == ratio(1, 16) && p(1) == ratio(1, 2);
        let slopes = dp(0) == ratio(1, 2) && dp(1).is_zero();
        // p'(s) is a concave quadratic vanishing at s = 1 and positive at 0,
        // so it is positive on [0, 1).
        let monotone = c[3].is_negative() && dp(0).is_positive();
        values && slopes && monotone
    }
}

/// `(1 + t) int_0^r (m - rho(s)) ds`; the `W+` solution with unit initial
/// value is `exp(2 pi * this)`.
pub fn log_mode_amplitude(m: i64, t: &BigRational, r: &BigRational) -> BigRational {
    (rat(1) + t) * (rat(m) * r - FoldProfile::antiderivative(r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// Solutions `a_m` with exponent `+2 pi (1 + t) int (m - rho)`.
    Plus,
    /// Solutions `b_m` with the negated exponent.
    Minus,
}

impl Branch {
    fn sign(self) -> i64 {
        match self {
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "W+",
            Branch::Minus => "W-",
        })
    }
}

/// Exponent of the mode solution divided by `2 pi`.
pub fn mode_exponent(branch: Branch, m: i64, t: &BigRational, r: &BigRational) -> BigRational {
    log_mode_amplitude(m, t, r) * rat(branch.sign())
}

/// Proof that one mode on one branch has no nonzero L^2 solution. Beyond
/// `|r| >= 1/2` the exponent is affine in `r`; the solution is L^2 only if
/// it decays at both ends, which needs the slope to be negative at `+inf`
/// and positive at `-inf` at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeCertificate {
    pub m: i64,
    pub t: BigRational,
    pub branch: Branch,
    /// Exponent slope (divided by `2 pi`) on `r >= 1/2`.
    pub slope_plus: BigRational,
    /// Exponent slope on `r <= -1/2`.
    pub slope_minus: BigRational,
    pub decays_at_plus: bool,
    pub decays_at_minus: bool,
}

impl ModeCertificate {
    pub fn new(branch: Branch, m: i64, t: &BigRational) -> Self {
        let e = |r: BigRational| mode_exponent(branch, m, t, &r);
        let slope_plus = (e(rat(1)) - e(ratio(1, 2))) * rat(2);
        let slope_minus = (e(ratio(-1, 2)) - e(rat(-1))) * rat(2);
        Self {
            m,
            t: t.clone(),
            branch,
            decays_at_plus: slope_plus.is_negative(),
            decays_at_minus: slope_minus.is_positive(),
            slope_plus,
            slope_minus,
        }
    }

    pub fn square_integrable(&self) -> bool {
        self.decays_at_plus && self.decays_at_minus
    }

    /// Rechecks the slopes against the closed form `+-(1 + t)(m - 1/2)` and
    /// the affine behaviour at a further pair of points.
    pub fn verify(&self) -> bool {
        let expected = (rat(1) + &self.t) * (rat(self.m) - ratio(1, 2)) * rat(self.branch.sign());
        let e = |r: i64| mode_exponent(self.branch, self.m, &self.t, &rat(r));
        let affine_plus = e(3) - e(2) == expected && e(2) - e(1) == expected;
        let affine_minus = e(-2) - e(-3) == expected && e(-1) - e(-2) == expected;
        self.slope_plus == expected
            && self.slope_minus == expected
            && affine_plus
            && affine_minus
            && self.decays_at_plus == expected.is_negative()
            && self.decays_at_minus == expected.is_positive()
            && !self.square_integrable()
    }
}

/// Covers every mode outside the checked range: `|m - 1/2| >= 1/2` for
/// integer `m`, so the tail slopes never vanish and keep one sign at both
/// ends, growing in `|m|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlanketCertificate {
    pub t: BigRational,
    /// `(1 + t) / 2`, a lower bound for `|slope|` over all integer modes.
    pub min_abs_slope: BigRational,
}

impl BlanketCertificate {
    pub fn verify(&self) -> bool {
        let bound = (rat(1) + &self.t) / rat(2);
        // modes 0 and 1 attain the bound; the slope is affine and increasing in m
        let s0 = ModeCertificate::new(Branch::Plus, 0, &self.t);
        let s1 = ModeCertificate::new(Branch::Plus, 1, &self.t);
        self.min_abs_slope == bound
            && bound.is_positive()
            && s0.slope_plus == -bound.clone()
            && s1.slope_plus == bound
            && s0.verify()
            && s1.verify()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    pub t: BigRational,
    pub modes: RangeInclusive<i64>,
    /// One certificate per mode and branch, `W+` first.
    pub certificates: Vec<ModeCertificate>,
    pub blanket: BlanketCertificate,
    /// Number of certified modes with an L^2 solution.
    pub kernel_plus: usize,
    pub kernel_minus: usize,
}

impl KernelReport {
    pub fn dimension(&self) -> usize {
        self.kernel_plus + self.kernel_minus
    }

    pub fn index(&self) -> i64 {
        self.kernel_plus as i64 - self.kernel_minus as i64
    }

    pub fn verified(&self) -> bool {
        self.certificates.iter().all(ModeCertificate::verify) && self.blanket.verify()
    }
}

/// Certifies every mode in `modes` on both branches.
pub fn kernel_dimension(t: &BigRational, modes: RangeInclusive<i64>) -> Result<KernelReport, CylinderError> {
    if t.is_negative() {
        return Err(CylinderError::NegativeT(t.clone()));
    }
    let certificates: Vec<ModeCertificate> = [Branch::Plus, Branch::Minus]
        .into_iter()
        .flat_map(|b| modes.clone().map(move |m| (b, m)))
        .map(|(b, m)| ModeCertificate::new(b, m, t))
        .collect();
    if let Some(bad) = certificates.iter().find(|c| !c.verify()) {
        return Err(CylinderError::InvalidCertificate { m: bad.m });
    }
    let count = |b: Branch| certificates.iter().filter(|c| c.branch == b && c.square_integrable()).count();
    Ok(KernelReport {
        t: t.clone(),
        modes,
        kernel_plus: count(Branch::Plus),
        kernel_minus: count(Branch::Minus),
        blanket: BlanketCertificate { t: t.clone(), min_abs_slope: (rat(1) + t) / rat(2) },
        certificates,
    })
}

/// Convenience for callers holding an integer `t`.
pub fn kernel_dimension_int(t: i64, modes: RangeInclusive<i64>) -> Result<KernelReport, CylinderError> {
    kernel_dimension(&BigRational::from_integer(BigInt::from(t)), modes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_values() {
        assert_eq!(FoldProfile::rho(&rat(0)), rat(0));
        assert_eq!(FoldProfile::rho(&rat(1)), ratio(1, 2));
        assert_eq!(FoldProfile::rho(&ratio(1, 4)), ratio(1, 16));
        assert_eq!(FoldProfile::rho(&ratio(-1, 4)), ratio(1, 16));
        assert_eq!(FoldProfile::rho(&ratio(1, 2)), ratio(1, 2));
        assert!(FoldProfile::check_smoothness());
    }

    #[test]
    fn one_sided_limits_at_knots() {
        let eps = ratio(1, 1_000_000);
        for knot in [ratio(1, 4), ratio(1, 2)] {
            let below = FoldProfile::rho(&(&knot - &eps));
            let above = FoldProfile::rho(&(&knot + &eps));
            assert!((above - below).abs() < ratio(1, 100_000));
            let dl = FoldProfile::rho_derivative(&(&knot - &eps));
            let du = FoldProfile::rho_derivative(&(&knot + &eps));
            assert!((du - dl).abs() < ratio(1, 10_000));
        }
    }

    #[test]
    fn antiderivative_is_continuous_and_odd() {
        assert_eq!(FoldProfile::antiderivative(&ratio(1, 4)), ratio(1, 192));
        assert_eq!(FoldProfile::antiderivative(&ratio(1, 2)), ratio(5, 64));
        let r = ratio(3, 7);
        assert_eq!(FoldProfile::antiderivative(&-r.clone()), -FoldProfile::antiderivative(&r));
    }

    #[test]
    fn amplitude_asymptotics() {
        let t = rat(0);
        // m = 0: growth towards -inf with slope 1/2, decay towards +inf
        let big = rat(1000);
        assert_eq!(log_mode_amplitude(0, &t, &-big.clone()), ratio(1000, 2) - ratio(11, 64));
        assert_eq!(log_mode_amplitude(0, &t, &big), -ratio(1000, 2) + ratio(11, 64));
        assert_eq!(log_mode_amplitude(1, &t, &big), ratio(1000, 2) + ratio(11, 64));
    }

    #[test]
    fn kernel_is_zero() {
        let report = kernel_dimension(&rat(0), -5..=5).unwrap();
        assert_eq!(report.dimension(), 0);
        assert_eq!(report.index(), 0);
        assert_eq!(report.certificates.len(), 22);
        assert!(report.verified());
        let report = kernel_dimension_int(10, -3..=3).unwrap();
        assert_eq!(report.dimension(), 0);
        assert!(report.verified());
        assert!(matches!(kernel_dimension(&rat(-1), 0..=0), Err(CylinderError::NegativeT(_))));
    }

    #[test]
    fn branches_are_negatives() {
        for m in -3..=3 {
            for r in [ratio(-7, 5), ratio(1, 3), ratio(3, 8)] {
                let t = ratio(2, 3);
                assert_eq!(mode_exponent(Branch::Minus, m, &t, &r), -mode_exponent(Branch::Plus, m, &t, &r));
            }
        }
    }
}

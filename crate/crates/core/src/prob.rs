//! Exact rational probabilities with a floating view that survives
//! magnitudes far outside the `f64` range.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::math::ln_biguint;

/// How the floating view of an [`ExactProb`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FloatMode {
    /// Numerator and denominator both fit in `f64`; plain division.
    Direct,
    /// At least one side overflows `f64`; the view is `exp(ln p - ln q)`.
    LogDerived,
}

/// An exact probability `p/q` with `0 <= p/q <= 1`, kept in reduced form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactProb(BigRational);

impl ExactProb {
    /// Builds a probability from a nonnegative fraction, reducing it.
    /// Fails when the denominator is zero or the value exceeds one.
    pub fn new(numerator: BigUint, denominator: BigUint) -> Result<Self, ProbError> {
        if denominator.is_zero() {
            return Err(ProbError::ZeroDenominator);
        }
        if numerator > denominator {
            return Err(ProbError::AboveOne);
        }
        Ok(Self(BigRational::new(
            BigInt::from(numerator),
            BigInt::from(denominator),
        )))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    /// Numerator of the reduced fraction.
    pub fn numerator(&self) -> BigUint {
        self.0.numer().magnitude().clone()
    }

    /// Denominator of the reduced fraction (always positive).
    pub fn denominator(&self) -> BigUint {
        self.0.denom().magnitude().clone()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Natural logarithm of the probability; `-inf` for zero.
    pub fn log_view(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        ln_biguint(self.0.numer().magnitude()) - ln_biguint(self.0.denom().magnitude())
    }

    /// Double-precision approximation of the probability.
    pub fn float_view(&self) -> f64 {
        match self.float_mode() {
            FloatMode::Direct => {
                let n = self.0.numer().magnitude().to_f64().expect("finite");
                let d = self.0.denom().magnitude().to_f64().expect("finite");
                n / d
            }
            FloatMode::LogDerived => self.log_view().exp(),
        }
    }

    /// Which route [`Self::float_view`] takes for this value.
    pub fn float_mode(&self) -> FloatMode {
        let finite = |x: &BigUint| x.to_f64().is_some_and(f64::is_finite);
        if finite(self.0.numer().magnitude()) && finite(self.0.denom().magnitude()) {
            FloatMode::Direct
        } else {
            FloatMode::LogDerived
        }
    }
}

impl fmt::Display for ExactProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{}",
            self.0.numer().magnitude(),
            self.0.denom().magnitude()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProbError {
    #[error("probability denominator is zero")]
    ZeroDenominator,
    #[error("probability exceeds one")]
    AboveOne,
}

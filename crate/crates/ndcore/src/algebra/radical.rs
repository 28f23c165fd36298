//! Radical values of the form `coefficient * sqrt(radicand)`.
//!
//! The radicand is normalized to a square-free nonnegative integer: square
//! factors of both numerator and denominator are pulled into the rational
//! coefficient, and `sqrt(p/q)` is rewritten as `sqrt(p*q)/q` first. A value
//! is rational exactly when the normalized radicand is 1.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RadicalError {
    #[error("negative radicand {0} has no real square root")]
    NegativeRadicand(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Radical {
    coeff: Rational,
    radicand: BigInt,
}

impl Radical {
    /// `coeff * sqrt(radicand)`, normalized. Errors on a negative radicand.
    pub fn new(coeff: Rational, radicand: Rational) -> Result<Self, RadicalError> {
        if radicand.is_negative() {
            return Err(RadicalError::NegativeRadicand(radicand));
        }
        if coeff.is_zero() || radicand.is_zero() {
            return Ok(Radical::zero());
        }
        // sqrt(p/q) = sqrt(p*q) / q
        let p = radicand.numer();
        let q = radicand.denom();
        let (square_root, free) = extract_square(&(p * q));
        Ok(Radical {
            coeff: coeff * Rational::new(square_root, q.clone()),
            radicand: free,
        })
    }

    /// The square root of `value` with a chosen sign, normalized.
    pub fn from_square(value: &Rational, negative: bool) -> Result<Self, RadicalError> {
        let sign = if negative {
            -Rational::one()
        } else {
            Rational::one()
        };
        Radical::new(sign, value.clone())
    }

    pub fn from_rational(c: Rational) -> Self {
        Radical {
            coeff: c,
            radicand: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Radical {
            coeff: Rational::zero(),
            radicand: BigInt::one(),
        }
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_one()
    }

    /// The represented value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.coeff)
    }

    /// `coeff^2 * radicand`, the square of the represented value. Useful for
    /// normalization-invariance checks.
    pub fn square(&self) -> Rational {
        &self.coeff * &self.coeff * Rational::from_integer(self.radicand.clone())
    }

    pub fn to_f64(&self) -> f64 {
        super::rational::to_f64(&self.coeff) * self.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coeff);
        }
        if self.coeff.is_one() {
            write!(f, "sqrt({})", self.radicand)
        } else if (-&self.coeff).is_one() {
            write!(f, "-sqrt({})", self.radicand)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}

/// Splits `n >= 0` as `a^2 * b` with `b` square-free; returns `(a, b)`.
///
/// Square factors are found by trial division up to a fixed bound after a
/// perfect-square fast path, which covers every radicand this crate produces.
fn extract_square(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_negative());
    if n.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let root = n.sqrt();
    if &root * &root == *n {
        return (root, BigInt::one());
    }
    let mut m = n.clone();
    let mut a = BigInt::one();
    let mut b = BigInt::one();
    let mut f = BigInt::from(2);
    let bound = BigInt::from(1_000_000u64);
    while &f * &f <= m && f <= bound {
        let mut e = 0u32;
        while (&m % &f).is_zero() {
            m /= &f;
            e += 1;
        }
        if e > 0 {
            a *= f.pow(e / 2);
            if e % 2 == 1 {
                b *= &f;
            }
        }
        f += if f == BigInt::from(2) {
            BigInt::one()
        } else {
            BigInt::from(2)
        };
    }
    if !m.is_one() {
        // Residual cofactor: pull out a perfect square if it is one.
        let r = m.sqrt();
        if &r * &r == m {
            a *= r;
        } else {
            b *= m;
        }
    }
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn normalizes_paper_style_value() {
        // sqrt(20/49) = (2/7) sqrt(5)
        let r = Radical::from_square(&rat(20, 49), false).unwrap();
        assert_eq!(r.coeff(), &rat(2, 7));
        assert_eq!(r.radicand(), &BigInt::from(5));
        assert_eq!(r.to_string(), "2/7*sqrt(5)");
    }

    #[test]
    fn zero_and_perfect_square() {
        assert_eq!(Radical::from_square(&int(0), false).unwrap(), Radical::zero());
        let r = Radical::from_square(&rat(9, 4), true).unwrap();
        assert_eq!(r.coeff(), &rat(-3, 2));
        assert!(r.is_rational());
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn rejects_negative() {
        assert!(matches!(
            Radical::from_square(&int(-1), false),
            Err(RadicalError::NegativeRadicand(_))
        ));
    }

    #[test]
    fn square_factor_in_coefficient() {
        // 3 * sqrt(18/25) = 3 * (3/5) sqrt(2) = 9/5 sqrt(2)
        let r = Radical::new(int(3), rat(18, 25)).unwrap();
        assert_eq!(r.coeff(), &rat(9, 5));
        assert_eq!(r.radicand(), &BigInt::from(2));
    }

    proptest! {
        #[test]
        fn normalization_preserves_value(cn in -30i64..30, cd in 1i64..20,
                                         rn in 0i64..4000, rd in 1i64..100) {
            let coeff = rat(cn, cd);
            let radicand = rat(rn, rd);
            let r = Radical::new(coeff.clone(), radicand.clone()).unwrap();
            // coeff^2 * radicand is invariant under normalization.
            prop_assert_eq!(r.square(), &coeff * &coeff * &radicand);
            // Idempotent: renormalizing the normal form changes nothing.
            let again = Radical::new(
                r.coeff().clone(),
                Rational::from_integer(r.radicand().clone()),
            ).unwrap();
            prop_assert_eq!(again, r);
        }
    }
}

//! Rational scalars.
//!
//! All exact scalar arithmetic in the crate runs over `num_rational`'s
//! big-integer rationals, which keep values reduced with a positive
//! denominator. This module only adds the small constructors and formatting
//! helpers the rest of the crate leans on.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Arbitrary-precision rational number, always reduced, denominator > 0.
pub type Rational = num_rational::BigRational;

/// `num / den` as a rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// An integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A big integer as a rational.
pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Best-effort double conversion for decimal previews.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of lossy conversions for extreme values.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn display_is_p_over_q() {
        assert_eq!(rat(3, 6).to_string(), "1/2");
        assert_eq!(rat(-4, 2).to_string(), "-2");
        assert_eq!(int(7).to_string(), "7");
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!("5/7".parse::<Rational>().unwrap(), rat(5, 7));
        assert_eq!("5".parse::<Rational>().unwrap(), int(5));
    }

    #[test]
    fn reduced_invariant_holds() {
        let r = rat(6, -4);
        assert_eq!(r, rat(-3, 2));
        assert!(r.denom() > &BigInt::from(0));
        assert!(Rational::one().is_integer());
    }
}

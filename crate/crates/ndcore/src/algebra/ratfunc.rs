//! Rational functions in one indeterminate over the rationals.
//!
//! Values are kept fully reduced: numerator and denominator coprime (by
//! polynomial gcd) and the denominator monic. Reduction happens on every
//! construction, which keeps coefficient growth under control during
//! Gaussian elimination over this field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::polynomial::{poly_gcd, Polynomial};
use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

/// Limit of a rational function as the indeterminate grows without bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limit {
    Finite(Rational),
    Infinite(Sign),
}

impl RationalFunction {
    /// Builds `num / den` in canonical reduced form. Panics if `den` is zero.
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RationalFunction {
                num: Polynomial::zero(),
                den: Polynomial::one(),
            };
        }
        let g = poly_gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc_inv = Rational::one() / den.leading().unwrap().clone();
        RationalFunction {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::from_poly(Polynomial::constant(c))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator reduced to 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    /// Evaluates at a point; `None` when the point is a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = RationalFunction::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Degree comparison: smaller numerator degree gives 0, equal degrees the
    /// ratio of leading coefficients, larger degree a signed infinity.
    pub fn limit_at_infinity(&self) -> Limit {
        if self.num.is_zero() {
            return Limit::Finite(Rational::zero());
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        let ratio = self.num.leading().unwrap() / self.den.leading().unwrap();
        if dn < dd {
            Limit::Finite(Rational::zero())
        } else if dn == dd {
            Limit::Finite(ratio)
        } else if ratio.is_positive() {
            Limit::Infinite(Sign::Positive)
        } else {
            Limit::Infinite(Sign::Negative)
        }
    }

    pub fn display<'a>(&'a self, var: &'a str) -> RatFuncDisplay<'a> {
        RatFuncDisplay { rf: self, var }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        RationalFunction::constant(c)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::from_poly(Polynomial::zero())
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::from_poly(Polynomial::one())
    }
}

pub struct RatFuncDisplay<'a> {
    rf: &'a RationalFunction,
    var: &'a str,
}

impl fmt::Display for RatFuncDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rf.is_polynomial() {
            write!(f, "{}", self.rf.num.display(self.var))
        } else {
            write!(
                f,
                "({})/({})",
                self.rf.num.display(self.var),
                self.rf.den.display(self.var)
            )
        }
    }
}

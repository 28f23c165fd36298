//! Exact arithmetic substrate: rationals, polynomials over the rationals,
//! rational functions in one indeterminate, radicals, linear solving, and
//! polynomial interpolation.
//!
//! Everything here is immutable after construction and exact; no floating
//! point enters except through explicit `to_f64` previews.

pub mod interpolate;
pub mod linear;
pub mod polynomial;
pub mod radical;
pub mod ratfunc;
pub mod rational;

pub use interpolate::{interpolate, InterpolateError};
pub use linear::{solve_linear, SolveError};
pub use polynomial::{poly_gcd, Polynomial};
pub use radical::{Radical, RadicalError};
pub use ratfunc::{Limit, RationalFunction, Sign};
pub use rational::Rational;

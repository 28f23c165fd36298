//! Exact enumeration and moment analysis for simultaneous core partitions
//! with distinct parts, specialized to the two-parameter family where the
//! cores avoid hook lengths `n` and `dn - 1`.
//!
//! The crate is organized as a pipeline:
//!
//! - [`algebra`]: arbitrary-precision rationals, dense polynomials over the
//!   rationals, rational functions in one indeterminate, radical values, and
//!   exact linear solving / interpolation.
//! - [`poset`]: the gap poset of the numerical semigroup generated by two
//!   coprime integers, its pillar decomposition, and enumeration of order
//!   ideals with no consecutive labels.
//! - [`oracle`]: independent brute-force enumeration of core partitions
//!   straight from Young diagrams and hook lengths, plus the label/hook
//!   bijection used for round-trip testing.
//! - [`genfunc`]: counting via the generalized Fibonacci recurrence and the
//!   pillar recursion for the bivariate weight/cardinality enumerator and the
//!   size generating function.
//! - [`moments`]: exact pre-moments, straight/central/standardized moments,
//!   pre-moments as polynomials in `d`, and limits of standardized moments.
//! - [`fitter`]: automated closed-form guessing over exact fields with
//!   held-out verification.
//! - [`cli`]: the command-line front end with text/JSON/CSV output.

pub mod algebra;
pub mod cli;
pub mod fitter;
pub mod genfunc;
pub mod moments;
pub mod oracle;
pub mod poset;

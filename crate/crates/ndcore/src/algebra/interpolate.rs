//! Exact polynomial interpolation through rational points.

use std::collections::HashSet;

use num_traits::One;
use thiserror::Error;

use super::polynomial::Polynomial;
use super::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InterpolateError {
    #[error("duplicate interpolation node {0}")]
    DuplicateNode(Rational),
}

/// The unique polynomial of degree < `points.len()` through all points,
/// computed by Newton's divided differences.
pub fn interpolate(points: &[(Rational, Rational)]) -> Result<Polynomial, InterpolateError> {
    let mut seen = HashSet::new();
    for (x, _) in points {
        if !seen.insert(x.clone()) {
            return Err(InterpolateError::DuplicateNode(x.clone()));
        }
    }

    let n = points.len();
    let mut coef: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let dy = &coef[i] - &coef[i - 1];
            let dx = &points[i].0 - &points[i - j].0;
            coef[i] = dy / dx;
        }
    }

    let mut poly = Polynomial::zero();
    let mut basis = Polynomial::one();
    for (i, c) in coef.iter().enumerate() {
        poly = &poly + &basis.scale(c);
        if i + 1 < n {
            // basis *= (x - x_i)
            let factor = Polynomial::new(vec![-&points[i].0, Rational::one()]);
            basis = &basis * &factor;
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn constant_data() {
        let pts = vec![(int(0), int(1)), (int(1), int(1)), (int(2), int(1))];
        assert_eq!(interpolate(&pts).unwrap(), Polynomial::one());
    }

    #[test]
    fn recovers_quadratic_mean_formula() {
        // Means of the size distribution at n = 3 for d = 1, 2, 3 determine
        // d^2/3 + d/4 - 1/12.
        let pts = vec![(int(1), rat(1, 2)), (int(2), rat(7, 4)), (int(3), rat(11, 3))];
        let p = interpolate(&pts).unwrap();
        assert_eq!(p, Polynomial::new(vec![rat(-1, 12), rat(1, 4), rat(1, 3)]));
    }

    #[test]
    fn exact_squares() {
        let pts: Vec<_> = (0..4).map(|x| (int(x), int(x * x))).collect();
        assert_eq!(interpolate(&pts).unwrap(), Polynomial::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn duplicate_node_rejected() {
        let pts = vec![(int(1), int(1)), (int(1), int(2))];
        assert_eq!(
            interpolate(&pts),
            Err(InterpolateError::DuplicateNode(int(1)))
        );
    }

    #[test]
    fn empty_input_gives_zero() {
        assert!(interpolate(&[]).unwrap().is_zero());
    }

    proptest! {
        #[test]
        fn reproduces_polynomial_from_samples(coeffs in proptest::collection::vec((-9i64..10, 1i64..6), 1..6)) {
            let p = Polynomial::new(coeffs.iter().map(|&(n, d)| rat(n, d)).collect());
            let nodes: Vec<_> = (0..coeffs.len() as i64)
                .map(|x| (int(x), p.eval(&int(x))))
                .collect();
            prop_assert_eq!(interpolate(&nodes).unwrap(), p);
        }
    }
}

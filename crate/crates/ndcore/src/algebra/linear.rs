//! Exact Gaussian elimination over any exact field.
//!
//! Works for both plain rationals and rational functions; elements reduce
//! themselves on every operation, so elimination stays in canonical form
//! throughout (the rational-function field reduces by polynomial gcd after
//! each pivot step).

use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

/// Marker bound for element types usable in [`solve_linear`].
pub trait FieldElement:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> FieldElement for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    /// The system is inconsistent: no assignment satisfies every equation.
    #[error("linear system has no solution")]
    NoSolution,
    /// Fewer independent equations than unknowns, but consistent.
    #[error("linear system is underdetermined (rank {rank})")]
    Underdetermined { rank: usize },
}

/// Solves `matrix * x = rhs` exactly for a square or overdetermined system.
///
/// Row-reduces the full augmented system. With full column rank the unique
/// candidate is back-substituted and any surplus equations are checked
/// against it; a violated surplus row means [`SolveError::NoSolution`].
/// Rank-deficient consistent systems report [`SolveError::Underdetermined`].
pub fn solve_linear<F: FieldElement>(matrix: &[Vec<F>], rhs: &[F]) -> Result<Vec<F>, SolveError> {
    let rows = matrix.len();
    assert_eq!(rows, rhs.len(), "matrix/rhs row mismatch");
    let cols = matrix.first().map_or(0, Vec::len);
    assert!(
        matrix.iter().all(|r| r.len() == cols),
        "ragged matrix rows"
    );
    assert!(rows >= cols, "system must be square or overdetermined");

    // Augmented working copy.
    let mut a: Vec<Vec<F>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(found) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, found);
        for r in pivot_row + 1..rows {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() / a[pivot_row][col].clone();
            for c in col..=cols {
                let v = a[r][c].clone() - factor.clone() * a[pivot_row][c].clone();
                a[r][c] = v;
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }

    let rank = pivot_cols.len();
    // Rows below the pivot block are all-zero on the left; a nonzero rhs
    // there is an inconsistency.
    let consistent = (rank..rows).all(|r| a[r][cols].is_zero());
    if rank < cols {
        return if consistent {
            Err(SolveError::Underdetermined { rank })
        } else {
            Err(SolveError::NoSolution)
        };
    }
    if !consistent {
        return Err(SolveError::NoSolution);
    }

    // Back-substitution; with rank == cols, pivot i sits in column i.
    let mut x = vec![F::zero(); cols];
    for i in (0..cols).rev() {
        let mut acc = a[i][cols].clone();
        for c in i + 1..cols {
            acc = acc - a[i][c].clone() * x[c].clone();
        }
        x[i] = acc / a[i][i].clone();
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::polynomial::Polynomial;
    use crate::algebra::ratfunc::RationalFunction;
    use crate::algebra::rational::{int, rat, Rational};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect()
    }

    fn v(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn identity_returns_rhs() {
        let sol = solve_linear(&m(&[&[1, 0], &[0, 1]]), &v(&[4, -7])).unwrap();
        assert_eq!(sol, v(&[4, -7]));
    }

    #[test]
    fn two_by_two() {
        let sol = solve_linear(&m(&[&[1, 1], &[1, 2]]), &v(&[3, 5])).unwrap();
        assert_eq!(sol, v(&[1, 2]));
    }

    #[test]
    fn overdetermined_consistent_and_not() {
        let a = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(solve_linear(&a, &v(&[1, 2, 3])).unwrap(), v(&[1, 2]));
        assert_eq!(solve_linear(&a, &v(&[1, 2, 4])), Err(SolveError::NoSolution));
    }

    #[test]
    fn rank_deficiency_cases() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(
            solve_linear(&a, &v(&[3, 6])),
            Err(SolveError::Underdetermined { rank: 1 })
        );
        assert_eq!(solve_linear(&a, &v(&[3, 7])), Err(SolveError::NoSolution));
    }

    #[test]
    fn over_rational_function_field() {
        // [[1, d], [d, 1]] x = [1 + d^2, 2d]  =>  x = [1, d]
        let d = RationalFunction::from_poly(Polynomial::var());
        let one = RationalFunction::from_poly(Polynomial::one());
        let matrix = vec![
            vec![one.clone(), d.clone()],
            vec![d.clone(), one.clone()],
        ];
        let rhs = vec![
            RationalFunction::from_poly(Polynomial::from_ints(&[1, 0, 1])),
            RationalFunction::from_poly(Polynomial::from_ints(&[0, 2])),
        ];
        let sol = solve_linear(&matrix, &rhs).unwrap();
        assert_eq!(sol[0], one);
        assert_eq!(sol[1], d);
        // Substitute back: exact reproduction of the rhs.
        for (row, b) in matrix.iter().zip(&rhs) {
            let lhs = row
                .iter()
                .zip(&sol)
                .fold(RationalFunction::zero(), |acc, (aij, xj)| acc + aij.clone() * xj.clone());
            assert_eq!(&lhs, b);
        }
    }

    proptest! {
        #[test]
        fn solution_reproduces_rhs(entries in proptest::collection::vec(-6i64..7, 9),
                                   xs in proptest::collection::vec((-6i64..7, 1i64..5), 3)) {
            let a: Vec<Vec<Rational>> =
                entries.chunks(3).map(|ch| ch.iter().map(|&e| int(e)).collect()).collect();
            let x: Vec<Rational> = xs.iter().map(|&(n, d)| rat(n, d)).collect();
            let rhs: Vec<Rational> = a
                .iter()
                .map(|row| row.iter().zip(&x).map(|(c, xi)| c * xi).sum())
                .collect();
            match solve_linear(&a, &rhs) {
                Ok(sol) => {
                    for (row, b) in a.iter().zip(&rhs) {
                        let lhs: Rational = row.iter().zip(&sol).map(|(c, xi)| c * xi).sum();
                        prop_assert_eq!(&lhs, b);
                    }
                }
                // Constructed from a known solution, so always consistent.
                Err(e) => {
                    let underdetermined = matches!(e, SolveError::Underdetermined { .. });
                    prop_assert!(underdetermined);
                }
            }
        }
    }
}

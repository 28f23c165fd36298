//! Automated closed-form guessing for pre-moment sequences.
//!
//! The working ansatz is `m_k(n) = a(n) N(n) + b(n) N(n+1)` with `a`, `b`
//! polynomials in `n`. With `d` fixed the unknown coefficients live in the
//! rationals; with `d` symbolic they live in the field of rational functions
//! in `d` and `A`, `B` have degree `2k`. Either way the scheme is
//! guess-then-verify: solve an exact linear system on a data window, then
//! demand exact agreement on held-out points. No tolerances anywhere.
//!
//! At `d = 2` the two basis sequences are proportional (`N(n) = 2^(n-1)`),
//! so the fixed-`d` ansatz degenerates and is reported as such instead of
//! being forced.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::linear::{solve_linear, SolveError};
use crate::algebra::polynomial::Polynomial;
use crate::algebra::ratfunc::RationalFunction;
use crate::algebra::rational::{big, int, Rational};
use crate::genfunc::{count, count_poly, size_power_sums};
use crate::moments::{premoment_poly, MomentsError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FitError {
    #[error("ansatz is degenerate at d = {d}: N(n+1) is proportional to N(n)")]
    DegenerateAnsatz { d: u64 },
    #[error("no ansatz of degree <= {max_deg} fits the k = {k} pre-moments")]
    AnsatzRejected { k: usize, max_deg: usize },
    #[error("fit evaluation hits a non-removable singularity at d = {d}")]
    SingularEvaluation { d: u64 },
    #[error(transparent)]
    Moments(#[from] MomentsError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitKind {
    FixedD,
    Bivariate,
}

/// A verified closed form `m_k(n) = a(n) N(n) + b(n) N(n+1)`.
///
/// `C` is the coefficient field: [`Rational`] for fixed-`d` fits,
/// [`RationalFunction`] in `d` for bivariate fits. Coefficient index equals
/// the power of `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzFit<C> {
    pub kind: FitKind,
    pub k: usize,
    /// The fixed `d`, when there is one.
    pub d: Option<u64>,
    pub a: Vec<C>,
    pub b: Vec<C>,
    /// Inclusive range of `n` used to solve.
    pub window: (u64, u64),
    /// Extra `n` values checked after solving.
    pub verified_on: Vec<u64>,
}

pub type FixedDFit = AnsatzFit<Rational>;
pub type BivariateFit = AnsatzFit<RationalFunction>;

fn eval_poly_coeffs<C>(coeffs: &[C], n: u64) -> C
where
    C: Clone + Zero + std::ops::Add<Output = C> + std::ops::Mul<Output = C> + From<Rational>,
{
    let n = C::from(int(n as i64));
    let mut acc = C::zero();
    for c in coeffs.iter().rev() {
        acc = acc * n.clone() + c.clone();
    }
    acc
}

/// Fits `m_k(d, n)` over `n` for a fixed `d`, searching degrees 0 upward and
/// returning the first fit that survives three held-out points.
pub fn fit_fixed_d(d: u64, k: usize, max_deg: Option<usize>) -> Result<FixedDFit, FitError> {
    assert!(d >= 1);
    let max_deg = max_deg.unwrap_or(2 * k);
    let n_top = (2 * max_deg as u64 + 3) + 3;

    // Data and basis over the widest window any candidate degree needs.
    let counts: Vec<Rational> = (2..=n_top + 1).map(|n| big(count(n, d))).collect();
    let data: Vec<Rational> = (2..=n_top)
        .map(|n| big(size_power_sums(n, d, k)[k].clone()))
        .collect();
    let basis_n = |n: u64| &counts[(n - 2) as usize];
    let basis_n1 = |n: u64| &counts[(n - 1) as usize];

    // Proportional basis sequences can never pin down (a, b).
    let collinear = (2..n_top)
        .all(|n| basis_n1(n) * basis_n(n + 1) == basis_n1(n + 1) * basis_n(n));
    if collinear {
        return Err(FitError::DegenerateAnsatz { d });
    }

    for deg in 0..=max_deg {
        let window_end = 2 * deg as u64 + 3;
        let rows: Vec<Vec<Rational>> = (2..=window_end)
            .map(|n| {
                let mut row = Vec::with_capacity(2 * (deg + 1));
                let mut p = Rational::one();
                for _ in 0..=deg {
                    row.push(&p * basis_n(n));
                    p *= int(n as i64);
                }
                let mut p = Rational::one();
                for _ in 0..=deg {
                    row.push(&p * basis_n1(n));
                    p *= int(n as i64);
                }
                row
            })
            .collect();
        let rhs: Vec<Rational> = (2..=window_end)
            .map(|n| data[(n - 2) as usize].clone())
            .collect();

        let solution = match solve_linear(&rows, &rhs) {
            Ok(sol) => sol,
            Err(SolveError::Underdetermined { .. }) => {
                return Err(FitError::DegenerateAnsatz { d });
            }
            Err(SolveError::NoSolution) => continue,
        };
        let (a, b) = solution.split_at(deg + 1);

        let verified_on: Vec<u64> = (window_end + 1..=window_end + 3).collect();
        let verified = verified_on.iter().all(|&n| {
            let predicted = eval_poly_coeffs::<Rational>(a, n) * basis_n(n)
                + eval_poly_coeffs::<Rational>(b, n) * basis_n1(n);
            predicted == data[(n - 2) as usize]
        });
        if verified {
            return Ok(AnsatzFit {
                kind: FitKind::FixedD,
                k,
                d: Some(d),
                a: a.to_vec(),
                b: b.to_vec(),
                window: (2, window_end),
                verified_on,
            });
        }
    }
    Err(FitError::AnsatzRejected { k, max_deg })
}

/// Pre-moment polynomial in `d` for fixed `n`; the mirror image of
/// [`fit_fixed_d`], delegated to the moments pipeline.
pub fn fit_fixed_n(n: u64, k: usize) -> Result<Polynomial, FitError> {
    Ok(premoment_poly(n, k)?)
}

/// Fits `m_k(d, n) = A(n) N(n) + B(n) N(n+1)` with `A`, `B` of degree `2k`
/// in `n` and coefficients rational functions in `d`.
pub fn fit_bivariate(k: usize) -> Result<BivariateFit, FitError> {
    let deg = 2 * k;
    let window_end = 4 * k as u64 + 4;
    let verify_end = window_end + 3;

    // m_k(d, n) as polynomials in d, for every n in reach.
    let data: Vec<RationalFunction> = (2..=verify_end)
        .map(|n| premoment_poly(n, k).map(RationalFunction::from_poly))
        .collect::<Result<_, _>>()?;
    let counts: Vec<RationalFunction> = (2..=verify_end + 1)
        .map(|n| RationalFunction::from_poly(count_poly(n)))
        .collect();
    let basis_n = |n: u64| &counts[(n - 2) as usize];
    let basis_n1 = |n: u64| &counts[(n - 1) as usize];

    let rows: Vec<Vec<RationalFunction>> = (2..=window_end)
        .map(|n| {
            let mut row = Vec::with_capacity(2 * (deg + 1));
            let mut p = Rational::one();
            for _ in 0..=deg {
                row.push(basis_n(n).clone() * RationalFunction::constant(p.clone()));
                p *= int(n as i64);
            }
            let mut p = Rational::one();
            for _ in 0..=deg {
                row.push(basis_n1(n).clone() * RationalFunction::constant(p.clone()));
                p *= int(n as i64);
            }
            row
        })
        .collect();
    let rhs: Vec<RationalFunction> = (2..=window_end)
        .map(|n| data[(n - 2) as usize].clone())
        .collect();

    let solution = solve_linear(&rows, &rhs).map_err(|_| FitError::AnsatzRejected {
        k,
        max_deg: deg,
    })?;
    let (a, b) = solution.split_at(deg + 1);

    // Held-out check as identities of rational functions in d.
    let verified_on: Vec<u64> = (window_end + 1..=verify_end).collect();
    for &n in &verified_on {
        let predicted = eval_poly_coeffs::<RationalFunction>(a, n) * basis_n(n).clone()
            + eval_poly_coeffs::<RationalFunction>(b, n) * basis_n1(n).clone();
        if &predicted != &data[(n - 2) as usize] {
            return Err(FitError::AnsatzRejected { k, max_deg: deg });
        }
    }

    Ok(AnsatzFit {
        kind: FitKind::Bivariate,
        k,
        d: None,
        a: a.to_vec(),
        b: b.to_vec(),
        window: (2, window_end),
        verified_on,
    })
}

impl FixedDFit {
    /// The fitted pre-moment value at `n`.
    pub fn premoment(&self, n: u64) -> Rational {
        let d = self.d.expect("fixed-d fit carries its d");
        eval_poly_coeffs::<Rational>(&self.a, n) * big(count(n, d))
            + eval_poly_coeffs::<Rational>(&self.b, n) * big(count(n + 1, d))
    }

    /// The fitted straight moment `m_k / N` at `n`.
    pub fn moment(&self, n: u64) -> Rational {
        let d = self.d.expect("fixed-d fit carries its d");
        self.premoment(n) / big(count(n, d))
    }
}

impl BivariateFit {
    /// The fitted pre-moment as a rational function of `d`, for fixed `n`.
    ///
    /// Reduction cancels removable factors, which is what makes the `d = 2`
    /// evaluation meaningful even though individual coefficients are
    /// singular there.
    pub fn premoment_in_d(&self, n: u64) -> RationalFunction {
        eval_poly_coeffs::<RationalFunction>(&self.a, n)
            * RationalFunction::from_poly(count_poly(n))
            + eval_poly_coeffs::<RationalFunction>(&self.b, n)
                * RationalFunction::from_poly(count_poly(n + 1))
    }

    /// The fitted pre-moment value at a numeric `(n, d)`.
    pub fn premoment(&self, n: u64, d: u64) -> Result<Rational, FitError> {
        self.premoment_in_d(n)
            .eval(&int(d as i64))
            .ok_or(FitError::SingularEvaluation { d })
    }

    /// The fitted straight moment `m_k / N` at a numeric `(n, d)`.
    pub fn moment(&self, n: u64, d: u64) -> Result<Rational, FitError> {
        Ok(self.premoment(n, d)? / big(count(n, d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn counting_identity_fits_trivially() {
        for d in [1u64, 3] {
            let fit = fit_fixed_d(d, 0, None).unwrap();
            assert_eq!(fit.a, vec![Rational::one()]);
            assert_eq!(fit.b, vec![Rational::zero()]);
        }
    }

    #[test]
    fn mean_fit_for_d3_matches_known_coefficients() {
        let fit = fit_fixed_d(3, 1, None).unwrap();
        assert_eq!(
            fit.a,
            vec![rat(406, 507), rat(-479, 507), rat(25, 39)],
        );
        assert_eq!(fit.b, vec![rat(-158, 507), rat(29, 169), rat(-1, 39)]);
        assert_eq!(fit.window, (2, 7));
        assert_eq!(fit.verified_on, vec![8, 9, 10]);
    }

    #[test]
    fn fit_reproduces_window_and_extrapolates() {
        for d in [3u64, 4, 5] {
            let fit = fit_fixed_d(d, 1, None).unwrap();
            for n in 2..=10 {
                assert_eq!(
                    fit.premoment(n),
                    big(size_power_sums(n, d, 1)[1].clone()),
                    "window n={n} d={d}"
                );
            }
            for n in [15u64, 20] {
                assert_eq!(
                    fit.premoment(n),
                    big(size_power_sums(n, d, 1)[1].clone()),
                    "extrapolation n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn degenerate_at_d2_for_all_orders() {
        for k in 0..=2 {
            assert_eq!(
                fit_fixed_d(2, k, None),
                Err(FitError::DegenerateAnsatz { d: 2 }),
                "k={k}"
            );
        }
    }

    #[test]
    fn fixed_n_delegates_to_premoment_polynomials() {
        assert_eq!(fit_fixed_n(3, 0).unwrap(), count_poly(3));
        assert_eq!(
            fit_fixed_n(3, 1).unwrap(),
            Polynomial::new(vec![int(0), rat(-1, 6), rat(1, 2), rat(2, 3)])
        );
        // Degree bound for the single-pillar family: 2k + 1.
        let p = fit_fixed_n(2, 1).unwrap();
        assert!(p.degree().unwrap() <= 3);
    }

    #[test]
    fn bivariate_order_zero_is_counting() {
        let fit = fit_bivariate(0).unwrap();
        assert_eq!(fit.a, vec![RationalFunction::one()]);
        assert_eq!(fit.b, vec![RationalFunction::zero()]);
    }

    #[test]
    fn bivariate_mean_fit_hits_all_small_points() {
        let fit = fit_bivariate(1).unwrap();
        for n in 2..=8u64 {
            for d in [1u64, 3, 4, 5] {
                assert_eq!(
                    fit.premoment(n, d).unwrap(),
                    big(size_power_sums(n, d, 1)[1].clone()),
                    "n={n} d={d}"
                );
            }
            // d = 2 goes through the reduced rational function, where the
            // singular factors have cancelled.
            assert_eq!(
                fit.premoment(n, 2).unwrap(),
                big(size_power_sums(n, 2, 1)[1].clone()),
                "n={n} d=2"
            );
        }
        assert_eq!(fit.moment(3, 1).unwrap(), rat(1, 2));
        assert_eq!(fit.moment(3, 2).unwrap(), rat(7, 4));
        assert_eq!(fit.moment(3, 5).unwrap(), rat(19, 2));
    }
}

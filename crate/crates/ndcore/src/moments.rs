//! Exact moments of the size distribution.
//!
//! Pre-moments are the power sums `m_k = sum_s c_s s^k` of the size
//! generating function (the `(q d/dq)^k` operator evaluated at `q = 1`).
//! Straight moments divide by the count, central moments expand around the
//! mean, and standardized moments divide by the matching power of the
//! standard deviation; odd ones are radicals `r * sqrt(v)`.
//!
//! With `n` fixed the pre-moments are polynomials in `d` of degree
//! `2k + floor(n/2)`; they are recovered exactly by interpolation on an
//! integer grid and re-verified on held-out points. Standardized moments
//! then become rational functions in `d` whose limits are computed from
//! leading coefficients.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::interpolate::interpolate;
use crate::algebra::polynomial::Polynomial;
use crate::algebra::radical::Radical;
use crate::algebra::ratfunc::{Limit, RationalFunction, Sign};
use crate::algebra::rational::{big, int, Rational};
use crate::genfunc::{size_power_sums, SizePolynomial};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MomentsError {
    #[error("distribution is a point mass; standardized moments beyond k = 2 are undefined")]
    DegenerateDistribution,
    #[error("pre-moment of order {k} at n = {n} failed held-out polynomial verification")]
    AnsatzRejected { n: u64, k: usize },
}

/// `m_k = sum_s c_s s^k` for `k = 0..=kmax`.
pub fn premoments(g: &SizePolynomial, kmax: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); kmax + 1];
    for (size, c) in g.coeffs() {
        let s = BigInt::from(size);
        let mut p = BigInt::one();
        for acc in out.iter_mut() {
            *acc += c * &p;
            p *= &s;
        }
    }
    out
}

/// Exact moment set of one distribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Moments {
    pub total: BigInt,
    pub premoments: Vec<BigInt>,
    pub straight: Vec<Rational>,
    pub central: Vec<Rational>,
    pub mean: Rational,
    pub variance: Rational,
    /// `None` when the variance is zero (single-point distribution).
    pub standardized: Option<Vec<Radical>>,
}

impl Moments {
    pub fn kmax(&self) -> usize {
        self.premoments.len() - 1
    }

    /// Standardized moment accessor; degenerate distributions only admit
    /// k <= 2 (with conventional values 1, 0, 1).
    pub fn standardized_moment(&self, k: usize) -> Result<Radical, MomentsError> {
        assert!(k <= self.kmax());
        match &self.standardized {
            Some(values) => Ok(values[k].clone()),
            None => match k {
                0 | 2 => Ok(Radical::from_rational(Rational::one())),
                1 => Ok(Radical::zero()),
                _ => Err(MomentsError::DegenerateDistribution),
            },
        }
    }
}

/// Central moments from straight moments: `M_k^c = sum_j C(k,j) (-mu)^(k-j) M_j`.
fn central_from_straight<F>(straight: &[F], mean: &F) -> Vec<F>
where
    F: Clone
        + num_traits::Zero
        + std::ops::Add<Output = F>
        + std::ops::Mul<Output = F>
        + std::ops::Neg<Output = F>
        + From<Rational>,
{
    let kmax = straight.len() - 1;
    let neg_mean = -mean.clone();
    (0..=kmax)
        .map(|k| {
            let mut acc = F::zero();
            let mut binom = Rational::one();
            // Powers of (-mu) descending from k - j = k down to 0.
            for j in 0..=k {
                let mut term = straight[j].clone() * F::from(binom.clone());
                for _ in 0..k - j {
                    term = term * neg_mean.clone();
                }
                acc = acc + term;
                // C(k, j+1) = C(k, j) * (k - j) / (j + 1)
                binom = binom * int((k - j) as i64) / int(j as i64 + 1);
            }
            acc
        })
        .collect()
}

/// Derives all moment flavors from pre-moments and the total count.
pub fn to_moments(premoments: &[BigInt], total: &BigInt) -> Moments {
    assert!(!premoments.is_empty() && total.is_positive());
    assert_eq!(&premoments[0], total, "m_0 must equal the total count");
    let kmax = premoments.len() - 1;
    let total_rat = big(total.clone());
    let straight: Vec<Rational> = premoments
        .iter()
        .map(|m| big(m.clone()) / &total_rat)
        .collect();
    let mean = straight.get(1).cloned().unwrap_or_else(Rational::zero);
    let central = central_from_straight(&straight, &mean);
    let variance = central.get(2).cloned().unwrap_or_else(Rational::zero);

    let standardized = if variance.is_zero() || kmax < 2 {
        None
    } else {
        let values = (0..=kmax)
            .map(|k| {
                if k % 2 == 0 {
                    let denom = variance.pow((k / 2) as i32);
                    Radical::from_rational(&central[k] / denom)
                } else {
                    // M_k^c / sigma^k = (M_k^c / sigma^(k+1)) * sqrt(sigma^2)
                    let coeff = &central[k] / variance.pow(((k + 1) / 2) as i32);
                    Radical::new(coeff, variance.clone()).expect("variance is nonnegative")
                }
            })
            .collect();
        Some(values)
    };

    Moments {
        total: total.clone(),
        premoments: premoments.to_vec(),
        straight,
        central,
        mean,
        variance,
        standardized,
    }
}

/// Full numeric moment report for one family member.
#[derive(Clone, Debug)]
pub struct MomentReport {
    pub n: u64,
    pub d: u64,
    pub moments: Moments,
}

pub fn moment_report(n: u64, d: u64, kmax: usize) -> MomentReport {
    let pm = size_power_sums(n, d, kmax.max(2));
    let total = pm[0].clone();
    MomentReport {
        n,
        d,
        moments: to_moments(&pm, &total),
    }
}

#[derive(Serialize)]
pub struct StandardizedJson {
    pub k: usize,
    pub coeff: String,
    pub radicand: String,
}

/// JSON form of a moment report.
#[derive(Serialize)]
pub struct MomentReportJson {
    pub n: u64,
    pub d: u64,
    pub mean: String,
    pub variance: String,
    /// Entries for k >= 3; `null` when the distribution is degenerate.
    pub standardized: Option<Vec<StandardizedJson>>,
}

impl MomentReport {
    pub fn to_json(&self) -> MomentReportJson {
        MomentReportJson {
            n: self.n,
            d: self.d,
            mean: self.moments.mean.to_string(),
            variance: self.moments.variance.to_string(),
            standardized: self.moments.standardized.as_ref().map(|values| {
                values
                    .iter()
                    .enumerate()
                    .skip(3)
                    .map(|(k, r)| StandardizedJson {
                        k,
                        coeff: r.coeff().to_string(),
                        radicand: r.radicand().to_string(),
                    })
                    .collect()
            }),
        }
    }
}

/// Pre-moments `m_k(d)` as polynomials in `d` for `k = 0..=kmax`.
///
/// Each is interpolated on `d = 1..=(deg + 2)` where `deg = 2k + floor(n/2)`
/// and verified on the next three integers; a failed verification or an
/// interpolant exceeding the degree bound is rejected.
pub fn premoment_polys(n: u64, kmax: usize) -> Result<Vec<Polynomial>, MomentsError> {
    assert!(n >= 2);
    let deg_bound = |k: usize| 2 * k + (n / 2) as usize;
    let d_top = deg_bound(kmax) + 5;
    let grid: Vec<Vec<BigInt>> = (1..=d_top as u64)
        .map(|d| size_power_sums(n, d, kmax))
        .collect();

    (0..=kmax)
        .map(|k| {
            let deg = deg_bound(k);
            let nodes: Vec<(Rational, Rational)> = (1..=deg + 2)
                .map(|d| (int(d as i64), big(grid[d - 1][k].clone())))
                .collect();
            let poly = interpolate(&nodes).expect("distinct integer nodes");
            if poly.degree().is_some_and(|pd| pd > deg) {
                return Err(MomentsError::AnsatzRejected { n, k });
            }
            for d in deg + 3..=deg + 5 {
                if poly.eval(&int(d as i64)) != big(grid[d - 1][k].clone()) {
                    return Err(MomentsError::AnsatzRejected { n, k });
                }
            }
            Ok(poly)
        })
        .collect()
}

/// Single pre-moment polynomial in `d`.
pub fn premoment_poly(n: u64, k: usize) -> Result<Polynomial, MomentsError> {
    Ok(premoment_polys(n, k)?.pop().expect("nonempty"))
}

/// Moment quantities with `d` symbolic, for fixed `n`.
#[derive(Clone, Debug)]
pub struct SymbolicMoments {
    pub n: u64,
    pub premoment_polys: Vec<Polynomial>,
    pub straight: Vec<RationalFunction>,
    pub central: Vec<RationalFunction>,
    pub mean: RationalFunction,
    pub variance: RationalFunction,
}

/// A standardized-moment limit: a radical value or a signed infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitValue {
    Finite(Radical),
    Infinite(Sign),
}

impl LimitValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            LimitValue::Finite(r) => r.to_f64(),
            LimitValue::Infinite(Sign::Positive) => f64::INFINITY,
            LimitValue::Infinite(Sign::Negative) => f64::NEG_INFINITY,
        }
    }
}

pub fn symbolic_moments(n: u64, kmax: usize) -> Result<SymbolicMoments, MomentsError> {
    let polys = premoment_polys(n, kmax.max(2))?;
    let m0 = RationalFunction::from_poly(polys[0].clone());
    let straight: Vec<RationalFunction> = polys
        .iter()
        .map(|p| &RationalFunction::from_poly(p.clone()) / &m0)
        .collect();
    let mean = straight[1].clone();
    let central = central_from_straight(&straight, &mean);
    let variance = central[2].clone();
    Ok(SymbolicMoments {
        n,
        premoment_polys: polys,
        straight,
        central,
        mean,
        variance,
    })
}

impl SymbolicMoments {
    pub fn kmax(&self) -> usize {
        self.premoment_polys.len() - 1
    }

    /// Limit of the k-th standardized moment as `d` grows without bound.
    ///
    /// Even orders take the limit of `M_k^c / sigma^k` directly. Odd orders
    /// square first, take the limit, and restore the sign of the leading
    /// numerator coefficient of `M_k^c`.
    pub fn standardized_limit(&self, k: usize) -> LimitValue {
        assert!((1..=self.kmax()).contains(&k));
        if k % 2 == 0 {
            let ratio = &self.central[k] / &self.variance.pow(k / 2);
            match ratio.limit_at_infinity() {
                Limit::Finite(v) => LimitValue::Finite(Radical::from_rational(v)),
                Limit::Infinite(sign) => LimitValue::Infinite(sign),
            }
        } else {
            let numerator_sign_negative = self.central[k]
                .num()
                .leading()
                .map(Signed::is_negative)
                .unwrap_or(false);
            let squared = &self.central[k].pow(2) / &self.variance.pow(k);
            match squared.limit_at_infinity() {
                Limit::Finite(v) => LimitValue::Finite(
                    Radical::from_square(&v, numerator_sign_negative)
                        .expect("limit of a square is nonnegative"),
                ),
                Limit::Infinite(_) => LimitValue::Infinite(if numerator_sign_negative {
                    Sign::Negative
                } else {
                    Sign::Positive
                }),
            }
        }
    }
}

/// Limits of standardized moments for `k = 1..=kmax`.
pub fn standardized_limits(n: u64, kmax: usize) -> Result<Vec<LimitValue>, MomentsError> {
    let sym = symbolic_moments(n, kmax)?;
    Ok((1..=kmax).map(|k| sym.standardized_limit(k)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::genfunc::size_gf;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    #[test]
    fn premoments_of_two_point_distribution() {
        let g = SizePolynomial::from_pairs([(0, BigInt::one()), (1, BigInt::one())]);
        assert_eq!(
            premoments(&g, 2),
            vec![BigInt::from(2), BigInt::one(), BigInt::one()]
        );
    }

    #[test]
    fn premoments_of_small_family_member() {
        let g = size_gf(3, 2).unwrap();
        let pm = premoments(&g, 2);
        assert_eq!(pm[1], BigInt::from(7));
        assert_eq!(pm[2], BigInt::from(21));
        assert_eq!(pm[0], g.eval_at_one());
    }

    #[test]
    fn moments_of_smallest_members() {
        let m = moment_report(3, 1, 4).moments;
        assert_eq!(m.mean, rat(1, 2));
        assert_eq!(m.variance, rat(1, 4));
        // Symmetric two-point distribution: zero skew.
        assert!(m.standardized.as_ref().unwrap()[3].is_zero());

        let m2 = moment_report(3, 2, 4).moments;
        assert_eq!(m2.mean, rat(7, 4));
        assert_eq!(m2.variance, rat(35, 16));
    }

    #[test]
    fn moment_identities() {
        for (n, d) in [(3u64, 2u64), (4, 3), (5, 2), (6, 4)] {
            let m = moment_report(n, d, 6).moments;
            assert_eq!(m.straight[0], Rational::one());
            assert!(m.central[1].is_zero());
            let std = m.standardized.as_ref().unwrap();
            assert_eq!(std[2].as_rational(), Some(&Rational::one()));
        }
    }

    #[test]
    fn degenerate_distribution_flags() {
        // n = 2, d = 1: only the empty partition.
        let m = moment_report(2, 1, 5).moments;
        assert!(m.variance.is_zero());
        assert!(m.standardized.is_none());
        assert_eq!(
            m.standardized_moment(3),
            Err(MomentsError::DegenerateDistribution)
        );
        assert_eq!(
            m.standardized_moment(2).unwrap(),
            Radical::from_rational(Rational::one())
        );
    }

    #[test]
    fn premoment_polynomials_match_spec_cases() {
        // m_0(d, 3) = N_d(3) = 2d
        assert_eq!(premoment_poly(3, 0).unwrap(), Polynomial::from_ints(&[0, 2]));
        // m_1(d, 3) = 2d * (d^2/3 + d/4 - 1/12) = 2d^3/3 + d^2/2 - d/6
        assert_eq!(
            premoment_poly(3, 1).unwrap(),
            Polynomial::new(vec![int(0), rat(-1, 6), rat(1, 2), rat(2, 3)])
        );
        // m_0(d, 2) = d
        assert_eq!(premoment_poly(2, 0).unwrap(), Polynomial::from_ints(&[0, 1]));
    }

    #[test]
    fn premoment_polynomials_extrapolate() {
        for n in [2u64, 3, 4, 5] {
            let polys = premoment_polys(n, 3).unwrap();
            for d in 1..=12u64 {
                let direct = size_power_sums(n, d, 3);
                for (k, poly) in polys.iter().enumerate() {
                    assert_eq!(
                        poly.eval(&int(d as i64)),
                        big(direct[k].clone()),
                        "n={n} d={d} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn degree_bound_is_met() {
        for n in [2u64, 3, 4] {
            let polys = premoment_polys(n, 4).unwrap();
            for (k, poly) in polys.iter().enumerate() {
                let bound = 2 * k + (n / 2) as usize;
                assert!(poly.degree().unwrap_or(0) <= bound, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn symbolic_mean_and_variance_for_n3() {
        let sym = symbolic_moments(3, 2).unwrap();
        assert_eq!(
            sym.mean.as_polynomial().unwrap(),
            &Polynomial::new(vec![rat(-1, 12), rat(1, 4), rat(1, 3)])
        );
        assert_eq!(
            sym.variance.as_polynomial().unwrap(),
            &Polynomial::new(vec![rat(31, 720), rat(1, 24), rat(-1, 144), rat(1, 12), rat(4, 45)])
        );
    }

    #[test]
    fn standardized_limits_for_n3() {
        let limits = standardized_limits(3, 7).unwrap();
        let expect = |k: usize| match &limits[k - 1] {
            LimitValue::Finite(r) => r.clone(),
            LimitValue::Infinite(_) => panic!("unexpected infinite limit"),
        };
        assert!(expect(1).is_zero());
        assert_eq!(expect(2).as_rational(), Some(&Rational::one()));
        assert_eq!(expect(3).coeff(), &rat(2, 7));
        assert_eq!(expect(3).radicand(), &BigInt::from(5));
        assert_eq!(expect(4).as_rational(), Some(&rat(15, 7)));
        assert_eq!(expect(5).coeff(), &rat(100, 77));
        assert_eq!(expect(5).radicand(), &BigInt::from(5));
        assert_eq!(expect(6).as_rational(), Some(&rat(6625, 1001)));
        assert_eq!(expect(7).coeff(), &rat(750, 143));
        assert_eq!(expect(7).radicand(), &BigInt::from(5));
    }

    #[test]
    fn limits_for_n3_match_uniform_square_law() {
        // Independent oracle: as d grows, size / d^2 approaches U^2 with U
        // uniform on [0, 1], so the standardized limits equal the
        // standardized moments of U^2: E[(U^2)^j] = 1/(2j+1).
        let kmax = 7;
        let straight: Vec<Rational> = (0..=kmax).map(|j| rat(1, 2 * j as i64 + 1)).collect();
        let mean = straight[1].clone();
        let central = central_from_straight(&straight, &mean);
        let variance = central[2].clone();
        let sym = symbolic_moments(3, kmax).unwrap();
        for k in 3..=kmax {
            let expected_sq = &central[k] * &central[k] / variance.pow(k as i32);
            let got = match sym.standardized_limit(k) {
                LimitValue::Finite(r) => r,
                LimitValue::Infinite(_) => panic!("finite expected"),
            };
            assert_eq!(got.square(), expected_sq, "k={k}");
            assert_eq!(got.coeff().is_negative(), central[k].is_negative());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn consistency_identities_hold(pairs in proptest::collection::btree_map(0u64..40, 1u64..9, 1..8)) {
            let g = SizePolynomial::from_pairs(
                pairs.iter().map(|(&s, &c)| (s, BigInt::from(c))),
            );
            let pm = premoments(&g, 6);
            let m = to_moments(&pm, &pm[0].clone());
            prop_assert_eq!(&m.straight[0], &Rational::one());
            prop_assert!(m.central[1].is_zero());
            if let Some(std) = &m.standardized {
                prop_assert_eq!(std[2].as_rational(), Some(&Rational::one()));
            }
        }

        #[test]
        fn shift_leaves_central_moments_alone(pairs in proptest::collection::btree_map(0u64..30, 1u64..9, 2..8),
                                              shift in 1u64..20) {
            let g = SizePolynomial::from_pairs(
                pairs.iter().map(|(&s, &c)| (s, BigInt::from(c))),
            );
            let shifted = SizePolynomial::from_pairs(
                pairs.iter().map(|(&s, &c)| (s + shift, BigInt::from(c))),
            );
            let pm = premoments(&g, 5);
            let pm_shifted = premoments(&shifted, 5);
            let m = to_moments(&pm, &pm[0].clone());
            let ms = to_moments(&pm_shifted, &pm_shifted[0].clone());
            prop_assert_eq!(&ms.mean - &m.mean, int(shift as i64));
            prop_assert_eq!(&ms.central, &m.central);
            prop_assert_eq!(&ms.standardized, &m.standardized);
        }
    }
}

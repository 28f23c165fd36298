//! Counting and generating functions for the core family.
//!
//! `count(n, d)` is the number of cores in the family, satisfying the
//! generalized Fibonacci recurrence `N(1) = 1`, `N(2) = d`,
//! `N(n) = N(n-1) + d*N(n-2)`; `count_poly` gives the same sequence with `d`
//! symbolic.
//!
//! The bivariate enumerator tracks order ideals of the pillar poset by
//! `(weight, cardinality)` as exponents of `(q, t)`. It is built by a
//! recursion over pillar columns, right to left: a column contributes either
//! nothing or a string of `i + 1` beads of weight `k + (k+n) + ... + (k+i*n)`,
//! and decorating a column forces the next one to stay empty. Substituting
//! `t^r -> q^{-r(r-1)/2}` then yields the size generating function.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::polynomial::Polynomial;
use crate::algebra::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenfuncError {
    #[error("t-substitution produced negative size {size} for term (w={weight}, r={cardinality})")]
    InternalInvariantViolation {
        weight: u64,
        cardinality: u64,
        size: i64,
    },
}

/// `N_d(n)` for numeric `d`.
pub fn count(n: u64, d: u64) -> BigInt {
    assert!(n >= 1 && d >= 1);
    let d = BigInt::from(d);
    let mut prev = BigInt::one(); // N(1)
    let mut cur = d.clone(); // N(2)
    match n {
        1 => prev,
        _ => {
            for _ in 3..=n {
                let next = &cur + &d * &prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// `N_d(n)` with `d` symbolic, as a polynomial in `d`.
pub fn count_poly(n: u64) -> Polynomial {
    assert!(n >= 1);
    let d = Polynomial::var();
    let mut prev = Polynomial::one();
    let mut cur = d.clone();
    match n {
        1 => prev,
        _ => {
            for _ in 3..=n {
                let next = &cur + &(&d * &prev);
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Polynomial in `q` and `t` with big-integer coefficients, keyed by
/// `(q exponent, t exponent)`. No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u64, u64), BigInt>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        BivariatePolynomial::default()
    }

    pub fn one() -> Self {
        let mut p = BivariatePolynomial::default();
        p.add_term(0, 0, BigInt::one());
        p
    }

    pub fn add_term(&mut self, q_exp: u64, t_exp: u64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((q_exp, t_exp)).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(q_exp, t_exp));
        }
    }

    /// Terms in lexicographic `(q exponent, t exponent)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, u64, &BigInt)> {
        self.terms.iter().map(|(&(w, r), c)| (w, r, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Value at `q = 1, t = 1`: the total count.
    pub fn eval_at_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Adds `q^dw * t^dr * other` into `self`.
    fn add_shifted(&mut self, other: &BivariatePolynomial, dw: u64, dr: u64) {
        for (&(w, r), c) in &other.terms {
            self.add_term(w + dw, r + dr, c.clone());
        }
    }

    /// Replaces `t^r` by `q^{-r(r-1)/2}`, turning ideal weights into
    /// partition sizes. A negative resulting exponent would mean the
    /// enumerator itself is wrong.
    pub fn substitute_t(&self) -> Result<SizePolynomial, GenfuncError> {
        let mut coeffs: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (&(w, r), c) in &self.terms {
            let shift = r * r.saturating_sub(1) / 2;
            if w < shift {
                return Err(GenfuncError::InternalInvariantViolation {
                    weight: w,
                    cardinality: r,
                    size: w as i64 - shift as i64,
                });
            }
            let size = w - shift;
            let entry = coeffs.entry(size).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(&size);
            }
        }
        Ok(SizePolynomial { coeffs })
    }
}

/// Size generating function: coefficient of `q^s` counts cores of size `s`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SizePolynomial {
    coeffs: BTreeMap<u64, BigInt>,
}

/// JSON form of a size generating function.
#[derive(Serialize)]
pub struct SizePolynomialJson {
    pub n: u64,
    pub d: u64,
    /// `[size, count]` pairs sorted by size; counts as decimal strings.
    pub coeffs: Vec<(u64, String)>,
}

impl SizePolynomial {
    pub fn coeffs(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.coeffs.iter().map(|(&s, c)| (s, c))
    }

    pub fn coeff(&self, size: u64) -> BigInt {
        self.coeffs.get(&size).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn max_size(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Value at `q = 1`: the total count.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, BigInt)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (s, c) in pairs {
            if !c.is_zero() {
                *coeffs.entry(s).or_insert_with(BigInt::zero) += c;
            }
        }
        SizePolynomial { coeffs }
    }

    pub fn to_json(&self, n: u64, d: u64) -> SizePolynomialJson {
        SizePolynomialJson {
            n,
            d,
            coeffs: self.coeffs().map(|(s, c)| (s, c.to_string())).collect(),
        }
    }
}

impl std::fmt::Display for SizePolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (size, c) in &self.coeffs {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            let unit = c.is_one();
            if *size == 0 || !unit {
                write!(f, "{}", c)?;
            }
            if *size > 0 {
                if !unit {
                    write!(f, "*")?;
                }
                write!(f, "q")?;
                if *size > 1 {
                    write!(f, "^{}", size)?;
                }
            }
        }
        Ok(())
    }
}

/// Weight of the bead string `{k, k+n, ..., k+i*n}`.
fn string_weight(k: u64, n: u64, i: u64) -> u64 {
    let w = (i + 1) * k + n * i * (i + 1) / 2;
    debug_assert_eq!(w, (0..=i).map(|j| k + j * n).sum::<u64>());
    w
}

/// The bivariate ideal enumerator for the pillar poset of `(n, d*n - 1)`,
/// tracking weight in `q` and cardinality in `t`.
pub fn weight_enumerator(n: u64, d: u64) -> BivariatePolynomial {
    assert!(n >= 2 && d >= 1);
    // Rightmost column: the empty ideal plus strings of at most d - 1 beads.
    let mut current = BivariatePolynomial::one();
    for i in 0..d.saturating_sub(1) {
        current.add_term(string_weight(n - 1, n, i), i + 1, BigInt::one());
    }
    if n == 2 {
        return current;
    }
    let mut next = BivariatePolynomial::one(); // ideal set of the empty tail
    for k in (1..=n - 2).rev() {
        // Column k empty: keep `current`; decorated with i + 1 beads: column
        // k + 1 must stay empty, so splice in the enumerator two columns on.
        let mut combined = current.clone();
        for i in 0..d {
            combined.add_shifted(&next, string_weight(k, n, i), i + 1);
        }
        next = current;
        current = combined;
    }
    current
}

/// `G_{d,n}`: size generating function of the core family.
pub fn size_gf(n: u64, d: u64) -> Result<SizePolynomial, GenfuncError> {
    weight_enumerator(n, d).substitute_t()
}

/// Power sums `sum_s c_s * s^k` of the size distribution for `k = 0..=kmax`,
/// computed without materializing the full generating function.
///
/// Runs the same column recursion as [`weight_enumerator`], but per
/// cardinality slice it carries only the first `kmax + 1` power sums of the
/// weights. Multiplying by a monomial `q^e t^m` becomes a binomial shift of
/// the power sums; the final t-substitution is another binomial shift by
/// `-r(r-1)/2` on each slice.
pub fn size_power_sums(n: u64, d: u64, kmax: usize) -> Vec<BigInt> {
    assert!(n >= 2 && d >= 1);
    // slices[r][j] = sum of w^j over ideals with cardinality r.
    type Slices = Vec<Vec<BigInt>>;

    let mut binom = vec![vec![BigInt::zero(); kmax + 1]; kmax + 1];
    for i in 0..=kmax {
        binom[i][0] = BigInt::one();
        for j in 1..=i {
            let upper = if j < i {
                binom[i - 1][j].clone()
            } else {
                BigInt::zero()
            };
            binom[i][j] = &binom[i - 1][j - 1] + upper;
        }
    }

    let zero_slice = || vec![BigInt::zero(); kmax + 1];
    let unit = || {
        // The empty ideal: weight 0, so power sums (1, 0, 0, ...).
        let mut s = zero_slice();
        s[0] = BigInt::one();
        vec![s]
    };

    // Power sums of w + e from power sums of w.
    let shift = |slice: &[BigInt], e: u64| -> Vec<BigInt> {
        let e = BigInt::from(e);
        let mut e_pows = Vec::with_capacity(kmax + 1);
        let mut p = BigInt::one();
        for _ in 0..=kmax {
            e_pows.push(p.clone());
            p *= &e;
        }
        (0..=kmax)
            .map(|j| {
                (0..=j)
                    .map(|i| &binom[j][i] * &slice[i] * &e_pows[j - i])
                    .sum()
            })
            .collect()
    };

    // dst += q^e t^m * src
    let add_shifted = |dst: &mut Slices, src: &Slices, e: u64, m: usize| {
        if dst.len() < src.len() + m {
            dst.resize(src.len() + m, zero_slice());
        }
        for (r, slice) in src.iter().enumerate() {
            let shifted = shift(slice, e);
            for j in 0..=kmax {
                dst[r + m][j] += &shifted[j];
            }
        }
    };

    let mut current: Slices = unit();
    for i in 0..d.saturating_sub(1) {
        let e = BigInt::from(string_weight(n - 1, n, i));
        let m = (i + 1) as usize;
        if current.len() <= m {
            current.resize(m + 1, zero_slice());
        }
        let mut e_pow = BigInt::one();
        for j in 0..=kmax {
            current[m][j] += &e_pow;
            e_pow *= &e;
        }
    }
    if n >= 3 {
        let mut next: Slices = unit();
        for k in (1..=n - 2).rev() {
            let mut combined = current.clone();
            for i in 0..d {
                add_shifted(&mut combined, &next, string_weight(k, n, i), (i + 1) as usize);
            }
            next = current;
            current = combined;
        }
    }

    // t-substitution: slice r shifts weights by -r(r-1)/2, expanded with
    // signed binomials.
    let mut out = vec![BigInt::zero(); kmax + 1];
    for (r, slice) in current.iter().enumerate() {
        let r = r as u64;
        let t_shift = BigInt::from(r * r.saturating_sub(1) / 2);
        let mut t_pows = Vec::with_capacity(kmax + 1);
        let mut p = BigInt::one();
        for _ in 0..=kmax {
            t_pows.push(p.clone());
            p *= &t_shift;
        }
        for k in 0..=kmax {
            for i in 0..=k {
                let term = &binom[k][i] * &slice[i] * &t_pows[k - i];
                if (k - i) % 2 == 0 {
                    out[k] += term;
                } else {
                    out[k] -= term;
                }
            }
        }
    }
    out
}

/// `N_d(n)` evaluated from the symbolic polynomial; ties the numeric and
/// symbolic routes together.
pub fn count_poly_at(n: u64, d: u64) -> Rational {
    count_poly(n).eval(&crate::algebra::rational::int(d as i64))
}

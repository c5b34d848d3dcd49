//! Probabilistic reading of a coefficient-nonnegative polynomial: the pmf
//! `P(X=k) = coeff_k / P(1)`, exact factorial moments
//! `E(X)_r = P^{(r)}(1)/P(1)`, and a derivative-vector recurrence that
//! propagates `(P_n(1), ..., P_n^{(rmax)}(1))` across `n` without ever
//! materializing `P_n`.
//!
//! The vector recurrence is the Leibniz expansion of the defining
//! recurrence at `x = 1`; it is triangular precisely because `g_n(1) = 0`,
//! which is why specs without that property are rejected. The exact mode
//! is the default; float mode exists for `n` in the tens of thousands,
//! where the raw derivative values overflow any fixed-width type, and
//! therefore propagates the normalized vector `P_n^{(r)}(1)/P_n(1)`
//! instead.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::{rational_to_f64, rat_u, Polynomial, Rational};
use crate::recurrence::{RecurrenceError, RecurrenceForm, RecurrenceSpec};

#[derive(Debug, Error)]
pub enum MomentError {
    #[error("coefficient of x^{k} is negative ({value}); not a probability generating function")]
    NegativeCoefficient { k: usize, value: Rational },
    #[error("polynomial vanishes at 1; cannot normalize")]
    ZeroNormalizer,
    #[error("rmax must be at least 2 to determine mean and variance, got {0}")]
    RmaxTooSmall(usize),
    #[error("derivative-vector recurrence requires g_n(1) = 0 identically")]
    TriangularMapUnavailable,
    #[error("normalizer ratio P_{n}(1)/P_{}(1) is undefined or zero", n - 1)]
    NormalizerVanishes { n: u64 },
    #[error("empty histogram; cannot normalize")]
    EmptyHistogram,
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
}

/// Exact probability mass function on `{0, 1, ..., deg}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pmf {
    probabilities: Vec<Rational>,
}

impl Pmf {
    pub fn probabilities(&self) -> &[Rational] {
        &self.probabilities
    }

    /// Normalizes a nonnegative polynomial into its induced pmf.
    pub fn from_polynomial(p: &Polynomial) -> Result<Pmf, MomentError> {
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.is_negative() {
                return Err(MomentError::NegativeCoefficient {
                    k,
                    value: c.clone(),
                });
            }
        }
        let total = p.evaluate(&Rational::one());
        if !total.is_positive() {
            return Err(MomentError::ZeroNormalizer);
        }
        Ok(Pmf {
            probabilities: p.coeffs().iter().map(|c| c / &total).collect(),
        })
    }

    /// Normalizes an exact histogram (`counts[k]` occurrences of value `k`).
    pub fn from_counts(counts: &[u64]) -> Result<Pmf, MomentError> {
        let total: u64 = counts.iter().sum();
        if counts.is_empty() || total == 0 {
            return Err(MomentError::EmptyHistogram);
        }
        let total = rat_u(total);
        Ok(Pmf {
            probabilities: counts.iter().map(|&c| rat_u(c) / &total).collect(),
        })
    }
}

/// Exact pmf of the distribution a coefficient-nonnegative polynomial
/// generates.
pub fn pmf(p: &Polynomial) -> Result<Pmf, MomentError> {
    Pmf::from_polynomial(p)
}

/// Exact moment summary of one polynomial in a sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentReport {
    /// Sequence index; zero for a standalone report, assigned by table
    /// builders otherwise.
    pub n: u64,
    /// `P_n(1)`, always positive.
    pub normalizer: Rational,
    /// `factorial_moments[r-1] = E(X)_r` for `r = 1..=rmax`.
    pub factorial_moments: Vec<Rational>,
    pub mean: Rational,
    /// `E(X)_2 - mean^2 + mean`.
    pub variance: Rational,
    /// Standardized central moments `mu_j / sigma^j` for orders
    /// `j = 3..=rmax`; absent when `rmax < 3` or the variance vanishes.
    pub standardized_moments: Option<Vec<f64>>,
}

impl MomentReport {
    /// Builds a report from the raw derivative vector
    /// `v[r] = P^{(r)}(1)`, `r = 0..=rmax`.
    fn from_vector(n: u64, v: &[Rational]) -> Result<MomentReport, MomentError> {
        let rmax = v.len() - 1;
        if rmax < 2 {
            return Err(MomentError::RmaxTooSmall(rmax));
        }
        let normalizer = v[0].clone();
        if !normalizer.is_positive() {
            return Err(MomentError::ZeroNormalizer);
        }
        let factorial_moments: Vec<Rational> = v[1..].iter().map(|d| d / &normalizer).collect();
        let mean = factorial_moments[0].clone();
        let variance = &factorial_moments[1] + &mean - &mean * &mean;
        let standardized_moments = standardized_from_factorial(&factorial_moments);
        Ok(MomentReport {
            n,
            normalizer,
            factorial_moments,
            mean,
            variance,
            standardized_moments,
        })
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct File<'a> {
            n: u64,
            normalizer: String,
            factorial_moments: Vec<String>,
            mean: String,
            variance: String,
            standardized_moments: Option<&'a [f64]>,
        }
        serde_json::to_string_pretty(&File {
            n: self.n,
            normalizer: self.normalizer.to_string(),
            factorial_moments: self
                .factorial_moments
                .iter()
                .map(Rational::to_string)
                .collect(),
            mean: self.mean.to_string(),
            variance: self.variance.to_string(),
            standardized_moments: self.standardized_moments.as_deref(),
        })
        .expect("report serialization cannot fail")
    }

    pub const CSV_HEADER: &'static str = "n,mean,variance,m3,m4";

    /// One CSV row. Rationals render exactly by default; `floats` opts into
    /// (lossy) decimal rendering.
    pub fn to_csv_row(&self, floats: bool) -> String {
        let rational = |r: &Rational| {
            if floats {
                rational_to_f64(r).to_string()
            } else {
                r.to_string()
            }
        };
        let standardized = |order: usize| {
            self.standardized_moments
                .as_ref()
                .and_then(|m| m.get(order - 3))
                .map(f64::to_string)
                .unwrap_or_default()
        };
        format!(
            "{},{},{},{},{}",
            self.n,
            rational(&self.mean),
            rational(&self.variance),
            standardized(3),
            standardized(4),
        )
    }
}

/// Float-mode analogue of [`MomentReport`], carrying normalized factorial
/// moments only. Produced for `n` far beyond exact-arithmetic comfort.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FloatMoments {
    pub n: u64,
    /// `factorial_moments[r-1] ~= E(X)_r`.
    pub factorial_moments: Vec<f64>,
    pub mean: f64,
    pub variance: f64,
}

impl FloatMoments {
    pub fn to_csv_row(&self) -> String {
        format!("{},{},{},,", self.n, self.mean, self.variance)
    }
}

/// Exact factorial moments, mean, variance, and standardized moments of
/// the distribution generated by `p`. Requires `rmax >= 2`; standardized
/// moments appear from `rmax >= 3` on. The report's `n` is left zero.
pub fn moment_report(p: &Polynomial, rmax: usize) -> Result<MomentReport, MomentError> {
    if rmax < 2 {
        return Err(MomentError::RmaxTooSmall(rmax));
    }
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_negative() {
            return Err(MomentError::NegativeCoefficient {
                k,
                value: c.clone(),
            });
        }
    }
    MomentReport::from_vector(0, &p.derivatives_at_one(rmax))
}

/// Pascal triangle rows 0..=rmax as exact rationals.
fn binomial_rows(rmax: usize) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(rmax + 1);
    rows.push(vec![Rational::one()]);
    for r in 1..=rmax {
        let prev = &rows[r - 1];
        let mut row = Vec::with_capacity(r + 1);
        row.push(Rational::one());
        for k in 1..r {
            row.push(&prev[k - 1] + &prev[k]);
        }
        row.push(Rational::one());
        rows.push(row);
    }
    rows
}

/// Derivatives of the instantiated coefficient at `x = 1`, orders
/// `0..=rmax`.
fn coefficient_derivatives(
    c: &crate::recurrence::SymbolicCoefficient,
    n: u64,
    rmax: usize,
) -> Vec<Rational> {
    c.instantiate(n).derivatives_at_one(rmax)
}

/// One step of the triangular Leibniz map on the raw derivative vector.
/// `choose` must hold Pascal rows up to `rmax`.
fn leibniz_step(
    spec: &RecurrenceSpec,
    v: &[Rational],
    n: u64,
    choose: &[Vec<Rational>],
) -> Result<Vec<Rational>, MomentError> {
    let rmax = v.len() - 1;
    let f1 = coefficient_derivatives(&spec.f, n, rmax);
    let g1 = coefficient_derivatives(&spec.g, n, rmax);
    let mut next = vec![Rational::zero(); rmax + 1];
    match spec.form {
        RecurrenceForm::Direct => {
            for r in 0..=rmax {
                let mut acc = Rational::zero();
                for k in 0..=r {
                    if !f1[k].is_zero() {
                        acc += &choose[r][k] * &f1[k] * &v[r - k];
                    }
                }
                for k in 1..=r {
                    if !g1[k].is_zero() {
                        acc += &choose[r][k] * &g1[k] * &v[r - k + 1];
                    }
                }
                next[r] = acc;
            }
        }
        RecurrenceForm::Derivative => {
            let norm = spec
                .normalization
                .as_ref()
                .ok_or(RecurrenceError::MissingNormalization)?;
            next[0] = norm.value(n);
            for r in 1..=rmax {
                let mut acc = Rational::zero();
                for k in 0..r {
                    if !f1[k].is_zero() {
                        acc += &choose[r - 1][k] * &f1[k] * &v[r - 1 - k];
                    }
                }
                for k in 1..r {
                    if !g1[k].is_zero() {
                        acc += &choose[r - 1][k] * &g1[k] * &v[r - k];
                    }
                }
                next[r] = acc;
            }
        }
    }
    Ok(next)
}

/// Exact moment table for `n = 0..=nmax` via the derivative-vector
/// recurrence; never materializes the polynomials. Requires
/// `g_n(1) = 0` identically and `rmax >= 2`.
///
/// Output row `n` equals `moment_report` applied to the generated `P_n`
/// (up to the report's sequence index, which this table fills in).
pub fn derivative_vector_table(
    spec: &RecurrenceSpec,
    nmax: u64,
    rmax: usize,
) -> Result<Vec<MomentReport>, MomentError> {
    if rmax < 2 {
        return Err(MomentError::RmaxTooSmall(rmax));
    }
    if !spec.g_vanishes_at_one() {
        return Err(MomentError::TriangularMapUnavailable);
    }
    let choose = binomial_rows(rmax);
    let mut v = spec.p0.derivatives_at_one(rmax);
    let mut out = Vec::with_capacity(nmax as usize + 1);
    out.push(MomentReport::from_vector(0, &v)?);
    for n in 1..=nmax {
        v = leibniz_step(spec, &v, n, &choose)?;
        out.push(MomentReport::from_vector(n, &v)?);
    }
    Ok(out)
}

/// Float-mode moment table for large `nmax`: propagates the normalized
/// vector `P_n^{(r)}(1)/P_n(1)` in double precision, so entry `r` of row
/// `n` approximates the factorial moment `E(X_n)_r` directly.
pub fn derivative_vector_table_f64(
    spec: &RecurrenceSpec,
    nmax: u64,
    rmax: usize,
) -> Result<Vec<FloatMoments>, MomentError> {
    if rmax < 2 {
        return Err(MomentError::RmaxTooSmall(rmax));
    }
    if !spec.g_vanishes_at_one() {
        return Err(MomentError::TriangularMapUnavailable);
    }
    let choose: Vec<Vec<f64>> = binomial_rows(rmax)
        .iter()
        .map(|row| row.iter().map(rational_to_f64).collect())
        .collect();
    let v0 = spec.p0.derivatives_at_one(rmax);
    if !v0[0].is_positive() {
        return Err(MomentError::ZeroNormalizer);
    }
    let mut w: Vec<f64> = v0.iter().map(|d| rational_to_f64(&(d / &v0[0]))).collect();
    let mut out = Vec::with_capacity(nmax as usize + 1);
    let row = |n: u64, w: &[f64]| FloatMoments {
        n,
        factorial_moments: w[1..].to_vec(),
        mean: w[1],
        variance: w[2] + w[1] - w[1] * w[1],
    };
    out.push(row(0, &w));
    let f_at_one = spec.f.value_at_one();
    for n in 1..=nmax {
        // P_{n-1}(1)/P_n(1): the multiplier that keeps the vector normalized.
        let ratio = match spec.form {
            RecurrenceForm::Direct => {
                let f1 = f_at_one.evaluate(&rat_u(n));
                if f1.is_zero() {
                    return Err(MomentError::NormalizerVanishes { n });
                }
                rational_to_f64(&f1.recip())
            }
            RecurrenceForm::Derivative => {
                let norm = spec
                    .normalization
                    .as_ref()
                    .ok_or(RecurrenceError::MissingNormalization)?;
                rational_to_f64(&norm.ratio_prev_over_current(n)?)
            }
        };
        let f1: Vec<f64> = coefficient_derivatives(&spec.f, n, rmax)
            .iter()
            .map(rational_to_f64)
            .collect();
        let g1: Vec<f64> = coefficient_derivatives(&spec.g, n, rmax)
            .iter()
            .map(rational_to_f64)
            .collect();
        let mut next = vec![0.0; rmax + 1];
        match spec.form {
            RecurrenceForm::Direct => {
                for r in 0..=rmax {
                    let mut acc = 0.0;
                    for k in 0..=r {
                        acc += choose[r][k] * f1[k] * w[r - k];
                    }
                    for k in 1..=r {
                        acc += choose[r][k] * g1[k] * w[r - k + 1];
                    }
                    next[r] = ratio * acc;
                }
            }
            RecurrenceForm::Derivative => {
                next[0] = 1.0;
                for r in 1..=rmax {
                    let mut acc = 0.0;
                    for k in 0..r {
                        acc += choose[r - 1][k] * f1[k] * w[r - 1 - k];
                    }
                    for k in 1..r {
                        acc += choose[r - 1][k] * g1[k] * w[r - k];
                    }
                    next[r] = ratio * acc;
                }
            }
        }
        w = next;
        out.push(row(n, &w));
    }
    Ok(out)
}

/// Scalar variance iteration for the diagonal-cell family:
/// `var_n = ((n-2)/n) var_{n-1} + 7/16` from `var_0 = 0`, returning
/// `[var_1, ..., var_nmax]`. From `n = 2` on the iterates equal the
/// closed form `7(n+1)/48`; the `n = 1` iterate is `7/16`, an artifact of
/// seeding the scalar recurrence at the deterministic `n = 0` state
/// (the true size-1 variance is `1/4`).
pub fn abn_variance_recurrence(nmax: u64) -> Vec<Rational> {
    let step = crate::poly::rat(7, 16);
    let mut var = Rational::zero();
    let mut out = Vec::with_capacity(nmax as usize);
    for n in 1..=nmax {
        var = var * crate::poly::rat(n as i64 - 2, n as i64) + &step;
        out.push(var.clone());
    }
    out
}

/// Stirling numbers of the second kind `S(j, r)` for `j, r = 0..=kmax`.
fn stirling2_table(kmax: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); kmax + 1]; kmax + 1];
    s[0][0] = BigInt::one();
    for j in 1..=kmax {
        for r in 1..=j {
            s[j][r] = BigInt::from(r) * &s[j - 1][r] + &s[j - 1][r - 1];
        }
    }
    s
}

/// Raw moments `E[X^j]`, `j = 0..=kmax`, from factorial moments
/// `factorial[r-1] = E(X)_r` (needs `kmax <= factorial.len()`).
pub(crate) fn raw_from_factorial(factorial: &[Rational], kmax: usize) -> Vec<Rational> {
    let s = stirling2_table(kmax);
    (0..=kmax)
        .map(|j| {
            let mut acc = if j == 0 {
                Rational::one()
            } else {
                Rational::zero()
            };
            for r in 1..=j {
                if !s[j][r].is_zero() {
                    acc += Rational::from_integer(s[j][r].clone()) * &factorial[r - 1];
                }
            }
            acc
        })
        .collect()
}

/// Float counterpart of [`raw_from_factorial`].
pub(crate) fn raw_from_factorial_f64(factorial: &[f64], kmax: usize) -> Vec<f64> {
    let s = stirling2_table(kmax);
    (0..=kmax)
        .map(|j| {
            let mut acc = if j == 0 { 1.0 } else { 0.0 };
            for r in 1..=j {
                acc += s[j][r].to_f64().unwrap() * factorial[r - 1];
            }
            acc
        })
        .collect()
}

/// Central moments `mu_j`, `j = 0..=kmax`, from raw moments.
fn central_from_raw(raw: &[Rational]) -> Vec<Rational> {
    let kmax = raw.len() - 1;
    let mean = raw.get(1).cloned().unwrap_or_else(Rational::zero);
    let choose = binomial_rows(kmax);
    (0..=kmax)
        .map(|j| {
            let mut acc = Rational::zero();
            let mut neg_mean_power = Rational::one();
            // sum over i descending so the (-mean)^{j-i} power builds up
            for i in (0..=j).rev() {
                acc += &choose[j][i] * &raw[i] * &neg_mean_power;
                neg_mean_power *= -&mean;
            }
            acc
        })
        .collect()
}

/// Standardized central moments `mu_j / sigma^j` for `j = 3..=rmax`, or
/// `None` when `rmax < 3` or the distribution is degenerate. Everything
/// is exact until the final division by the (generally irrational) power
/// of sigma.
fn standardized_from_factorial(factorial: &[Rational]) -> Option<Vec<f64>> {
    let rmax = factorial.len();
    if rmax < 3 {
        return None;
    }
    let central = central_from_raw(&raw_from_factorial(factorial, rmax));
    let variance = &central[2];
    if !variance.is_positive() {
        return None;
    }
    let sigma = rational_to_f64(variance).sqrt();
    Some(
        (3..=rmax)
            .map(|j| {
                // mu_j / var^{floor(j/2)} stays rational; odd j divides by
                // one leftover sigma in floating point.
                let mut scaled = central[j].clone();
                for _ in 0..j / 2 {
                    scaled /= variance;
                }
                let value = rational_to_f64(&scaled);
                if j % 2 == 0 {
                    value
                } else {
                    value / sigma
                }
            })
            .collect(),
    )
}

//! Distributional-limit diagnostics assembled from the other modules:
//! a structural Poisson-limit criterion with exact convergence tables,
//! a CLT pipeline built on real-rootedness certificates, a pointwise
//! comparison of an exact pmf against its matching Gaussian density, and
//! scaled-moment tables for the square-root regime.
//!
//! None of these report a binary "is Poisson" or "is Gaussian" verdict.
//! Finite `n` cannot certify a limit, so every report carries the exact
//! or float tables it computed plus a single max-deviation scalar, and
//! tolerance judgments are left to the caller.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::moments::{
    derivative_vector_table, derivative_vector_table_f64, moment_report, pmf,
    raw_from_factorial_f64, MomentError, MomentReport,
};
use crate::poly::{rat, rat_i, rat_u, rational_to_f64, Rational};
use crate::recurrence::{builtin, Family, Normalization, RecurrenceError, RecurrenceForm, RecurrenceSpec};
use crate::roots::{bernoulli_decomposition, isolate, lyapunov_ratio, RootCertificate, RootError};

/// Third standardized moment of the standard normal distribution.
pub const GAUSSIAN_M3: f64 = 0.0;
/// Fourth standardized moment of the standard normal distribution.
pub const GAUSSIAN_M4: f64 = 3.0;

/// Enclosure width used when a diagnostic isolates roots internally.
fn default_eps() -> Rational {
    rat(1, 65536)
}

#[derive(Debug, Error)]
pub enum LimitError {
    #[error("the Poisson criterion requires the derivative recurrence form")]
    NotDerivativeForm,
    #[error("the Poisson criterion requires f constant in x")]
    FNotConstant,
    #[error("the Poisson criterion requires g to be a rational multiple of (x - 1)")]
    GNotLinearVanishing,
    #[error("f vanishes at n = {0}, so the hypothesis ratio g/f is undefined")]
    FVanishes(u64),
    #[error("family {0} has no closed-form mean and variance to compare against")]
    UnsupportedFamily(String),
    #[error("the distribution at the requested n has zero variance")]
    DegenerateVariance,
    #[error("kmax must be at least 1")]
    KmaxTooSmall,
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
    #[error(transparent)]
    Moments(#[from] MomentError),
    #[error(transparent)]
    Roots(#[from] RootError),
}

/// Exact evidence tables for the Poisson-limit criterion.
///
/// The criterion applies to derivative-form recurrences with `f` constant
/// in `x` and `g = gamma * (x - 1)`: when `gamma_n / f_n -> 0` and
/// `f_n * P_{n-1}(1) / P_n(1) -> c > 0`, the factorial moments converge
/// to `c^r` and the distribution tends to Pois(c).
#[derive(Clone, Debug)]
pub struct PoissonDiagnosis {
    /// Structural multiplier on the limiting variable. 1 for a plain
    /// diagnosis; 2 when the symmetric family is diagnosed through its
    /// even-polynomial reduction, since its statistic is twice the
    /// reduced one.
    pub scale: u64,
    /// `f_n * P_{n-1}(1) / P_n(1)` for `n = 1..=nmax`.
    pub c_estimates: Vec<Rational>,
    /// `gamma_n / f_n` for `n = 1..=nmax`.
    pub ratio_g_over_f: Vec<Rational>,
    /// Exact factorial-moment rows for `n = 0..=nmax`.
    pub factorial_moments: Vec<MomentReport>,
    /// The estimate `c_estimates[nmax]` as a float.
    pub c_limit: f64,
    /// `max_r |E(X_nmax)_r - c^r|` over the tabulated orders.
    pub max_deviation_at_nmax: f64,
    /// Human-readable name of the limit, e.g. `Pois(1)` or `2×Pois(1/2)`.
    pub limit_label: String,
}

impl PoissonDiagnosis {
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Row {
            n: u64,
            moments: Vec<String>,
        }
        #[derive(Serialize)]
        struct File {
            scale: u64,
            c_estimates: Vec<String>,
            ratio_g_over_f: Vec<String>,
            factorial_moments: Vec<Row>,
            c_limit: f64,
            max_deviation_at_nmax: f64,
            limit_label: String,
        }
        let strings = |v: &[Rational]| v.iter().map(Rational::to_string).collect();
        serde_json::to_string_pretty(&File {
            scale: self.scale,
            c_estimates: strings(&self.c_estimates),
            ratio_g_over_f: strings(&self.ratio_g_over_f),
            factorial_moments: self
                .factorial_moments
                .iter()
                .map(|r| Row {
                    n: r.n,
                    moments: r.factorial_moments.iter().map(Rational::to_string).collect(),
                })
                .collect(),
            c_limit: self.c_limit,
            max_deviation_at_nmax: self.max_deviation_at_nmax,
            limit_label: self.limit_label.clone(),
        })
        .expect("diagnosis serialization cannot fail")
    }
}

/// Runs the Poisson criterion on a spec of the required shape, producing
/// exact tables of both hypothesis quantities and of the factorial
/// moments `E(X_n)_r`. Specs outside the shape are refused with the
/// violated condition named; nothing is extrapolated.
pub fn diagnose_poisson(
    spec: &RecurrenceSpec,
    nmax: u64,
    rmax: usize,
) -> Result<PoissonDiagnosis, LimitError> {
    if spec.form != RecurrenceForm::Derivative {
        return Err(LimitError::NotDerivativeForm);
    }
    if spec.f.entries().len() > 1 {
        return Err(LimitError::FNotConstant);
    }
    let g_entries = spec.g.entries();
    match g_entries.len() {
        0 => {}
        2 if (g_entries[0].clone() + g_entries[1].clone()).is_zero() => {}
        _ => return Err(LimitError::GNotLinearVanishing),
    }

    let polys = spec.generate(nmax)?;
    let one = Rational::one();
    let values: Vec<Rational> = polys.iter().map(|p| p.evaluate(&one)).collect();
    let mut c_estimates = Vec::with_capacity(nmax as usize);
    let mut ratio_g_over_f = Vec::with_capacity(nmax as usize);
    for n in 1..=nmax {
        let at_n = rat_u(n);
        let f_n = spec
            .f
            .entries()
            .first()
            .map(|e| e.evaluate(&at_n))
            .unwrap_or_else(Rational::zero);
        if f_n.is_zero() {
            return Err(LimitError::FVanishes(n));
        }
        let gamma_n = g_entries
            .get(1)
            .map(|e| e.evaluate(&at_n))
            .unwrap_or_else(Rational::zero);
        if values[n as usize].is_zero() {
            return Err(LimitError::Moments(MomentError::ZeroNormalizer));
        }
        c_estimates.push(&f_n * &values[n as usize - 1] / &values[n as usize]);
        ratio_g_over_f.push(gamma_n / f_n);
    }

    let factorial_moments = derivative_vector_table(spec, nmax, rmax)?;
    let c_exact = c_estimates
        .last()
        .expect("nmax >= 1 gives an estimate")
        .clone();
    let c_limit = rational_to_f64(&c_exact);
    let last = factorial_moments.last().expect("table is nonempty");
    let max_deviation_at_nmax = last
        .factorial_moments
        .iter()
        .enumerate()
        .map(|(i, m)| (rational_to_f64(m) - c_limit.powi(i as i32 + 1)).abs())
        .fold(0.0, f64::max)
        ;
    Ok(PoissonDiagnosis {
        scale: 1,
        c_estimates,
        ratio_g_over_f,
        factorial_moments,
        c_limit,
        max_deviation_at_nmax,
        limit_label: format!("Pois({c_exact})"),
    })
}

/// Family-level entry point for the Poisson criterion. The symmetric
/// family does not fit the required shape directly; it is diagnosed
/// through its reduction `Q_n(x) = P_n(x^2)`, whose statistic is half of
/// the symmetric one, and the result is labeled with the doubling.
pub fn diagnose_poisson_family(
    family: &Family,
    nmax: u64,
    rmax: usize,
) -> Result<PoissonDiagnosis, LimitError> {
    match family {
        Family::LzSymmetric => {
            let mut half = builtin(&Family::Lz)?;
            half.normalization = Some(Normalization::ScaledFactorial { scale: rat_i(2) });
            let mut diagnosis = diagnose_poisson(&half, nmax, rmax)?;
            diagnosis.scale = 2;
            let c = diagnosis.c_estimates.last().expect("nonempty").clone();
            diagnosis.limit_label = format!("2×Pois({c})");
            Ok(diagnosis)
        }
        other => diagnose_poisson(&builtin(other)?, nmax, rmax),
    }
}

/// Evidence bundle for the central limit theorem at one `n`: the
/// real-rootedness certificate, the exact variance, the Lyapunov ratio
/// bracket from the Bernoulli decomposition, and the standardized third
/// and fourth moments next to their Gaussian targets.
#[derive(Clone, Debug)]
pub struct CltReport {
    pub n: u64,
    pub certificate: RootCertificate,
    pub variance: Rational,
    /// Lower and upper bounds on `sum u_i(1-2u_i) / var^(3/2)` with
    /// `u_i = p_i(1-p_i)`; small values support normality.
    pub lyapunov: (f64, f64),
    pub standardized_m3: f64,
    pub standardized_m4: f64,
    pub gaussian_m3: f64,
    pub gaussian_m4: f64,
}

impl CltReport {
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct File<'a> {
            n: u64,
            certificate: &'a RootCertificate,
            variance: String,
            lyapunov: [f64; 2],
            standardized_m3: f64,
            standardized_m4: f64,
            gaussian_m3: f64,
            gaussian_m4: f64,
        }
        serde_json::to_string_pretty(&File {
            n: self.n,
            certificate: &self.certificate,
            variance: self.variance.to_string(),
            lyapunov: [self.lyapunov.0, self.lyapunov.1],
            standardized_m3: self.standardized_m3,
            standardized_m4: self.standardized_m4,
            gaussian_m3: self.gaussian_m3,
            gaussian_m4: self.gaussian_m4,
        })
        .expect("report serialization cannot fail")
    }
}

/// Assembles the CLT evidence for `P_n`: certifies real-rootedness (the
/// error carries the certificate when that fails), decomposes into
/// Bernoulli factors, and computes exact and standardized moments.
pub fn clt_report(spec: &RecurrenceSpec, n: u64) -> Result<CltReport, LimitError> {
    let polys = spec.generate(n)?;
    let p = &polys[n as usize];
    let eps = default_eps();
    let certificate = isolate(p, &eps)?;
    let report = moment_report(p, 4)?;
    let standardized = report
        .standardized_moments
        .ok_or(LimitError::DegenerateVariance)?;
    let decomposition = bernoulli_decomposition(p, &eps)?;
    let lyapunov = lyapunov_ratio(&decomposition)?;
    Ok(CltReport {
        n,
        certificate,
        variance: report.variance,
        lyapunov,
        standardized_m3: standardized[0],
        standardized_m4: standardized[1],
        gaussian_m3: GAUSSIAN_M3,
        gaussian_m4: GAUSSIAN_M4,
    })
}

/// Pointwise distance between an exact pmf and the Gaussian density with
/// the same mean and variance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LocalLimitReport {
    pub n: u64,
    /// `max_k |pmf[k] - phi(k)]` over the full support.
    pub sup_abs_error: f64,
}

impl LocalLimitReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Compares the exact pmf of the diagonal-cell family against the normal
/// density with mean `3(n+1)/4` and variance `7(n+1)/48`, i.e.
/// `phi(k) = 2*sqrt(6)/sqrt(7*pi*(n+1)) * exp(-24(k - 3(n+1)/4)^2 / (7(n+1)))`,
/// taking the sup over the whole support. Only that family has the
/// closed-form mean and variance this comparison is defined by.
pub fn local_limit_report(family: &Family, n: u64) -> Result<LocalLimitReport, LimitError> {
    if *family != Family::Abn {
        return Err(LimitError::UnsupportedFamily(format!("{family:?}")));
    }
    let spec = builtin(family)?;
    let polys = spec.generate(n)?;
    let probabilities = pmf(&polys[n as usize])?;
    let nf = (n + 1) as f64;
    let mean = 3.0 * nf / 4.0;
    let amplitude = 2.0 * 6.0_f64.sqrt() / (7.0 * std::f64::consts::PI * nf).sqrt();
    let decay = 24.0 / (7.0 * nf);
    let sup_abs_error = probabilities
        .probabilities()
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let diff = k as f64 - mean;
            let phi = amplitude * (-decay * diff * diff).exp();
            (rational_to_f64(p) - phi).abs()
        })
        .fold(0.0, f64::max);
    Ok(LocalLimitReport { n, sup_abs_error })
}

/// One grid row of the scaled-moment table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScaledMomentRow {
    pub n: u64,
    /// `var(X_n) / n`, to be compared against `4 - pi`.
    pub variance_over_n: f64,
    /// `ratios[k-1] = E[X_n^k] / ((2*sqrt(n))^k * Gamma(k/2 + 1))`.
    pub ratios: Vec<f64>,
    /// `E(X_n)_3 / (6*sqrt(pi)*n^(3/2))`.
    pub third_factorial_ratio: f64,
}

/// Scaled raw moments of `X_n / (2*sqrt(n))` against the moments of the
/// density `2x*exp(-x^2)` on `x > 0`, whose k-th moment is
/// `Gamma(k/2 + 1)`. All ratios tend to 1 when the scaled variable
/// converges to that law.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScaledMomentReport {
    pub scaling: String,
    pub kmax: usize,
    pub rows: Vec<ScaledMomentRow>,
}

impl ScaledMomentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Column order: n, variance_over_n, ratio_1..ratio_kmax,
    /// third_factorial_ratio.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,variance_over_n");
        for k in 1..=self.kmax {
            s.push_str(&format!(",ratio_{k}"));
        }
        s.push_str(",third_factorial_ratio\n");
        for row in &self.rows {
            s.push_str(&format!("{},{}", row.n, row.variance_over_n));
            for r in &row.ratios {
                s.push_str(&format!(",{r}"));
            }
            s.push_str(&format!(",{}\n", row.third_factorial_ratio));
        }
        s
    }
}

/// `Gamma(k/2 + 1)` for `k = 1..=kmax` (index `k-1`), built up from
/// `Gamma(1/2) = sqrt(pi)` and `Gamma(1) = 1` by the functional equation.
fn gamma_half_grid(kmax: usize) -> Vec<f64> {
    let mut odd = std::f64::consts::PI.sqrt();
    let mut even = 1.0;
    let mut out = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        if k % 2 == 1 {
            odd *= k as f64 / 2.0;
            out.push(odd);
        } else {
            even *= k as f64 / 2.0;
            out.push(even);
        }
    }
    out
}

/// Tabulates scaled raw-moment ratios on a logarithmic grid
/// `n = 1, 10, 100, ..., nmax` (with `nmax` itself always included),
/// in float mode so the grid can reach large `n` cheaply.
pub fn scaled_moment_limit(
    spec: &RecurrenceSpec,
    nmax: u64,
    kmax: usize,
) -> Result<ScaledMomentReport, LimitError> {
    if kmax == 0 {
        return Err(LimitError::KmaxTooSmall);
    }
    let rmax = kmax.max(3);
    let table = derivative_vector_table_f64(spec, nmax, rmax)?;
    let mut grid = Vec::new();
    let mut m = 1u64;
    while m <= nmax {
        grid.push(m);
        match m.checked_mul(10) {
            Some(next) => m = next,
            None => break,
        }
    }
    if grid.last() != Some(&nmax) {
        grid.push(nmax);
    }
    let gammas = gamma_half_grid(kmax);
    let six_sqrt_pi = 6.0 * std::f64::consts::PI.sqrt();
    let rows = grid
        .into_iter()
        .map(|n| {
            let moments = &table[n as usize];
            let raw = raw_from_factorial_f64(&moments.factorial_moments, kmax);
            let nf = n as f64;
            let scale = 2.0 * nf.sqrt();
            let ratios = (1..=kmax)
                .map(|k| raw[k] / (scale.powi(k as i32) * gammas[k - 1]))
                .collect();
            ScaledMomentRow {
                n,
                variance_over_n: moments.variance / nf,
                ratios,
                third_factorial_ratio: moments.factorial_moments[2]
                    / (six_sqrt_pi * nf.powf(1.5)),
            }
        })
        .collect();
    Ok(ScaledMomentReport {
        scaling: "X_n / (2*sqrt(n))".to_string(),
        kmax,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::recurrence::SymbolicCoefficient;

    #[test]
    fn gamma_grid_matches_known_values() {
        let g = gamma_half_grid(4);
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((g[0] - sqrt_pi / 2.0).abs() < 1e-15);
        assert!((g[1] - 1.0).abs() < 1e-15);
        assert!((g[2] - 3.0 * sqrt_pi / 4.0).abs() < 1e-15);
        assert!((g[3] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn corner_family_c_estimates_are_exactly_one() {
        let spec = builtin(&Family::Lz).unwrap();
        let d = diagnose_poisson(&spec, 50, 5).unwrap();
        assert!(d.c_estimates.iter().all(Rational::is_one));
        assert_eq!(d.c_limit, 1.0);
        assert_eq!(d.scale, 1);
        assert_eq!(d.limit_label, "Pois(1)");
        for (i, ratio) in d.ratio_g_over_f.iter().enumerate() {
            assert_eq!(*ratio, rat(-2, i as i64 + 1));
        }
    }

    #[test]
    fn corner_family_factorial_moments_match_the_product_formula() {
        let spec = builtin(&Family::Lz).unwrap();
        let d = diagnose_poisson(&spec, 50, 5).unwrap();
        let at_50 = &d.factorial_moments[50];
        assert_eq!(at_50.factorial_moments[1], rat(48, 50));
        assert_eq!(at_50.factorial_moments[2], rat(46, 50) * rat(47, 49));
        // the max deviation at nmax=50 is dominated by r=5
        let e5 = rat(42, 50) * rat(43, 49) * rat(44, 48) * rat(45, 47);
        let want = 1.0 - rational_to_f64(&e5);
        assert!((d.max_deviation_at_nmax - want).abs() < 1e-12);
    }

    #[test]
    fn criterion_refuses_specs_outside_its_shape() {
        let direct = builtin(&Family::Abn).unwrap();
        assert!(matches!(
            diagnose_poisson(&direct, 5, 3),
            Err(LimitError::NotDerivativeForm)
        ));

        let mut f_in_x = builtin(&Family::Lz).unwrap();
        f_in_x.f = SymbolicCoefficient::new(vec![Polynomial::zero(), Polynomial::one()]);
        assert!(matches!(
            diagnose_poisson(&f_in_x, 5, 3),
            Err(LimitError::FNotConstant)
        ));

        let mut g_const = builtin(&Family::Lz).unwrap();
        g_const.g = SymbolicCoefficient::from_const_ints(&[1]);
        assert!(matches!(
            diagnose_poisson(&g_const, 5, 3),
            Err(LimitError::GNotLinearVanishing)
        ));

        let mut g_skew = builtin(&Family::Lz).unwrap();
        g_skew.g = SymbolicCoefficient::from_const_ints(&[2, -3]);
        assert!(matches!(
            diagnose_poisson(&g_skew, 5, 3),
            Err(LimitError::GNotLinearVanishing)
        ));
    }

    #[test]
    fn symmetric_family_diagnoses_through_the_reduction() {
        let d = diagnose_poisson_family(&Family::LzSymmetric, 20, 4).unwrap();
        assert_eq!(d.scale, 2);
        assert_eq!(d.limit_label, "2×Pois(1/2)");
        assert!(d.c_estimates.iter().all(|c| *c == rat(1, 2)));
        assert_eq!(d.c_limit, 0.5);
    }

    #[test]
    fn diagonal_family_clt_report_small_case() {
        let spec = builtin(&Family::Abn).unwrap();
        let r = clt_report(&spec, 2).unwrap();
        assert_eq!(r.variance, rat(7, 16));
        assert!(r.certificate.real_rooted);
        assert_eq!(r.certificate.degree, 3);
        // pmf [0, 1/8, 1/2, 3/8]: mu3 = -3/32, sigma^3 = 7*sqrt(7)/64
        let want_m3 = (-3.0 / 32.0) / (7.0 * 7.0_f64.sqrt() / 64.0);
        assert!((r.standardized_m3 - want_m3).abs() < 1e-12);
        assert_eq!(r.gaussian_m3, 0.0);
        assert_eq!(r.gaussian_m4, 3.0);
        assert!(r.lyapunov.0 <= r.lyapunov.1);
        assert!(r.lyapunov.0 > 0.0);
    }

    #[test]
    fn diagonal_family_variance_closed_form_at_twenty_four() {
        let spec = builtin(&Family::Abn).unwrap();
        let r = clt_report(&spec, 24).unwrap();
        assert_eq!(r.variance, rat(7 * 25, 48));
    }

    #[test]
    fn descent_family_clt_report() {
        let spec = builtin(&Family::Eulerian).unwrap();
        let r = clt_report(&spec, 10).unwrap();
        assert!(r.certificate.real_rooted);
        assert!(r.variance > rat_i(0));
        // the variance grows linearly, roughly (n+1)/12
        assert!(r.variance < rat_i(2));
        let r25 = clt_report(&spec, 25).unwrap();
        assert!(r25.variance > rat_i(2));
    }

    #[test]
    fn local_limit_smallest_case_pins_the_sup() {
        let r = local_limit_report(&Family::Abn, 1).unwrap();
        // pmf [0, 1/2, 1/2] vs the density with mean 3/2, variance 7/24;
        // the sup is attained at k = 1 and k = 2
        assert!((r.sup_abs_error - 0.01878).abs() < 1e-4);
    }

    #[test]
    fn local_limit_error_shrinks_and_other_families_are_refused() {
        let small = local_limit_report(&Family::Abn, 8).unwrap();
        let large = local_limit_report(&Family::Abn, 32).unwrap();
        assert!(large.sup_abs_error < small.sup_abs_error);
        assert!(matches!(
            local_limit_report(&Family::Lz, 5),
            Err(LimitError::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn crossing_family_scaled_moments_on_a_small_grid() {
        let spec = builtin(&Family::Ah).unwrap();
        let report = scaled_moment_limit(&spec, 100, 4).unwrap();
        assert_eq!(report.kmax, 4);
        let ns: Vec<u64> = report.rows.iter().map(|r| r.n).collect();
        assert_eq!(ns, vec![1, 10, 100]);
        // X_1 is the constant 2, so var = 0 and E[X] = 2 exactly
        let first = &report.rows[0];
        assert_eq!(first.variance_over_n, 0.0);
        let want = 2.0 / std::f64::consts::PI.sqrt();
        assert!((first.ratios[0] - want).abs() < 1e-12);
        // by n = 100 the mean ratio is within one percent of 1; the
        // variance and third-moment ratios converge like 1/sqrt(n) and
        // are still a fifth away, but strictly closer than at n = 10
        let mid = &report.rows[1];
        let last = &report.rows[2];
        assert!((last.ratios[0] - 1.0).abs() < 0.01);
        let var_gap = |row: &ScaledMomentRow| (row.variance_over_n - (4.0 - std::f64::consts::PI)).abs();
        assert!(var_gap(last) < 0.2);
        assert!(var_gap(last) < var_gap(mid));
        assert!((last.third_factorial_ratio - 1.0).abs() < 0.25);
        assert!(
            (last.third_factorial_ratio - 1.0).abs() < (mid.third_factorial_ratio - 1.0).abs()
        );
    }

    #[test]
    fn scaled_moments_validate_kmax_and_grid_endpoints() {
        let spec = builtin(&Family::Ah).unwrap();
        assert!(matches!(
            scaled_moment_limit(&spec, 10, 0),
            Err(LimitError::KmaxTooSmall)
        ));
        let report = scaled_moment_limit(&spec, 37, 2).unwrap();
        let ns: Vec<u64> = report.rows.iter().map(|r| r.n).collect();
        assert_eq!(ns, vec![1, 10, 37]);
        let csv = report.to_csv();
        assert!(csv.starts_with("n,variance_over_n,ratio_1,ratio_2,third_factorial_ratio\n"));
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn reports_serialize_to_json() {
        let d = diagnose_poisson_family(&Family::Lz, 6, 3).unwrap();
        let v: serde_json::Value = serde_json::from_str(&d.to_json()).unwrap();
        assert_eq!(v["c_estimates"][0], "1");
        assert_eq!(v["limit_label"], "Pois(1)");
        assert_eq!(v["factorial_moments"][6]["n"], 6);

        let spec = builtin(&Family::Abn).unwrap();
        let r = clt_report(&spec, 3).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["gaussian_m4"], 3.0);
        assert_eq!(v["certificate"]["real_rooted"], true);
        assert_eq!(v["variance"], "7/12");

        let l = local_limit_report(&Family::Abn, 2).unwrap();
        let v: serde_json::Value = serde_json::from_str(&l.to_json()).unwrap();
        assert_eq!(v["n"], 2);
    }
}

//! Real-rootedness certificates, rational root enclosures, and the
//! induced decomposition of a coefficient-nonnegative real-rooted
//! polynomial into independent Bernoulli variables.
//!
//! A polynomial with nonnegative coefficients and only real roots
//! factors as `c * prod_k (x + pi_k)` with `pi_k >= 0`, so the variable
//! it generates is a sum of independent indicators with success
//! probabilities `1/(1+pi_k)`. Everything here is interval-exact: roots
//! are enclosed in rational intervals by bisection on Sturm counts, and
//! the probability brackets inherit those enclosures, which keeps the
//! downstream central-limit diagnostics checkable by containment rather
//! than by float tolerance.

mod sturm;

pub use sturm::{count_real_roots, SturmChain};

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::{rat, rational_to_f64, Polynomial, Rational};
use sturm::{cauchy_bound, exact_div, squarefree_factors};

#[derive(Debug, Error)]
pub enum RootError {
    #[error("the zero polynomial has no root certificate")]
    ZeroPolynomial,
    #[error("enclosure width must be positive, got {0}")]
    InvalidEps(Rational),
    #[error("polynomial is not real-rooted; isolation refused")]
    NotRealRooted(Box<RootCertificate>),
    #[error("coefficient of x^{k} is negative ({value}); Bernoulli factorization needs nonnegative coefficients")]
    NegativeCoefficient { k: usize, value: Rational },
    #[error("decomposition has zero total variance; no limit ratio exists")]
    DegenerateDecomposition,
}

/// One isolated root: `lo <= root <= hi`, repeated `multiplicity` times
/// as a root of the original polynomial. Exact rational roots carry
/// `lo == hi`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootInterval {
    #[serde(serialize_with = "ser_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: Rational,
    pub multiplicity: u32,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl RootInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// Outcome of real-rootedness certification, optionally with isolating
/// intervals (filled by [`isolate`], left empty by [`certify`]).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootCertificate {
    pub degree: usize,
    pub real_rooted: bool,
    pub roots: Vec<RootInterval>,
    #[serde(serialize_with = "ser_rational")]
    pub width_bound: Rational,
    /// Whether every root lies in the expected interval; present only
    /// when one was supplied.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub within_expected: Option<bool>,
}

impl RootCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization cannot fail")
    }
}

/// Distinct real roots of each squarefree factor, with multiplicities,
/// counted over the whole line.
fn real_root_mass(factors: &[(Polynomial, u32)]) -> usize {
    factors
        .iter()
        .map(|(q, m)| {
            if q.degree() == Some(0) {
                return 0;
            }
            let bound = cauchy_bound(q);
            let lo = -&bound;
            SturmChain::new(q).count_in(&lo, &bound) * *m as usize
        })
        .sum()
}

/// Distinct real roots of squarefree `q` in the closed interval
/// `[lo, hi]`.
fn count_closed(q: &Polynomial, lo: &Rational, hi: &Rational) -> usize {
    let open = SturmChain::new(q).count_in(lo, hi);
    let at_lo = usize::from(q.evaluate(lo).is_zero());
    open + at_lo
}

/// Certifies whether `p` has only real roots (counted with multiplicity
/// via squarefree factorization, compared against the degree). When
/// `expect` is given, additionally reports whether every real root lies
/// in that closed interval. No enclosures are computed; see [`isolate`].
pub fn certify(
    p: &Polynomial,
    expect: Option<(&Rational, &Rational)>,
) -> Result<RootCertificate, RootError> {
    let degree = p.degree().ok_or(RootError::ZeroPolynomial)?;
    let factors = squarefree_factors(p);
    let real_mass = real_root_mass(&factors);
    debug_assert!(real_mass <= degree);
    let within_expected = expect.map(|(lo, hi)| {
        factors.iter().all(|(q, _)| {
            q.degree() == Some(0) || {
                let bound = cauchy_bound(q);
                let blo = -&bound;
                count_closed(q, lo, hi) == SturmChain::new(q).count_in(&blo, &bound)
            }
        })
    });
    Ok(RootCertificate {
        degree,
        real_rooted: real_mass == degree,
        roots: Vec::new(),
        width_bound: Rational::zero(),
        within_expected,
    })
}

/// Division of `q` by `(x - t)`, exact when `t` is a root.
fn deflate_root(q: &Polynomial, t: &Rational) -> Polynomial {
    let linear = Polynomial::from_coeffs(vec![-t.clone(), Rational::one()]);
    exact_div(q, &linear)
}

/// Landmark points used both for probing exact roots and for splitting
/// enclosures, so that no reported interval ever straddles them. Zero and
/// minus one matter structurally: the builtin families live in `[-1, 0]`.
const LANDMARKS: [i64; 3] = [-1, 0, 1];

/// Bisection state: the open-closed segment `(lo, hi]` holding `count`
/// distinct roots of the squarefree polynomial under the chain.
struct Segment {
    lo: Rational,
    hi: Rational,
    count: usize,
}

/// Result of isolating one squarefree factor: roots found exactly,
/// bisection enclosures, and the chain of the probe-deflated polynomial
/// (kept so enclosures can be refined later without recomputation).
struct FactorIsolation {
    exact: Vec<Rational>,
    enclosed: Vec<(Rational, Rational)>,
    chain: Option<SturmChain>,
}

/// Isolates every distinct real root of squarefree `q` to width `<= eps`.
/// Exact rational hits (landmark probes, linear leftovers, unlucky
/// bisection midpoints) are reported separately as points.
fn isolate_factor(q: &Polynomial, eps: &Rational) -> FactorIsolation {
    let mut q = q.clone();
    let mut exact = Vec::new();
    let mut enclosed = Vec::new();
    for t in LANDMARKS {
        let t = rat(t, 1);
        if q.degree() == Some(0) {
            break;
        }
        if q.evaluate(&t).is_zero() {
            exact.push(t.clone());
            q = deflate_root(&q, &t);
        }
    }
    if q.degree() == Some(1) {
        exact.push(-(q.coeff(0) / q.coeff(1)));
        return FactorIsolation {
            exact,
            enclosed,
            chain: None,
        };
    }
    if q.degree().unwrap_or(0) == 0 {
        return FactorIsolation {
            exact,
            enclosed,
            chain: None,
        };
    }

    let chain = SturmChain::new(&q);
    let bound = cauchy_bound(&q);
    // pre-split at the landmarks inside (-B, B) so no enclosure straddles them
    let mut cuts = vec![-&bound];
    for t in LANDMARKS {
        let t = rat(t, 1);
        if -&bound < t && t < bound {
            cuts.push(t);
        }
    }
    cuts.push(bound.clone());
    let mut stack: Vec<Segment> = Vec::new();
    for pair in cuts.windows(2) {
        let count = chain.count_in(&pair[0], &pair[1]);
        if count > 0 {
            stack.push(Segment {
                lo: pair[0].clone(),
                hi: pair[1].clone(),
                count,
            });
        }
    }

    while let Some(seg) = stack.pop() {
        if seg.count == 1 && seg.hi.clone() - &seg.lo <= *eps {
            enclosed.push((seg.lo, seg.hi));
            continue;
        }
        let mid = (&seg.lo + &seg.hi) / rat(2, 1);
        if q.evaluate(&mid).is_zero() {
            exact.push(mid.clone());
            // exclude the root by a nudge; shrink it until no other root
            // hides in the excluded gap
            let mut delta = eps / rat(4, 1);
            loop {
                let left_hi = &mid - &delta;
                let left = if left_hi > seg.lo {
                    chain.count_in(&seg.lo, &left_hi)
                } else {
                    0
                };
                let right = chain.count_in(&mid, &seg.hi);
                if left + right == seg.count - 1 {
                    if left > 0 {
                        stack.push(Segment {
                            lo: seg.lo.clone(),
                            hi: left_hi,
                            count: left,
                        });
                    }
                    if right > 0 {
                        stack.push(Segment {
                            lo: mid,
                            hi: seg.hi,
                            count: right,
                        });
                    }
                    break;
                }
                delta /= rat(2, 1);
            }
        } else {
            let left = chain.count_in(&seg.lo, &mid);
            let right = seg.count - left;
            if left > 0 {
                stack.push(Segment {
                    lo: seg.lo,
                    hi: mid.clone(),
                    count: left,
                });
            }
            if right > 0 {
                stack.push(Segment {
                    lo: mid,
                    hi: seg.hi,
                    count: right,
                });
            }
        }
    }
    FactorIsolation {
        exact,
        enclosed,
        chain: Some(chain),
    }
}

fn sort_enclosures(roots: &mut [RootInterval]) {
    roots.sort_by(|a, b| (&a.lo, &a.hi).cmp(&(&b.lo, &b.hi)));
}

/// True if two enclosures share interior points, which would leave a
/// root count ambiguous between them.
fn overlapping(roots: &[RootInterval]) -> bool {
    roots.windows(2).any(|w| w[0].hi > w[1].lo)
}

/// Certifies real-rootedness and isolates every root into rational
/// enclosures of width at most `eps`. Multiple roots appear once, with
/// their multiplicity. Errors if the polynomial is not real-rooted.
pub fn isolate(p: &Polynomial, eps: &Rational) -> Result<RootCertificate, RootError> {
    let degree = p.degree().ok_or(RootError::ZeroPolynomial)?;
    if !eps.is_positive() {
        return Err(RootError::InvalidEps(eps.clone()));
    }
    let factors = squarefree_factors(p);
    if real_root_mass(&factors) != degree {
        let certificate = certify(p, None)?;
        return Err(RootError::NotRealRooted(Box::new(certificate)));
    }
    let mut eps = eps.clone();
    let mut roots;
    loop {
        let isolations: Vec<FactorIsolation> =
            factors.iter().map(|(q, _)| isolate_factor(q, &eps)).collect();
        // every exactly-known root, across all factors
        let known: Vec<Rational> = isolations
            .iter()
            .flat_map(|iso| iso.exact.iter().cloned())
            .collect();
        roots = Vec::new();
        for (iso, (_, multiplicity)) in isolations.iter().zip(&factors) {
            for point in &iso.exact {
                roots.push(RootInterval {
                    lo: point.clone(),
                    hi: point.clone(),
                    multiplicity: *multiplicity,
                });
            }
            for (lo, hi) in &iso.enclosed {
                // an endpoint sitting exactly on another factor's root
                // would put two roots in one closed interval; bisect it
                // off (the enclosed root is distinct, so this terminates)
                let chain = iso.chain.as_ref().expect("enclosures imply a chain");
                let mut lo = lo.clone();
                let mut hi = hi.clone();
                while known.contains(&lo) || known.contains(&hi) {
                    let mid = (&lo + &hi) / rat(2, 1);
                    if chain.count_in(&lo, &mid) == 1 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                roots.push(RootInterval {
                    lo,
                    hi,
                    multiplicity: *multiplicity,
                });
            }
        }
        sort_enclosures(&mut roots);
        // enclosures from different squarefree factors can overlap even
        // though their roots are distinct; tighten until they separate
        if !overlapping(&roots) {
            break;
        }
        eps /= rat(4, 1);
    }
    let width_bound = roots
        .iter()
        .map(RootInterval::width)
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(RootCertificate {
        degree,
        real_rooted: true,
        roots,
        width_bound,
        within_expected: None,
    })
}

/// One factor of the Bernoulli product: the success probability bracketed
/// by exact rationals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbabilityBracket {
    #[serde(serialize_with = "ser_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: Rational,
}

impl ProbabilityBracket {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Exact envelope of `p(1-p)` over the bracket; the parabola peaks at
    /// one half, so the pieces are handled monotonically.
    fn variance_interval(&self) -> (Rational, Rational) {
        let u = |p: &Rational| p * &(Rational::one() - p);
        let half = rat(1, 2);
        if self.hi <= half {
            (u(&self.lo), u(&self.hi))
        } else if self.lo >= half {
            (u(&self.hi), u(&self.lo))
        } else {
            (u(&self.lo).min(u(&self.hi)), rat(1, 4))
        }
    }
}

/// The factorization of a real-rooted nonnegative polynomial into
/// independent Bernoulli success probabilities, one bracket per root
/// (multiplicity expanded).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BernoulliDecomposition {
    pub success_probs: Vec<ProbabilityBracket>,
    #[serde(serialize_with = "ser_rational")]
    pub width_bound: Rational,
}

impl BernoulliDecomposition {
    /// Interval guaranteed to contain the exact mean (the sum of the
    /// success probabilities).
    pub fn mean_interval(&self) -> (Rational, Rational) {
        let lo = self.success_probs.iter().map(|b| b.lo.clone()).sum();
        let hi = self.success_probs.iter().map(|b| b.hi.clone()).sum();
        (lo, hi)
    }

    /// Interval guaranteed to contain the exact variance
    /// (`sum p_k(1-p_k)`).
    pub fn variance_interval(&self) -> (Rational, Rational) {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for bracket in &self.success_probs {
            let (a, b) = bracket.variance_interval();
            lo += a;
            hi += b;
        }
        (lo, hi)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("decomposition serialization cannot fail")
    }
}

/// Decomposes the variable generated by `p` into independent Bernoulli
/// factors: a root enclosure `[a, b]` (with `b <= 0`) brackets the
/// success probability inside `[1/(1-a), 1/(1-b)]`.
pub fn bernoulli_decomposition(
    p: &Polynomial,
    eps: &Rational,
) -> Result<BernoulliDecomposition, RootError> {
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_negative() {
            return Err(RootError::NegativeCoefficient {
                k,
                value: c.clone(),
            });
        }
    }
    let certificate = isolate(p, eps)?;
    let mut success_probs = Vec::with_capacity(certificate.degree);
    for root in &certificate.roots {
        // nonnegative coefficients put every root at or below zero; the
        // clamp only tightens enclosures that overshoot
        let hi_root = root.hi.clone().min(Rational::zero());
        let lo_root = root.lo.clone().min(hi_root.clone());
        let bracket = ProbabilityBracket {
            lo: (Rational::one() - lo_root).recip(),
            hi: (Rational::one() - hi_root).recip(),
        };
        for _ in 0..root.multiplicity {
            success_probs.push(bracket.clone());
        }
    }
    let width_bound = success_probs
        .iter()
        .map(ProbabilityBracket::width)
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(BernoulliDecomposition {
        success_probs,
        width_bound,
    })
}

/// Lyapunov ratio `sum E|xi_k - p_k|^3 / (sum p_k(1-p_k))^{3/2}` as a
/// float interval honoring the probability brackets. Smallness of this
/// ratio is what underwrites the central limit theorem for the
/// decomposition.
pub fn lyapunov_ratio(d: &BernoulliDecomposition) -> Result<(f64, f64), RootError> {
    // E|xi - p|^3 = p(1-p)(p^2 + (1-p)^2) = u(1 - 2u) with u = p(1-p),
    // increasing in u on [0, 1/4]
    let cubed = |u: &Rational| u * &(Rational::one() - rat(2, 1) * u);
    let mut num_lo = Rational::zero();
    let mut num_hi = Rational::zero();
    let mut var_lo = Rational::zero();
    let mut var_hi = Rational::zero();
    for bracket in &d.success_probs {
        let (ulo, uhi) = bracket.variance_interval();
        num_lo += cubed(&ulo);
        num_hi += cubed(&uhi);
        var_lo += ulo;
        var_hi += uhi;
    }
    if !var_hi.is_positive() {
        return Err(RootError::DegenerateDecomposition);
    }
    let pow32 = |r: &Rational| rational_to_f64(r).powf(1.5);
    Ok((
        rational_to_f64(&num_lo) / pow32(&var_hi),
        rational_to_f64(&num_hi) / pow32(&var_lo),
    ))
}

/// Certifies a batch of polynomials against one expected interval,
/// in parallel when the `parallel` feature is on.
pub fn certify_all(
    polys: &[Polynomial],
    expect: Option<(&Rational, &Rational)>,
) -> Result<Vec<RootCertificate>, RootError> {
    crate::par::map_items(polys, |p| certify(p, expect))
        .into_iter()
        .collect()
}

/// Sequential batch certification regardless of enabled features.
pub fn certify_all_sequential(
    polys: &[Polynomial],
    expect: Option<(&Rational, &Rational)>,
) -> Result<Vec<RootCertificate>, RootError> {
    polys.iter().map(|p| certify(p, expect)).collect()
}

/// Isolates a batch of polynomials, in parallel when the `parallel`
/// feature is on.
pub fn isolate_all(
    polys: &[Polynomial],
    eps: &Rational,
) -> Result<Vec<RootCertificate>, RootError> {
    crate::par::map_items(polys, |p| isolate(p, eps))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_i;
    use crate::recurrence::{builtin, Family};

    fn poly(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_ints(coeffs)
    }

    fn eps(num: i64, den: i64) -> Rational {
        rat(num, den)
    }

    #[test]
    fn certify_small_cases() {
        let b2 = poly(&[0, 1, 4, 3]);
        let interval = (rat_i(-1), rat_i(0));
        let cert = certify(&b2, Some((&interval.0, &interval.1))).unwrap();
        assert!(cert.real_rooted);
        assert_eq!(cert.within_expected, Some(true));

        let no_real = poly(&[1, 1, 1]);
        assert!(!certify(&no_real, None).unwrap().real_rooted);

        let eulerian3 = poly(&[1, 4, 1]);
        let wide = (rat_i(-4), rat_i(0));
        let cert = certify(&eulerian3, Some((&wide.0, &wide.1))).unwrap();
        assert!(cert.real_rooted);
        assert_eq!(cert.within_expected, Some(true));
        let narrow = (rat_i(-1), rat_i(0));
        let cert = certify(&eulerian3, Some((&narrow.0, &narrow.1))).unwrap();
        assert_eq!(cert.within_expected, Some(false));
    }

    #[test]
    fn certify_handles_multiplicity() {
        // (x+1)^2 is real-rooted; x^2+1 times (x+1)^2 is not
        let sq = poly(&[6, 12, 6]);
        assert!(certify(&sq, None).unwrap().real_rooted);
        let mixed = &poly(&[1, 0, 1]) * &poly(&[1, 2, 1]);
        let cert = certify(&mixed, None).unwrap();
        assert!(!cert.real_rooted);
        assert_eq!(cert.degree, 4);
    }

    #[test]
    fn isolate_quadratic_with_irrational_roots() {
        let p = poly(&[1, 4, 1]);
        let cert = isolate(&p, &eps(1, 1024)).unwrap();
        assert_eq!(cert.roots.len(), 2);
        for root in &cert.roots {
            assert!(root.width() <= eps(1, 1024));
            // opposite signs at the endpoints (or an exact hit)
            let at_lo = p.evaluate(&root.lo);
            let at_hi = p.evaluate(&root.hi);
            assert!(at_lo.is_zero() || at_hi.is_zero() || (at_lo.is_negative() != at_hi.is_negative()));
        }
        // roots are -2 - sqrt(3) and -2 + sqrt(3)
        assert!(cert.roots[0].lo <= rat(-373, 100) && rat(-374, 100) <= cert.roots[0].hi);
        assert!(cert.roots[1].lo <= rat(-26, 100) && rat(-27, 100) <= cert.roots[1].hi);
    }

    #[test]
    fn isolate_finds_exact_rational_roots() {
        // roots 0, -1/3, -1
        let b2 = poly(&[0, 1, 4, 3]);
        let cert = isolate(&b2, &eps(1, 1024)).unwrap();
        assert_eq!(cert.roots.len(), 3);
        assert_eq!(cert.roots[0].lo, rat_i(-1));
        assert_eq!(cert.roots[0].hi, rat_i(-1));
        assert_eq!(cert.roots[1].lo, rat(-1, 3));
        assert_eq!(cert.roots[1].hi, rat(-1, 3));
        assert_eq!(cert.roots[2].lo, rat_i(0));
        assert_eq!(cert.roots[2].hi, rat_i(0));
        assert_eq!(cert.width_bound, rat_i(0));
    }

    #[test]
    fn isolate_linear_and_multiple() {
        let cert = isolate(&poly(&[5, 1]), &eps(1, 2)).unwrap();
        assert_eq!(cert.roots.len(), 1);
        assert_eq!(cert.roots[0].lo, rat_i(-5));
        assert_eq!(cert.roots[0].hi, rat_i(-5));

        let cert = isolate(&poly(&[6, 12, 6]), &eps(1, 64)).unwrap();
        assert_eq!(cert.roots.len(), 1);
        assert_eq!(cert.roots[0].multiplicity, 2);
        assert_eq!(cert.roots[0].lo, rat_i(-1));
    }

    #[test]
    fn isolate_refuses_complex_roots() {
        match isolate(&poly(&[1, 1, 1]), &eps(1, 16)) {
            Err(RootError::NotRealRooted(cert)) => assert!(!cert.real_rooted),
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn enclosures_never_straddle_landmarks() {
        let spec = builtin(&Family::Abn).unwrap();
        for p in &spec.generate(10).unwrap()[1..] {
            let cert = isolate(p, &eps(1, 4096)).unwrap();
            assert!(cert.real_rooted);
            let mass: u32 = cert.roots.iter().map(|r| r.multiplicity).sum();
            assert_eq!(mass as usize, cert.degree);
            for root in &cert.roots {
                assert!(root.lo >= rat_i(-1) && root.hi <= rat_i(0), "{root:?}");
            }
        }
    }

    #[test]
    fn shrinking_eps_tightens_enclosures() {
        let p = poly(&[1, 7, 11, 3]); // irrational roots, all real and negative
        assert!(certify(&p, None).unwrap().real_rooted);
        let coarse = isolate(&p, &eps(1, 64)).unwrap();
        let fine = isolate(&p, &eps(1, 128)).unwrap();
        for (c, f) in coarse.roots.iter().zip(&fine.roots) {
            assert!(f.lo >= c.lo && f.hi <= c.hi, "not nested: {c:?} vs {f:?}");
        }
    }

    #[test]
    fn bernoulli_brackets_for_size_two_diagonal_polynomial() {
        let b2 = poly(&[0, 1, 4, 3]);
        let d = bernoulli_decomposition(&b2, &eps(1, 1024)).unwrap();
        assert_eq!(d.success_probs.len(), 3);
        let exact: Vec<Rational> = d
            .success_probs
            .iter()
            .map(|b| {
                assert_eq!(b.lo, b.hi);
                b.lo.clone()
            })
            .collect();
        assert_eq!(exact, vec![rat(1, 2), rat(3, 4), rat_i(1)]);
        let (mlo, mhi) = d.mean_interval();
        assert_eq!(mlo, rat(9, 4));
        assert_eq!(mhi, rat(9, 4));
        let (vlo, vhi) = d.variance_interval();
        assert_eq!(vlo, rat(7, 16));
        assert_eq!(vhi, rat(7, 16));
    }

    #[test]
    fn bernoulli_point_mass_and_double_root() {
        let d = bernoulli_decomposition(&Polynomial::x(), &eps(1, 16)).unwrap();
        assert_eq!(d.success_probs.len(), 1);
        assert_eq!(d.success_probs[0].lo, rat_i(1));

        let d = bernoulli_decomposition(&poly(&[6, 12, 6]), &eps(1, 16)).unwrap();
        assert_eq!(d.success_probs.len(), 2);
        assert_eq!(d.success_probs[0].lo, rat(1, 2));
        assert_eq!(d.success_probs[1].hi, rat(1, 2));
        let (vlo, vhi) = d.variance_interval();
        assert_eq!(vlo, rat(1, 2));
        assert_eq!(vhi, rat(1, 2));
    }

    #[test]
    fn bernoulli_rejects_negative_coefficients() {
        assert!(matches!(
            bernoulli_decomposition(&poly(&[-1, 1]), &eps(1, 16)),
            Err(RootError::NegativeCoefficient { k: 0, .. })
        ));
    }

    #[test]
    fn lyapunov_single_fair_coin_is_one() {
        let d = bernoulli_decomposition(&poly(&[1, 1]), &eps(1, 16)).unwrap();
        let (lo, hi) = lyapunov_ratio(&d).unwrap();
        assert_eq!(lo, 1.0);
        assert_eq!(hi, 1.0);
    }

    #[test]
    fn lyapunov_of_a_hundred_fair_coins() {
        // (x+1)^100 rescaled: a hundred independent fair coins; ratio
        // n * (1/8) / (n/4)^{3/2} = n^{-1/2} = 0.1 at n = 100
        let mut p = Polynomial::one();
        let coin = poly(&[1, 1]);
        for _ in 0..100 {
            p = &p * &coin;
        }
        let d = bernoulli_decomposition(&p, &eps(1, 16)).unwrap();
        assert_eq!(d.success_probs.len(), 100);
        let (lo, hi) = lyapunov_ratio(&d).unwrap();
        assert!((lo - 0.1).abs() < 1e-12, "{lo}");
        assert!((hi - 0.1).abs() < 1e-12, "{hi}");
    }

    #[test]
    fn lyapunov_brackets_contain_the_exact_ratio() {
        let b2 = poly(&[0, 1, 4, 3]);
        let d = bernoulli_decomposition(&b2, &eps(1, 1024)).unwrap();
        let (lo, hi) = lyapunov_ratio(&d).unwrap();
        // probabilities 1, 3/4, 1/2: numerator 3/16 * 5/8 + 1/4 * 1/2,
        // denominator (7/16)^{3/2}
        let exact = (3.0 / 16.0 * (9.0 / 16.0 + 1.0 / 16.0) + 0.25 * 0.5)
            / (7.0f64 / 16.0).powf(1.5);
        assert!(lo <= exact && exact <= hi);
        assert!((lo - exact).abs() < 1e-9);
    }

    #[test]
    fn lyapunov_rejects_degenerate_input() {
        let d = bernoulli_decomposition(&Polynomial::x(), &eps(1, 16)).unwrap();
        assert!(matches!(
            lyapunov_ratio(&d),
            Err(RootError::DegenerateDecomposition)
        ));
    }

    #[test]
    fn batch_certification_matches_sequential() {
        let spec = builtin(&Family::Eulerian).unwrap();
        let polys = spec.generate(10).unwrap();
        let interval = (rat_i(-1000), rat_i(0));
        let par = certify_all(&polys, Some((&interval.0, &interval.1))).unwrap();
        let seq = certify_all_sequential(&polys, Some((&interval.0, &interval.1))).unwrap();
        assert_eq!(par, seq);
        assert!(par.iter().all(|c| c.real_rooted));
    }

    #[test]
    fn certificate_json_shape() {
        let cert = isolate(&poly(&[0, 1, 4, 3]), &eps(1, 64)).unwrap();
        let json = cert.to_json();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["degree"], 3);
        assert_eq!(parsed["real_rooted"], true);
        assert_eq!(parsed["roots"][1]["lo"], "-1/3");
        assert_eq!(parsed["roots"][0]["multiplicity"], 1);
    }
}

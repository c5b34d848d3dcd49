//! Exact polynomial division, gcd, squarefree factorization, and Sturm
//! chains over the rationals.
//!
//! Chain elements are reduced to their primitive parts (integer
//! coefficients with unit content, sign preserved): dividing by a positive
//! rational never changes a sign, so sign-variation counts survive the
//! normalization while coefficient growth stays polynomial. Signs are
//! evaluated with pure integer arithmetic: for `x = u/v` the sign of
//! `p(u/v)` equals the sign of the integer `sum c_k u^k v^(d-k)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{Polynomial, Rational};

/// Euclidean division: returns `(quotient, remainder)` with
/// `deg rem < deg divisor`. Panics on a zero divisor.
pub(crate) fn divrem(a: &Polynomial, b: &Polynomial) -> (Polynomial, Polynomial) {
    let db = b.degree().expect("division by the zero polynomial");
    let Some(da) = a.degree() else {
        return (Polynomial::zero(), Polynomial::zero());
    };
    if da < db {
        return (Polynomial::zero(), a.clone());
    }
    let lead = b.leading().unwrap().clone();
    let mut rem = a.coeffs().to_vec();
    let mut quot = vec![Rational::zero(); da - db + 1];
    for k in (db..=da).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let c = &rem[k] / &lead;
        for (j, bj) in b.coeffs().iter().enumerate() {
            let t = &c * bj;
            rem[k - db + j] -= t;
        }
        quot[k - db] = c;
    }
    (Polynomial::from_coeffs(quot), Polynomial::from_coeffs(rem))
}

/// Division known to be exact; the remainder must vanish.
pub(crate) fn exact_div(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (q, r) = divrem(a, b);
    debug_assert!(r.is_zero(), "division was not exact");
    q
}

/// Positive rational `c` such that `p/c` has coprime integer coefficients.
fn content(p: &Polynomial) -> Rational {
    debug_assert!(!p.is_zero());
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for c in p.coeffs() {
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    Rational::new(num_gcd, den_lcm)
}

/// `p` divided by its (positive) content: integer coefficients, unit
/// content, signs preserved. Zero maps to zero.
pub(crate) fn primitive_part(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return Polynomial::zero();
    }
    p.scale(&content(p).recip())
}

/// Greatest common divisor, normalized to a primitive polynomial with
/// positive leading coefficient (or zero if both inputs are zero).
pub(crate) fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut x = primitive_part(a);
    let mut y = primitive_part(b);
    while !y.is_zero() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    if x.leading().is_some_and(Signed::is_negative) {
        -&x
    } else {
        x
    }
}

/// Distinct-root radical `p / gcd(p, p')`, primitive.
pub(crate) fn squarefree_part(p: &Polynomial) -> Polynomial {
    let g = poly_gcd(p, &p.differentiate());
    if g.degree() == Some(0) {
        primitive_part(p)
    } else {
        primitive_part(&exact_div(&primitive_part(p), &g))
    }
}

/// Yun's squarefree factorization: pairwise-coprime squarefree primitive
/// factors with their multiplicities, constants omitted. The product of
/// `factor^multiplicity` equals `p` up to a rational constant.
pub(crate) fn squarefree_factors(p: &Polynomial) -> Vec<(Polynomial, u32)> {
    let p = primitive_part(p);
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let dp = p.differentiate();
    let g = poly_gcd(&p, &dp);
    if g.degree() == Some(0) {
        return vec![(p, 1)];
    }
    let mut out = Vec::new();
    let mut w = exact_div(&p, &g);
    let mut z = &exact_div(&dp, &g) - &w.differentiate();
    let mut multiplicity = 1u32;
    while w.degree().unwrap_or(0) >= 1 {
        let factor = poly_gcd(&w, &z);
        if factor.degree().unwrap_or(0) >= 1 {
            out.push((factor.clone(), multiplicity));
            w = exact_div(&w, &factor);
            z = &exact_div(&z, &factor) - &w.differentiate();
        } else {
            z = &z - &w.differentiate();
        }
        multiplicity += 1;
    }
    out
}

/// Cauchy root bound: every real root lies strictly inside `(-B, B)`.
pub(crate) fn cauchy_bound(p: &Polynomial) -> Rational {
    let d = p.degree().expect("root bound of the zero polynomial");
    let lead = p.leading().unwrap();
    let mut largest = Rational::zero();
    for c in &p.coeffs()[..d] {
        let ratio = (c / lead).abs();
        if ratio > largest {
            largest = ratio;
        }
    }
    largest + Rational::one()
}

/// Integer coefficient row of a primitive polynomial.
fn integer_coeffs(p: &Polynomial) -> Vec<BigInt> {
    p.coeffs()
        .iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

/// Sign of `sum c_k u^k v^(d-k)` for `x = u/v` with `v > 0`; this is the
/// sign of `p(x)` without any rational arithmetic.
fn sign_at(coeffs: &[BigInt], u: &BigInt, v: &BigInt) -> i8 {
    let d = coeffs.len() - 1;
    let mut v_powers = Vec::with_capacity(d + 1);
    v_powers.push(BigInt::one());
    for k in 1..=d {
        let next = &v_powers[k - 1] * v;
        v_powers.push(next);
    }
    let mut acc = coeffs[d].clone();
    for k in (0..d).rev() {
        acc = acc * u + &coeffs[k] * &v_powers[d - k];
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Canonical Sturm chain of a polynomial: `p`, `p'`, then negated
/// remainders, every element primitive.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Polynomial>,
    integer_chain: Vec<Vec<BigInt>>,
}

impl SturmChain {
    /// Builds the chain. Panics on the zero polynomial (callers validate).
    pub fn new(p: &Polynomial) -> SturmChain {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let mut chain = vec![primitive_part(p)];
        let dp = p.differentiate();
        if !dp.is_zero() {
            chain.push(primitive_part(&dp));
            loop {
                let (_, r) = divrem(&chain[chain.len() - 2], &chain[chain.len() - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(primitive_part(&-&r));
            }
        }
        let integer_chain = chain.iter().map(integer_coeffs).collect();
        SturmChain {
            chain,
            integer_chain,
        }
    }

    pub fn chain(&self) -> &[Polynomial] {
        &self.chain
    }

    /// Sign variations at `x`, zeros dropped. For a squarefree input the
    /// drop-zero convention makes this right-continuous, so
    /// `variations_at(a) - variations_at(b)` counts roots in `(a, b]`
    /// even when an endpoint is itself a root.
    pub fn variations_at(&self, x: &Rational) -> usize {
        let u = x.numer();
        let v = x.denom();
        let mut variations = 0;
        let mut last = 0i8;
        for coeffs in &self.integer_chain {
            let s = sign_at(coeffs, u, v);
            if s != 0 {
                if last != 0 && s != last {
                    variations += 1;
                }
                last = s;
            }
        }
        variations
    }

    /// Distinct real roots in `(lo, hi]`. Exact for squarefree
    /// polynomials even at root endpoints; general callers should count
    /// through [`count_real_roots`], which reduces first.
    pub fn count_in(&self, lo: &Rational, hi: &Rational) -> usize {
        assert!(lo < hi, "empty or reversed interval");
        let at_lo = self.variations_at(lo);
        let at_hi = self.variations_at(hi);
        debug_assert!(at_lo >= at_hi);
        at_lo - at_hi
    }
}

/// Exact number of distinct real roots of `p` in `(lo, hi]`, via the
/// Sturm chain of the squarefree part. Panics if `lo >= hi` or `p` is
/// zero.
pub fn count_real_roots(p: &Polynomial, lo: &Rational, hi: &Rational) -> usize {
    assert!(!p.is_zero(), "root count of the zero polynomial");
    if p.degree() == Some(0) {
        return 0;
    }
    SturmChain::new(&squarefree_part(p)).count_in(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_i};

    fn poly(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_ints(coeffs)
    }

    #[test]
    fn division_reconstructs_the_dividend() {
        let a = poly(&[1, 4, 1]);
        let b = poly(&[2, 1]);
        let (q, r) = divrem(&a, &b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < b.degree().unwrap());
    }

    #[test]
    fn primitive_part_clears_denominators() {
        let p = Polynomial::from_coeffs(vec![rat(1, 2), rat(3, 4)]);
        assert_eq!(primitive_part(&p), poly(&[2, 3]));
        // sign preserved
        let q = Polynomial::from_coeffs(vec![rat(-1, 2), rat(-3, 4)]);
        assert_eq!(primitive_part(&q), poly(&[-2, -3]));
    }

    #[test]
    fn gcd_of_products_with_common_factor() {
        let common = poly(&[1, 1]);
        let a = &common * &poly(&[-1, 1]);
        let b = &common * &poly(&[3, 1]);
        assert_eq!(poly_gcd(&a, &b), common);
        // coprime inputs give a constant
        assert_eq!(
            poly_gcd(&poly(&[1, 1]), &poly(&[2, 1]))
                .degree()
                .unwrap(),
            0
        );
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        let p = &poly(&[0, 1]) * &(&poly(&[1, 1]) * &poly(&[1, 1]));
        assert_eq!(squarefree_part(&p), &poly(&[0, 1]) * &poly(&[1, 1]));
        assert_eq!(squarefree_part(&poly(&[0, 0, 1])), poly(&[0, 1]));
    }

    #[test]
    fn squarefree_factorization_recovers_multiplicities() {
        // x * (x+1)^2 * (x-2)^3
        let x = poly(&[0, 1]);
        let a = poly(&[1, 1]);
        let b = poly(&[-2, 1]);
        let p = &(&(&x * &a) * &a) * &(&(&b * &b) * &b);
        let factors = squarefree_factors(&p);
        assert_eq!(factors, vec![(x, 1), (a, 2), (b, 3)]);
        // squarefree input comes back whole
        let q = poly(&[1, 4, 1]);
        assert_eq!(squarefree_factors(&q), vec![(q.clone(), 1)]);
        // the doubled linear factor of 6(x+1)^2
        let factors = squarefree_factors(&poly(&[6, 12, 6]));
        assert_eq!(factors, vec![(poly(&[1, 1]), 2)]);
    }

    #[test]
    fn cauchy_bound_contains_known_roots() {
        // roots -2 +- sqrt(3), bound 1 + 4 = 5
        assert_eq!(cauchy_bound(&poly(&[1, 4, 1])), rat_i(5));
        assert_eq!(cauchy_bound(&poly(&[0, 1])), rat_i(1));
    }

    #[test]
    fn chain_of_a_squarefree_quadratic() {
        let chain = SturmChain::new(&poly(&[1, 4, 1]));
        assert_eq!(chain.chain().len(), 3);
        let last = chain.chain().last().unwrap();
        assert_eq!(last.degree(), Some(0));
        assert!(last.leading().unwrap() > &rat_i(0));
    }

    #[test]
    fn counts_locate_quadratic_roots() {
        // roots at about -3.732 and -0.268
        let p = poly(&[1, 4, 1]);
        assert_eq!(count_real_roots(&p, &rat_i(-4), &rat_i(0)), 2);
        assert_eq!(count_real_roots(&p, &rat_i(0), &rat_i(10)), 0);
        assert_eq!(count_real_roots(&p, &rat_i(-4), &rat_i(-1)), 1);
        // no real roots at all
        assert_eq!(count_real_roots(&poly(&[1, 1, 1]), &rat_i(-9), &rat_i(9)), 0);
        // linear
        assert_eq!(count_real_roots(&poly(&[-1, 1]), &rat_i(0), &rat_i(2)), 1);
    }

    #[test]
    fn count_is_exact_at_root_endpoints() {
        // roots 0, -1/3, -1
        let p = poly(&[0, 1, 4, 3]);
        assert_eq!(count_real_roots(&p, &rat_i(-1), &rat_i(0)), 2);
        assert_eq!(count_real_roots(&p, &rat_i(-2), &rat_i(0)), 3);
        assert_eq!(count_real_roots(&p, &rat_i(-2), &rat(-1, 3)), 2);
        assert_eq!(count_real_roots(&p, &rat(-1, 3), &rat_i(1)), 1);
    }

    #[test]
    fn multiple_roots_count_once() {
        let p = poly(&[0, 0, 1]);
        assert_eq!(count_real_roots(&p, &rat_i(-1), &rat_i(1)), 1);
        let q = poly(&[6, 12, 6]);
        assert_eq!(count_real_roots(&q, &rat_i(-2), &rat_i(0)), 1);
    }

    #[test]
    fn variation_drop_matches_interior_evaluation() {
        let p = poly(&[1, 4, 1]);
        let chain = SturmChain::new(&p);
        // at a chain-interior zero the dropped count agrees with nearby points
        assert_eq!(chain.variations_at(&rat_i(-2)), chain.variations_at(&rat(-201, 100)));
    }
}

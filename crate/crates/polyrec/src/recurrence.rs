//! Differential-difference recurrences `P_n = f_n P_{n-1} + g_n P'_{n-1}`
//! (direct form) and `P'_n = f_n P_{n-1} + g_n P'_{n-1}` (derivative form),
//! with coefficients `f_n`, `g_n` polynomial in `x` whose entries are
//! polynomials in `n`.
//!
//! A derivative-form step only pins `P_n` up to an additive constant; the
//! constant is chosen so that `P_n(1)` equals the spec's normalization
//! sequence. Direct-form specs need no normalization.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{rat_u, Polynomial, Rational};

#[derive(Debug, Error)]
pub enum RecurrenceError {
    #[error("derivative-form spec needs a normalization to pin the integration constant")]
    MissingNormalization,
    #[error("normalization factor vanishes at n = {0}")]
    DegenerateNormalization(u64),
    #[error("initial polynomial disagrees with normalization: p0(1) = {got}, normalization(0) = {want}")]
    InconsistentBase { got: Rational, want: Rational },
    #[error("coefficient of x^{k} in P_{n} is negative ({value}); the family is flagged nonnegative")]
    NegativeCoefficient { n: u64, k: usize, value: Rational },
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),
    #[error("spec file: {0}")]
    SpecFile(String),
}

/// Polynomial in `x` whose coefficients are polynomials in `n`.
/// `entries[j]` is the coefficient of `x^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicCoefficient {
    entries: Vec<Polynomial>,
}

impl SymbolicCoefficient {
    /// Builds from `x`-ascending entries, trimming zero high entries.
    pub fn new(mut entries: Vec<Polynomial>) -> Self {
        while entries.last().is_some_and(Polynomial::is_zero) {
            entries.pop();
        }
        SymbolicCoefficient { entries }
    }

    /// Entry `j` constant in `n`: convenience for fixed coefficients.
    pub fn from_const_ints(entries: &[i64]) -> Self {
        SymbolicCoefficient::new(
            entries
                .iter()
                .map(|&c| Polynomial::from_ints(&[c]))
                .collect(),
        )
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The concrete coefficient polynomial in `x` at a given `n`.
    pub fn instantiate(&self, n: u64) -> Polynomial {
        let at = rat_u(n);
        Polynomial::from_coeffs(self.entries.iter().map(|e| e.evaluate(&at)).collect())
    }

    /// Value at `x = 1` as a polynomial in `n` (the sum of the entries).
    pub fn value_at_one(&self) -> Polynomial {
        self.entries
            .iter()
            .fold(Polynomial::zero(), |acc, e| &acc + e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecurrenceForm {
    /// `P_n = f_n P_{n-1} + g_n P'_{n-1}`
    Direct,
    /// `P'_n = f_n P_{n-1} + g_n P'_{n-1}`
    Derivative,
}

/// Closed-form rule for the value sequence `P_n(1)` of derivative-form
/// specs. Custom specs must supply the rule explicitly; it is never
/// inferred from the recurrence.
#[derive(Clone, Debug, PartialEq)]
pub enum Normalization {
    /// `P_n(1) = n!`
    Factorial,
    /// `P_n(1) = scale^n * n!`
    ScaledFactorial { scale: Rational },
    /// `P_n(1) = value` for every n
    Constant { value: Rational },
    /// `P_n(1) = base * prod_{k=1..n} factor(k)`, `factor` polynomial in n
    CustomProduct { base: Rational, factor: Polynomial },
}

impl Normalization {
    /// Exact `P_n(1)`.
    pub fn value(&self, n: u64) -> Rational {
        match self {
            Normalization::Factorial => Rational::from_integer(crate::poly::factorial(n)),
            Normalization::ScaledFactorial { scale } => {
                let mut acc = Rational::from_integer(crate::poly::factorial(n));
                for _ in 0..n {
                    acc *= scale;
                }
                acc
            }
            Normalization::Constant { value } => value.clone(),
            Normalization::CustomProduct { base, factor } => {
                let mut acc = base.clone();
                for k in 1..=n {
                    acc *= factor.evaluate(&rat_u(k));
                }
                acc
            }
        }
    }

    /// Exact `P_{n-1}(1) / P_n(1)` for `n >= 1`, without forming either
    /// value; this is what the scaled derivative-vector recurrence needs.
    pub fn ratio_prev_over_current(&self, n: u64) -> Result<Rational, RecurrenceError> {
        debug_assert!(n >= 1);
        let inv = |r: Rational| {
            if r.is_zero() {
                Err(RecurrenceError::DegenerateNormalization(n))
            } else {
                Ok(r.recip())
            }
        };
        match self {
            Normalization::Factorial => inv(rat_u(n)),
            Normalization::ScaledFactorial { scale } => inv(scale * rat_u(n)),
            Normalization::Constant { value } => inv(value.clone() / value),
            Normalization::CustomProduct { factor, .. } => inv(factor.evaluate(&rat_u(n))),
        }
    }
}

/// A fully specified recurrence: form, coefficients, seed, and (for the
/// derivative form) the normalization pinning each integration constant.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceSpec {
    pub form: RecurrenceForm,
    pub f: SymbolicCoefficient,
    pub g: SymbolicCoefficient,
    pub p0: Polynomial,
    pub normalization: Option<Normalization>,
    /// Generated polynomials are checked coefficientwise and generation
    /// fails on any negative coefficient. All builtins set this.
    pub nonnegative: bool,
}

impl RecurrenceSpec {
    /// True iff `g(1)` vanishes identically in `n`; decided symbolically
    /// from the entry sum, never sampled.
    pub fn g_vanishes_at_one(&self) -> bool {
        self.g.value_at_one().is_zero()
    }

    /// One step of the recurrence: `P_{n-1}` to `P_n`.
    pub fn step(&self, prev: &Polynomial, n: u64) -> Result<Polynomial, RecurrenceError> {
        let fx = self.f.instantiate(n);
        let gx = self.g.instantiate(n);
        let rhs = &(&fx * prev) + &(&gx * &prev.differentiate());
        match self.form {
            RecurrenceForm::Direct => Ok(rhs),
            RecurrenceForm::Derivative => {
                let norm = self
                    .normalization
                    .as_ref()
                    .ok_or(RecurrenceError::MissingNormalization)?;
                let indefinite = rhs.integrate();
                let constant = norm.value(n) - indefinite.evaluate(&Rational::one());
                Ok(&indefinite + &Polynomial::constant(constant))
            }
        }
    }

    /// `[P_0, P_1, ..., P_nmax]`, verifying the nonnegativity flag on each
    /// generated polynomial.
    pub fn generate(&self, nmax: u64) -> Result<Vec<Polynomial>, RecurrenceError> {
        if self.form == RecurrenceForm::Derivative {
            let norm = self
                .normalization
                .as_ref()
                .ok_or(RecurrenceError::MissingNormalization)?;
            let base = self.p0.evaluate(&Rational::one());
            let want = norm.value(0);
            if base != want {
                return Err(RecurrenceError::InconsistentBase { got: base, want });
            }
        }
        let mut out = Vec::with_capacity(nmax as usize + 1);
        out.push(self.p0.clone());
        self.check_nonnegative(&self.p0, 0)?;
        for n in 1..=nmax {
            let next = self.step(out.last().unwrap(), n)?;
            self.check_nonnegative(&next, n)?;
            out.push(next);
        }
        Ok(out)
    }

    fn check_nonnegative(&self, p: &Polynomial, n: u64) -> Result<(), RecurrenceError> {
        if !self.nonnegative {
            return Ok(());
        }
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.is_negative() {
                return Err(RecurrenceError::NegativeCoefficient {
                    n,
                    k,
                    value: c.clone(),
                });
            }
        }
        Ok(())
    }
}

/// The builtin families. Parameterized variants validate their parameters
/// at construction time in [`builtin`].
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// Diagonal cells of symmetric tree-like tableaux:
    /// `B_n = n x(x+1) B_{n-1} + x(1-x^2) B'_{n-1}`, `B_0 = x`.
    Abn,
    /// Occupied corners of tree-like tableaux:
    /// `P'_n = n P_{n-1} + 2(1-x) P'_{n-1}`, `P_0 = 1`, `P_n(1) = n!`.
    Lz,
    /// Occupied corners of symmetric tree-like tableaux:
    /// `Q'_n = 2n x Q_{n-1} + 2(1-x^2) Q'_{n-1}`, `Q_0 = 1`, `Q_n(1) = 2^n n!`.
    LzSymmetric,
    /// `P_n = ((n-1+b)x + a) P_{n-1} + x(1-x) P'_{n-1}`, `P_0 = 1`; `a, b >= 0`.
    Hj { a: Rational, b: Rational },
    /// Eulerian polynomials; the `a = 1, b = 0` instance of `Hj`.
    Eulerian,
    /// `V_n = ((2n-1)x + 1) V_{n-1} + 2x(1-x) V'_{n-1}`, `V_0 = 1`.
    Dhh,
    /// `A_n = (2n-1) A_{n-1} + x(x-1) A'_{n-1}`, `A_0 = x`.
    Ah,
    /// `T_n = (x+c) T_{n-1} + m x T'_{n-1}`, `T_0 = 1`; `c >= 0`, `m > 0`.
    /// Note `g(1) = m` does not vanish.
    W { c: Rational, m: Rational },
    /// `F_n = (x+1) F_{n-1} + x(x+m) F'_{n-1}`, `F_0 = 1`; integer `m >= 1`.
    /// Note `g(1) = 1 + m` does not vanish.
    Be1 { m: u64 },
}

/// `n` as a symbolic polynomial entry.
fn poly_n() -> Polynomial {
    Polynomial::from_ints(&[0, 1])
}

/// Constructs the spec for a builtin family.
pub fn builtin(family: &Family) -> Result<RecurrenceSpec, RecurrenceError> {
    let c1 = |v: i64| Polynomial::from_ints(&[v]);
    let spec = match family {
        Family::Abn => RecurrenceSpec {
            form: RecurrenceForm::Direct,
            // n x (x + 1) = n x + n x^2
            f: SymbolicCoefficient::new(vec![Polynomial::zero(), poly_n(), poly_n()]),
            // x (1 - x^2) = x - x^3
            g: SymbolicCoefficient::from_const_ints(&[0, 1, 0, -1]),
            p0: Polynomial::x(),
            normalization: None,
            nonnegative: true,
        },
        Family::Lz => RecurrenceSpec {
            form: RecurrenceForm::Derivative,
            f: SymbolicCoefficient::new(vec![poly_n()]),
            g: SymbolicCoefficient::from_const_ints(&[2, -2]),
            p0: Polynomial::one(),
            normalization: Some(Normalization::Factorial),
            nonnegative: true,
        },
        Family::LzSymmetric => RecurrenceSpec {
            form: RecurrenceForm::Derivative,
            // 2 n x
            f: SymbolicCoefficient::new(vec![Polynomial::zero(), Polynomial::from_ints(&[0, 2])]),
            // 2 (1 - x^2)
            g: SymbolicCoefficient::from_const_ints(&[2, 0, -2]),
            p0: Polynomial::one(),
            normalization: Some(Normalization::ScaledFactorial {
                scale: crate::poly::rat_i(2),
            }),
            nonnegative: true,
        },
        Family::Hj { a, b } => {
            if a.is_negative() || b.is_negative() {
                return Err(RecurrenceError::InvalidParameter(format!(
                    "hj requires a >= 0 and b >= 0, got a = {a}, b = {b}"
                )));
            }
            RecurrenceSpec {
                form: RecurrenceForm::Direct,
                // (n - 1 + b) x + a
                f: SymbolicCoefficient::new(vec![
                    Polynomial::constant(a.clone()),
                    &poly_n() + &Polynomial::constant(b - Rational::one()),
                ]),
                // x (1 - x)
                g: SymbolicCoefficient::from_const_ints(&[0, 1, -1]),
                p0: Polynomial::one(),
                normalization: None,
                nonnegative: true,
            }
        }
        Family::Eulerian => RecurrenceSpec {
            form: RecurrenceForm::Direct,
            f: SymbolicCoefficient::new(vec![c1(1), Polynomial::from_ints(&[-1, 1])]),
            g: SymbolicCoefficient::from_const_ints(&[0, 1, -1]),
            p0: Polynomial::one(),
            normalization: None,
            nonnegative: true,
        },
        Family::Dhh => RecurrenceSpec {
            form: RecurrenceForm::Direct,
            // (2n - 1) x + 1
            f: SymbolicCoefficient::new(vec![c1(1), Polynomial::from_ints(&[-1, 2])]),
            // 2 x (1 - x)
            g: SymbolicCoefficient::from_const_ints(&[0, 2, -2]),
            p0: Polynomial::one(),
            normalization: None,
            nonnegative: true,
        },
        Family::Ah => RecurrenceSpec {
            form: RecurrenceForm::Direct,
            f: SymbolicCoefficient::new(vec![Polynomial::from_ints(&[-1, 2])]),
            // x (x - 1) = x^2 - x
            g: SymbolicCoefficient::from_const_ints(&[0, -1, 1]),
            p0: Polynomial::x(),
            normalization: None,
            nonnegative: true,
        },
        Family::W { c, m } => {
            if c.is_negative() || !m.is_positive() {
                return Err(RecurrenceError::InvalidParameter(format!(
                    "w requires c >= 0 and m > 0, got c = {c}, m = {m}"
                )));
            }
            RecurrenceSpec {
                form: RecurrenceForm::Direct,
                f: SymbolicCoefficient::new(vec![Polynomial::constant(c.clone()), c1(1)]),
                g: SymbolicCoefficient::new(vec![
                    Polynomial::zero(),
                    Polynomial::constant(m.clone()),
                ]),
                p0: Polynomial::one(),
                normalization: None,
                nonnegative: true,
            }
        }
        Family::Be1 { m } => {
            if *m < 1 {
                return Err(RecurrenceError::InvalidParameter(format!(
                    "be1 requires integer m >= 1, got {m}"
                )));
            }
            RecurrenceSpec {
                form: RecurrenceForm::Direct,
                f: SymbolicCoefficient::from_const_ints(&[1, 1]),
                // x (x + m) = m x + x^2
                g: SymbolicCoefficient::new(vec![
                    Polynomial::zero(),
                    Polynomial::from_ints(&[*m as i64]),
                    c1(1),
                ]),
                p0: Polynomial::one(),
                normalization: None,
                nonnegative: true,
            }
        }
    };
    Ok(spec)
}

/// The occupied-corner polynomials of symmetric tableaux reduce to the
/// plain occupied-corner recurrence under `x -> x^2`, provided both sides
/// carry the symmetric normalization `2^n n!`. Returns true iff
/// `Q_n(x) = P_n(x^2)` holds exactly for all `n <= nmax`.
pub fn verify_symmetric_reduction(nmax: u64) -> Result<bool, RecurrenceError> {
    let symmetric = builtin(&Family::LzSymmetric)?;
    let mut half = builtin(&Family::Lz)?;
    half.normalization = Some(Normalization::ScaledFactorial {
        scale: crate::poly::rat_i(2),
    });
    let qs = symmetric.generate(nmax)?;
    let ps = half.generate(nmax)?;
    Ok(qs
        .iter()
        .zip(ps.iter())
        .all(|(q, p)| *q == p.substitute_square()))
}

// ---------------------------------------------------------------------
// JSON form. The wire schema keeps every rational as its canonical text
// form; `g_vanishes_at_one` is recomputed after load, never stored.

#[derive(Serialize, Deserialize)]
struct SpecFile {
    form: String,
    f: Vec<Vec<String>>,
    g: Vec<Vec<String>>,
    p0: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalization: Option<NormalizationFile>,
}

#[derive(Serialize, Deserialize)]
struct NormalizationFile {
    kind: String,
    #[serde(default, skip_serializing_if = "serde_json::Map::is_empty")]
    params: serde_json::Map<String, serde_json::Value>,
}

fn symbolic_to_file(c: &SymbolicCoefficient) -> Vec<Vec<String>> {
    c.entries().iter().map(|e| e.to_coeff_strings()).collect()
}

fn symbolic_from_file(raw: &[Vec<String>]) -> Result<SymbolicCoefficient, RecurrenceError> {
    let entries = raw
        .iter()
        .map(|e| Polynomial::from_coeff_strings(e))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| RecurrenceError::SpecFile(e.to_string()))?;
    Ok(SymbolicCoefficient::new(entries))
}

fn param<'a>(
    params: &'a serde_json::Map<String, serde_json::Value>,
    key: &str,
) -> Result<&'a serde_json::Value, RecurrenceError> {
    params
        .get(key)
        .ok_or_else(|| RecurrenceError::SpecFile(format!("normalization params missing {key:?}")))
}

fn param_rational(
    params: &serde_json::Map<String, serde_json::Value>,
    key: &str,
) -> Result<Rational, RecurrenceError> {
    let v = param(params, key)?;
    let s = v
        .as_str()
        .ok_or_else(|| RecurrenceError::SpecFile(format!("{key:?} must be a rational string")))?;
    crate::poly::parse_rational(s).map_err(|e| RecurrenceError::SpecFile(e.to_string()))
}

impl RecurrenceSpec {
    pub fn to_json(&self) -> String {
        let norm = self.normalization.as_ref().map(|n| {
            let mut params = serde_json::Map::new();
            let kind = match n {
                Normalization::Factorial => "factorial",
                Normalization::ScaledFactorial { scale } => {
                    params.insert("scale".into(), scale.to_string().into());
                    "scaled_factorial"
                }
                Normalization::Constant { value } => {
                    params.insert("value".into(), value.to_string().into());
                    "constant"
                }
                Normalization::CustomProduct { base, factor } => {
                    params.insert("base".into(), base.to_string().into());
                    params.insert("factor".into(), factor.to_coeff_strings().into());
                    "custom_product"
                }
            };
            NormalizationFile {
                kind: kind.to_string(),
                params,
            }
        });
        let file = SpecFile {
            form: match self.form {
                RecurrenceForm::Direct => "direct".into(),
                RecurrenceForm::Derivative => "derivative".into(),
            },
            f: symbolic_to_file(&self.f),
            g: symbolic_to_file(&self.g),
            p0: self.p0.to_coeff_strings(),
            normalization: norm,
        };
        serde_json::to_string_pretty(&file).expect("spec serialization cannot fail")
    }

    /// Parses and validates the JSON spec form. Loaded specs are always
    /// checked for nonnegative coefficients during generation.
    pub fn from_json(s: &str) -> Result<RecurrenceSpec, RecurrenceError> {
        let file: SpecFile =
            serde_json::from_str(s).map_err(|e| RecurrenceError::SpecFile(e.to_string()))?;
        let form = match file.form.as_str() {
            "direct" => RecurrenceForm::Direct,
            "derivative" => RecurrenceForm::Derivative,
            other => {
                return Err(RecurrenceError::SpecFile(format!(
                    "unknown form {other:?} (expected \"direct\" or \"derivative\")"
                )))
            }
        };
        let normalization = match file.normalization {
            None => None,
            Some(n) => Some(match n.kind.as_str() {
                "factorial" => Normalization::Factorial,
                "scaled_factorial" => Normalization::ScaledFactorial {
                    scale: param_rational(&n.params, "scale")?,
                },
                "constant" => Normalization::Constant {
                    value: param_rational(&n.params, "value")?,
                },
                "custom_product" => {
                    let base = param_rational(&n.params, "base")?;
                    let raw = param(&n.params, "factor")?;
                    let arr = raw.as_array().ok_or_else(|| {
                        RecurrenceError::SpecFile("\"factor\" must be an array".into())
                    })?;
                    let strings = arr
                        .iter()
                        .map(|v| {
                            v.as_str().map(str::to_owned).ok_or_else(|| {
                                RecurrenceError::SpecFile(
                                    "\"factor\" entries must be rational strings".into(),
                                )
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    let factor = Polynomial::from_coeff_strings(&strings)
                        .map_err(|e| RecurrenceError::SpecFile(e.to_string()))?;
                    Normalization::CustomProduct { base, factor }
                }
                other => {
                    return Err(RecurrenceError::SpecFile(format!(
                        "unknown normalization kind {other:?}"
                    )))
                }
            }),
        };
        if form == RecurrenceForm::Derivative && normalization.is_none() {
            return Err(RecurrenceError::MissingNormalization);
        }
        Ok(RecurrenceSpec {
            form,
            f: symbolic_from_file(&file.f)?,
            g: symbolic_from_file(&file.g)?,
            p0: Polynomial::from_coeff_strings(&file.p0)
                .map_err(|e| RecurrenceError::SpecFile(e.to_string()))?,
            normalization,
            nonnegative: true,
        })
    }
}

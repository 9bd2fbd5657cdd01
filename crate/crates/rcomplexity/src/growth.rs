//! Closed symbolic algebra of positive growth functions.
//!
//! A [`GrowthFunction`] is a finite sum of [`GrowthTerm`]s of the form
//! `c * q^n * n^a * log^b(n)` (natural log), kept normalized with the
//! dominant term first. The family is closed under addition, positive
//! scaling and multiplication, and the limit of a ratio of two such
//! functions always exists in `[0, +inf]`, so [`GrowthFunction::limit_ratio`]
//! is exact: it compares dominance keys instead of estimating numerically.

use std::fmt;

/// Relative tolerance used when checking that two evaluations agree.
pub const EVAL_RELATIVE_TOLERANCE: f64 = 1e-9;

/// Errors raised by growth-function construction and evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum GrowthError {
    /// A growth function must contain at least one term.
    EmptyFunction,
    /// A term violates the positivity/domain invariants.
    InvalidTerm(String),
    /// Evaluation exceeded the representable floating-point range.
    Overflow { n: u64 },
    /// Evaluation requested below the domain floor of n = 2.
    DomainError { n: u64 },
    /// Scaling factor must be strictly positive.
    NonPositiveScalar(f64),
}

impl fmt::Display for GrowthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthError::EmptyFunction => write!(f, "growth function needs at least one term"),
            GrowthError::InvalidTerm(msg) => write!(f, "invalid growth term: {msg}"),
            GrowthError::Overflow { n } => write!(f, "evaluation overflowed at n = {n}"),
            GrowthError::DomainError { n } => {
                write!(f, "growth functions are defined for n >= 2, got n = {n}")
            }
            GrowthError::NonPositiveScalar(x) => {
                write!(f, "scaling factor must be positive, got {x}")
            }
        }
    }
}

impl std::error::Error for GrowthError {}

/// One multiplicative term `coeff * exp_base^n * n^poly_exp * log^log_exp(n)`.
///
/// Invariants: `coeff > 0`, `exp_base >= 1`, `poly_exp >= 0`, and a negative
/// `log_exp` requires either `poly_exp > 0` or `exp_base > 1` so the term
/// stays eventually positive and strictly ordered under the dominance key.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthTerm {
    coeff: f64,
    exp_base: f64,
    poly_exp: f64,
    log_exp: f64,
}

impl GrowthTerm {
    pub fn new(coeff: f64, exp_base: f64, poly_exp: f64, log_exp: f64) -> Result<Self, GrowthError> {
        if !coeff.is_finite() || coeff <= 0.0 {
            return Err(GrowthError::InvalidTerm(format!(
                "coefficient must be a positive finite real, got {coeff}"
            )));
        }
        if !exp_base.is_finite() || exp_base < 1.0 {
            return Err(GrowthError::InvalidTerm(format!(
                "exponential base must be a finite real >= 1, got {exp_base}"
            )));
        }
        if !poly_exp.is_finite() || poly_exp < 0.0 {
            return Err(GrowthError::InvalidTerm(format!(
                "polynomial exponent must be a finite real >= 0, got {poly_exp}"
            )));
        }
        if !log_exp.is_finite() {
            return Err(GrowthError::InvalidTerm(format!(
                "log exponent must be finite, got {log_exp}"
            )));
        }
        if log_exp < 0.0 && poly_exp == 0.0 && exp_base == 1.0 {
            return Err(GrowthError::InvalidTerm(format!(
                "log^{log_exp}(n) alone is not a growth term; a negative log exponent \
                 needs a polynomial or exponential factor"
            )));
        }
        Ok(Self { coeff, exp_base, poly_exp, log_exp })
    }

    /// Constant term `c`.
    pub fn constant(c: f64) -> Result<Self, GrowthError> {
        Self::new(c, 1.0, 0.0, 0.0)
    }

    /// Polynomial term `c * n^a`.
    pub fn poly(c: f64, a: f64) -> Result<Self, GrowthError> {
        Self::new(c, 1.0, a, 0.0)
    }

    /// Poly-log term `c * n^a * log^b(n)`.
    pub fn poly_log(c: f64, a: f64, b: f64) -> Result<Self, GrowthError> {
        Self::new(c, 1.0, a, b)
    }

    /// Exponential term `c * q^n`.
    pub fn exponential(c: f64, q: f64) -> Result<Self, GrowthError> {
        Self::new(c, q, 0.0, 0.0)
    }

    pub fn coeff(&self) -> f64 {
        self.coeff
    }

    pub fn exp_base(&self) -> f64 {
        self.exp_base
    }

    pub fn poly_exp(&self) -> f64 {
        self.poly_exp
    }

    pub fn log_exp(&self) -> f64 {
        self.log_exp
    }

    /// Lexicographic dominance key: higher key means faster growth.
    pub(crate) fn dominance_key(&self) -> (f64, f64, f64) {
        (self.exp_base, self.poly_exp, self.log_exp)
    }

    fn with_coeff(&self, coeff: f64) -> Self {
        Self { coeff, ..*self }
    }

    fn value_at(&self, n: u64) -> f64 {
        let nf = n as f64;
        self.coeff * self.exp_base.powf(nf) * nf.powf(self.poly_exp) * nf.ln().powf(self.log_exp)
    }

    fn ln_value_at(&self, n: u64) -> f64 {
        let nf = n as f64;
        self.coeff.ln()
            + nf * self.exp_base.ln()
            + self.poly_exp * nf.ln()
            + self.log_exp * nf.ln().ln()
    }
}

/// Exact value of `lim f/g` for two growth functions: zero, a positive
/// finite real, or infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Limit {
    Zero,
    /// Strictly positive finite value (an exact zero uses [`Limit::Zero`]).
    Finite(f64),
    Infinite,
}

impl Limit {
    pub fn finite_value(&self) -> Option<f64> {
        match self {
            Limit::Finite(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Limit::Zero)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Limit::Infinite)
    }
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::Zero => write!(f, "0"),
            Limit::Finite(v) => write!(f, "{v}"),
            Limit::Infinite => write!(f, "Infinite"),
        }
    }
}

/// Normalized sum of growth terms, sorted by dominance key descending,
/// with at most one term per key.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthFunction {
    terms: Vec<GrowthTerm>,
}

impl GrowthFunction {
    /// Normalizes a raw term list: like terms are merged by summing
    /// coefficients and the result is sorted dominant-first. Idempotent.
    pub fn new(terms: Vec<GrowthTerm>) -> Result<Self, GrowthError> {
        if terms.is_empty() {
            return Err(GrowthError::EmptyFunction);
        }
        let mut sorted = terms;
        sorted.sort_by(|a, b| {
            b.dominance_key()
                .partial_cmp(&a.dominance_key())
                .expect("dominance keys are finite")
        });
        let mut merged: Vec<GrowthTerm> = Vec::with_capacity(sorted.len());
        for term in sorted {
            match merged.last_mut() {
                Some(last) if last.dominance_key() == term.dominance_key() => {
                    *last = last.with_coeff(last.coeff + term.coeff);
                }
                _ => merged.push(term),
            }
        }
        if let Some(term) = merged.iter().find(|t| !t.coeff.is_finite()) {
            return Err(GrowthError::InvalidTerm(format!(
                "merged coefficient overflows the float range (key {:?})",
                term.dominance_key()
            )));
        }
        Ok(Self { terms: merged })
    }

    /// Single-term function.
    pub fn from_term(term: GrowthTerm) -> Self {
        Self { terms: vec![term] }
    }

    pub fn terms(&self) -> &[GrowthTerm] {
        &self.terms
    }

    /// The fastest-growing term (first in normalized order).
    pub fn dominant(&self) -> &GrowthTerm {
        &self.terms[0]
    }

    /// Evaluates the function at an integer input `n >= 2`.
    pub fn evaluate(&self, n: u64) -> Result<f64, GrowthError> {
        if n < 2 {
            return Err(GrowthError::DomainError { n });
        }
        let mut total = 0.0;
        for term in &self.terms {
            let value = term.value_at(n);
            if !value.is_finite() {
                return Err(GrowthError::Overflow { n });
            }
            total += value;
        }
        if !total.is_finite() {
            return Err(GrowthError::Overflow { n });
        }
        Ok(total)
    }

    /// Natural log of the value at `n`, computed in log space so it stays
    /// finite where [`GrowthFunction::evaluate`] would overflow.
    pub(crate) fn ln_evaluate(&self, n: u64) -> f64 {
        let logs: Vec<f64> = self.terms.iter().map(|t| t.ln_value_at(n)).collect();
        let max = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        max + logs.iter().map(|l| (l - max).exp()).sum::<f64>().ln()
    }

    /// Term-wise sum; the result is normalized. Panics only if merged
    /// coefficients exceed the float range.
    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self::new(terms).expect("merged coefficients stay within the float range")
    }

    /// Multiplies every coefficient by `x > 0`. Dominance order is unchanged.
    pub fn scale(&self, x: f64) -> Result<Self, GrowthError> {
        if !x.is_finite() || x <= 0.0 {
            return Err(GrowthError::NonPositiveScalar(x));
        }
        let terms: Vec<GrowthTerm> =
            self.terms.iter().map(|t| t.with_coeff(t.coeff * x)).collect();
        if terms.iter().any(|t| !t.coeff.is_finite() || t.coeff <= 0.0) {
            return Err(GrowthError::InvalidTerm(format!(
                "scaling by {x} pushed a coefficient outside the positive float range"
            )));
        }
        Ok(Self { terms })
    }

    /// Distributed term-by-term product: coefficients and exponential bases
    /// multiply, polynomial and log exponents add.
    pub fn multiply(&self, other: &Self) -> Result<Self, GrowthError> {
        let mut products = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                products.push(GrowthTerm::new(
                    a.coeff * b.coeff,
                    a.exp_base * b.exp_base,
                    a.poly_exp + b.poly_exp,
                    a.log_exp + b.log_exp,
                )?);
            }
        }
        Self::new(products)
    }

    /// Exact `lim self/other` as n goes to infinity.
    ///
    /// The dominant keys decide the tag; equal keys give the ratio of the
    /// dominant coefficients. No numerical limit estimation is involved.
    /// With equal keys the limit is a positive real by construction, so the
    /// ratio is clamped into the positive float range rather than ever
    /// reporting a spurious zero or infinity.
    pub fn limit_ratio(&self, other: &Self) -> Limit {
        let fk = self.dominant().dominance_key();
        let gk = other.dominant().dominance_key();
        match fk.partial_cmp(&gk).expect("dominance keys are finite") {
            std::cmp::Ordering::Greater => Limit::Infinite,
            std::cmp::Ordering::Less => Limit::Zero,
            std::cmp::Ordering::Equal => {
                let ratio = self.dominant().coeff / other.dominant().coeff;
                Limit::Finite(ratio.clamp(f64::MIN_POSITIVE, f64::MAX))
            }
        }
    }
}

//! Rate-parameterized asymptotic classes and their calculus.
//!
//! A class is a kind (big theta / big O / big omega / small o / small omega),
//! a positive rate `r`, and a reference growth function `g`. Membership is
//! decided by the exact limit of the ratio against the reference:
//!
//! * `theta_r(g)`: limit equals `r`
//! * `O_r(g)`: limit in `[0, r]`
//! * `omega_r(g)`: limit in `[r, inf)`
//! * `o(g)`: limit is zero; `w(g)`: limit is infinite
//!
//! The small classes coincide with their classical counterparts, so they
//! carry no meaningful rate (it is stored as 1 and ignored). The remaining
//! operations package the calculus rules: canonical signatures, reference
//! rescaling, transitivity, symmetry, transposition, projection, and the
//! addition rules for same-kind classes.

use std::fmt;

use crate::growth::{GrowthError, GrowthFunction, Limit};

/// Relative tolerance for comparing a witnessed limit against a rate.
///
/// Limits are computed exactly on the dominance keys; the tolerance only
/// absorbs float rounding in coefficient arithmetic (e.g. `r * c / c`).
pub const RATE_RELATIVE_TOLERANCE: f64 = 1e-12;

pub(crate) fn rate_eq(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= RATE_RELATIVE_TOLERANCE * a.abs().max(b.abs())
}

/// The five class kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RClassKind {
    BigTheta,
    BigO,
    BigOmega,
    SmallO,
    SmallOmega,
}

impl RClassKind {
    /// True for the three kinds whose rate parameter is meaningful.
    pub fn is_big(&self) -> bool {
        matches!(self, RClassKind::BigTheta | RClassKind::BigO | RClassKind::BigOmega)
    }

    /// Text keyword used by the class notation grammar.
    pub fn notation(&self) -> &'static str {
        match self {
            RClassKind::BigTheta => "theta",
            RClassKind::BigO => "O",
            RClassKind::BigOmega => "omega",
            RClassKind::SmallO => "o",
            RClassKind::SmallOmega => "w",
        }
    }
}

/// Errors raised by class construction and calculus operations.
#[derive(Debug, Clone, PartialEq)]
pub enum RClassError {
    NonPositiveRate(f64),
    /// The operation is undefined for the given kind (e.g. rescaling a
    /// small class, whose rate carries no information).
    NotApplicable(&'static str),
    PreconditionFailed(String),
    KindMismatch { left: RClassKind, right: RClassKind },
    Growth(GrowthError),
}

impl fmt::Display for RClassError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RClassError::NonPositiveRate(r) => write!(f, "rate must be positive, got {r}"),
            RClassError::NotApplicable(what) => write!(f, "operation not applicable: {what}"),
            RClassError::PreconditionFailed(msg) => write!(f, "precondition failed: {msg}"),
            RClassError::KindMismatch { left, right } => write!(
                f,
                "class kinds must match, got {} and {}",
                left.notation(),
                right.notation()
            ),
            RClassError::Growth(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RClassError {}

impl From<GrowthError> for RClassError {
    fn from(e: GrowthError) -> Self {
        RClassError::Growth(e)
    }
}

/// A rate-parameterized asymptotic class `kind_rate(reference)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RClass {
    kind: RClassKind,
    rate: f64,
    reference: GrowthFunction,
}

impl RClass {
    /// Builds a class. Small kinds ignore the rate and store 1.
    pub fn new(kind: RClassKind, rate: f64, reference: GrowthFunction) -> Result<Self, RClassError> {
        if kind.is_big() {
            if !rate.is_finite() || rate <= 0.0 {
                return Err(RClassError::NonPositiveRate(rate));
            }
            Ok(Self { kind, rate, reference })
        } else {
            Ok(Self { kind, rate: 1.0, reference })
        }
    }

    pub fn big_theta(rate: f64, reference: GrowthFunction) -> Result<Self, RClassError> {
        Self::new(RClassKind::BigTheta, rate, reference)
    }

    pub fn big_o(rate: f64, reference: GrowthFunction) -> Result<Self, RClassError> {
        Self::new(RClassKind::BigO, rate, reference)
    }

    pub fn big_omega(rate: f64, reference: GrowthFunction) -> Result<Self, RClassError> {
        Self::new(RClassKind::BigOmega, rate, reference)
    }

    pub fn small_o(reference: GrowthFunction) -> Self {
        Self { kind: RClassKind::SmallO, rate: 1.0, reference }
    }

    pub fn small_omega(reference: GrowthFunction) -> Self {
        Self { kind: RClassKind::SmallOmega, rate: 1.0, reference }
    }

    pub fn kind(&self) -> RClassKind {
        self.kind
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn reference(&self) -> &GrowthFunction {
        &self.reference
    }

    /// Decides membership of `f` in this class from the exact limit of
    /// `f / reference`. The returned verdict carries the witness limit.
    pub fn admits(&self, f: &GrowthFunction) -> MembershipVerdict {
        let limit = f.limit_ratio(&self.reference);
        let member = match self.kind {
            RClassKind::BigTheta => {
                matches!(limit, Limit::Finite(v) if rate_eq(v, self.rate))
            }
            RClassKind::BigO => match limit {
                Limit::Zero => true,
                Limit::Finite(v) => v < self.rate || rate_eq(v, self.rate),
                Limit::Infinite => false,
            },
            RClassKind::BigOmega => match limit {
                Limit::Infinite => true,
                Limit::Finite(v) => v > self.rate || rate_eq(v, self.rate),
                Limit::Zero => false,
            },
            RClassKind::SmallO => limit.is_zero(),
            RClassKind::SmallOmega => limit.is_infinite(),
        };
        MembershipVerdict { member, limit }
    }
}

/// Membership decision together with the witness limit it was derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipVerdict {
    pub member: bool,
    pub limit: Limit,
}

/// Canonical theta signature of `f`: the monic dominant shape together with
/// the dominant coefficient as the rate, so that `f` is a member of
/// `theta_r(shape)` with `r` the returned coefficient.
pub fn theta_signature(f: &GrowthFunction) -> (GrowthFunction, f64) {
    let dominant = f.dominant();
    let rate = dominant.coeff();
    let monic = GrowthFunction::from_term(
        crate::growth::GrowthTerm::new(1.0, dominant.exp_base(), dominant.poly_exp(), dominant.log_exp())
            .expect("monic copy of a valid term is valid"),
    );
    (monic, rate)
}

/// Moves a big class to an equivalent parameterization: scaling the
/// reference by `1/x` multiplies the rate by `x`, leaving the member set
/// unchanged.
pub fn rescale_reference(cls: &RClass, x: f64) -> Result<RClass, RClassError> {
    if !cls.kind.is_big() {
        return Err(RClassError::NotApplicable(
            "small classes carry no rate to rescale",
        ));
    }
    if !x.is_finite() || x <= 0.0 {
        return Err(RClassError::Growth(GrowthError::NonPositiveScalar(x)));
    }
    let reference = cls.reference.scale(1.0 / x)?;
    RClass::new(cls.kind, cls.rate * x, reference)
}

/// Rate produced by chaining two memberships of the same big kind: if `f`
/// is in `K_r(g)` and `g` is in `K_r'(h)` then `f` is in `K_{r*r'}(h)`.
/// For the small kinds composition preserves the kind and the value carries
/// no information.
pub fn compose_transitive(outer: &RClass, inner_rate: f64) -> f64 {
    outer.rate * inner_rate
}

/// Symmetry rule for theta classes: membership of `f` in `theta_r(g)`
/// forces membership of `g` in `theta_{1/r}(f)`. Returns the verdict of the
/// flipped membership; fails if the assumed membership does not hold.
pub fn symmetry_dual(
    f: &GrowthFunction,
    g: &GrowthFunction,
    r: f64,
) -> Result<MembershipVerdict, RClassError> {
    let forward = RClass::big_theta(r, g.clone())?.admits(f);
    if !forward.member {
        return Err(RClassError::PreconditionFailed(format!(
            "expected membership in theta_{r}(reference), witness limit was {}",
            forward.limit
        )));
    }
    Ok(RClass::big_theta(1.0 / r, f.clone())?.admits(g))
}

/// Transpose rule: `f` in `O_r(g)` if and only if `g` in `omega_{1/r}(f)`.
/// Returns both verdicts; their `member` flags always agree.
pub fn transpose_dual(
    f: &GrowthFunction,
    g: &GrowthFunction,
    r: f64,
) -> Result<(MembershipVerdict, MembershipVerdict), RClassError> {
    let forward = RClass::big_o(r, g.clone())?.admits(f);
    let backward = RClass::big_omega(1.0 / r, f.clone())?.admits(g);
    Ok((forward, backward))
}

/// Projection rule: `f` in `theta_r(g)` if and only if it is in both
/// `O_r(g)` and `omega_r(g)`. Returns the three verdicts for inspection.
pub fn project_theta(
    f: &GrowthFunction,
    g: &GrowthFunction,
    r: f64,
) -> Result<(MembershipVerdict, MembershipVerdict, MembershipVerdict), RClassError> {
    let theta = RClass::big_theta(r, g.clone())?.admits(f);
    let big_o = RClass::big_o(r, g.clone())?.admits(f);
    let big_omega = RClass::big_omega(r, g.clone())?.admits(f);
    Ok((theta, big_o, big_omega))
}

/// Adds two classes of the same kind.
///
/// With `t = lim f/g` for references `f` of `a` and `g` of `b`: a zero
/// limit keeps `b`, an infinite limit keeps `a`, and a finite limit yields
/// a class of `a`'s kind with rate `r` and reference `f + (q/r) * g`.
/// The finite-case reference makes the sum of any representatives land on
/// rate `r` exactly: representatives scale as `r*f + q*g = r*(f + (q/r)*g)`.
/// Small classes follow the classical rules with rates ignored.
pub fn add_classes(a: &RClass, b: &RClass) -> Result<RClass, RClassError> {
    if a.kind != b.kind {
        return Err(RClassError::KindMismatch { left: a.kind, right: b.kind });
    }
    match a.reference.limit_ratio(&b.reference) {
        Limit::Zero => Ok(b.clone()),
        Limit::Infinite => Ok(a.clone()),
        Limit::Finite(_) => {
            if a.kind.is_big() {
                let reference = a.reference.add(&b.reference.scale(b.rate / a.rate)?);
                RClass::new(a.kind, a.rate, reference)
            } else {
                // classical small-class addition: any same-order reference works
                RClass::new(a.kind, 1.0, a.reference.add(&b.reference))
            }
        }
    }
}

//! Growth-model estimation from measured samples.
//!
//! Raw measurements arrive as a [`SampleSeries`] per metric (for example
//! execution time and memory as functions of input size). [`fit_best`]
//! fits every candidate family `value ~ coeff * shape(n) + intercept` by
//! least squares and keeps the best-scoring descriptor; the resulting
//! [`FitModel`] bridges into the symbolic algebra through
//! [`to_growth_function`], and [`crossover`]/[`extrapolate`] answer the
//! finite-input questions the asymptotic classes alone cannot.

use std::fmt;

use crate::growth::{GrowthFunction, GrowthTerm};

/// Score difference below which two candidate fits count as tied and the
/// simpler family wins.
pub const SCORE_TIE_TOLERANCE: f64 = 1e-9;

/// Model families available to the fitter, ordered here by shape:
/// `1`, `log n`, `n^d`, `n log n`, `2^n` (natural log throughout).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Const,
    Log,
    Poly,
    NLogN,
    Exp,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Const, Family::Log, Family::Poly, Family::NLogN, Family::Exp];

    pub fn label(&self) -> &'static str {
        match self {
            Family::Const => "CONST",
            Family::Log => "LOG",
            Family::Poly => "POLY",
            Family::NLogN => "NLOGN",
            Family::Exp => "EXP",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        match label {
            "CONST" => Some(Family::Const),
            "LOG" => Some(Family::Log),
            "POLY" => Some(Family::Poly),
            "NLOGN" => Some(Family::NLogN),
            "EXP" => Some(Family::Exp),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Errors raised by series validation, fitting and finite-input queries.
#[derive(Debug, Clone, PartialEq)]
pub enum EstimatorError {
    InvalidSeries(String),
    DomainError { n: u64 },
    /// All design values are identical; the normal equations are singular.
    DegenerateDesign { family: Family, degree: f64 },
    /// The shape values exceeded the float range for this series.
    DesignOverflow { family: Family },
    /// Least squares produced a non-positive leading coefficient.
    NonPositiveCoefficient { family: Family, degree: f64 },
    NoViableModel { metric: String },
}

impl fmt::Display for EstimatorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EstimatorError::InvalidSeries(msg) => write!(f, "invalid sample series: {msg}"),
            EstimatorError::DomainError { n } => {
                write!(f, "model shapes are defined for n >= 2, got n = {n}")
            }
            EstimatorError::DegenerateDesign { family, degree } => {
                write!(f, "degenerate design for {family} (degree {degree}): all shape values equal")
            }
            EstimatorError::DesignOverflow { family } => {
                write!(f, "shape values for {family} overflow at these input sizes")
            }
            EstimatorError::NonPositiveCoefficient { family, degree } => {
                write!(f, "fit for {family} (degree {degree}) produced a non-positive coefficient")
            }
            EstimatorError::NoViableModel { metric } => {
                write!(f, "no viable model for metric '{metric}'")
            }
        }
    }
}

impl std::error::Error for EstimatorError {}

/// Ordered `(input size, metric value)` measurements for one metric.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSeries {
    metric_name: String,
    unit: String,
    points: Vec<(u64, f64)>,
}

impl SampleSeries {
    /// Validates the invariants: at least three points, strictly increasing
    /// input sizes, strictly positive finite values.
    pub fn new(
        metric_name: impl Into<String>,
        unit: impl Into<String>,
        points: Vec<(u64, f64)>,
    ) -> Result<Self, EstimatorError> {
        let metric_name = metric_name.into();
        if points.len() < 3 {
            return Err(EstimatorError::InvalidSeries(format!(
                "metric '{metric_name}' has {} points, need at least 3",
                points.len()
            )));
        }
        for window in points.windows(2) {
            if window[1].0 <= window[0].0 {
                return Err(EstimatorError::InvalidSeries(format!(
                    "metric '{metric_name}' input sizes must be strictly increasing \
                     ({} then {})",
                    window[0].0, window[1].0
                )));
            }
        }
        for &(n, value) in &points {
            if !value.is_finite() || value <= 0.0 {
                return Err(EstimatorError::InvalidSeries(format!(
                    "metric '{metric_name}' has non-positive value {value} at n = {n}"
                )));
            }
        }
        Ok(Self { metric_name, unit: unit.into(), points })
    }

    pub fn metric_name(&self) -> &str {
        &self.metric_name
    }

    pub fn unit(&self) -> &str {
        &self.unit
    }

    pub fn points(&self) -> &[(u64, f64)] {
        &self.points
    }
}

/// Fitted descriptor: `value ~ coeff * shape(n) + intercept` plus the
/// normalized-RMSE score of the fit (lower is better).
#[derive(Debug, Clone, PartialEq)]
pub struct FitModel {
    pub family: Family,
    /// Polynomial degree; zero for the non-polynomial families.
    pub degree: f64,
    pub coeff: f64,
    pub intercept: f64,
    pub score: f64,
}

/// One fitted metric of an input program.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricFit {
    pub metric_name: String,
    pub unit: String,
    pub model: FitModel,
}

/// Per-metric model descriptors for one measured program.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub metrics: Vec<MetricFit>,
}

/// Search space for [`fit_best`].
#[derive(Debug, Clone, PartialEq)]
pub struct FitConfig {
    /// Degree grid used for the polynomial family.
    pub degrees: Vec<f64>,
    pub families: Vec<Family>,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            degrees: vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
            families: Family::ALL.to_vec(),
        }
    }
}

/// Basis value of a family at input `n >= 2`; `degree` only matters for
/// the polynomial family.
pub fn shape(family: Family, degree: f64, n: u64) -> Result<f64, EstimatorError> {
    if n < 2 {
        return Err(EstimatorError::DomainError { n });
    }
    let nf = n as f64;
    Ok(match family {
        Family::Const => 1.0,
        Family::Log => nf.ln(),
        Family::Poly => nf.powf(degree),
        Family::NLogN => nf * nf.ln(),
        Family::Exp => 2f64.powf(nf),
    })
}

/// Least-squares fit of one family (and degree) to a series.
///
/// The constant family cannot be fit through the two-parameter design (its
/// shape column is constant), so by convention the level is carried in the
/// coefficient and the intercept stays zero.
pub fn fit_family(series: &SampleSeries, family: Family, degree: f64) -> Result<FitModel, EstimatorError> {
    let points = series.points();
    let count = points.len() as f64;
    let mean_y = points.iter().map(|&(_, y)| y).sum::<f64>() / count;

    if family == Family::Const {
        let rmse = (points.iter().map(|&(_, y)| (y - mean_y) * (y - mean_y)).sum::<f64>() / count).sqrt();
        return Ok(FitModel {
            family,
            degree: 0.0,
            coeff: mean_y,
            intercept: 0.0,
            score: rmse / mean_y,
        });
    }

    let design: Vec<f64> = points
        .iter()
        .map(|&(n, _)| shape(family, degree, n))
        .collect::<Result<_, _>>()?;
    if design.iter().any(|x| !x.is_finite()) {
        return Err(EstimatorError::DesignOverflow { family });
    }
    if design.iter().all(|&x| x == design[0]) {
        return Err(EstimatorError::DegenerateDesign { family, degree });
    }

    // normal equations for value ~ a * shape + b
    let sum_x: f64 = design.iter().sum();
    let sum_xx: f64 = design.iter().map(|x| x * x).sum();
    let sum_y: f64 = points.iter().map(|&(_, y)| y).sum();
    let sum_xy: f64 = design.iter().zip(points).map(|(x, &(_, y))| x * y).sum();
    let det = count * sum_xx - sum_x * sum_x;
    let coeff = (count * sum_xy - sum_x * sum_y) / det;
    let intercept = (sum_y - coeff * sum_x) / count;
    if !coeff.is_finite() || !intercept.is_finite() {
        return Err(EstimatorError::DegenerateDesign { family, degree });
    }
    if coeff <= 0.0 {
        return Err(EstimatorError::NonPositiveCoefficient { family, degree });
    }

    let rmse = (design
        .iter()
        .zip(points)
        .map(|(x, &(_, y))| {
            let residual = y - (coeff * x + intercept);
            residual * residual
        })
        .sum::<f64>()
        / count)
        .sqrt();

    Ok(FitModel {
        family,
        degree: if family == Family::Poly { degree } else { 0.0 },
        coeff,
        intercept,
        score: rmse / mean_y,
    })
}

/// Ordering constant for tie-breaking: lower means simpler growth. The
/// `n log n` family sits strictly between the degree-1 and degree-2
/// polynomials.
fn complexity_rank(family: Family, degree: f64) -> f64 {
    match family {
        Family::Const => 0.0,
        Family::Log => 1.0,
        Family::Poly => 1.0 + degree,
        Family::NLogN => 2.5,
        Family::Exp => 1e9,
    }
}

/// Fits every configured candidate and returns the best-scoring model.
/// Candidates whose fit fails (degenerate design, non-positive coefficient,
/// overflow) are discarded; score ties go to the simpler family.
pub fn fit_best(series: &SampleSeries, config: &FitConfig) -> Result<FitModel, EstimatorError> {
    // an input below the domain floor would fail every candidate alike;
    // report it as the input problem it is
    if let Some(&(n, _)) = series.points().iter().find(|&&(n, _)| n < 2) {
        return Err(EstimatorError::DomainError { n });
    }
    let mut candidates: Vec<(Family, f64)> = Vec::new();
    for &family in &config.families {
        if family == Family::Poly {
            candidates.extend(config.degrees.iter().map(|&d| (family, d)));
        } else {
            candidates.push((family, 0.0));
        }
    }
    candidates.sort_by(|a, b| {
        complexity_rank(a.0, a.1)
            .partial_cmp(&complexity_rank(b.0, b.1))
            .expect("ranks are finite")
    });

    let mut best: Option<FitModel> = None;
    for (family, degree) in candidates {
        let Ok(model) = fit_family(series, family, degree) else {
            continue;
        };
        match &best {
            Some(current) if model.score >= current.score - SCORE_TIE_TOLERANCE => {}
            _ => best = Some(model),
        }
    }
    best.ok_or_else(|| EstimatorError::NoViableModel { metric: series.metric_name.clone() })
}

/// Fits every series with the same configuration, keeping input order.
/// Metric names must be unique across the input.
pub fn fit_embedding(series: &[SampleSeries], config: &FitConfig) -> Result<Embedding, EstimatorError> {
    for (i, s) in series.iter().enumerate() {
        if series[..i].iter().any(|other| other.metric_name == s.metric_name) {
            return Err(EstimatorError::InvalidSeries(format!(
                "duplicate metric name '{}'",
                s.metric_name
            )));
        }
    }
    let metrics = series
        .iter()
        .map(|s| {
            Ok(MetricFit {
                metric_name: s.metric_name.clone(),
                unit: s.unit.clone(),
                model: fit_best(s, config)?,
            })
        })
        .collect::<Result<_, EstimatorError>>()?;
    Ok(Embedding { metrics })
}

/// Bridges a fitted descriptor into the symbolic growth algebra.
///
/// The growth algebra only admits positive coefficients, so a negative
/// intercept cannot be represented: it is dropped and returned as the
/// second tuple element so callers can surface a warning.
pub fn to_growth_function(model: &FitModel) -> (GrowthFunction, Option<f64>) {
    let shape_term = match model.family {
        Family::Const => GrowthTerm::constant(model.coeff),
        Family::Log => GrowthTerm::poly_log(model.coeff, 0.0, 1.0),
        Family::Poly => GrowthTerm::poly(model.coeff, model.degree),
        Family::NLogN => GrowthTerm::poly_log(model.coeff, 1.0, 1.0),
        Family::Exp => GrowthTerm::exponential(model.coeff, 2.0),
    }
    .expect("fit models carry positive coefficients");

    let mut terms = vec![shape_term];
    let mut dropped = None;
    if model.intercept > 0.0 {
        terms.push(GrowthTerm::constant(model.intercept).expect("positive intercept"));
    } else if model.intercept < 0.0 {
        dropped = Some(model.intercept);
    }
    (GrowthFunction::new(terms).expect("nonempty term list"), dropped)
}

/// Evaluates a fitted model at `n`, reporting overflow as `+inf` rather
/// than an error.
pub fn extrapolate(model: &FitModel, n: u64) -> Result<f64, EstimatorError> {
    let value = model.coeff * shape(model.family, model.degree, n)? + model.intercept;
    Ok(if value.is_finite() { value } else { f64::INFINITY })
}

/// Input sizes up to this bound are checked one by one in [`crossover`];
/// beyond it the sign of `f2 - f1` is sampled geometrically and the flip
/// point refined by binary search.
const DENSE_SCAN_LIMIT: u64 = 65_536;

/// Smallest `n >= 2` from which `f2` stays strictly above `f1` at every
/// sampled input up to `horizon`, or `None` when no such point exists
/// within the horizon.
pub fn crossover(
    f1: &GrowthFunction,
    f2: &GrowthFunction,
    horizon: u64,
) -> Result<Option<u64>, EstimatorError> {
    if horizon < 2 {
        return Err(EstimatorError::DomainError { n: horizon });
    }
    let greater = |m: u64| match (f1.evaluate(m), f2.evaluate(m)) {
        (Ok(a), Ok(b)) => b > a,
        // past the float range, compare in log space
        _ => f2.ln_evaluate(m) > f1.ln_evaluate(m),
    };

    let dense_end = horizon.min(DENSE_SCAN_LIMIT);
    let mut last_violation: Option<u64> = None;
    for m in 2..=dense_end {
        if !greater(m) {
            last_violation = Some(m);
        }
    }

    let mut sparse: Vec<u64> = Vec::new();
    if horizon > dense_end {
        let mut m = dense_end;
        loop {
            m = match m.checked_mul(2) {
                Some(next) if next < horizon => next,
                _ => break,
            };
            sparse.push(m);
        }
        sparse.push(horizon);
        for &s in &sparse {
            if !greater(s) {
                last_violation = Some(s);
            }
        }
    }

    let violation = match last_violation {
        None => return Ok(Some(2)),
        Some(v) if v == horizon => return Ok(None),
        Some(v) => v,
    };

    // every sampled point above the last violation satisfies the predicate;
    // locate the flip between it and the next sample
    let upper = if violation < dense_end {
        violation + 1
    } else {
        sparse
            .iter()
            .copied()
            .find(|&s| s > violation)
            .unwrap_or(horizon)
    };
    let (mut lo, mut hi) = (violation + 1, upper);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if greater(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(Some(lo))
}

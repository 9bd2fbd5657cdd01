//! Brute-force numeric referee for limit computations.
//!
//! [`estimate_limit`] evaluates the ratio `f(n)/g(n)` along a geometric
//! schedule of inputs and classifies the trend. It is deliberately
//! independent of the symbolic dominance comparison in
//! [`GrowthFunction::limit_ratio`] so the two can check each other.
//! Pairs that separate only by log factors converge too slowly for the
//! thresholds below; the oracle then abstains with
//! [`OracleClassification::Inconclusive`] rather than guessing.

use crate::growth::GrowthFunction;

/// Ratios below this (and still falling) classify as a zero limit.
pub const ZERO_THRESHOLD: f64 = 1e-9;
/// Ratios above this (and still rising) classify as an infinite limit.
pub const INFINITE_THRESHOLD: f64 = 1e9;
/// Relative agreement required of the last three ratios for a finite call.
pub const FINITE_WINDOW_TOLERANCE: f64 = 1e-3;

/// Geometric evaluation schedule: n = 2^k for k in `min_exponent..=max_exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleSchedule {
    pub min_exponent: u32,
    pub max_exponent: u32,
}

impl Default for OracleSchedule {
    fn default() -> Self {
        Self { min_exponent: 4, max_exponent: 40 }
    }
}

impl OracleSchedule {
    fn inputs(&self) -> impl Iterator<Item = u64> + '_ {
        (self.min_exponent..=self.max_exponent).map(|k| 1u64 << k)
    }
}

/// Trend classification of the sampled ratios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleClassification {
    Zero,
    Finite(f64),
    Infinite,
    /// The samples neither settled nor clearly diverged; the oracle abstains.
    Inconclusive,
}

/// Estimate result together with the `(n, ratio)` samples it was drawn from.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleEstimate {
    pub classification: OracleClassification,
    pub samples: Vec<(u64, f64)>,
}

/// Numerically estimates `lim f/g` along the schedule, stopping early if
/// evaluation overflows the float range.
pub fn estimate_limit(
    f: &GrowthFunction,
    g: &GrowthFunction,
    schedule: OracleSchedule,
) -> OracleEstimate {
    let mut samples = Vec::new();
    for n in schedule.inputs() {
        match (f.evaluate(n), g.evaluate(n)) {
            (Ok(fv), Ok(gv)) => samples.push((n, fv / gv)),
            _ => break,
        }
    }
    OracleEstimate { classification: classify(&samples), samples }
}

fn classify(samples: &[(u64, f64)]) -> OracleClassification {
    if samples.len() < 3 {
        return OracleClassification::Inconclusive;
    }
    let r = |i: usize| samples[samples.len() - 3 + i].1;
    let (a, b, c) = (r(0), r(1), r(2));

    if c < ZERO_THRESHOLD && a > b && b > c {
        return OracleClassification::Zero;
    }
    if c > INFINITE_THRESHOLD && a < b && b < c {
        return OracleClassification::Infinite;
    }
    let settled = (a - c).abs() <= FINITE_WINDOW_TOLERANCE * c.abs()
        && (b - c).abs() <= FINITE_WINDOW_TOLERANCE * c.abs();
    if settled {
        return OracleClassification::Finite(c);
    }
    OracleClassification::Inconclusive
}

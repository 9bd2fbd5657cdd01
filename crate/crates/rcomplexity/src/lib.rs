//! Rate-parameterized asymptotic complexity calculus.
//!
//! Classical asymptotic classes treat `f` and `2024 * f` as the same thing.
//! This crate implements a refinement in which every class carries a rate
//! `r`: `theta_r(g)` holds exactly the functions whose ratio against `g`
//! tends to `r`, `O_r(g)` those whose limit lands in `[0, r]`, and
//! `omega_r(g)` those landing in `[r, inf)`. The small classes `o` and `w`
//! coincide with their classical counterparts.
//!
//! The building blocks:
//!
//! * [`growth`] — a closed algebra of functions `c * q^n * n^a * log^b(n)`
//!   with exact limit-of-ratio computation.
//! * [`rclass`] — the classes themselves plus the calculus rules
//!   (membership, rescaling, transitivity, symmetry, transposition,
//!   projection, and class addition).
//! * [`oracle`] — an independent numeric referee that estimates limits by
//!   brute-force evaluation, used to cross-check the symbolic results.
//! * [`estimator`] — fits growth models to measured `(input size, metric)`
//!   samples, emits per-metric descriptors, and answers finite-input
//!   questions (crossover points, extrapolation).
//! * [`io`] — a text grammar for functions and class notations, and a CSV
//!   reader for raw measurement series.

pub mod estimator;
pub mod growth;
pub mod io;
pub mod oracle;
pub mod rclass;

pub use estimator::{
    crossover, extrapolate, fit_best, fit_embedding, fit_family, shape, to_growth_function,
    Embedding, EstimatorError, Family, FitConfig, FitModel, MetricFit, SampleSeries,
};
pub use growth::{GrowthError, GrowthFunction, GrowthTerm, Limit};
pub use oracle::{estimate_limit, OracleClassification, OracleEstimate, OracleSchedule};
pub use rclass::{
    add_classes, compose_transitive, project_theta, rescale_reference, symmetry_dual,
    theta_signature, transpose_dual, MembershipVerdict, RClass, RClassError, RClassKind,
};

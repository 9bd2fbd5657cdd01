//! Command-line front end for the r-complexity calculus.
//!
//! Subcommands: `fit` (CSV measurements to model descriptors), `member`
//! (class membership with witness limit), `limit` (exact ratio limit,
//! optionally cross-checked numerically), `add` (class addition), and
//! `compare` (crossover points and finite-input values).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use rcomplexity::io::read_csv_path;
use rcomplexity::io::{format_class, parse_class, parse_function};
use rcomplexity::oracle::{estimate_limit, OracleClassification, OracleSchedule};
use rcomplexity::{
    add_classes, crossover, extrapolate, fit_embedding, to_growth_function, Embedding,
    EstimatorError, Family, FitConfig, FitModel, GrowthError, GrowthFunction, Limit,
};

const EXIT_NON_MEMBER: u8 = 1;
const EXIT_INPUT_ERROR: u8 = 2;
const EXIT_NO_MODEL: u8 = 3;
const EXIT_ORACLE_DISAGREEMENT: u8 = 4;

const EXIT_CODE_HELP: &str = "Exit codes:
  0  success (for `member`: the function is a member)
  1  non-member verdict from `member`
  2  input error (unreadable file, malformed CSV, expression or flags)
  3  no viable model for a metric in `fit`
  4  `limit --verify` disagreed with the numeric oracle";

#[derive(Parser)]
#[command(
    name = "rcx",
    version,
    about = "Rate-parameterized asymptotic complexity: membership, limits, class arithmetic, fitting",
    after_help = EXIT_CODE_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Fit growth models to a CSV of (metric, unit, n, value) samples
    Fit {
        /// CSV file with header `metric,unit,n,value`
        #[arg(long)]
        input: PathBuf,
        /// Polynomial degree grid, e.g. 1,2,3
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<f64>>,
        /// Families to try: CONST, LOG, POLY, NLOGN, EXP
        #[arg(long, value_delimiter = ',')]
        families: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = OutputMode::Human)]
        output: OutputMode,
    },
    /// Decide membership of a function in a class
    Member {
        /// Growth expression, e.g. "2.1*n+1"
        #[arg(long)]
        function: String,
        /// Class notation, e.g. "theta_2.1(n)" or "o(n^2)"
        #[arg(long)]
        class: String,
    },
    /// Exact limit of a ratio of growth functions
    Limit {
        #[arg(long)]
        num: String,
        #[arg(long)]
        den: String,
        /// Cross-check the result against the numeric oracle
        #[arg(long)]
        verify: bool,
    },
    /// Add two classes of the same kind
    Add {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Crossover point between two functions, with optional point values
    Compare {
        /// Growth expression or fitted-model JSON
        #[arg(long)]
        f1: String,
        #[arg(long)]
        f2: String,
        #[arg(long, default_value_t = 1_000_000)]
        horizon: u64,
        /// Also print both values at this input size
        #[arg(long)]
        at: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Fit { input, degrees, families, output } => cmd_fit(&input, degrees, families, output),
        Command::Member { function, class } => cmd_member(&function, &class),
        Command::Limit { num, den, verify } => cmd_limit(&num, &den, verify),
        Command::Add { left, right } => cmd_add(&left, &right),
        Command::Compare { f1, f2, horizon, at } => cmd_compare(&f1, &f2, horizon, at),
    };
    ExitCode::from(code)
}

/// Rounds to 12 significant digits so human and JSON output carry the same
/// numeric content and fitted coefficients survive a round trip.
fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("scientific notation round-trips")
}

fn display_value(x: f64) -> String {
    if x.is_infinite() {
        "inf".to_string()
    } else {
        format!("{}", sig12(x))
    }
}

fn display_limit(limit: Limit) -> String {
    match limit {
        Limit::Zero => "0".to_string(),
        Limit::Finite(v) => display_value(v),
        Limit::Infinite => "Infinite".to_string(),
    }
}

#[derive(Serialize)]
struct MetricJson {
    name: String,
    unit: String,
    family: String,
    degree: f64,
    coeff: f64,
    intercept: f64,
    score: f64,
}

#[derive(Serialize)]
struct EmbeddingJson {
    metrics: Vec<MetricJson>,
}

fn embedding_json(embedding: &Embedding) -> EmbeddingJson {
    EmbeddingJson {
        metrics: embedding
            .metrics
            .iter()
            .map(|m| MetricJson {
                name: m.metric_name.clone(),
                unit: m.unit.clone(),
                family: m.model.family.label().to_string(),
                degree: sig12(m.model.degree),
                coeff: sig12(m.model.coeff),
                intercept: sig12(m.model.intercept),
                score: sig12(m.model.score),
            })
            .collect(),
    }
}

fn cmd_fit(
    input: &PathBuf,
    degrees: Option<Vec<f64>>,
    families: Option<Vec<String>>,
    output: OutputMode,
) -> u8 {
    let series = match read_csv_path(input) {
        Ok(series) => series,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };

    let mut config = FitConfig::default();
    if let Some(degrees) = degrees {
        if degrees.is_empty() || degrees.iter().any(|&d| !d.is_finite() || d < 1.0) {
            eprintln!("error: --degrees must be a non-empty list of reals >= 1");
            return EXIT_INPUT_ERROR;
        }
        config.degrees = degrees;
    }
    if let Some(families) = families {
        let mut parsed = Vec::new();
        for label in &families {
            match Family::from_label(label) {
                Some(family) => parsed.push(family),
                None => {
                    eprintln!("error: unknown family '{label}' (expected CONST, LOG, POLY, NLOGN or EXP)");
                    return EXIT_INPUT_ERROR;
                }
            }
        }
        config.families = parsed;
    }

    let embedding = match fit_embedding(&series, &config) {
        Ok(embedding) => embedding,
        Err(e @ EstimatorError::NoViableModel { .. }) => {
            eprintln!("error: {e}");
            return EXIT_NO_MODEL;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };

    match output {
        OutputMode::Json => {
            let json = serde_json::to_string_pretty(&embedding_json(&embedding))
                .expect("embedding serializes");
            println!("{json}");
        }
        OutputMode::Human => {
            for m in &embedding.metrics {
                println!(
                    "{} ({}): family {}, degree {}, coeff {}, intercept {}, score {}",
                    m.metric_name,
                    m.unit,
                    m.model.family.label(),
                    display_value(m.model.degree),
                    display_value(m.model.coeff),
                    display_value(m.model.intercept),
                    display_value(m.model.score),
                );
            }
        }
    }
    0
}

fn cmd_member(function: &str, class: &str) -> u8 {
    let f = match parse_function(function) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error in --function: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let cls = match parse_class(class) {
        Ok(cls) => cls,
        Err(e) => {
            eprintln!("error in --class: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let verdict = cls.admits(&f);
    if verdict.member {
        println!("member, limit = {}", display_limit(verdict.limit));
        0
    } else {
        println!("non-member, limit = {}", display_limit(verdict.limit));
        EXIT_NON_MEMBER
    }
}

fn cmd_limit(num: &str, den: &str, verify: bool) -> u8 {
    let numerator = match parse_function(num) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error in --num: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let denominator = match parse_function(den) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error in --den: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let limit = numerator.limit_ratio(&denominator);
    println!("{}", display_limit(limit));

    if verify {
        let estimate = estimate_limit(&numerator, &denominator, OracleSchedule::default());
        let agreement = match (estimate.classification, limit) {
            (OracleClassification::Inconclusive, _) => None,
            (OracleClassification::Zero, Limit::Zero) => Some(true),
            (OracleClassification::Infinite, Limit::Infinite) => Some(true),
            (OracleClassification::Finite(e), Limit::Finite(v)) => {
                Some((e - v).abs() <= 1e-3 * e.abs().max(v.abs()))
            }
            _ => Some(false),
        };
        match agreement {
            None => eprintln!("numeric oracle abstained (inconclusive); symbolic result stands"),
            Some(true) => eprintln!("numeric oracle agrees"),
            Some(false) => {
                eprintln!(
                    "numeric oracle disagrees: estimated {:?}, symbolic {}",
                    estimate.classification,
                    display_limit(limit)
                );
                return EXIT_ORACLE_DISAGREEMENT;
            }
        }
    }
    0
}

fn cmd_add(left: &str, right: &str) -> u8 {
    let a = match parse_class(left) {
        Ok(cls) => cls,
        Err(e) => {
            eprintln!("error in --left: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let b = match parse_class(right) {
        Ok(cls) => cls,
        Err(e) => {
            eprintln!("error in --right: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    match add_classes(&a, &b) {
        Ok(sum) => {
            println!("{}", format_class(&sum));
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

/// JSON form of a fitted descriptor accepted by `compare`.
#[derive(Deserialize)]
struct FitDescriptor {
    family: String,
    #[serde(default)]
    degree: f64,
    coeff: f64,
    #[serde(default)]
    intercept: f64,
}

enum ComparisonInput {
    Expression(GrowthFunction),
    Model(FitModel),
}

impl ComparisonInput {
    fn parse(label: &str, text: &str) -> Result<Self, String> {
        if text.trim_start().starts_with('{') {
            let descriptor: FitDescriptor = serde_json::from_str(text)
                .map_err(|e| format!("error in --{label}: invalid fit JSON: {e}"))?;
            let family = Family::from_label(&descriptor.family)
                .ok_or_else(|| format!("error in --{label}: unknown family '{}'", descriptor.family))?;
            if !descriptor.coeff.is_finite() || descriptor.coeff <= 0.0 {
                return Err(format!("error in --{label}: coeff must be positive"));
            }
            if family == Family::Poly && descriptor.degree < 1.0 {
                return Err(format!("error in --{label}: POLY needs degree >= 1"));
            }
            Ok(ComparisonInput::Model(FitModel {
                family,
                degree: if family == Family::Poly { descriptor.degree } else { 0.0 },
                coeff: descriptor.coeff,
                intercept: descriptor.intercept,
                score: 0.0,
            }))
        } else {
            parse_function(text)
                .map(ComparisonInput::Expression)
                .map_err(|e| format!("error in --{label}: {e}"))
        }
    }

    /// Growth-algebra view used for the crossover search; drops a negative
    /// intercept with a warning since the algebra is positive-only.
    fn growth(&self, label: &str) -> GrowthFunction {
        match self {
            ComparisonInput::Expression(f) => f.clone(),
            ComparisonInput::Model(model) => {
                let (f, dropped) = to_growth_function(model);
                if let Some(intercept) = dropped {
                    eprintln!(
                        "warning: negative intercept {intercept} of --{label} dropped for the crossover search"
                    );
                }
                f
            }
        }
    }

    fn value_at(&self, n: u64) -> Result<f64, String> {
        match self {
            ComparisonInput::Expression(f) => match f.evaluate(n) {
                Ok(v) => Ok(v),
                Err(GrowthError::Overflow { .. }) => Ok(f64::INFINITY),
                Err(e) => Err(e.to_string()),
            },
            ComparisonInput::Model(model) => extrapolate(model, n).map_err(|e| e.to_string()),
        }
    }
}

fn cmd_compare(f1: &str, f2: &str, horizon: u64, at: Option<u64>) -> u8 {
    let left = match ComparisonInput::parse("f1", f1) {
        Ok(input) => input,
        Err(msg) => {
            eprintln!("{msg}");
            return EXIT_INPUT_ERROR;
        }
    };
    let right = match ComparisonInput::parse("f2", f2) {
        Ok(input) => input,
        Err(msg) => {
            eprintln!("{msg}");
            return EXIT_INPUT_ERROR;
        }
    };

    let g1 = left.growth("f1");
    let g2 = right.growth("f2");
    match crossover(&g1, &g2, horizon) {
        Ok(Some(n)) => println!("crossover: {n}"),
        Ok(None) => println!("crossover: none <= {horizon}"),
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    }

    if let Some(n) = at {
        for (label, input) in [("f1", &left), ("f2", &right)] {
            match input.value_at(n) {
                Ok(v) => println!("{label}({n}) = {}", display_value(v)),
                Err(msg) => {
                    eprintln!("error evaluating --{label} at {n}: {msg}");
                    return EXIT_INPUT_ERROR;
                }
            }
        }
    }
    0
}

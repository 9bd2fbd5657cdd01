//! CSV reader for raw measurement series.
//!
//! Schema: a header row `metric,unit,n,value`, then one row per sample.
//! Rows belonging to one metric must be contiguous with strictly
//! increasing `n`, values must be positive, and every metric needs at
//! least three samples.

use std::fs::File;
use std::io::Read;
use std::path::Path;
use std::fmt;

use crate::estimator::SampleSeries;

/// CSV ingestion failure; `line` is 1-based (0 for file-level problems).
#[derive(Debug, Clone, PartialEq)]
pub struct CsvError {
    pub line: usize,
    pub message: String,
}

impl CsvError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self { line, message: message.into() }
    }
}

impl fmt::Display for CsvError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "CSV error at line {}: {}", self.line, self.message)
        } else {
            write!(f, "CSV error: {}", self.message)
        }
    }
}

impl std::error::Error for CsvError {}

const EXPECTED_HEADER: [&str; 4] = ["metric", "unit", "n", "value"];

/// Reads all sample series from CSV text, one [`SampleSeries`] per metric,
/// in input order.
pub fn read_csv<R: Read>(reader: R) -> Result<Vec<SampleSeries>, CsvError> {
    let mut csv_reader = ::csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(::csv::Trim::All)
        .from_reader(reader);

    let headers = csv_reader
        .headers()
        .map_err(|e| CsvError::at(1, format!("unreadable header: {e}")))?;
    let header_fields: Vec<&str> = headers.iter().collect();
    if header_fields != EXPECTED_HEADER {
        return Err(CsvError::at(
            1,
            format!("expected header 'metric,unit,n,value', got '{}'", header_fields.join(",")),
        ));
    }

    // (metric, unit, points), preserving first-appearance order
    type MetricGroup = (String, String, Vec<(u64, f64)>);
    let mut groups: Vec<MetricGroup> = Vec::new();

    for (index, record) in csv_reader.records().enumerate() {
        let line = index + 2;
        let record = record.map_err(|e| CsvError::at(line, format!("malformed row: {e}")))?;
        if record.len() != 4 {
            return Err(CsvError::at(line, format!("expected 4 fields, got {}", record.len())));
        }
        let metric = record[0].to_string();
        let unit = record[1].to_string();
        if metric.is_empty() {
            return Err(CsvError::at(line, "metric name is empty"));
        }
        let n: u64 = record[2]
            .parse()
            .map_err(|_| CsvError::at(line, format!("invalid input size '{}'", &record[2])))?;
        let value: f64 = record[3]
            .parse()
            .map_err(|_| CsvError::at(line, format!("invalid value '{}'", &record[3])))?;
        if !value.is_finite() || value <= 0.0 {
            return Err(CsvError::at(line, format!("value must be positive, got {value}")));
        }

        match groups.last_mut() {
            Some((name, grp_unit, points)) if *name == metric => {
                if *grp_unit != unit {
                    return Err(CsvError::at(
                        line,
                        format!("unit changed within metric '{metric}': '{grp_unit}' then '{unit}'"),
                    ));
                }
                let last_n = points.last().expect("group starts nonempty").0;
                if n <= last_n {
                    return Err(CsvError::at(
                        line,
                        format!("input sizes for metric '{metric}' must be strictly increasing ({last_n} then {n})"),
                    ));
                }
                points.push((n, value));
            }
            _ => {
                if groups.iter().any(|(name, _, _)| *name == metric) {
                    return Err(CsvError::at(
                        line,
                        format!("rows for metric '{metric}' are not contiguous"),
                    ));
                }
                groups.push((metric, unit, vec![(n, value)]));
            }
        }
    }

    if groups.is_empty() {
        return Err(CsvError::at(0, "no data rows"));
    }

    groups
        .into_iter()
        .map(|(metric, unit, points)| {
            SampleSeries::new(metric, unit, points).map_err(|e| CsvError::at(0, e.to_string()))
        })
        .collect()
}

/// Reads sample series from a CSV file on disk.
pub fn read_csv_path(path: impl AsRef<Path>) -> Result<Vec<SampleSeries>, CsvError> {
    let path = path.as_ref();
    let file = File::open(path)
        .map_err(|e| CsvError::at(0, format!("cannot open {}: {e}", path.display())))?;
    read_csv(file)
}

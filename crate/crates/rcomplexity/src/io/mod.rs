//! Text interfaces: the growth-expression grammar, class notation, and the
//! CSV schema for raw measurement series.

mod csv;
mod expr;

pub use self::csv::{read_csv, read_csv_path, CsvError};
pub use self::expr::{
    format_class, format_function, parse_class, parse_function, ParseError, ParseErrorKind,
};

//! Parser and formatter for growth-function expressions and class notation.
//!
//! The expression grammar, with insignificant whitespace:
//!
//! ```text
//! expr   := term ("+" term)*
//! term   := coeff? factor*
//! factor := "n" ("^" real)? | "log(n)" ("^" real)? | real "^n"
//! coeff  := positive real, optionally "*"-separated from the factors
//! ```
//!
//! `log` is the natural logarithm and only negative exponents after `^`
//! are signed. Class notation is `kind_rate(expr)` with kind one of
//! `theta`, `O`, `omega` (rate required) or `o`, `w` (rate rejected).
//! Formatting is canonical, dominant term first, so that
//! `parse_function(format_function(f))` reproduces `f` exactly.

use std::fmt;

use crate::growth::{GrowthError, GrowthFunction, GrowthTerm};
use crate::rclass::{RClass, RClassKind};

/// Why a parse was rejected.
#[derive(Debug, Clone, PartialEq)]
pub enum ParseErrorKind {
    /// Unexpected character or token; the message names what was expected.
    Syntax(String),
    /// The text is grammatical but violates a growth-term invariant.
    InvalidTerm(String),
    /// Small-class notation does not take a rate annotation.
    RateNotAllowed,
    NonPositiveRate(f64),
}

/// Parse failure annotated with the byte offset it occurred at.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: ", self.offset)?;
        match &self.kind {
            ParseErrorKind::Syntax(msg) => f.write_str(msg),
            ParseErrorKind::InvalidTerm(msg) => f.write_str(msg),
            ParseErrorKind::RateNotAllowed => {
                f.write_str("small classes do not take a rate annotation")
            }
            ParseErrorKind::NonPositiveRate(r) => write!(f, "rate must be positive, got {r}"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Token<'a> {
    Number(f64),
    Ident(&'a str),
    Caret,
    Star,
    Plus,
    Minus,
    Underscore,
    LParen,
    RParen,
}

#[derive(Debug, Clone, Copy)]
struct Spanned<'a> {
    token: Token<'a>,
    offset: usize,
}

fn syntax(offset: usize, msg: impl Into<String>) -> ParseError {
    ParseError { offset, kind: ParseErrorKind::Syntax(msg.into()) }
}

fn tokenize(source: &str) -> Result<Vec<Spanned<'_>>, ParseError> {
    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let offset = i;
        let token = match c {
            '^' => { i += 1; Token::Caret }
            '*' => { i += 1; Token::Star }
            '+' => { i += 1; Token::Plus }
            '-' => { i += 1; Token::Minus }
            '_' => { i += 1; Token::Underscore }
            '(' => { i += 1; Token::LParen }
            ')' => { i += 1; Token::RParen }
            _ if c.is_ascii_digit() => {
                let mut end = i;
                while end < bytes.len() && (bytes[end] as char).is_ascii_digit() {
                    end += 1;
                }
                if end < bytes.len() && bytes[end] == b'.' {
                    end += 1;
                    let frac_start = end;
                    while end < bytes.len() && (bytes[end] as char).is_ascii_digit() {
                        end += 1;
                    }
                    if end == frac_start {
                        return Err(syntax(end.min(bytes.len().saturating_sub(1)), "expected digits after decimal point"));
                    }
                }
                let value: f64 = source[i..end]
                    .parse()
                    .map_err(|_| syntax(offset, "invalid number"))?;
                i = end;
                Token::Number(value)
            }
            _ if c.is_ascii_alphabetic() => {
                let mut end = i;
                while end < bytes.len() && (bytes[end] as char).is_ascii_alphabetic() {
                    end += 1;
                }
                let ident = &source[i..end];
                i = end;
                Token::Ident(ident)
            }
            _ => return Err(syntax(offset, format!("unexpected character '{c}'"))),
        };
        tokens.push(Spanned { token, offset });
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Spanned<'a>>,
    pos: usize,
    end_offset: usize,
}

impl<'a> Parser<'a> {
    fn new(source: &'a str) -> Result<Self, ParseError> {
        Ok(Self {
            tokens: tokenize(source)?,
            pos: 0,
            end_offset: source.len().saturating_sub(1),
        })
    }

    fn peek(&self) -> Option<Token<'a>> {
        self.tokens.get(self.pos).map(|s| s.token)
    }

    fn peek_at(&self, ahead: usize) -> Option<Token<'a>> {
        self.tokens.get(self.pos + ahead).map(|s| s.token)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_offset, |s| s.offset)
    }

    fn bump(&mut self) -> Option<Token<'a>> {
        let token = self.peek();
        self.pos += 1;
        token
    }

    fn eat(&mut self, token: Token<'a>) -> bool {
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_number(&mut self, what: &str) -> Result<f64, ParseError> {
        match self.peek() {
            Some(Token::Number(v)) => {
                self.pos += 1;
                Ok(v)
            }
            _ => Err(syntax(self.offset(), format!("expected {what}"))),
        }
    }

    fn expect(&mut self, token: Token<'a>, what: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(syntax(self.offset(), format!("expected {what}")))
        }
    }

    /// `("^" real)?`, defaulting to 1; the real may be negative.
    fn optional_exponent(&mut self) -> Result<f64, ParseError> {
        if !self.eat(Token::Caret) {
            return Ok(1.0);
        }
        let negative = self.eat(Token::Minus);
        let value = self.expect_number("exponent after '^'")?;
        Ok(if negative { -value } else { value })
    }

    fn parse_term(&mut self) -> Result<GrowthTerm, ParseError> {
        let term_offset = self.offset();
        let mut coeff: Option<f64> = None;
        let mut exp_base = 1.0;
        let mut poly_exp = 0.0;
        let mut log_exp = 0.0;
        let mut saw_piece = false;
        let mut after_separator = false;

        loop {
            match self.peek() {
                Some(Token::Number(value)) => {
                    let offset = self.offset();
                    // `real ^ n` is an exponential factor, a bare real is the coefficient
                    if self.peek_at(1) == Some(Token::Caret)
                        && self.peek_at(2) == Some(Token::Ident("n"))
                    {
                        self.pos += 3;
                        exp_base *= value;
                    } else {
                        if coeff.is_some() || saw_piece {
                            return Err(syntax(
                                offset,
                                "unexpected number: the coefficient must lead the term",
                            ));
                        }
                        self.pos += 1;
                        coeff = Some(value);
                    }
                }
                Some(Token::Ident("n")) => {
                    self.pos += 1;
                    poly_exp += self.optional_exponent()?;
                }
                Some(Token::Ident("log")) => {
                    self.pos += 1;
                    self.expect(Token::LParen, "'(' after log")?;
                    self.expect(Token::Ident("n"), "'n' inside log(...)")?;
                    self.expect(Token::RParen, "')' after log(n")?;
                    log_exp += self.optional_exponent()?;
                }
                Some(Token::Ident(other)) => {
                    return Err(syntax(
                        self.offset(),
                        format!("unexpected '{other}': expected 'n' or 'log(n)'"),
                    ));
                }
                _ => {
                    if after_separator {
                        return Err(syntax(self.offset(), "expected factor after '*'"));
                    }
                    break;
                }
            }
            saw_piece = true;
            after_separator = self.eat(Token::Star);
        }

        if !saw_piece {
            return Err(syntax(term_offset, "expected a term"));
        }
        GrowthTerm::new(coeff.unwrap_or(1.0), exp_base, poly_exp, log_exp).map_err(|e| {
            let message = match e {
                GrowthError::InvalidTerm(msg) => msg,
                other => other.to_string(),
            };
            ParseError { offset: term_offset, kind: ParseErrorKind::InvalidTerm(message) }
        })
    }

    fn parse_expr(&mut self) -> Result<GrowthFunction, ParseError> {
        let mut terms = vec![self.parse_term()?];
        while self.eat(Token::Plus) {
            terms.push(self.parse_term()?);
        }
        GrowthFunction::new(terms).map_err(|e| ParseError {
            offset: 0,
            kind: ParseErrorKind::InvalidTerm(e.to_string()),
        })
    }

    fn expect_end(&mut self, what: &str) -> Result<(), ParseError> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            Err(syntax(self.offset(), format!("expected {what}")))
        }
    }
}

/// Parses a growth-function expression; the result is normalized.
pub fn parse_function(text: &str) -> Result<GrowthFunction, ParseError> {
    let mut parser = Parser::new(text)?;
    let function = parser.parse_expr()?;
    parser.expect_end("'+' or end of expression")?;
    Ok(function)
}

/// Parses class notation `kind_rate(expr)`; small kinds take no rate.
pub fn parse_class(text: &str) -> Result<RClass, ParseError> {
    let mut parser = Parser::new(text)?;
    let kind_offset = parser.offset();
    let kind = match parser.bump() {
        Some(Token::Ident("theta")) => RClassKind::BigTheta,
        Some(Token::Ident("O")) => RClassKind::BigO,
        Some(Token::Ident("omega")) => RClassKind::BigOmega,
        Some(Token::Ident("o")) => RClassKind::SmallO,
        Some(Token::Ident("w")) => RClassKind::SmallOmega,
        _ => {
            return Err(syntax(
                kind_offset,
                "expected a class kind: theta, O, omega, o or w",
            ))
        }
    };

    let mut rate = 1.0;
    if parser.peek() == Some(Token::Underscore) {
        let underscore_offset = parser.offset();
        if !kind.is_big() {
            return Err(ParseError { offset: underscore_offset, kind: ParseErrorKind::RateNotAllowed });
        }
        parser.pos += 1;
        let rate_offset = parser.offset();
        rate = parser.expect_number("a rate after '_'")?;
        if rate <= 0.0 {
            return Err(ParseError { offset: rate_offset, kind: ParseErrorKind::NonPositiveRate(rate) });
        }
    } else if kind.is_big() {
        return Err(syntax(parser.offset(), "expected '_rate' for a big class"));
    }

    parser.expect(Token::LParen, "'(' before the reference expression")?;
    let reference = parser.parse_expr()?;
    parser.expect(Token::RParen, "')' after the reference expression")?;
    parser.expect_end("end of class notation")?;

    Ok(RClass::new(kind, rate, reference).expect("rate checked positive"))
}

fn format_number(x: f64) -> String {
    format!("{x}")
}

fn format_term(term: &GrowthTerm) -> String {
    let mut pieces = Vec::new();
    let has_factors = term.exp_base() != 1.0 || term.poly_exp() != 0.0 || term.log_exp() != 0.0;
    if term.coeff() != 1.0 || !has_factors {
        pieces.push(format_number(term.coeff()));
    }
    if term.exp_base() != 1.0 {
        pieces.push(format!("{}^n", format_number(term.exp_base())));
    }
    if term.poly_exp() != 0.0 {
        if term.poly_exp() == 1.0 {
            pieces.push("n".to_string());
        } else {
            pieces.push(format!("n^{}", format_number(term.poly_exp())));
        }
    }
    if term.log_exp() != 0.0 {
        if term.log_exp() == 1.0 {
            pieces.push("log(n)".to_string());
        } else {
            pieces.push(format!("log(n)^{}", format_number(term.log_exp())));
        }
    }
    pieces.join("*")
}

/// Canonical rendering, dominant term first; parsing it back reproduces
/// the function exactly.
pub fn format_function(f: &GrowthFunction) -> String {
    f.terms().iter().map(format_term).collect::<Vec<_>>().join(" + ")
}

/// Renders a class in the same notation [`parse_class`] accepts.
pub fn format_class(cls: &RClass) -> String {
    if cls.kind().is_big() {
        format!(
            "{}_{}({})",
            cls.kind().notation(),
            format_number(cls.rate()),
            format_function(cls.reference())
        )
    } else {
        format!("{}({})", cls.kind().notation(), format_function(cls.reference()))
    }
}

//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := ['-'] atom ['^' exponent]
//! atom     := number | 'z' | 'i' | ident | '(' expr ')'
//! exponent := signed-number | ident | '(' real-expr ')'
//! ```
//!
//! `real-expr` follows the same precedence but only admits numbers and
//! parameter identifiers.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use super::ast::{Exponent, Expr};

/// Parameter identifiers accepted by the grammar.
pub const PARAM_NAMES: [&str; 4] = ["p", "eps", "alpha", "q"];

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    /// Character offset of the offending token; equals the input length at end of input.
    pub position: usize,
    pub at_end: bool,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.at_end {
            write!(f, "syntax error at end of input: {}", self.kind)
        } else {
            write!(
                f,
                "syntax error at position {}: {}",
                self.position, self.kind
            )
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character '{0}'")]
    UnexpectedChar(char),
    #[error("unexpected {0}")]
    UnexpectedToken(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unbalanced parentheses")]
    UnbalancedParen,
    #[error("unknown identifier '{0}'")]
    UnknownIdentifier(String),
    #[error("malformed number '{0}'")]
    MalformedNumber(String),
    #[error("'{0}' is not allowed in an exponent")]
    NotAllowedInExponent(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(x) => write!(f, "number {x}"),
            Tok::Ident(s) => write!(f, "identifier '{s}'"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str) -> Result<(Vec<(Tok, usize)>, usize), ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let len = chars.len();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < len {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '\u{b7}' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() || c == '.' => {
                let mut j = i;
                while j < len {
                    let d = chars[j];
                    let exp_sign =
                        (d == '+' || d == '-') && j > i && matches!(chars[j - 1], 'e' | 'E');
                    if d.is_ascii_digit() || d == '.' || d == 'e' || d == 'E' || exp_sign {
                        j += 1;
                    } else {
                        break;
                    }
                }
                let lexeme: String = chars[i..j].iter().collect();
                let value: f64 = lexeme.parse().map_err(|_| {
                    ParseError::new(
                        start,
                        false,
                        ParseErrorKind::MalformedNumber(lexeme.clone()),
                    )
                })?;
                i = j;
                toks.push((Tok::Num(value), start));
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < len && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let ident: String = chars[i..j].iter().collect();
                i = j;
                toks.push((Tok::Ident(ident), start));
                continue;
            }
            other => {
                return Err(ParseError::new(
                    start,
                    false,
                    ParseErrorKind::UnexpectedChar(other),
                ))
            }
        };
        i += 1;
        toks.push((tok, start));
    }
    toks.push((Tok::End, len));
    Ok((toks, len))
}

impl ParseError {
    fn new(position: usize, at_end: bool, kind: ParseErrorKind) -> Self {
        ParseError {
            position,
            at_end,
            kind,
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn advance(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let (tok, at) = &self.toks[self.pos];
        ParseError::new(*at, *tok == Tok::End, kind)
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Tok::End => self.error_here(ParseErrorKind::UnexpectedEnd),
            Tok::RParen => self.error_here(ParseErrorKind::UnbalancedParen),
            t => self.error_here(ParseErrorKind::UnexpectedToken(t.to_string())),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::RParen {
            self.advance();
            Ok(())
        } else if *self.peek() == Tok::End {
            Err(ParseError::new(
                self.len,
                true,
                ParseErrorKind::UnbalancedParen,
            ))
        } else {
            Err(self.unexpected())
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.advance();
                    lhs = Expr::add(lhs, self.term()?);
                }
                Tok::Minus => {
                    self.advance();
                    lhs = Expr::sub(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.advance();
                    lhs = Expr::mul(lhs, self.factor()?);
                }
                Tok::Slash => {
                    self.advance();
                    lhs = Expr::div(lhs, self.factor()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let negate = if *self.peek() == Tok::Minus {
            self.advance();
            true
        } else {
            false
        };
        let mut e = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.advance();
            e = Expr::pow(e, self.exponent()?);
        }
        Ok(if negate { Expr::neg(e) } else { e })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(x) => {
                self.advance();
                Ok(Expr::real(x))
            }
            Tok::Ident(name) => {
                let at = self.toks[self.pos].1;
                self.advance();
                match name.as_str() {
                    "z" => Ok(Expr::Z),
                    "i" => Ok(Expr::Const(Complex64::new(0.0, 1.0))),
                    _ => match canonical_param(&name) {
                        Some(p) => Ok(Expr::param(p)),
                        None => Err(ParseError::new(
                            at,
                            false,
                            ParseErrorKind::UnknownIdentifier(name),
                        )),
                    },
                }
            }
            Tok::LParen => {
                self.advance();
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            _ => Err(self.unexpected()),
        }
    }

    fn exponent(&mut self) -> Result<Exponent, ParseError> {
        match self.peek().clone() {
            Tok::Minus => {
                self.advance();
                match self.peek().clone() {
                    Tok::Num(x) => {
                        self.advance();
                        Ok(Exponent::Num(-x))
                    }
                    _ => Err(self.unexpected()),
                }
            }
            Tok::Num(x) => {
                self.advance();
                Ok(Exponent::Num(x))
            }
            Tok::Ident(_) => self.real_atom(),
            Tok::LParen => {
                self.advance();
                let e = self.real_expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            _ => Err(self.unexpected()),
        }
    }

    fn real_expr(&mut self) -> Result<Exponent, ParseError> {
        let mut lhs = self.real_term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.advance();
                    lhs = Exponent::add(lhs, self.real_term()?);
                }
                Tok::Minus => {
                    self.advance();
                    lhs = Exponent::sub(lhs, self.real_term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn real_term(&mut self) -> Result<Exponent, ParseError> {
        let mut lhs = self.real_factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.advance();
                    lhs = Exponent::mul(lhs, self.real_factor()?);
                }
                Tok::Slash => {
                    self.advance();
                    lhs = Exponent::div(lhs, self.real_factor()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn real_factor(&mut self) -> Result<Exponent, ParseError> {
        if *self.peek() == Tok::Minus {
            self.advance();
            if let Tok::Num(x) = *self.peek() {
                self.advance();
                return Ok(Exponent::Num(-x));
            }
            return Ok(Exponent::neg(self.real_atom()?));
        }
        self.real_atom()
    }

    fn real_atom(&mut self) -> Result<Exponent, ParseError> {
        match self.peek().clone() {
            Tok::Num(x) => {
                self.advance();
                Ok(Exponent::Num(x))
            }
            Tok::Ident(name) => {
                let at = self.toks[self.pos].1;
                self.advance();
                if name == "z" || name == "i" {
                    return Err(ParseError::new(
                        at,
                        false,
                        ParseErrorKind::NotAllowedInExponent(name),
                    ));
                }
                canonical_param(&name).map(Exponent::param).ok_or_else(|| {
                    ParseError::new(at, false, ParseErrorKind::UnknownIdentifier(name))
                })
            }
            Tok::LParen => {
                self.advance();
                let e = self.real_expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            _ => Err(self.unexpected()),
        }
    }
}

fn canonical_param(name: &str) -> Option<&'static str> {
    match name {
        "ε" | "epsilon" => Some("eps"),
        "α" => Some("alpha"),
        _ => PARAM_NAMES.iter().copied().find(|p| *p == name),
    }
}

/// Parses an expression in `z`.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let (toks, len) = lex(text)?;
    let mut parser = Parser { toks, pos: 0, len };
    let e = parser.expr()?;
    match parser.peek() {
        Tok::End => Ok(e),
        Tok::RParen => Err(parser.error_here(ParseErrorKind::UnbalancedParen)),
        _ => Err(parser.unexpected()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Expr {
        Expr::real(1.0)
    }

    #[test]
    fn parses_quotient_structure() {
        let e = parse("(1+z)/(1-z)").unwrap();
        let expected = Expr::div(
            Expr::add(one(), Expr::Z),
            Expr::add(one(), Expr::neg(Expr::Z)),
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn parses_variable() {
        assert_eq!(parse("z").unwrap(), Expr::Z);
        assert_eq!(parse("  z ").unwrap(), Expr::Z);
    }

    #[test]
    fn unclosed_paren_reports_end_of_input() {
        let err = parse("(1+z").unwrap_err();
        assert!(err.at_end);
        assert_eq!(err.position, 4);
        assert_eq!(err.kind, ParseErrorKind::UnbalancedParen);
        assert!(err.to_string().contains("end of input"));
    }

    #[test]
    fn stray_close_paren() {
        let err = parse("1+z)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnbalancedParen);
        assert_eq!(err.position, 3);
    }

    #[test]
    fn unknown_identifier_position() {
        let err = parse("1 + w").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownIdentifier("w".into()));
        assert_eq!(err.position, 4);
    }

    #[test]
    fn malformed_numbers() {
        assert!(matches!(
            parse("1.2.3 + z").unwrap_err().kind,
            ParseErrorKind::MalformedNumber(_)
        ));
        assert!(matches!(
            parse("2e").unwrap_err().kind,
            ParseErrorKind::MalformedNumber(_)
        ));
    }

    #[test]
    fn power_binds_tighter_than_unary_minus() {
        let e = parse("-z^2").unwrap();
        assert_eq!(e, Expr::neg(Expr::pow(Expr::Z, Exponent::Num(2.0))));
        // unary minus binds tighter than '*'
        let e = parse("-z*2").unwrap();
        assert_eq!(e, Expr::mul(Expr::neg(Expr::Z), Expr::real(2.0)));
        // binary minus negates the whole term
        let e = parse("1-z*2").unwrap();
        assert_eq!(e, Expr::sub(one(), Expr::mul(Expr::Z, Expr::real(2.0))));
    }

    #[test]
    fn parameter_exponents() {
        let e = parse("(1+z)^(4/p)").unwrap();
        assert_eq!(
            e,
            Expr::pow(
                Expr::add(one(), Expr::Z),
                Exponent::div(Exponent::Num(4.0), Exponent::param("p"))
            )
        );
        let e = parse("(1-z)^(-1/2)").unwrap();
        assert_eq!(
            e,
            Expr::pow(
                Expr::sub(one(), Expr::Z),
                Exponent::div(Exponent::Num(-1.0), Exponent::Num(2.0))
            )
        );
        let e = parse("(1-z)^-2").unwrap();
        assert_eq!(e, Expr::pow(Expr::sub(one(), Expr::Z), Exponent::Num(-2.0)));
        let e = parse("(1+z)^(2-eps)").unwrap();
        assert_eq!(
            e,
            Expr::pow(
                Expr::add(one(), Expr::Z),
                Exponent::sub(Exponent::Num(2.0), Exponent::param("eps"))
            )
        );
    }

    #[test]
    fn z_in_exponent_is_rejected() {
        assert!(matches!(
            parse("(1+z)^(z)").unwrap_err().kind,
            ParseErrorKind::NotAllowedInExponent(_)
        ));
    }

    #[test]
    fn imaginary_unit_and_scientific_notation() {
        let e = parse("1e-3*i").unwrap();
        assert_eq!(
            e,
            Expr::mul(Expr::real(1e-3), Expr::Const(Complex64::new(0.0, 1.0)))
        );
    }

    #[test]
    fn trailing_garbage() {
        let err = parse("z z").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnexpectedToken(_)));
        assert!(parse("").unwrap_err().at_end);
    }
}

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::BiPoly;
use crate::exactnum::{BigInt, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken { expected: &'static str, found: String },
    BadExponent,
    Division,
    ZeroDenominator,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedToken { expected, found } => {
                write!(f, "expected {expected}, found {found}")
            }
            ParseErrorKind::BadExponent => {
                f.write_str("exponent must be a nonnegative integer literal")
            }
            ParseErrorKind::Division => {
                f.write_str("division is only allowed inside a rational literal p/q")
            }
            ParseErrorKind::ZeroDenominator => f.write_str("rational literal has zero denominator"),
        }
    }
}

/// Parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    N,
    NFact,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Int(v) => format!("integer {v}"),
            Token::N => "`n`".into(),
            Token::NFact => "`n!`".into(),
            Token::Plus => "`+`".into(),
            Token::Minus => "`-`".into(),
            Token::Star => "`*`".into(),
            Token::Slash => "`/`".into(),
            Token::Caret => "`^`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                out.push((start, Token::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            b'n' => {
                let mut j = i + 1;
                while j < bytes.len() && bytes[j] == b' ' {
                    j += 1;
                }
                if j < bytes.len() && bytes[j] == b'!' {
                    i = j;
                    Token::NFact
                } else {
                    Token::N
                }
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            _ => {
                let ch = text[start..].chars().next().expect("in bounds");
                return Err(ParseError {
                    position: start,
                    kind: ParseErrorKind::UnexpectedChar(ch),
                });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((text.len(), Token::End));
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].1.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.offset(),
            kind,
        }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        let kind = match self.peek() {
            Token::Slash => ParseErrorKind::Division,
            other => ParseErrorKind::UnexpectedToken {
                expected,
                found: other.describe(),
            },
        };
        self.error(kind)
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Token::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := unary ('*' unary)*
    fn term(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Token::Slash => return Err(self.error(ParseErrorKind::Division)),
                _ => return Ok(acc),
            }
        }
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<BiPoly, ParseError> {
        if *self.peek() == Token::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    // power := atom ('^' INT)*
    fn power(&mut self) -> Result<BiPoly, ParseError> {
        let mut base = self.atom()?;
        while *self.peek() == Token::Caret {
            self.bump();
            let exp = match self.peek() {
                Token::Int(v) => v.to_u32(),
                _ => None,
            }
            .ok_or_else(|| self.error(ParseErrorKind::BadExponent))?;
            self.bump();
            base = base.pow(exp);
        }
        Ok(base)
    }

    // atom := INT ('/' INT)? | 'n' | 'n!' | '(' expr ')'
    fn atom(&mut self) -> Result<BiPoly, ParseError> {
        match self.peek().clone() {
            Token::Int(num) => {
                self.bump();
                if *self.peek() != Token::Slash {
                    return Ok(BiPoly::constant(Rational::from_integer(num)));
                }
                self.bump();
                let Token::Int(den) = self.peek().clone() else {
                    return Err(self.error(ParseErrorKind::Division));
                };
                if den.is_zero() {
                    return Err(self.error(ParseErrorKind::ZeroDenominator));
                }
                self.bump();
                Ok(BiPoly::constant(Rational::new(num, den)))
            }
            Token::N => {
                self.bump();
                Ok(BiPoly::x())
            }
            Token::NFact => {
                self.bump();
                Ok(BiPoly::y())
            }
            Token::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Token::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, `n`, `n!` or `(`")),
        }
    }
}

/// Parses the surface syntax into a polynomial, mapping `n` to `x` and `n!` to `y`.
pub fn parse_poly(text: &str) -> Result<BiPoly, ParseError> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let poly = p.expr()?;
    if *p.peek() != Token::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(poly)
}

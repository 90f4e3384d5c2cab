//! Lexer and recursive-descent parser.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := ('+' | '-') factor | named_op | symbol | number | number 'i' | 'i' | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

use super::poly::{coeff, Coeff, Poly, SYMBOLS};
use super::PauliExpr;
use crate::clifford::{colored_gamma5_string, Pauli, PauliString};
use crate::phase_space::Color;

/// A syntax error with its position in the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    /// Byte offset into the source.
    pub offset: usize,
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
    /// The offending line with a caret under the error position.
    pub excerpt: String,
}

impl ParseError {
    fn at(src: &str, offset: usize, message: impl Into<String>) -> Self {
        let offset = offset.min(src.len());
        let line_start = src[..offset].rfind('\n').map_or(0, |i| i + 1);
        let line_end = src[offset..].find('\n').map_or(src.len(), |i| offset + i);
        let line = src[..offset].matches('\n').count() + 1;
        let column = src[line_start..offset].chars().count() + 1;
        let excerpt = format!("{}\n{}^", &src[line_start..line_end], " ".repeat(column - 1));
        Self {
            message: message.into(),
            offset,
            line,
            column,
            excerpt,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {} (byte {}): {}\n{}",
            self.line, self.column, self.offset, self.message, self.excerpt
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Imag(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(_) | Tok::Imag(_) => "number".into(),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '#'
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = src[i..].chars().next().expect("in bounds");
        let start = i;
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, start));
            i += 1;
        } else if c.is_ascii_digit() || (c == '.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) {
            let mut digits = String::new();
            let mut frac_len = 0u32;
            let mut seen_dot = false;
            while i < bytes.len() {
                let b = bytes[i] as char;
                if b.is_ascii_digit() {
                    digits.push(b);
                    if seen_dot {
                        frac_len += 1;
                    }
                } else if b == '.' && !seen_dot {
                    seen_dot = true;
                } else {
                    break;
                }
                i += 1;
            }
            let numer: BigInt = digits.parse().expect("digits only");
            let value = BigRational::new(numer, num_traits::pow(BigInt::from(10), frac_len as usize));
            let imag = bytes.get(i) == Some(&b'i')
                && !src[i + 1..].chars().next().is_some_and(is_ident_continue);
            if imag {
                i += 1;
                out.push((Tok::Imag(value), start));
            } else {
                out.push((Tok::Num(value), start));
            }
        } else if is_ident_start(c) {
            while i < bytes.len() && is_ident_continue(bytes[i] as char) {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else {
            return Err(ParseError::at(src, start, format!("unexpected character `{c}`")));
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

fn string_op(s: PauliString, c: Coeff) -> PauliExpr {
    PauliExpr::from_string(s).scale(&c)
}

/// The expansion of a named operator, if `name` is one.
pub fn named_operator(name: &str) -> Option<PauliExpr> {
    use Pauli::*;
    let one = coeff(1, 0);
    let k = |c: char| match c {
        '1' => Some(S1),
        '2' => Some(S2),
        '3' => Some(S3),
        _ => None,
    };
    let op = match name {
        "B" => string_op([S0, S3, S0], one),
        "C" => string_op([S2, S2, S2], coeff(0, -1)),
        "gamma5" => string_op([S0, S1, S0], one),
        "gammaR5" => string_op(colored_gamma5_string(Color::R), one),
        "gammaY5" => string_op(colored_gamma5_string(Color::Y), one),
        "gammaB5" => string_op(colored_gamma5_string(Color::B), one),
        "s0" => string_op([S0, S0, S0], one),
        _ if name.len() == 2 => {
            let mut chars = name.chars();
            let (head, idx) = (chars.next()?, k(chars.next()?)?);
            match head {
                'A' => string_op([idx, S1, S0], one),
                'B' => string_op([S0, S2, idx], one),
                's' => string_op([idx, S0, S0], one),
                _ => return None,
            }
        }
        _ => return None,
    };
    Some(op)
}

fn explicit_string(name: &str) -> Option<PauliString> {
    let parts: Vec<&str> = name.split('#').collect();
    if parts.len() != 3 {
        return None;
    }
    let mut out = [Pauli::S0; 3];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = match part {
            "s0" => Pauli::S0,
            "s1" => Pauli::S1,
            "s2" => Pauli::S2,
            "s3" => Pauli::S3,
            _ => return None,
        };
    }
    Some(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::at(self.src, self.offset(), message)
    }

    fn expr(&mut self) -> Result<PauliExpr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PauliExpr, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc.multiply(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PauliExpr, ParseError> {
        let (tok, offset) = self.bump();
        match tok {
            Tok::Minus => Ok(self.factor()?.neg()),
            Tok::Plus => self.factor(),
            Tok::Num(v) => Ok(PauliExpr::scalar(Poly::constant(Complex::new(v, BigRational::zero())))),
            Tok::Imag(v) => Ok(PauliExpr::scalar(Poly::constant(Complex::new(BigRational::zero(), v)))),
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(format!("expected `)`, found {}", self.peek().describe())));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Ident(name) => {
                if name == "i" {
                    Ok(PauliExpr::scalar(Poly::constant(coeff(0, 1))))
                } else if let Some(op) = named_operator(&name) {
                    Ok(op)
                } else if SYMBOLS.contains(&name.as_str()) {
                    Ok(PauliExpr::scalar(Poly::symbol(&name)))
                } else if let Some(s) = explicit_string(&name) {
                    Ok(PauliExpr::from_string(s))
                } else if name.contains('#') {
                    Err(ParseError::at(
                        self.src,
                        offset,
                        format!("malformed tensor string `{name}`, expected sX#sY#sZ"),
                    ))
                } else {
                    Err(ParseError::at(self.src, offset, format!("unknown identifier `{name}`")))
                }
            }
            other => Err(ParseError::at(
                self.src,
                offset,
                format!("expected an operator, symbol or number, found {}", other.describe()),
            )),
        }
    }
}

pub fn parse(src: &str) -> Result<PauliExpr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { src, toks, pos: 0 };
    if *p.peek() == Tok::End {
        return Ok(PauliExpr::zero());
    }
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(format!("unexpected {}", p.peek().describe())));
    }
    Ok(out)
}

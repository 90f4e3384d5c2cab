//! Symbolic sums of three-factor Pauli tensor strings with polynomial
//! coefficients: parsing, canonical printing and exact algebra.
//!
//! ```
//! use chromaphase::pauli_expr::PauliExpr;
//! let b = PauliExpr::parse("B*B").unwrap();
//! assert_eq!(b.to_string(), "1");
//! ```

mod parse;
pub mod poly;
pub mod sample;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::clifford::{kron3, Matrix8c, OperatorMatrix, Pauli, PauliString};
use crate::error::Result;
pub use parse::{named_operator, ParseError};
use poly::{coeff, decimal, i_power, Coeff, Poly};

const IDENTITY: PauliString = [Pauli::S0; 3];

/// `Σ_s c_s(symbols) · s`, keyed by tensor string; zero terms are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PauliExpr {
    terms: BTreeMap<PauliString, Poly>,
}

impl PauliExpr {
    pub fn parse(src: &str) -> std::result::Result<Self, ParseError> {
        parse::parse(src)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_string(s: PauliString) -> Self {
        Self::from_term(s, Poly::constant(coeff(1, 0)))
    }

    pub fn scalar(p: Poly) -> Self {
        Self::from_term(IDENTITY, p)
    }

    fn from_term(s: PauliString, p: Poly) -> Self {
        let mut out = Self::zero();
        if !p.is_zero() {
            out.terms.insert(s, p);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<PauliString, Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, s: PauliString, p: Poly) {
        let sum = match self.terms.remove(&s) {
            Some(existing) => existing.add(&p),
            None => p,
        };
        if !sum.is_zero() {
            self.terms.insert(s, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, p) in &other.terms {
            out.accumulate(*s, p.clone());
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = Self::zero();
        for (s, p) in &self.terms {
            out.accumulate(*s, p.scale(c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&coeff(-1, 0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact product, factorwise `σ_k σ_l = δ_kl σ_0 + i ε_klm σ_m`.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (sa, pa) in &self.terms {
            for (sb, pb) in &other.terms {
                let mut phase = 0u8;
                let mut s = IDENTITY;
                for f in 0..3 {
                    let (k, p) = sa[f].mul(sb[f]);
                    phase += k;
                    s[f] = p;
                }
                out.accumulate(s, pa.mul(pb).scale(&i_power(phase)));
            }
        }
        out
    }

    /// `ab + ba`.
    pub fn anticomm(&self, other: &Self) -> Self {
        self.multiply(other).add(&other.multiply(self))
    }

    /// `ab − ba`.
    pub fn comm(&self, other: &Self) -> Self {
        self.multiply(other).sub(&other.multiply(self))
    }

    /// Entrywise complex conjugate of the matrix, symbols taken real.
    pub fn conjugate(&self) -> Self {
        let mut out = Self::zero();
        for (s, p) in &self.terms {
            let sign: i8 = s.iter().map(|f| f.conjugation_sign()).product();
            out.accumulate(*s, p.conj().scale(&coeff(sign.into(), 0)));
        }
        out
    }

    /// Hermitian adjoint, symbols taken real.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for (s, p) in &self.terms {
            out.accumulate(*s, p.conj());
        }
        out
    }

    /// Every symbol that occurs, sorted and deduplicated.
    pub fn symbols(&self) -> Vec<String> {
        let mut out: Vec<String> = self.terms.values().flat_map(|p| p.symbols().cloned()).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn to_matrix(&self, bindings: &BTreeMap<String, f64>) -> Result<OperatorMatrix> {
        let mut m = Matrix8c::zeros();
        for (s, p) in &self.terms {
            let c: Complex64 = p.eval(bindings)?;
            m += kron3(s[0], s[1], s[2]).entries * c;
        }
        Ok(OperatorMatrix::custom(m, self.to_string()))
    }
}

/// Printed coefficient: whether it is written with a leading minus, and its text
/// (`None` when it is a bare `1` next to other factors).
fn coeff_text(c: &Coeff, has_factors: bool) -> (bool, Option<String>) {
    if c.im.is_zero() {
        let mag = c.re.abs();
        let text = (!(mag == num_rational::BigRational::from_integer(1.into()) && has_factors)).then(|| decimal(&mag));
        (c.re.is_negative(), text)
    } else if c.re.is_zero() {
        let mag = c.im.abs();
        let text = if mag == num_rational::BigRational::from_integer(1.into()) {
            "i".to_string()
        } else {
            format!("{}i", decimal(&mag))
        };
        (c.im.is_negative(), Some(text))
    } else {
        let sign = if c.im.is_negative() { '-' } else { '+' };
        (false, Some(format!("({}{}{}i)", decimal(&c.re), sign, decimal(&c.im.abs()))))
    }
}

impl fmt::Display for PauliExpr {
    /// Canonical text: terms sorted by tensor string then monomial, strings as `sX#sY#sZ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (s, p) in &self.terms {
            for (mono, c) in &p.terms {
                let mut factors: Vec<String> = mono.clone();
                if *s != IDENTITY {
                    factors.push(crate::clifford::pauli_string_label(s));
                }
                let (negative, text) = coeff_text(c, !factors.is_empty());
                if let Some(t) = text {
                    factors.insert(0, t);
                }
                match (first, negative) {
                    (true, true) => f.write_str("-")?,
                    (true, false) => {}
                    (false, true) => f.write_str(" - ")?,
                    (false, false) => f.write_str(" + ")?,
                }
                f.write_str(&factors.join("*"))?;
                first = false;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for PauliExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        Self::parse(s)
    }
}

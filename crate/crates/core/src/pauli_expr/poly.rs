//! Polynomials in commuting real symbols with exact Gaussian-rational coefficients.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact `a + bi` with rational `a`, `b`.
pub type Coeff = Complex<BigRational>;

/// Scalar symbols an expression may contain.
pub const SYMBOLS: [&str; 12] = [
    "p1", "p2", "p3", "x1", "x2", "x3", "m", "e", "A0", "A1v", "A2v", "A3v",
];

/// A product of symbols, sorted; repeats encode powers.
pub type Monomial = Vec<String>;

pub fn coeff(re: i64, im: i64) -> Coeff {
    Complex::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
}

/// `i^k`.
pub fn i_power(k: u8) -> Coeff {
    match k % 4 {
        0 => coeff(1, 0),
        1 => coeff(0, 1),
        2 => coeff(-1, 0),
        _ => coeff(0, -1),
    }
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
    })
}

pub fn coeff_to_c64(c: &Coeff) -> Complex64 {
    Complex64::new(to_f64(&c.re), to_f64(&c.im))
}

/// Exact decimal text of a rational whose denominator has no prime factors
/// besides 2 and 5; any other value prints as the nearest `f64`.
pub fn decimal(r: &BigRational) -> String {
    let mut den = r.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut twos, mut fives) = (0usize, 0usize);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}", to_f64(r));
    }
    let digits = twos.max(fives);
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (r * BigRational::from_integer(scale.clone())).to_integer();
    let mut out = String::new();
    if scaled.is_negative() {
        out.push('-');
    }
    let abs = scaled.abs();
    let int_part = &abs / &scale;
    let frac = &abs % &scale;
    let _ = write!(out, "{int_part}");
    if digits > 0 {
        let frac = format!("{frac:0>digits$}");
        let _ = write!(out, ".{}", frac.trim_end_matches('0'));
    }
    out
}

/// A polynomial `Σ c_μ μ` over monomials `μ`; zero coefficients never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    pub terms: BTreeMap<Monomial, Coeff>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Coeff) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn symbol(name: &str) -> Self {
        let mut p = Self::zero();
        p.terms.insert(vec![name.to_string()], coeff(1, 0));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, mono: Monomial, c: Coeff) {
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.accumulate(mono.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut mono: Monomial = ma.iter().chain(mb).cloned().collect();
                mono.sort();
                out.accumulate(mono, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = Self::zero();
        for (mono, v) in &self.terms {
            out.accumulate(mono.clone(), v * c);
        }
        out
    }

    /// Complex conjugate; symbols are real.
    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect(),
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = &String> {
        self.terms.keys().flatten()
    }

    pub fn eval(&self, bindings: &BTreeMap<String, f64>) -> Result<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for (mono, c) in &self.terms {
            let mut v = coeff_to_c64(c);
            for s in mono {
                let x = bindings.get(s).ok_or_else(|| Error::UnboundSymbol(s.clone()))?;
                v *= *x;
            }
            total += v;
        }
        Ok(total)
    }
}

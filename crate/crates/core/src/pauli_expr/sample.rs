//! A fixed expression corpus and a seeded random expression generator.

use std::collections::BTreeMap;

use rand::Rng;

use super::poly::SYMBOLS;

/// Expressions exercising every grammar production.
pub const CORPUS: [&str; 50] = [
    "0",
    "1",
    "i",
    "-i",
    "2.5",
    "A1",
    "A2",
    "A3",
    "B",
    "B1",
    "B2",
    "B3",
    "C",
    "gamma5",
    "gammaR5",
    "gammaY5",
    "gammaB5",
    "s0",
    "s1",
    "s2",
    "s3",
    "s1#s2#s3",
    "s0#s0#s0 - s3#s3#s3",
    "B*B",
    "A1*A1",
    "A1*A2",
    "A1*B1 + B1*A1",
    "A1*p1 + B2*x2 + B3*x3 + B*m",
    "B1*x1 + A2*p2 + B3*x3 + B*m",
    "B1*x1 + B2*x2 + A3*p3 + B*m",
    "A1*p1 - B2*x2 - B3*x3 + B*m",
    "A1*(p1 - e*A1v) + A2*(p2 - e*A2v) + A3*(p3 - e*A3v) + B*m + e*A0",
    "(A1*p1 + A2*p2 + A3*p3 + B*m)*(A1*p1 + A2*p2 + A3*p3 + B*m)",
    "-i*A1*A2*A3",
    "-i*A1*B2*B3",
    "C*B*C",
    "C*C",
    "(1+2i)*A1 - (3-0.5i)*B2",
    "0.125*x1*x2*B",
    "2i*gamma5*m",
    "p1*p1 + x1*x1 - 2*p1*x1",
    "-(A1 + B) * (A1 - B)",
    "+A2 - -A2",
    "(s1 + s2)*(s1 - s2)",
    "s2#s2#s2*x3 + A0*s1#s0#s3",
    "3*(B1*x1 + B2*x2)*(B1*x1 - B2*x2)",
    "e*e*A0*A0 - 0.75*m*gamma5",
    "(A1*p1 + B2*x2)*(A1*p1 + B2*x2) - p1*p1 - x2*x2",
    "i*(A3*B3 - B3*A3)",
    "1.5 - 0.5i + (2 - 1i)*B*B",
];

const OPERATORS: [&str; 17] = [
    "A1", "A2", "A3", "B", "B1", "B2", "B3", "C", "gamma5", "gammaR5", "gammaY5", "gammaB5", "s1", "s2",
    "s3", "s2#s1#s3", "s3#s0#s2",
];

const LITERALS: [&str; 8] = ["1", "2", "-1", "0.5", "i", "-2i", "(1+1i)", "(0.25-3i)"];

/// Random expression text of bounded depth over the full operator and symbol set.
pub fn random_expression(rng: &mut impl Rng, depth: usize) -> String {
    let terms = rng.random_range(1..=3);
    let mut out = String::new();
    for t in 0..terms {
        if t > 0 {
            out.push_str(if rng.random_bool(0.5) { " + " } else { " - " });
        }
        let factors = rng.random_range(1..=3);
        let parts: Vec<String> = (0..factors)
            .map(|_| match rng.random_range(0..10) {
                0..=4 => OPERATORS[rng.random_range(0..OPERATORS.len())].to_string(),
                5..=6 => SYMBOLS[rng.random_range(0..SYMBOLS.len())].to_string(),
                7..=8 => LITERALS[rng.random_range(0..LITERALS.len())].to_string(),
                _ if depth > 0 => format!("({})", random_expression(rng, depth - 1)),
                _ => OPERATORS[rng.random_range(0..OPERATORS.len())].to_string(),
            })
            .collect();
        out.push_str(&parts.join("*"));
    }
    out
}

/// Every scalar symbol bound to a value in `[-2, 2)`.
pub fn random_bindings(rng: &mut impl Rng) -> BTreeMap<String, f64> {
    SYMBOLS.iter().map(|s| (s.to_string(), rng.random_range(-2.0..2.0))).collect()
}

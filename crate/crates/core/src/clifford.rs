//! Pauli tensor products and the extended 8×8 Dirac matrices.
//!
//! Tensor products follow the block layout in which `σ_k ⊗ σ_1` is the
//! textbook `α_k = [[0, σ_k], [σ_k, 0]]` and `σ_0 ⊗ σ_3` is `β = diag(1, 1, −1, −1)`:
//! the **last** factor selects the outermost block. Concretely
//! `kron3(a, b, c)[r, s] = c[r₂, s₂] · b[r₁, s₁] · a[r₀, s₀]` with `r = 4r₂ + 2r₁ + r₀`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix2, SMatrix};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase_space::Color;

pub type Matrix2c = Matrix2<Complex64>;
pub type Matrix8c = SMatrix<Complex64, 8, 8>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    S0,
    S1,
    S2,
    S3,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::S0, Pauli::S1, Pauli::S2, Pauli::S3];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Result<Self> {
        Self::ALL
            .get(i)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("Pauli index {i} out of range 0..=3")))
    }

    pub fn entries(self) -> Matrix2c {
        match self {
            Pauli::S0 => Matrix2::new(ONE, ZERO, ZERO, ONE),
            Pauli::S1 => Matrix2::new(ZERO, ONE, ONE, ZERO),
            Pauli::S2 => Matrix2::new(ZERO, -I, I, ZERO),
            Pauli::S3 => Matrix2::new(ONE, ZERO, ZERO, -ONE),
        }
    }

    /// `σ_a σ_b = i^k σ_c`, returned as `(k mod 4, c)`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, other) {
            (S0, p) | (p, S0) => (0, p),
            (a, b) if a == b => (0, S0),
            (S1, S2) => (1, S3),
            (S2, S3) => (1, S1),
            (S3, S1) => (1, S2),
            (S2, S1) => (3, S3),
            (S3, S2) => (3, S1),
            (S1, S3) => (3, S2),
            _ => unreachable!(),
        }
    }

    /// Entrywise complex conjugate is `±` the same matrix; only `σ_2` flips.
    pub fn conjugation_sign(self) -> i8 {
        if self == Pauli::S2 {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.index())
    }
}

impl FromStr for Pauli {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "s0" | "0" => Ok(Pauli::S0),
            "s1" | "1" => Ok(Pauli::S1),
            "s2" | "2" => Ok(Pauli::S2),
            "s3" | "3" => Ok(Pauli::S3),
            other => Err(Error::UnknownTag(other.to_string())),
        }
    }
}

/// A three-factor tensor string `a ⊗ b ⊗ c`.
pub type PauliString = [Pauli; 3];

pub fn pauli_string_label(s: &PauliString) -> String {
    format!("{}#{}#{}", s[0], s[1], s[2])
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OperatorLabel {
    A(u8),
    B,
    Bk(u8),
    C(Pauli),
    Gamma5,
    ColoredGamma5(Color),
    Identity,
    String(PauliString),
    Hamiltonian(String),
    Custom(String),
}

impl fmt::Display for OperatorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorLabel::A(k) => write!(f, "A{k}"),
            OperatorLabel::B => f.write_str("B"),
            OperatorLabel::Bk(k) => write!(f, "B{k}"),
            OperatorLabel::C(tau) => write!(f, "C(tau={tau})"),
            OperatorLabel::Gamma5 => f.write_str("gamma5"),
            OperatorLabel::ColoredGamma5(c) => write!(f, "gamma{c}5"),
            OperatorLabel::Identity => f.write_str("I"),
            OperatorLabel::String(s) => f.write_str(&pauli_string_label(s)),
            OperatorLabel::Hamiltonian(s) => write!(f, "H({s})"),
            OperatorLabel::Custom(s) => f.write_str(s),
        }
    }
}

impl FromStr for OperatorLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = || Error::UnknownTag(s.to_string());
        let label = match s {
            "B" => OperatorLabel::B,
            "C" => OperatorLabel::C(Pauli::S2),
            "gamma5" => OperatorLabel::Gamma5,
            "gammaR5" => OperatorLabel::ColoredGamma5(Color::R),
            "gammaY5" => OperatorLabel::ColoredGamma5(Color::Y),
            "gammaB5" => OperatorLabel::ColoredGamma5(Color::B),
            "I" | "1" => OperatorLabel::Identity,
            "A1" | "A2" | "A3" => OperatorLabel::A(s.as_bytes()[1] - b'0'),
            "B1" | "B2" | "B3" => OperatorLabel::Bk(s.as_bytes()[1] - b'0'),
            _ => {
                if let Some(tau) = s.strip_prefix("C(tau=").and_then(|r| r.strip_suffix(')')) {
                    OperatorLabel::C(tau.parse()?)
                } else {
                    let parts: Vec<&str> = s.split('#').collect();
                    if parts.len() != 3 {
                        return Err(unknown());
                    }
                    let mut string = [Pauli::S0; 3];
                    for (slot, part) in string.iter_mut().zip(parts) {
                        *slot = part.parse().map_err(|_| unknown())?;
                    }
                    OperatorLabel::String(string)
                }
            }
        };
        Ok(label)
    }
}

impl Serialize for OperatorLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Dense complex 8×8 matrix with a label.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub entries: Matrix8c,
    pub label: OperatorLabel,
}

impl OperatorMatrix {
    pub fn new(entries: Matrix8c, label: OperatorLabel) -> Self {
        Self { entries, label }
    }

    pub fn custom(entries: Matrix8c, label: impl Into<String>) -> Self {
        Self::new(entries, OperatorLabel::Custom(label.into()))
    }

    pub fn identity() -> Self {
        Self::new(Matrix8c::identity(), OperatorLabel::Identity)
    }

    pub fn from_label(label: &OperatorLabel) -> Result<Self> {
        match *label {
            OperatorLabel::A(k) => build_a(k as usize),
            OperatorLabel::B => Ok(build_b()),
            OperatorLabel::Bk(k) => build_bk(k as usize),
            OperatorLabel::C(tau) => Ok(build_c(tau)),
            OperatorLabel::Gamma5 => Ok(build_gamma5()),
            OperatorLabel::ColoredGamma5(c) => Ok(build_colored_gamma5(c)),
            OperatorLabel::Identity => Ok(Self::identity()),
            OperatorLabel::String([a, b, c]) => Ok(kron3(a, b, c)),
            OperatorLabel::Hamiltonian(ref s) | OperatorLabel::Custom(ref s) => {
                Err(Error::UnknownTag(s.clone()))
            }
        }
    }

    pub fn adjoint(&self) -> Matrix8c {
        self.entries.adjoint()
    }

    /// `max |M − M†|`.
    pub fn hermiticity_residual(&self) -> f64 {
        max_abs(&(self.entries - self.entries.adjoint()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// `max_ij |M_ij − other_ij|`.
    pub fn distance(&self, other: &Matrix8c) -> f64 {
        max_abs(&(self.entries - other))
    }
}

/// Largest entry modulus.
pub fn max_abs(m: &Matrix8c) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Standard Kronecker product of two 2×2 blocks (`outer` selects the block).
fn kron2(outer: &Matrix2c, inner: &Matrix2c) -> SMatrix<Complex64, 4, 4> {
    SMatrix::<Complex64, 4, 4>::from_fn(|r, s| outer[(r / 2, s / 2)] * inner[(r % 2, s % 2)])
}

/// `a ⊗ b ⊗ c` for arbitrary 2×2 factors in the layout described above.
pub fn kron3_matrices(a: &Matrix2c, b: &Matrix2c, c: &Matrix2c) -> Matrix8c {
    let ba = kron2(b, a);
    Matrix8c::from_fn(|r, s| c[(r / 4, s / 4)] * ba[(r % 4, s % 4)])
}

/// The 4×4 `a ⊗ b` in the same layout.
pub fn kron2_matrices(a: &Matrix2c, b: &Matrix2c) -> SMatrix<Complex64, 4, 4> {
    kron2(b, a)
}

pub fn kron3(a: Pauli, b: Pauli, c: Pauli) -> OperatorMatrix {
    OperatorMatrix::new(
        kron3_matrices(&a.entries(), &b.entries(), &c.entries()),
        OperatorLabel::String([a, b, c]),
    )
}

fn check_axis(k: usize, what: &str) -> Result<()> {
    if (1..=3).contains(&k) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{what}{k}: index must lie in 1..=3")))
    }
}

/// `A_k = σ_k ⊗ σ_1 ⊗ σ_0`, paired with `p_k`.
pub fn build_a(k: usize) -> Result<OperatorMatrix> {
    check_axis(k, "A")?;
    let m = kron3(Pauli::ALL[k], Pauli::S1, Pauli::S0);
    Ok(OperatorMatrix::new(m.entries, OperatorLabel::A(k as u8)))
}

/// `B = σ_0 ⊗ σ_3 ⊗ σ_0`, paired with the mass.
pub fn build_b() -> OperatorMatrix {
    let m = kron3(Pauli::S0, Pauli::S3, Pauli::S0);
    OperatorMatrix::new(m.entries, OperatorLabel::B)
}

/// `B_k = σ_0 ⊗ σ_2 ⊗ σ_k`, paired with `x_k`.
pub fn build_bk(k: usize) -> Result<OperatorMatrix> {
    check_axis(k, "B")?;
    let m = kron3(Pauli::S0, Pauli::S2, Pauli::ALL[k]);
    Ok(OperatorMatrix::new(m.entries, OperatorLabel::Bk(k as u8)))
}

/// The seven mutually anticommuting generators `A1, A2, A3, B1, B2, B3, B`.
pub fn clifford_generators() -> [OperatorMatrix; 7] {
    [
        build_a(1).expect("A1"),
        build_a(2).expect("A2"),
        build_a(3).expect("A3"),
        build_bk(1).expect("B1"),
        build_bk(2).expect("B2"),
        build_bk(3).expect("B3"),
        build_b(),
    ]
}

pub fn anticommutator(a: &Matrix8c, b: &Matrix8c) -> Matrix8c {
    a * b + b * a
}

pub fn commutator8(a: &Matrix8c, b: &Matrix8c) -> Matrix8c {
    a * b - b * a
}

/// Reflection `op ↦ B op B`.
pub fn reflect(op: &OperatorMatrix) -> OperatorMatrix {
    let b = build_b().entries;
    OperatorMatrix::custom(b * op.entries * b, format!("reflect({})", op.label))
}

/// Entrywise complex conjugation in the basis where `σ_2` is imaginary.
pub fn conjugate_matrix(op: &OperatorMatrix) -> OperatorMatrix {
    OperatorMatrix::custom(op.entries.map(|z| z.conj()), format!("{}*", op.label))
}

/// `C = −i σ_2 ⊗ σ_2 ⊗ τ`. Every Pauli squares to one, so `C⁻¹ = −C`.
pub fn build_c(tau: Pauli) -> OperatorMatrix {
    let k = kron3(Pauli::S2, Pauli::S2, tau).entries;
    let c = k * Complex64::new(0.0, -1.0);
    debug_assert!(max_abs(&(c * c + Matrix8c::identity())) == 0.0);
    OperatorMatrix::new(c, OperatorLabel::C(tau))
}

/// `C X C⁻¹` with `C⁻¹ = C†` (C is unitary).
pub fn charge_conjugate(c: &OperatorMatrix, x: &Matrix8c) -> Matrix8c {
    c.entries * x * c.entries.adjoint()
}

/// `γ5 = −i A1 A2 A3 = σ_0 ⊗ σ_1 ⊗ σ_0`.
pub fn build_gamma5() -> OperatorMatrix {
    let [a1, a2, a3] = [1, 2, 3].map(|k| build_a(k).expect("A_k").entries);
    let g = a1 * a2 * a3 * Complex64::new(0.0, -1.0);
    debug_assert_eq!(g, kron3(Pauli::S0, Pauli::S1, Pauli::S0).entries);
    OperatorMatrix::new(g, OperatorLabel::Gamma5)
}

/// The closed tensor-string form of a coloured `γ5`.
pub fn colored_gamma5_string(color: Color) -> PauliString {
    let s = Pauli::ALL[color.axis()];
    [s, Pauli::S1, s]
}

/// `γ_R5 = −i A1 B2 B3`, `γ_Y5 = −i A2 B3 B1`, `γ_B5 = −i A3 B1 B2`.
pub fn build_colored_gamma5(color: Color) -> OperatorMatrix {
    let k = color.axis();
    let (l, m) = (k % 3 + 1, (k + 1) % 3 + 1);
    let a = build_a(k).expect("A_k").entries;
    let bl = build_bk(l).expect("B_l").entries;
    let bm = build_bk(m).expect("B_m").entries;
    let g = a * bl * bm * Complex64::new(0.0, -1.0);
    let [x, y, z] = colored_gamma5_string(color);
    debug_assert_eq!(g, kron3(x, y, z).entries);
    OperatorMatrix::new(g, OperatorLabel::ColoredGamma5(color))
}

/// Coefficients of a matrix along `{1, A_k, B_k, B}` from `tr(X M)/8`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CliffordCoefficients {
    pub identity: Complex64,
    pub a: [Complex64; 3],
    pub b: [Complex64; 3],
    pub beta: Complex64,
    /// Max-abs of what is left after subtracting the expansion.
    pub remainder: f64,
}

pub fn clifford_coefficients(m: &Matrix8c) -> CliffordCoefficients {
    let gens = clifford_generators();
    let coeff = |x: &Matrix8c| (x * m).trace() / 8.0;
    let identity = m.trace() / 8.0;
    let all: Vec<Complex64> = gens.iter().map(|g| coeff(&g.entries)).collect();
    let mut rest = m - Matrix8c::identity() * identity;
    for (g, c) in gens.iter().zip(&all) {
        rest -= g.entries * *c;
    }
    CliffordCoefficients {
        identity,
        a: [all[0], all[1], all[2]],
        b: [all[3], all[4], all[5]],
        beta: all[6],
        remainder: max_abs(&rest),
    }
}

/// `exp(−i φ/2 n·σ)`, the spin-½ representative of the rotation about `n` by `φ`.
pub fn spin_half_rotation(axis: [f64; 3], angle: f64) -> Matrix2c {
    let (s, c) = (0.5 * angle).sin_cos();
    let mut m = Matrix2c::identity() * Complex64::new(c, 0.0);
    for (k, n) in axis.iter().enumerate() {
        m += Pauli::ALL[k + 1].entries() * Complex64::new(0.0, -s * n);
    }
    m
}

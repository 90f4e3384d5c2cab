//! The six-dimensional phase space `p ⊕ x` and its U(1)⊗SU(3) generator algebra.
//!
//! Coordinates are ordered `(p1, p2, p3, x1, x2, x3)` and are dimensionless.
//! Generators act on column vectors: `v' = exp(θ g) v`. With
//! `(G_mn)_{ik} = δ_mi δ_nk − δ_mk δ_ni` the eight `F_i` close on
//! `[F_i, F_k] = 2 f_ikj F_j`, and `exp(π/2 · R)` sends `(p, x)` to `(−x, p)`.

mod pairing;
mod su3;

use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix6;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use pairing::{
    apply_pairing, derive_even_pairing, derive_pairing_from_rotation, one_parameter_search,
    pairing, Color, ColorTag, Coord, OneParameterMatch, PairingDerivation, PairingScheme,
    RotationOrder, SignedCoord,
};
pub use su3::{
    verify_su3_table, verify_su3_table_with, PairCheck, StructureConstants, Su3Report,
};

/// 6×6 real matrix acting on a [`PhaseVector`].
pub type Transformation6 = Matrix6<f64>;

/// Default tolerance for exact-algebra identities.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default tolerance for identities involving composed exponentials.
pub const COMPOSED_TOL: f64 = 1e-11;

/// A point `(p1, p2, p3, x1, x2, x3)` of phase space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PhaseVector(pub [f64; 6]);

impl PhaseVector {
    pub fn new(p: [f64; 3], x: [f64; 3]) -> Self {
        Self([p[0], p[1], p[2], x[0], x[1], x[2]])
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        let arr: [f64; 6] = values.try_into().map_err(|_| {
            Error::InvalidArgument(format!(
                "phase vector needs 6 components, got {}",
                values.len()
            ))
        })?;
        if arr.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("phase vector"));
        }
        Ok(Self(arr))
    }

    pub fn p(&self) -> [f64; 3] {
        [self.0[0], self.0[1], self.0[2]]
    }

    pub fn x(&self) -> [f64; 3] {
        [self.0[3], self.0[4], self.0[5]]
    }

    /// `p² + x²`, the form left invariant by the whole group.
    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn transform(&self, m: &Transformation6) -> Self {
        let v = nalgebra::Vector6::from_row_slice(&self.0);
        let out = m * v;
        let mut arr = [0.0; 6];
        arr.copy_from_slice(out.as_slice());
        Self(arr)
    }
}

/// Which named generator a [`Generator6`] is.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GeneratorLabel {
    /// `G(m, n)`, 1-based.
    G(u8, u8),
    /// `F_i`, i = 1..8.
    F(u8),
    /// The U(1) generator `R = R1 + R2 + R3`.
    R,
    /// `R_i = G(i+3, i)`.
    Ri(u8),
    /// `H_i`: the SU(3) generators mixing `p` and `x` components.
    H(u8),
    /// `J_i`: ordinary simultaneous rotations of `p` and `x`.
    J(u8),
    Custom(String),
}

impl fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorLabel::G(m, n) => write!(f, "G({m},{n})"),
            GeneratorLabel::F(i) => write!(f, "F{i}"),
            GeneratorLabel::R => write!(f, "R"),
            GeneratorLabel::Ri(i) => write!(f, "R{i}"),
            GeneratorLabel::H(i) => write!(f, "H{i}"),
            GeneratorLabel::J(i) => write!(f, "J{i}"),
            GeneratorLabel::Custom(s) => f.write_str(s),
        }
    }
}

impl FromStr for GeneratorLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = || Error::UnknownTag(s.to_string());
        if s == "R" {
            return Ok(GeneratorLabel::R);
        }
        if let Some(inner) = s.strip_prefix("G(").and_then(|r| r.strip_suffix(')')) {
            let (m, n) = inner.split_once(',').ok_or_else(unknown)?;
            let m: u8 = m.trim().parse().map_err(|_| unknown())?;
            let n: u8 = n.trim().parse().map_err(|_| unknown())?;
            return Ok(GeneratorLabel::G(m, n));
        }
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(unknown)?;
        let idx: u8 = chars.as_str().parse().map_err(|_| unknown())?;
        let (label, max) = match head {
            'F' => (GeneratorLabel::F(idx), 8),
            'R' => (GeneratorLabel::Ri(idx), 3),
            'H' => (GeneratorLabel::H(idx), 3),
            'J' => (GeneratorLabel::J(idx), 3),
            _ => return Err(unknown()),
        };
        if idx == 0 || idx > max {
            return Err(unknown());
        }
        Ok(label)
    }
}

impl Serialize for GeneratorLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A real antisymmetric 6×6 matrix in the defining representation.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator6 {
    pub entries: Matrix6<f64>,
    pub label: GeneratorLabel,
}

impl Generator6 {
    pub fn custom(entries: Matrix6<f64>, label: impl Into<String>) -> Self {
        Self {
            entries,
            label: GeneratorLabel::Custom(label.into()),
        }
    }

    pub fn from_label(label: &GeneratorLabel) -> Result<Self> {
        match *label {
            GeneratorLabel::G(m, n) => build_g(m as usize, n as usize),
            GeneratorLabel::F(i) => build_f(i as usize),
            GeneratorLabel::R => Ok(build_r()),
            GeneratorLabel::Ri(i) => build_r_i(i as usize),
            GeneratorLabel::H(i) => build_h(i as usize),
            GeneratorLabel::J(i) => build_j(i as usize),
            GeneratorLabel::Custom(ref s) => Err(Error::UnknownTag(s.clone())),
        }
    }

    /// `max |g + gᵀ|`.
    pub fn antisymmetry_residual(&self) -> f64 {
        (self.entries + self.entries.transpose()).amax()
    }

    pub fn scaled(&self, factor: f64, label: impl Into<String>) -> Self {
        Self::custom(self.entries * factor, label)
    }

    pub fn plus(&self, other: &Generator6, label: impl Into<String>) -> Self {
        Self::custom(self.entries + other.entries, label)
    }

    pub fn minus(&self, other: &Generator6, label: impl Into<String>) -> Self {
        Self::custom(self.entries - other.entries, label)
    }
}

fn g_raw(m: usize, n: usize) -> Matrix6<f64> {
    let mut e = Matrix6::zeros();
    e[(m - 1, n - 1)] = 1.0;
    e[(n - 1, m - 1)] = -1.0;
    e
}

/// The SO(6) generator `G_mn` with `+1` at `(m, n)` and `−1` at `(n, m)`.
pub fn build_g(m: usize, n: usize) -> Result<Generator6> {
    if !(1..=6).contains(&m) || !(1..=6).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "G({m},{n}): indices must lie in 1..=6"
        )));
    }
    if m == n {
        return Err(Error::InvalidArgument(format!("G({m},{n}): m must differ from n")));
    }
    Ok(Generator6 {
        entries: g_raw(m, n),
        label: GeneratorLabel::G(m as u8, n as u8),
    })
}

/// The eight SU(3) generators as sums of `G_mn`.
pub fn build_f(i: usize) -> Result<Generator6> {
    let entries = match i {
        1 => g_raw(1, 5) + g_raw(2, 4),
        2 => g_raw(1, 2) + g_raw(4, 5),
        3 => g_raw(4, 1) - g_raw(5, 2),
        4 => g_raw(3, 4) + g_raw(1, 6),
        5 => g_raw(1, 3) + g_raw(4, 6),
        6 => g_raw(6, 2) + g_raw(5, 3),
        7 => g_raw(3, 2) + g_raw(6, 5),
        8 => (g_raw(4, 1) + g_raw(5, 2) - g_raw(6, 3) * 2.0) / 3f64.sqrt(),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "F{i}: index must lie in 1..=8"
            )))
        }
    };
    Ok(Generator6 {
        entries,
        label: GeneratorLabel::F(i as u8),
    })
}

/// All eight `F_i`, index 0 holding `F_1`.
pub fn su3_generators() -> [Generator6; 8] {
    std::array::from_fn(|i| build_f(i + 1).expect("index in range"))
}

/// `R = G41 + G52 + G63`, generator of the reciprocity transformations.
pub fn build_r() -> Generator6 {
    Generator6 {
        entries: g_raw(4, 1) + g_raw(5, 2) + g_raw(6, 3),
        label: GeneratorLabel::R,
    }
}

pub fn build_r_i(i: usize) -> Result<Generator6> {
    if !(1..=3).contains(&i) {
        return Err(Error::InvalidArgument(format!("R{i}: index must lie in 1..=3")));
    }
    Ok(Generator6 {
        entries: g_raw(i + 3, i),
        label: GeneratorLabel::Ri(i as u8),
    })
}

/// `H1 = F6`, `H2 = −F4`, `H3 = −F1`.
pub fn build_h(i: usize) -> Result<Generator6> {
    let (f, sign) = match i {
        1 => (6, 1.0),
        2 => (4, -1.0),
        3 => (1, -1.0),
        _ => return Err(Error::InvalidArgument(format!("H{i}: index must lie in 1..=3"))),
    };
    Ok(Generator6 {
        entries: build_f(f)?.entries * sign,
        label: GeneratorLabel::H(i as u8),
    })
}

/// `J1 = F7`, `J2 = F5`, `J3 = −F2`.
pub fn build_j(i: usize) -> Result<Generator6> {
    let (f, sign) = match i {
        1 => (7, 1.0),
        2 => (5, 1.0),
        3 => (2, -1.0),
        _ => return Err(Error::InvalidArgument(format!("J{i}: index must lie in 1..=3"))),
    };
    Ok(Generator6 {
        entries: build_f(f)?.entries * sign,
        label: GeneratorLabel::J(i as u8),
    })
}

/// `[a, b] = ab − ba`.
pub fn commutator6(a: &Generator6, b: &Generator6) -> Generator6 {
    Generator6::custom(
        a.entries * b.entries - b.entries * a.entries,
        format!("[{},{}]", a.label, b.label),
    )
}

/// `exp(θ g)`.
pub fn exp_generator(g: &Generator6, theta: f64) -> Result<Transformation6> {
    if !theta.is_finite() {
        return Err(Error::NonFinite("angle"));
    }
    Ok((g.entries * theta).exp())
}

/// The symplectic form with `{x_i, p_j} = δ_ij`: `J = [[0, −I], [I, 0]]`.
pub fn symplectic_form() -> Transformation6 {
    let mut j = Matrix6::zeros();
    for i in 0..3 {
        j[(i, i + 3)] = -1.0;
        j[(i + 3, i)] = 1.0;
    }
    j
}

pub fn orthogonality_residual(m: &Transformation6) -> f64 {
    (m.transpose() * m - Matrix6::identity()).amax()
}

pub fn symplectic_residual(m: &Transformation6) -> f64 {
    let j = symplectic_form();
    (m.transpose() * j * m - j).amax()
}

pub fn is_orthogonal(m: &Transformation6, tol: f64) -> bool {
    orthogonality_residual(m) <= tol
}

pub fn is_symplectic(m: &Transformation6, tol: f64) -> bool {
    symplectic_residual(m) <= tol
}

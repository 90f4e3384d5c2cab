//! Canonical pairings of the six coordinates into generalized momenta and
//! positions, and their generation by group elements.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix6;
use serde::Serialize;

use super::{
    build_f, build_h, build_j, build_r, exp_generator, is_symplectic, GeneratorLabel,
    Generator6, PhaseVector, Transformation6, DEFAULT_TOL,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Coord {
    P1,
    P2,
    P3,
    X1,
    X2,
    X3,
}

impl Coord {
    pub const ALL: [Coord; 6] = [Coord::P1, Coord::P2, Coord::P3, Coord::X1, Coord::X2, Coord::X3];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = ["p1", "p2", "p3", "x1", "x2", "x3"][self.index()];
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SignedCoord {
    pub coord: Coord,
    pub negative: bool,
}

impl SignedCoord {
    const fn pos(coord: Coord) -> Self {
        Self { coord, negative: false }
    }

    const fn neg(coord: Coord) -> Self {
        Self { coord, negative: true }
    }

    fn flipped(self) -> Self {
        Self {
            coord: self.coord,
            negative: !self.negative,
        }
    }

    fn sign(self) -> f64 {
        if self.negative {
            -1.0
        } else {
            1.0
        }
    }

    fn read(self, v: &PhaseVector) -> f64 {
        self.sign() * v.0[self.coord.index()]
    }
}

impl fmt::Display for SignedCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-{}", self.coord)
        } else {
            write!(f, "{}", self.coord)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Color {
    R,
    Y,
    B,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::R, Color::Y, Color::B];

    /// The ordinary-momentum axis this colour keeps, 1-based.
    pub fn axis(self) -> usize {
        self as usize + 1
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::R => "R",
            Color::Y => "Y",
            Color::B => "B",
        })
    }
}

impl FromStr for Color {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "R" | "r" | "red" | "Red" => Ok(Color::R),
            "Y" | "y" | "yellow" | "Yellow" => Ok(Color::Y),
            "B" | "b" | "blue" | "Blue" => Ok(Color::B),
            other => Err(Error::UnknownTag(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ColorTag {
    Standard,
    Color(Color),
    /// Momentum and position triplets of the colour pairing exchanged
    /// (`{gx, −gp}`), with an even number of ordinary momenta in the new momentum.
    Even(Color),
}

impl fmt::Display for ColorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColorTag::Standard => f.write_str("Standard"),
            ColorTag::Color(c) => write!(f, "{c}"),
            ColorTag::Even(c) => write!(f, "Even{c}"),
        }
    }
}

impl FromStr for ColorTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "Standard" | "standard" | "S" | "std" => return Ok(ColorTag::Standard),
            "Even" | "even" => return Ok(ColorTag::Even(Color::R)),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("Even").or_else(|| s.strip_prefix("even")) {
            let rest = rest.trim_start_matches(['-', '_', '(']).trim_end_matches(')');
            let color = match rest {
                "1" => Color::R,
                "2" => Color::Y,
                "3" => Color::B,
                other => other.parse().map_err(|_| Error::UnknownTag(s.to_string()))?,
            };
            return Ok(ColorTag::Even(color));
        }
        s.parse::<Color>()
            .map(ColorTag::Color)
            .map_err(|_| Error::UnknownTag(s.to_string()))
    }
}

/// A split of the six coordinates into a generalized-momentum triplet and a
/// generalized-position triplet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingScheme {
    pub momentum: [SignedCoord; 3],
    pub position: [SignedCoord; 3],
    pub tag: ColorTag,
}

impl PairingScheme {
    /// Fails unless the six slots reference each coordinate exactly once.
    pub fn new(momentum: [SignedCoord; 3], position: [SignedCoord; 3], tag: ColorTag) -> Result<Self> {
        let mut seen = [false; 6];
        for slot in momentum.iter().chain(&position) {
            let i = slot.coord.index();
            if seen[i] {
                return Err(Error::InvalidArgument(format!(
                    "pairing references {} twice",
                    slot.coord
                )));
            }
            seen[i] = true;
        }
        Ok(Self { momentum, position, tag })
    }

    fn slots(&self) -> impl Iterator<Item = SignedCoord> + '_ {
        self.momentum.iter().chain(&self.position).copied()
    }

    /// The signed permutation matrix `M` with `(gp, gx) = M (p, x)`.
    pub fn matrix(&self) -> Transformation6 {
        let mut m = Matrix6::zeros();
        for (row, slot) in self.slots().enumerate() {
            m[(row, slot.coord.index())] = slot.sign();
        }
        m
    }

    pub fn apply(&self, v: &PhaseVector) -> ([f64; 3], [f64; 3]) {
        (
            self.momentum.map(|s| s.read(v)),
            self.position.map(|s| s.read(v)),
        )
    }

    /// The induced map preserves the Poisson brackets.
    pub fn is_canonical(&self) -> bool {
        is_symplectic(&self.matrix(), DEFAULT_TOL)
    }
}

impl fmt::Display for PairingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.momentum;
        let [d, e, g] = self.position;
        write!(f, "{{({a},{b},{c}),({d},{e},{g})}}")
    }
}

fn color_pairing(color: Color) -> ([SignedCoord; 3], [SignedCoord; 3]) {
    use Coord::*;
    use SignedCoord as S;
    match color {
        Color::R => (
            [S::pos(P1), S::pos(X2), S::neg(X3)],
            [S::pos(X1), S::neg(P2), S::pos(P3)],
        ),
        Color::Y => (
            [S::neg(X1), S::pos(P2), S::pos(X3)],
            [S::pos(P1), S::pos(X2), S::neg(P3)],
        ),
        Color::B => (
            [S::pos(X1), S::neg(X2), S::pos(P3)],
            [S::neg(P1), S::pos(P2), S::pos(X3)],
        ),
    }
}

/// The signed reassignment for a colour tag.
pub fn pairing(tag: ColorTag) -> PairingScheme {
    use Coord::*;
    let (momentum, position) = match tag {
        ColorTag::Standard => (
            [P1, P2, P3].map(SignedCoord::pos),
            [X1, X2, X3].map(SignedCoord::pos),
        ),
        ColorTag::Color(c) => color_pairing(c),
        ColorTag::Even(c) => {
            let (gp, gx) = color_pairing(c);
            (gx, gp.map(SignedCoord::flipped))
        }
    };
    PairingScheme::new(momentum, position, tag).expect("built-in pairings are permutations")
}

pub fn apply_pairing(scheme: &PairingScheme, v: &PhaseVector) -> ([f64; 3], [f64; 3]) {
    scheme.apply(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RotationOrder {
    /// `rotation · exp(π/2 H_c)`.
    OrdinaryAfter,
    /// `exp(π/2 H_c) · rotation`.
    OrdinaryBefore,
}

/// A quarter-turn by `H_c` composed with an ordinary rotation.
#[derive(Debug, Clone, Serialize)]
pub struct PairingDerivation {
    pub color: Color,
    pub quarter_turn: GeneratorLabel,
    /// Axis of the ordinary rotation (`J_axis`), 1-based.
    pub rotation_axis: usize,
    /// Ordinary rotation angle in units of π/2.
    pub quarter_turns: u8,
    pub order: RotationOrder,
    #[serde(skip)]
    pub composite: Transformation6,
    pub residual: f64,
}

fn signed_permutation_residual(m: &Transformation6, target: &Transformation6) -> f64 {
    (m - target).amax()
}

/// Searches ordinary rotations by quarter-turn multiples about each axis so that
/// together with `exp(π/2 H_c)` the standard pairing is mapped onto `pairing(c)`.
pub fn derive_pairing_from_rotation(color: Color) -> Result<PairingDerivation> {
    let h = build_h(color.axis())?;
    let target = pairing(ColorTag::Color(color)).matrix();
    let quarter = exp_generator(&h, FRAC_PI_2)?;
    let mut best: Option<PairingDerivation> = None;
    for order in [RotationOrder::OrdinaryAfter, RotationOrder::OrdinaryBefore] {
        for axis in 1..=3 {
            let j = build_j(axis)?;
            for q in 0..4u8 {
                let rot = exp_generator(&j, f64::from(q) * FRAC_PI_2)?;
                let composite = match order {
                    RotationOrder::OrdinaryAfter => rot * quarter,
                    RotationOrder::OrdinaryBefore => quarter * rot,
                };
                let residual = signed_permutation_residual(&composite, &target);
                if residual <= DEFAULT_TOL
                    && best.as_ref().is_none_or(|b| residual < b.residual)
                {
                    best = Some(PairingDerivation {
                        color,
                        quarter_turn: h.label.clone(),
                        rotation_axis: axis,
                        quarter_turns: q,
                        order,
                        composite,
                        residual,
                    });
                }
            }
        }
    }
    best.ok_or_else(|| {
        Error::ConventionMismatch(format!(
            "no quarter-turn rotation completes exp(pi/2 H{}) to pairing {color}",
            color.axis()
        ))
    })
}

/// `exp(−π/2 R) · pairing(c)`, the even pairing reached through the U(1) factor.
pub fn derive_even_pairing(color: Color) -> Result<Transformation6> {
    let back = exp_generator(&build_r(), -FRAC_PI_2)?;
    Ok(back * pairing(ColorTag::Color(color)).matrix())
}

#[derive(Debug, Clone, Serialize)]
pub struct OneParameterMatch {
    pub generator: GeneratorLabel,
    pub theta: f64,
    pub residual: f64,
}

/// Scans `θ ∈ [−π, π]` for `exp(θ g) = target`, refining the best grid point by
/// golden-section search.
pub fn scan_generator(g: &Generator6, target: &Transformation6, tol: f64) -> Option<(f64, f64)> {
    const STEPS: usize = 720;
    let cost = |theta: f64| {
        exp_generator(g, theta)
            .map(|m| (m - target).amax())
            .unwrap_or(f64::INFINITY)
    };
    let step = 2.0 * PI / STEPS as f64;
    let (best_k, _) = (0..=STEPS)
        .map(|k| (k, cost(-PI + step * k as f64)))
        .fold((0, f64::INFINITY), |acc, cur| if cur.1 < acc.1 { cur } else { acc });
    let (mut lo, mut hi) = (-PI + step * (best_k as f64 - 1.0), -PI + step * (best_k as f64 + 1.0));
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let a = hi - phi * (hi - lo);
        let b = lo + phi * (hi - lo);
        if cost(a) < cost(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    let theta = 0.5 * (lo + hi);
    let residual = cost(theta);
    (residual <= tol).then_some((theta, residual))
}

/// The three one-parameter candidates `F3`, `(F3 + √3 F8)/2`, `(F3 − √3 F8)/2`.
pub fn cartan_candidates() -> [Generator6; 3] {
    let f3 = build_f(3).expect("F3");
    let f8 = build_f(8).expect("F8").scaled(3f64.sqrt(), "sqrt3*F8");
    [
        f3.clone(),
        f3.plus(&f8, "(F3+sqrt3*F8)/2").scaled(0.5, "(F3+sqrt3*F8)/2"),
        f3.minus(&f8, "(F3-sqrt3*F8)/2").scaled(0.5, "(F3-sqrt3*F8)/2"),
    ]
}

/// Finds a single diagonal SU(3) generator whose exponential equals `pairing(c)`.
pub fn one_parameter_search(color: Color) -> Option<OneParameterMatch> {
    let target = pairing(ColorTag::Color(color)).matrix();
    cartan_candidates().into_iter().find_map(|g| {
        scan_generator(&g, &target, 1e-9).map(|(theta, residual)| OneParameterMatch {
            generator: g.label.clone(),
            theta,
            residual,
        })
    })
}

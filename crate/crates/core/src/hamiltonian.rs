//! Dirac, coloured, antiparticle and composite Hamiltonians built from the
//! 8×8 Clifford generators; their rotation, charge conjugation and spectra.
//!
//! Every Hamiltonian except `Custom` is a real combination
//! `c₀·1 + Σ a_k A_k + Σ b_k B_k + β B`, held as [`CliffordCombination`].

use std::collections::BTreeMap;

use nalgebra::{Matrix3, Rotation3, SymmetricEigen, Unit, Vector3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::clifford::{
    build_a, build_b, build_bk, build_c, charge_conjugate, max_abs, Matrix8c, OperatorLabel,
    OperatorMatrix, Pauli,
};
use crate::error::{Error, Result};
use crate::pauli_expr::PauliExpr;
use crate::phase_space::Color;

pub type Vec3 = [f64; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HamiltonianKind {
    Dirac,
    #[serde(alias = "R")]
    ColorR,
    #[serde(alias = "Y")]
    ColorY,
    #[serde(alias = "B")]
    ColorB,
    AntiR,
    AntiY,
    AntiB,
    QuarkSum,
    QQbar,
    Custom,
}

impl HamiltonianKind {
    pub fn color(self) -> Option<Color> {
        match self {
            HamiltonianKind::ColorR | HamiltonianKind::AntiR => Some(Color::R),
            HamiltonianKind::ColorY | HamiltonianKind::AntiY => Some(Color::Y),
            HamiltonianKind::ColorB | HamiltonianKind::AntiB => Some(Color::B),
            _ => None,
        }
    }

    pub fn particle(color: Color) -> Self {
        match color {
            Color::R => HamiltonianKind::ColorR,
            Color::Y => HamiltonianKind::ColorY,
            Color::B => HamiltonianKind::ColorB,
        }
    }

    pub fn antiparticle(color: Color) -> Self {
        match color {
            Color::R => HamiltonianKind::AntiR,
            Color::Y => HamiltonianKind::AntiY,
            Color::B => HamiltonianKind::AntiB,
        }
    }

    fn is_anti(self) -> bool {
        matches!(
            self,
            HamiltonianKind::AntiR | HamiltonianKind::AntiY | HamiltonianKind::AntiB
        )
    }
}

/// Constant electromagnetic potentials `(𝒜₀, 𝒜)` and the charge `e`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmCoupling {
    pub e: f64,
    #[serde(rename = "A0", default)]
    pub a0: f64,
    #[serde(rename = "Avec", default)]
    pub avec: Vec3,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianSpec {
    pub kind: HamiltonianKind,
    #[serde(default)]
    pub m: f64,
    #[serde(default, alias = "P")]
    pub p: Vec3,
    /// Position, or position difference.
    #[serde(default, alias = "dx")]
    pub x: Vec3,
    /// Antiquark momentum (QQbar only).
    #[serde(default, alias = "pbar")]
    pub p_bar: Vec3,
    /// Antiquark position (QQbar only).
    #[serde(default, alias = "xbar")]
    pub x_bar: Vec3,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub em: Option<EmCoupling>,
    /// Expression text for `Custom`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
    /// Seed for sampled checks driven by this spec.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl HamiltonianSpec {
    pub fn new(kind: HamiltonianKind, p: Vec3, x: Vec3, m: f64) -> Self {
        Self {
            kind,
            m,
            p,
            x,
            p_bar: [0.0; 3],
            x_bar: [0.0; 3],
            em: None,
            expr: None,
            seed: None,
        }
    }

    pub fn qqbar(p: Vec3, x: Vec3, p_bar: Vec3, x_bar: Vec3, m: f64) -> Self {
        Self {
            p_bar,
            x_bar,
            ..Self::new(HamiltonianKind::QQbar, p, x, m)
        }
    }

    pub fn custom(expr: impl Into<String>, p: Vec3, x: Vec3, m: f64) -> Self {
        Self {
            expr: Some(expr.into()),
            ..Self::new(HamiltonianKind::Custom, p, x, m)
        }
    }

    pub fn with_em(mut self, em: EmCoupling) -> Self {
        self.em = Some(em);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let vectors = [self.p, self.x, self.p_bar, self.x_bar];
        if !self.m.is_finite() || vectors.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("hamiltonian spec"));
        }
        if self.m < 0.0 {
            return Err(Error::InvalidArgument(format!("mass must be >= 0, got {}", self.m)));
        }
        if let Some(em) = &self.em {
            if ![em.e, em.a0].iter().chain(&em.avec).all(|v| v.is_finite()) {
                return Err(Error::NonFinite("em coupling"));
            }
            let coupled = matches!(self.kind, HamiltonianKind::Dirac) || self.kind.color().is_some() && !self.kind.is_anti();
            if !coupled {
                return Err(Error::Unsupported(format!(
                    "electromagnetic coupling is not defined for {:?}",
                    self.kind
                )));
            }
        }
        if self.kind == HamiltonianKind::Custom && self.expr.is_none() {
            return Err(Error::InvalidArgument("Custom Hamiltonian needs `expr`".into()));
        }
        Ok(())
    }

    /// Symbol bindings for `Custom` expressions.
    pub fn bindings(&self) -> BTreeMap<String, f64> {
        let mut b = BTreeMap::new();
        for k in 0..3 {
            b.insert(format!("p{}", k + 1), self.p[k]);
            b.insert(format!("x{}", k + 1), self.x[k]);
        }
        b.insert("m".into(), self.m);
        let em = self.em.unwrap_or(EmCoupling {
            e: 0.0,
            a0: 0.0,
            avec: [0.0; 3],
        });
        b.insert("e".into(), em.e);
        b.insert("A0".into(), em.a0);
        for k in 0..3 {
            b.insert(format!("A{}v", k + 1), em.avec[k]);
        }
        b
    }

    /// The antiparticle rule: `e → −e`, `x → −x`, everything else kept.
    pub fn antiparticle_spec(&self) -> Self {
        let mut out = self.clone();
        out.x = self.x.map(|v| -v);
        if let Some(em) = out.em.as_mut() {
            em.e = -em.e;
        }
        out
    }

    fn with_momenta_negated(&self) -> Self {
        let mut out = self.clone();
        out.p = self.p.map(|v| -v);
        out.p_bar = self.p_bar.map(|v| -v);
        out
    }

    /// Momenta, positions and vector potential rotated by `rot`.
    fn rotated(&self, rot: &Matrix3<f64>) -> Self {
        let r = |v: Vec3| {
            let w = rot * Vector3::from(v);
            [w[0], w[1], w[2]]
        };
        let mut out = self.clone();
        out.p = r(self.p);
        out.x = r(self.x);
        out.p_bar = r(self.p_bar);
        out.x_bar = r(self.x_bar);
        if let Some(em) = out.em.as_mut() {
            em.avec = r(em.avec);
        }
        out
    }
}

/// A set of matrices playing the roles of `A_k`, `B_k`, `B`.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordBasis {
    pub a: [Matrix8c; 3],
    pub b: [Matrix8c; 3],
    pub beta: Matrix8c,
}

impl CliffordBasis {
    pub fn standard() -> Self {
        Self {
            a: [1, 2, 3].map(|k| build_a(k).expect("A_k").entries),
            b: [1, 2, 3].map(|k| build_bk(k).expect("B_k").entries),
            beta: build_b().entries,
        }
    }

    /// Primed matrices `A'_k = R_kl A_l`, `B'_k = R_kl B_l`.
    pub fn rotated(&self, rot: &Matrix3<f64>) -> Self {
        let mix = |v: &[Matrix8c; 3]| {
            std::array::from_fn(|k| {
                (0..3).fold(Matrix8c::zeros(), |acc, l| {
                    acc + v[l] * Complex64::new(rot[(k, l)], 0.0)
                })
            })
        };
        Self {
            a: mix(&self.a),
            b: mix(&self.b),
            beta: self.beta,
        }
    }
}

/// Real coefficients of `1, A_k, B_k, B`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct CliffordCombination {
    pub identity: f64,
    pub a: Vec3,
    pub b: Vec3,
    pub beta: f64,
}

impl CliffordCombination {
    pub fn to_matrix(&self, basis: &CliffordBasis) -> Matrix8c {
        let re = |v: f64| Complex64::new(v, 0.0);
        let mut m = Matrix8c::identity() * re(self.identity) + basis.beta * re(self.beta);
        for k in 0..3 {
            m += basis.a[k] * re(self.a[k]) + basis.b[k] * re(self.b[k]);
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            identity: self.identity + other.identity,
            a: std::array::from_fn(|k| self.a[k] + other.a[k]),
            b: std::array::from_fn(|k| self.b[k] + other.b[k]),
            beta: self.beta + other.beta,
        }
    }

    /// The seven Clifford coefficients `(a, b, β)` as one vector.
    pub fn pattern(&self) -> [f64; 7] {
        [self.a[0], self.a[1], self.a[2], self.b[0], self.b[1], self.b[2], self.beta]
    }
}

fn color_combination(color: Color, anti: bool, p: Vec3, x: Vec3, m: f64, em: Option<&EmCoupling>) -> CliffordCombination {
    let c = color.axis() - 1;
    let mut out = CliffordCombination {
        beta: m,
        ..Default::default()
    };
    let (e, a0, avec) = em.map_or((0.0, 0.0, [0.0; 3]), |em| (em.e, em.a0, em.avec));
    out.a[c] = p[c] - e * avec[c];
    out.identity = e * a0;
    let sign = if anti { -1.0 } else { 1.0 };
    for k in (0..3).filter(|&k| k != c) {
        out.b[k] = sign * x[k];
    }
    out
}

/// Clifford coefficients of the Hamiltonian described by `spec`.
pub fn combination(spec: &HamiltonianSpec) -> Result<CliffordCombination> {
    spec.validate()?;
    let em = spec.em.as_ref();
    let comb = match spec.kind {
        HamiltonianKind::Dirac => {
            let (e, a0, avec) = em.map_or((0.0, 0.0, [0.0; 3]), |em| (em.e, em.a0, em.avec));
            CliffordCombination {
                identity: e * a0,
                a: std::array::from_fn(|k| spec.p[k] - e * avec[k]),
                b: [0.0; 3],
                beta: spec.m,
            }
        }
        kind @ (HamiltonianKind::ColorR | HamiltonianKind::ColorY | HamiltonianKind::ColorB) => {
            color_combination(kind.color().expect("colour"), false, spec.p, spec.x, spec.m, em)
        }
        kind @ (HamiltonianKind::AntiR | HamiltonianKind::AntiY | HamiltonianKind::AntiB) => {
            color_combination(kind.color().expect("colour"), true, spec.p, spec.x, spec.m, None)
        }
        HamiltonianKind::QuarkSum => Color::ALL
            .iter()
            .map(|&c| color_combination(c, false, spec.p, spec.x, spec.m, None))
            .fold(CliffordCombination::default(), |acc, h| acc.add(&h)),
        HamiltonianKind::QQbar => Color::ALL
            .iter()
            .flat_map(|&c| {
                [
                    color_combination(c, false, spec.p, spec.x, spec.m, None),
                    color_combination(c, true, spec.p_bar, spec.x_bar, spec.m, None),
                ]
            })
            .fold(CliffordCombination::default(), |acc, h| acc.add(&h)),
        HamiltonianKind::Custom => {
            return Err(Error::Unsupported(
                "Custom Hamiltonians have no fixed Clifford pattern".into(),
            ))
        }
    };
    Ok(comb)
}

fn label_for(spec: &HamiltonianSpec) -> OperatorLabel {
    OperatorLabel::Hamiltonian(format!("{:?}", spec.kind))
}

fn build_in_basis(spec: &HamiltonianSpec, basis: &CliffordBasis) -> Result<OperatorMatrix> {
    spec.validate()?;
    let entries = match spec.kind {
        HamiltonianKind::Custom => {
            let text = spec.expr.as_deref().expect("validated");
            PauliExpr::parse(text)?.to_matrix(&spec.bindings())?.entries
        }
        _ => combination(spec)?.to_matrix(basis),
    };
    Ok(OperatorMatrix::new(entries, label_for(spec)))
}

/// The Hamiltonian matrix for `spec`.
pub fn build_hamiltonian(spec: &HamiltonianSpec) -> Result<OperatorMatrix> {
    build_in_basis(spec, &CliffordBasis::standard())
}

/// `QuarkSum = H_R + H_Y + H_B` or `QQbar = Σ_c H_c + H_c̄` with one shared `x`.
pub fn build_composite(spec: &HamiltonianSpec) -> Result<OperatorMatrix> {
    match spec.kind {
        HamiltonianKind::QuarkSum | HamiltonianKind::QQbar => build_hamiltonian(spec),
        other => Err(Error::InvalidArgument(format!("{other:?} is not a composite kind"))),
    }
}

/// Rotation of the reference frame by `angle` about `axis`: the matrix that
/// takes components in the old frame to components in the new one.
pub fn frame_rotation(axis: Vec3, angle: f64) -> Result<Matrix3<f64>> {
    let n = Vector3::from(axis);
    if !angle.is_finite() || n.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("rotation"));
    }
    if (n.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "rotation axis must be a unit vector, |axis| = {}",
            n.norm()
        )));
    }
    let active = Rotation3::from_axis_angle(&Unit::new_unchecked(n), angle);
    Ok(active.matrix().transpose())
}

/// The Hamiltonian rebuilt from primed matrices and primed coordinates.
pub fn rotate_hamiltonian(spec: &HamiltonianSpec, axis: Vec3, angle: f64) -> Result<OperatorMatrix> {
    if spec.kind == HamiltonianKind::Custom {
        return Err(Error::Unsupported("rotation of Custom Hamiltonians".into()));
    }
    let rot = frame_rotation(axis, angle)?;
    build_in_basis(&spec.rotated(&rot), &CliffordBasis::standard().rotated(&rot))
}

/// Both sides of the axis-3 mixing law for `H_R` (and for `H_Y` with the opposite sign):
/// `H_R = c² H'_R + s² H'_Y + sc (B'_2 x'_1 + B'_1 x'_2 − A'_2 p'_1 − A'_1 p'_2)`.
pub fn axis3_mixing(p: Vec3, x: Vec3, m: f64, angle: f64, color: Color) -> Result<(Matrix8c, Matrix8c)> {
    let (own, other, sign) = match color {
        Color::R => (HamiltonianKind::ColorR, HamiltonianKind::ColorY, 1.0),
        Color::Y => (HamiltonianKind::ColorY, HamiltonianKind::ColorR, -1.0),
        Color::B => return Err(Error::InvalidArgument("H_B is form-invariant about axis 3".into())),
    };
    let lhs = build_hamiltonian(&HamiltonianSpec::new(own, p, x, m))?.entries;
    let rot = frame_rotation([0.0, 0.0, 1.0], angle)?;
    let basis = CliffordBasis::standard().rotated(&rot);
    let primed = HamiltonianSpec::new(own, p, x, m).rotated(&rot);
    let (pp, xp) = (primed.p, primed.x);
    let h_own = build_in_basis(&HamiltonianSpec::new(own, pp, xp, m), &basis)?.entries;
    let h_other = build_in_basis(&HamiltonianSpec::new(other, pp, xp, m), &basis)?.entries;
    let (s, c) = angle.sin_cos();
    let re = |v: f64| Complex64::new(v, 0.0);
    let cross = basis.b[1] * re(xp[0]) + basis.b[0] * re(xp[1])
        - basis.a[1] * re(pp[0])
        - basis.a[0] * re(pp[1]);
    let rhs = h_own * re(c * c) + h_other * re(s * s) + cross * re(sign * s * c);
    Ok((lhs, rhs))
}

/// Result of charge-conjugating a Hamiltonian.
#[derive(Debug, Clone)]
pub struct Conjugation {
    /// The spec whose ordinary build equals the conjugated matrix.
    pub spec: HamiltonianSpec,
    pub matrix: OperatorMatrix,
    /// `max |C H' C⁻¹ − build(spec)|`.
    pub closed_form_residual: f64,
}

/// Applies `i → −i, p → −p, H → −H` and then `C (·) C⁻¹` with `τ = σ_2`.
pub fn conjugate_hamiltonian(spec: &HamiltonianSpec) -> Result<Conjugation> {
    let supported = spec.kind == HamiltonianKind::Dirac || spec.kind.color().is_some();
    if !supported {
        return Err(Error::Unsupported(format!(
            "charge conjugation of {:?} Hamiltonians",
            spec.kind
        )));
    }
    let h = build_hamiltonian(&spec.with_momenta_negated())?.entries;
    let h_prime = -h.map(|z| z.conj());
    let c = build_c(Pauli::S2);
    let entries = charge_conjugate(&c, &h_prime);
    let anti = spec.antiparticle_spec();
    let closed = build_hamiltonian(&anti)?.entries;
    Ok(Conjugation {
        closed_form_residual: max_abs(&(entries - closed)),
        matrix: OperatorMatrix::new(entries, OperatorLabel::Hamiltonian(format!("conj({:?})", spec.kind))),
        spec: anti,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistinctnessParams {
    pub color: Color,
    pub p: Vec3,
    pub x: Vec3,
    pub m: f64,
    pub samples: usize,
    pub seed: u64,
    pub margin: f64,
}

impl Default for DistinctnessParams {
    fn default() -> Self {
        Self {
            color: Color::R,
            p: [1.0, 0.0, 0.0],
            x: [0.0, 1.0, 1.0],
            m: 1.0,
            samples: 10_000,
            seed: 42,
            margin: 0.5,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DistinctnessReport {
    pub params: DistinctnessParams,
    /// Reflection alone, no rotation.
    pub reflection_distance: f64,
    /// Minimum over sampled proper rotations.
    pub rotation_min_distance: f64,
    /// Minimum over sampled rotations composed with the reflection.
    pub reflected_rotation_min_distance: f64,
    pub min_distance: f64,
    pub pass: bool,
}

/// Uniform random rotation from a unit quaternion (Shoemake).
fn random_rotation(rng: &mut impl Rng) -> Matrix3<f64> {
    let (u1, u2, u3): (f64, f64, f64) = (rng.random(), rng.random(), rng.random());
    let tau = std::f64::consts::TAU;
    let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
    let q = nalgebra::Quaternion::new(
        b * (tau * u3).cos(),
        a * (tau * u2).sin(),
        a * (tau * u2).cos(),
        b * (tau * u3).sin(),
    );
    *nalgebra::UnitQuaternion::from_quaternion(q).to_rotation_matrix().matrix()
}

/// Distance between the transformed antiparticle pattern and the particle form
/// evaluated at the transformed coordinates.
fn pattern_distance(params: &DistinctnessParams, rot: &Matrix3<f64>, reflect: bool) -> f64 {
    let eps = if reflect { -1.0 } else { 1.0 };
    let apply = |v: Vec3| {
        let w = rot * Vector3::from(v) * eps;
        [w[0], w[1], w[2]]
    };
    let anti = color_combination(params.color, true, params.p, params.x, params.m, None);
    let moved = CliffordCombination {
        identity: 0.0,
        a: apply(anti.a),
        b: apply(anti.b),
        beta: anti.beta,
    };
    let target = color_combination(params.color, false, apply(params.p), apply(params.x), params.m, None);
    moved
        .pattern()
        .iter()
        .zip(target.pattern())
        .map(|(u, v)| (u - v) * (u - v))
        .sum::<f64>()
        .sqrt()
}

/// Samples rotations (and rotations composed with the reflection) looking for
/// one that turns `H_c̄` into `H_c`.
pub fn antiparticle_distinctness_check(params: &DistinctnessParams) -> DistinctnessReport {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let identity = Matrix3::identity();
    let reflection_distance = pattern_distance(params, &identity, true);
    let mut rot_min = pattern_distance(params, &identity, false);
    let mut refl_min = reflection_distance;
    for _ in 0..params.samples {
        let rot = random_rotation(&mut rng);
        rot_min = rot_min.min(pattern_distance(params, &rot, false));
        refl_min = refl_min.min(pattern_distance(params, &rot, true));
    }
    let min_distance = rot_min.min(refl_min);
    DistinctnessReport {
        params: *params,
        reflection_distance,
        rotation_min_distance: rot_min,
        reflected_rotation_min_distance: refl_min,
        min_distance,
        pass: min_distance >= params.margin,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<f64>,
    pub degeneracies: Vec<usize>,
    pub scalar_square: Option<f64>,
}

/// Relative tolerance for grouping eigenvalues into degenerate levels.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// `H²` and the eigenvalues of a Hermitian `H`.
pub fn square_and_spectrum(h: &OperatorMatrix) -> Result<SpectrumReport> {
    let scale = max_abs(&h.entries).max(1.0);
    let herm = h.hermiticity_residual();
    if herm > 1e-12 * scale {
        return Err(Error::NotHermitian(herm));
    }
    let sq = h.entries * h.entries;
    let lambda = sq.trace().re / 8.0;
    let scalar_residual = max_abs(&(sq - Matrix8c::identity() * Complex64::new(lambda, 0.0)));
    let scalar_square = (scalar_residual <= 1e-11 * lambda.abs().max(1.0)).then_some(lambda);

    let mut eigenvalues: Vec<f64> = SymmetricEigen::new(h.entries).eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);
    let mut degeneracies: Vec<usize> = Vec::new();
    let mut anchor = f64::NAN;
    for &e in &eigenvalues {
        if !anchor.is_nan() && (e - anchor).abs() <= DEGENERACY_TOL * anchor.abs().max(1.0) {
            *degeneracies.last_mut().expect("non-empty") += 1;
        } else {
            anchor = e;
            degeneracies.push(1);
        }
    }
    Ok(SpectrumReport {
        eigenvalues,
        degeneracies,
        scalar_square,
    })
}

/// `‖P‖² + 4‖Δx‖² + (6m)²` for a quark–antiquark spec.
pub fn meson_mass_squared(spec: &HamiltonianSpec) -> f64 {
    let total_p: Vec3 = std::array::from_fn(|k| spec.p[k] + spec.p_bar[k]);
    let dx: Vec3 = std::array::from_fn(|k| spec.x[k] - spec.x_bar[k]);
    let sq = |v: Vec3| v.iter().map(|c| c * c).sum::<f64>();
    sq(total_p) + 4.0 * sq(dx) + 36.0 * spec.m * spec.m
}

/// Builds the spectrum of `spec`; for `QQbar` also checks `H² = λ·1` with the
/// mass-squared law and eigenvalues `±√λ`, four each.
pub fn spectrum_for_spec(spec: &HamiltonianSpec) -> Result<SpectrumReport> {
    let report = square_and_spectrum(&build_hamiltonian(spec)?)?;
    if spec.kind == HamiltonianKind::QQbar {
        let lambda = meson_mass_squared(spec);
        let tol = 1e-11 * lambda.max(1.0);
        let scalar_ok = report.scalar_square.is_some_and(|s| (s - lambda).abs() <= tol);
        let root = lambda.sqrt();
        let eig_tol = 1e-9 * root.max(1.0);
        let eig_ok = report.eigenvalues[..4].iter().all(|e| (e + root).abs() <= eig_tol)
            && report.eigenvalues[4..].iter().all(|e| (e - root).abs() <= eig_tol);
        if !(scalar_ok && eig_ok) {
            return Err(Error::IdentityViolated(format!(
                "quark-antiquark spectrum {:?} does not match E^2 = {lambda}",
                report.eigenvalues
            )));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{build_colored_gamma5, build_gamma5, kron3_matrices, spin_half_rotation};

    fn re(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    fn close(a: &Matrix8c, b: &Matrix8c, tol: f64) -> bool {
        max_abs(&(a - b)) <= tol
    }

    #[test]
    fn red_hamiltonian_example() {
        let h = build_hamiltonian(&HamiltonianSpec::new(HamiltonianKind::ColorR, [1.0, 0.0, 0.0], [0.0, 2.0, 3.0], 5.0)).unwrap();
        let expected = build_a(1).unwrap().entries
            + build_bk(2).unwrap().entries * re(2.0)
            + build_bk(3).unwrap().entries * re(3.0)
            + build_b().entries * re(5.0);
        assert_eq!(h.entries, expected);
        let zero = build_hamiltonian(&HamiltonianSpec::new(HamiltonianKind::ColorB, [0.0; 3], [0.0; 3], 0.0)).unwrap();
        assert_eq!(zero.entries, Matrix8c::zeros());
    }

    #[test]
    fn yellow_and_blue_forms() {
        let (p, x, m) = ([1.5, -2.0, 0.25], [3.0, 0.5, -1.0], 2.0);
        let b = |k| build_bk(k).unwrap().entries;
        let a = |k| build_a(k).unwrap().entries;
        let y = build_hamiltonian(&HamiltonianSpec::new(HamiltonianKind::ColorY, p, x, m)).unwrap();
        assert_eq!(y.entries, b(1) * re(x[0]) + a(2) * re(p[1]) + b(3) * re(x[2]) + build_b().entries * re(m));
        let bl = build_hamiltonian(&HamiltonianSpec::new(HamiltonianKind::ColorB, p, x, m)).unwrap();
        assert_eq!(bl.entries, b(1) * re(x[0]) + b(2) * re(x[1]) + a(3) * re(p[2]) + build_b().entries * re(m));
    }

    #[test]
    fn validation_errors() {
        let mut s = HamiltonianSpec::new(HamiltonianKind::QQbar, [0.0; 3], [0.0; 3], 1.0);
        s.em = Some(EmCoupling { e: 1.0, a0: 0.0, avec: [0.0; 3] });
        assert!(matches!(build_hamiltonian(&s), Err(Error::Unsupported(_))));
        let nan = HamiltonianSpec::new(HamiltonianKind::Dirac, [f64::NAN, 0.0, 0.0], [0.0; 3], 1.0);
        assert!(matches!(build_hamiltonian(&nan), Err(Error::NonFinite(_))));
        let neg = HamiltonianSpec::new(HamiltonianKind::Dirac, [0.0; 3], [0.0; 3], -1.0);
        assert!(build_hamiltonian(&neg).is_err());
        assert!(build_composite(&HamiltonianSpec::new(HamiltonianKind::Dirac, [0.0; 3], [0.0; 3], 1.0)).is_err());
        let mut custom = HamiltonianSpec::new(HamiltonianKind::Custom, [0.0; 3], [0.0; 3], 1.0);
        assert!(build_hamiltonian(&custom).is_err());
        custom.expr = Some("B*q".into());
        assert!(build_hamiltonian(&custom).is_err());
    }

    #[test]
    fn hermitian_for_real_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let kinds = [
            HamiltonianKind::Dirac,
            HamiltonianKind::ColorR,
            HamiltonianKind::ColorY,
            HamiltonianKind::ColorB,
            HamiltonianKind::AntiR,
            HamiltonianKind::QuarkSum,
            HamiltonianKind::QQbar,
        ];
        for _ in 0..20 {
            let mut v = || std::array::from_fn::<f64, 3, _>(|_| rng.random_range(-5.0..5.0));
            let (p, x, pb, xb) = (v(), v(), v(), v());
            for kind in kinds {
                let mut spec = HamiltonianSpec::qqbar(p, x, pb, xb, 1.3);
                spec.kind = kind;
                assert!(build_hamiltonian(&spec).unwrap().is_hermitian(1e-13));
            }
        }
    }

    #[test]
    fn composite_closed_forms() {
        let a = |k| build_a(k).unwrap().entries;
        let b = |k| build_bk(k).unwrap().entries;
        let beta = build_b().entries;
        let q = build_composite(&HamiltonianSpec::new(HamiltonianKind::QuarkSum, [1.0, 2.0, 3.0], [4.0, 5.0, 6.0], 7.0)).unwrap();
        let expected = a(1) + a(2) * re(2.0) + a(3) * re(3.0)
            + (b(1) * re(4.0) + b(2) * re(5.0) + b(3) * re(6.0)) * re(2.0)
            + beta * re(21.0);
        assert_eq!(q.entries, expected);

        let (p, x, pb, xb, m) = ([0.5, -1.0, 2.0], [1.0, 2.0, -3.0], [0.25, 1.0, 0.0], [-1.0, 0.5, 0.5], 0.75);
        let qq = build_composite(&HamiltonianSpec::qqbar(p, x, pb, xb, m)).unwrap();
        let mut closed = beta * re(6.0 * m);
        for k in 0..3 {
            closed += a(k + 1) * re(p[k] + pb[k]) + b(k + 1) * re(2.0 * (x[k] - xb[k]));
        }
        assert!(close(&qq.entries, &closed, 1e-14));

        let cancel = build_composite(&HamiltonianSpec::qqbar(p, x, p.map(|v| -v), x, 0.0)).unwrap();
        assert_eq!(cancel.entries, Matrix8c::zeros());
    }

    #[test]
    fn translations() {
        let base = HamiltonianSpec::qqbar([1.0, 2.0, 3.0], [0.5, -0.25, 1.0], [0.0, 1.0, -1.0], [2.0, 0.0, 0.125], 1.5);
        let shift = [0.75, -2.0, 4.5];
        let mut moved = base.clone();
        for k in 0..3 {
            moved.x[k] += shift[k];
            moved.x_bar[k] += shift[k];
        }
        assert_eq!(build_hamiltonian(&base).unwrap().entries, build_hamiltonian(&moved).unwrap().entries);

        let hq = HamiltonianSpec::new(HamiltonianKind::QuarkSum, base.p, base.x, base.m);
        let mut hq_moved = hq.clone();
        hq_moved.x[0] += 1.0;
        assert_ne!(build_hamiltonian(&hq).unwrap().entries, build_hamiltonian(&hq_moved).unwrap().entries);
    }

    #[test]
    fn blue_is_form_invariant_about_axis3() {
        let spec = HamiltonianSpec::new(HamiltonianKind::ColorB, [0.3, -1.2, 0.7], [1.1, 0.4, -0.6], 2.0);
        let h = build_hamiltonian(&spec).unwrap().entries;
        for k in 0..10 {
            let phi = 0.37 * k as f64 - 1.5;
            let rotated = rotate_hamiltonian(&spec, [0.0, 0.0, 1.0], phi).unwrap().entries;
            assert!(close(&h, &rotated, 1e-12));
        }
        // About axis 1 it is not.
        let other = rotate_hamiltonian(&spec, [1.0, 0.0, 0.0], 0.8).unwrap().entries;
        assert!(!close(&h, &other, 1e-3));
    }

    #[test]
    fn mixing_law_about_axis3() {
        let (p, x, m) = ([0.7, -1.3, 0.4], [0.2, 1.9, -0.8], 1.1);
        for k in 0..10 {
            let phi = 0.61 * k as f64 - 2.9;
            for color in [Color::R, Color::Y] {
                let (lhs, rhs) = axis3_mixing(p, x, m, phi, color).unwrap();
                assert!(close(&lhs, &rhs, 1e-12), "{color} {phi}");
            }
        }
        assert!(axis3_mixing(p, x, m, 0.3, Color::B).is_err());
    }

    #[test]
    fn total_is_rotation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let spec = HamiltonianSpec::new(HamiltonianKind::QuarkSum, [0.7, -1.3, 0.4], [0.2, 1.9, -0.8], 1.1);
        let qq = HamiltonianSpec::qqbar([0.7, -1.3, 0.4], [0.2, 1.9, -0.8], [1.0, 0.0, 2.0], [0.5, 0.5, 0.0], 0.9);
        let dirac = HamiltonianSpec::new(HamiltonianKind::Dirac, [0.7, -1.3, 0.4], [0.0; 3], 2.0)
            .with_em(EmCoupling { e: 0.3, a0: 1.2, avec: [0.1, -0.4, 0.9] });
        for _ in 0..20 {
            let n = Vector3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)).normalize();
            let phi = rng.random_range(-3.1..3.1);
            for s in [&spec, &qq, &dirac] {
                let h = build_hamiltonian(s).unwrap().entries;
                let r = rotate_hamiltonian(s, [n[0], n[1], n[2]], phi).unwrap().entries;
                assert!(close(&h, &r, 1e-12));
            }
        }
        assert!(rotate_hamiltonian(&spec, [1.0, 1.0, 0.0], 0.1).is_err());
    }

    #[test]
    fn primed_matrices_are_a_unitary_similarity() {
        let n = Vector3::new(0.3, -0.5, 0.8).normalize();
        let axis = [n[0], n[1], n[2]];
        let phi = 1.234;
        let rot = frame_rotation(axis, phi).unwrap();
        let primed = CliffordBasis::standard().rotated(&rot);
        let u2 = spin_half_rotation(axis, phi);
        let u = kron3_matrices(&u2, &Pauli::S0.entries(), &u2);
        let std = CliffordBasis::standard();
        for k in 0..3 {
            assert!(close(&(u * std.a[k] * u.adjoint()), &primed.a[k], 1e-14));
            assert!(close(&(u * std.b[k] * u.adjoint()), &primed.b[k], 1e-14));
        }
        assert!(close(&(u * std.beta * u.adjoint()), &std.beta, 1e-14));
    }

    #[test]
    fn conjugation_closed_forms() {
        let (p, x, m) = ([1.2, -0.4, 2.5], [0.3, -1.7, 0.9], 1.4);
        let a = |k| build_a(k).unwrap().entries;
        let b = |k| build_bk(k).unwrap().entries;
        let beta = build_b().entries;

        let r = conjugate_hamiltonian(&HamiltonianSpec::new(HamiltonianKind::ColorR, p, x, m)).unwrap();
        let expected = a(1) * re(p[0]) - b(2) * re(x[1]) - b(3) * re(x[2]) + beta * re(m);
        assert!(close(&r.matrix.entries, &expected, 1e-14));
        assert!(r.closed_form_residual <= 1e-14);
        let anti = build_hamiltonian(&HamiltonianSpec::new(HamiltonianKind::AntiR, p, x, m)).unwrap();
        assert!(close(&r.matrix.entries, &anti.entries, 1e-14));

        let y = conjugate_hamiltonian(&HamiltonianSpec::new(HamiltonianKind::ColorY, p, x, m)).unwrap();
        let expected = -b(1) * re(x[0]) + a(2) * re(p[1]) - b(3) * re(x[2]) + beta * re(m);
        assert!(close(&y.matrix.entries, &expected, 1e-14));

        let bl = conjugate_hamiltonian(&HamiltonianSpec::new(HamiltonianKind::ColorB, p, x, m)).unwrap();
        let expected = -b(1) * re(x[0]) - b(2) * re(x[1]) + a(3) * re(p[2]) + beta * re(m);
        assert!(close(&bl.matrix.entries, &expected, 1e-14));

        let d = HamiltonianSpec::new(HamiltonianKind::Dirac, p, [0.0; 3], m);
        let dc = conjugate_hamiltonian(&d).unwrap();
        assert!(close(&dc.matrix.entries, &build_hamiltonian(&d).unwrap().entries, 1e-14));

        assert!(conjugate_hamiltonian(&HamiltonianSpec::new(HamiltonianKind::QQbar, p, x, m)).is_err());
    }

    #[test]
    fn em_conjugation_flips_charge() {
        let em = EmCoupling { e: 0.7, a0: -1.3, avec: [0.4, 2.0, -0.6] };
        let spec = HamiltonianSpec::new(HamiltonianKind::Dirac, [1.0, -2.0, 0.5], [0.0; 3], 3.0).with_em(em);
        let out = conjugate_hamiltonian(&spec).unwrap();
        let flipped = spec.clone().with_em(EmCoupling { e: -0.7, ..em });
        assert!(close(&out.matrix.entries, &build_hamiltonian(&flipped).unwrap().entries, 1e-13));
        // A_k (p_k + e𝒜_k) + B m − e𝒜₀
        let mut expected = build_b().entries * re(3.0) - Matrix8c::identity() * re(0.7 * -1.3);
        for k in 0..3 {
            expected += build_a(k + 1).unwrap().entries * re(spec.p[k] + 0.7 * em.avec[k]);
        }
        assert!(close(&out.matrix.entries, &expected, 1e-13));
    }

    #[test]
    fn conjugation_is_an_involution() {
        let em = EmCoupling { e: 0.5, a0: 0.2, avec: [1.0, 0.0, -1.0] };
        let specs = [
            HamiltonianSpec::new(HamiltonianKind::ColorR, [1.0, 2.0, 3.0], [4.0, 5.0, 6.0], 1.0),
            HamiltonianSpec::new(HamiltonianKind::AntiY, [1.0, 2.0, 3.0], [4.0, 5.0, 6.0], 1.0),
            HamiltonianSpec::new(HamiltonianKind::ColorB, [1.0, 2.0, 3.0], [4.0, 5.0, 6.0], 1.0).with_em(em),
            HamiltonianSpec::new(HamiltonianKind::Dirac, [1.0, 2.0, 3.0], [0.0; 3], 1.0).with_em(em),
        ];
        for s in specs {
            let once = conjugate_hamiltonian(&s).unwrap();
            let twice = conjugate_hamiltonian(&once.spec).unwrap();
            assert_eq!(twice.spec, s);
            assert_eq!(twice.matrix.entries, build_hamiltonian(&s).unwrap().entries);
        }
    }

    #[test]
    fn distinctness() {
        let report = antiparticle_distinctness_check(&DistinctnessParams::default());
        // Analytic minimum over O(3) for p = (1,0,0), x = (0,1,1) is √3.
        let floor = 3f64.sqrt();
        assert!(report.min_distance >= floor - 1e-12);
        assert!(report.min_distance <= floor + 0.05, "{}", report.min_distance);
        assert!(report.pass);
        assert!((report.reflection_distance - 2.0 * 2f64.sqrt()).abs() <= 1e-12);

        let degenerate = antiparticle_distinctness_check(&DistinctnessParams {
            p: [0.0; 3],
            x: [0.0; 3],
            samples: 100,
            ..Default::default()
        });
        assert_eq!(degenerate.min_distance, 0.0);
        assert!(!degenerate.pass);

        let again = antiparticle_distinctness_check(&DistinctnessParams::default());
        assert_eq!(again.min_distance, report.min_distance);
    }

    #[test]
    fn reflection_alone_flips_b3() {
        let params = DistinctnessParams::default();
        let anti = color_combination(Color::R, true, params.p, params.x, params.m, None);
        let particle = color_combination(Color::R, false, params.p.map(|v| -v), params.x.map(|v| -v), params.m, None);
        // Reflected H_R̄ carries +x3 on B3, H_R at reflected coordinates carries −x3.
        assert_eq!(-anti.b[2], params.x[2]);
        assert_eq!(particle.b[2], -params.x[2]);
        assert_eq!(-anti.a[0], particle.a[0]);
    }

    #[test]
    fn spectra() {
        let s = spectrum_for_spec(&HamiltonianSpec::qqbar([0.0; 3], [0.0; 3], [0.0; 3], [0.0; 3], 1.0)).unwrap();
        assert_eq!(s.scalar_square, Some(36.0));
        assert_eq!(s.degeneracies, vec![4, 4]);
        for (i, e) in s.eigenvalues.iter().enumerate() {
            let target = if i < 4 { -6.0 } else { 6.0 };
            assert!((e - target).abs() <= 1e-12);
        }

        let s = spectrum_for_spec(&HamiltonianSpec::qqbar([3.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0; 3], [0.0; 3], 0.0)).unwrap();
        assert!((s.scalar_square.unwrap() - 25.0).abs() <= 1e-12);
        assert!(s.eigenvalues[..4].iter().all(|e| (e + 5.0).abs() <= 1e-12));
        assert!(s.eigenvalues[4..].iter().all(|e| (e - 5.0).abs() <= 1e-12));

        let d = square_and_spectrum(&build_hamiltonian(&HamiltonianSpec::new(HamiltonianKind::Dirac, [0.0; 3], [0.0; 3], 2.5)).unwrap()).unwrap();
        assert_eq!(d.degeneracies, vec![4, 4]);
        assert!((d.eigenvalues[0] + 2.5).abs() <= 1e-12 && (d.eigenvalues[7] - 2.5).abs() <= 1e-12);

        let not_herm = OperatorMatrix::custom(build_gamma5().entries * Complex64::new(0.0, 1.0), "i*gamma5");
        assert!(matches!(square_and_spectrum(&not_herm), Err(Error::NotHermitian(_))));

        // Not a scalar square: γ_R5 + B/2 has H² = 5/4 · 1 since they anticommute, but B + 1 does not.
        let mixed = OperatorMatrix::custom(build_colored_gamma5(Color::R).entries + build_b().entries * re(0.5), "mix");
        assert!((square_and_spectrum(&mixed).unwrap().scalar_square.unwrap() - 1.25).abs() <= 1e-14);
        let shifted = OperatorMatrix::custom(build_b().entries + Matrix8c::identity(), "B+1");
        let r = square_and_spectrum(&shifted).unwrap();
        assert_eq!(r.scalar_square, None);
        assert_eq!(r.degeneracies, vec![4, 4]);
    }

    #[test]
    fn em_free_spectra_are_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for kind in [HamiltonianKind::ColorR, HamiltonianKind::AntiB, HamiltonianKind::QuarkSum, HamiltonianKind::Dirac] {
            let mut v = || std::array::from_fn::<f64, 3, _>(|_| rng.random_range(-3.0..3.0));
            let spec = HamiltonianSpec::new(kind, v(), v(), 0.8);
            let s = square_and_spectrum(&build_hamiltonian(&spec).unwrap()).unwrap();
            for i in 0..8 {
                assert!((s.eigenvalues[i] + s.eigenvalues[7 - i]).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn spec_json_forms() {
        let s: HamiltonianSpec = serde_json::from_str(r#"{"kind":"QQbar","P":[0,0,0],"dx":[0,0,0],"m":1}"#).unwrap();
        assert_eq!(s.kind, HamiltonianKind::QQbar);
        assert_eq!(s.m, 1.0);
        let s: HamiltonianSpec = serde_json::from_str(
            r#"{"kind":"Dirac","p":[1,2,3],"m":0.5,"em":{"e":1,"A0":2,"Avec":[0,0,1]}}"#,
        )
        .unwrap();
        assert_eq!(s.em.unwrap().avec, [0.0, 0.0, 1.0]);
        assert!(serde_json::from_str::<HamiltonianSpec>(r#"{"kind":"Nope"}"#).is_err());
        assert!(serde_json::from_str::<HamiltonianSpec>(r#"{"kind":"Dirac","q":[1,2,3]}"#).is_err());
    }
}

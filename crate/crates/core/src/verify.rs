//! Seeded verification suites producing deterministic JSON reports.
//!
//! A check passes iff `max_residual ≤ tolerance`. Checks asserting that
//! something must *fail* report the amount by which it did not fail, so the same
//! rule applies to them.

use std::str::FromStr;

use nalgebra::Vector3;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clifford::{
    anticommutator, build_a, build_b, build_bk, build_c, build_colored_gamma5, build_gamma5, charge_conjugate,
    clifford_generators, kron3, max_abs, Matrix8c, Pauli,
};
use crate::error::{Error, Result};
use crate::hamiltonian::{
    antiparticle_distinctness_check, axis3_mixing, build_hamiltonian, conjugate_hamiltonian, meson_mass_squared,
    rotate_hamiltonian, square_and_spectrum, DistinctnessParams, EmCoupling, HamiltonianKind, HamiltonianSpec,
};
use crate::pauli_expr::sample::{random_bindings, random_expression, CORPUS};
use crate::pauli_expr::PauliExpr;
use crate::phase_space::{
    build_r, commutator6, derive_even_pairing, derive_pairing_from_rotation, exp_generator, is_symplectic,
    orthogonality_residual, pairing, su3_generators, symplectic_residual, verify_su3_table, Color, ColorTag,
    StructureConstants, Transformation6, DEFAULT_TOL,
};

pub const DEFAULT_SEED: u64 = 42;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Su3,
    Pairing,
    Clifford,
    Rotation,
    Conjugation,
    Composite,
    Symbolic,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Su3,
        Suite::Pairing,
        Suite::Clifford,
        Suite::Rotation,
        Suite::Conjugation,
        Suite::Composite,
        Suite::Symbolic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Su3 => "su3",
            Suite::Pairing => "pairing",
            Suite::Clifford => "clifford",
            Suite::Rotation => "rotation",
            Suite::Conjugation => "conjugation",
            Suite::Composite => "composite",
            Suite::Symbolic => "symbolic",
        }
    }
}

/// A suite name or `all`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteSelection {
    All,
    One(Suite),
}

impl FromStr for SuiteSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(SuiteSelection::All);
        }
        Suite::ALL
            .iter()
            .find(|suite| suite.name() == s)
            .map(|suite| SuiteSelection::One(*suite))
            .ok_or_else(|| Error::UnknownTag(format!("suite `{s}`")))
    }
}

impl SuiteSelection {
    pub fn name(self) -> &'static str {
        match self {
            SuiteSelection::All => "all",
            SuiteSelection::One(s) => s.name(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub max_residual: f64,
    pub tolerance: f64,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub tool_version: String,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

struct Collector {
    prefix: &'static str,
    checks: Vec<Check>,
}

impl Collector {
    fn new(suite: Suite) -> Self {
        Self {
            prefix: suite.name(),
            checks: Vec::new(),
        }
    }

    fn push(&mut self, name: impl AsRef<str>, residual: f64, tolerance: f64, details: impl Into<String>) {
        self.checks.push(Check {
            name: format!("{}.{}", self.prefix, name.as_ref()),
            status: Status::Fail,
            max_residual: residual,
            tolerance,
            details: details.into(),
        });
    }

    /// `must_fail` holds when `deviation` is at least `threshold`.
    fn push_negative(&mut self, name: impl AsRef<str>, deviation: f64, threshold: f64, details: impl Into<String>) {
        self.push(name, (threshold - deviation).max(0.0), 0.0, details);
    }
}

/// Runs the selected suites. `tol` overrides every check's own tolerance.
pub fn run(selection: SuiteSelection, tol: Option<f64>, seed: u64) -> VerificationReport {
    let suites: Vec<Suite> = match selection {
        SuiteSelection::All => Suite::ALL.to_vec(),
        SuiteSelection::One(s) => vec![s],
    };
    let mut checks = Vec::new();
    for suite in suites {
        checks.extend(run_suite(suite, seed));
    }
    for c in &mut checks {
        if let Some(t) = tol {
            c.tolerance = t;
        }
        c.status = if c.max_residual <= c.tolerance { Status::Pass } else { Status::Fail };
    }
    let status = if checks.iter().all(|c| c.status == Status::Pass) { Status::Pass } else { Status::Fail };
    VerificationReport {
        suite: selection.name().to_string(),
        status,
        checks,
        seed,
        tool_version: TOOL_VERSION.to_string(),
    }
}

fn run_suite(suite: Suite, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Collector::new(suite);
    match suite {
        Suite::Su3 => su3(&mut c, &mut rng),
        Suite::Pairing => pairings(&mut c),
        Suite::Clifford => clifford(&mut c, &mut rng),
        Suite::Rotation => rotation(&mut c, &mut rng),
        Suite::Conjugation => conjugation(&mut c, &mut rng, seed),
        Suite::Composite => composite(&mut c, &mut rng),
        Suite::Symbolic => symbolic(&mut c, &mut rng),
    }
    c.checks
}

fn vec3(rng: &mut ChaCha8Rng, scale: f64) -> [f64; 3] {
    std::array::from_fn(|_| rng.random_range(-scale..scale))
}

/// A value `k / 64` with `|k| ≤ 64·scale`: sums and differences stay exact.
fn dyadic3(rng: &mut ChaCha8Rng, scale: i64) -> [f64; 3] {
    std::array::from_fn(|_| rng.random_range(-64 * scale..=64 * scale) as f64 / 64.0)
}

fn su3(c: &mut Collector, rng: &mut ChaCha8Rng) {
    let report = verify_su3_table(DEFAULT_TOL);
    for p in &report.pairs {
        c.push(
            format!("commutator[F{},F{}]", p.i, p.k),
            p.residual,
            DEFAULT_TOL,
            "[F_i,F_k] = 2 f_ikj F_j",
        );
    }

    let gens = su3_generators();
    let mut jacobi: f64 = 0.0;
    for i in 0..8 {
        for j in (i + 1)..8 {
            for k in (j + 1)..8 {
                let (a, b, g) = (&gens[i], &gens[j], &gens[k]);
                let sum = commutator6(a, &commutator6(b, g)).entries
                    + commutator6(b, &commutator6(g, a)).entries
                    + commutator6(g, &commutator6(a, b)).entries;
                jacobi = jacobi.max(sum.amax());
            }
        }
    }
    c.push("jacobi", jacobi, DEFAULT_TOL, "56 triples of distinct F_i");

    let r = build_r();
    let central = gens.iter().map(|g| commutator6(&r, g).entries.amax()).fold(0.0, f64::max);
    c.push("r_central", central, DEFAULT_TOL, "[R, F_i] = 0 for all i");

    let derived = StructureConstants::from_commutators(&gens);
    c.push(
        "structure_constants_rederived",
        derived.max_difference(&StructureConstants::standard()),
        DEFAULT_TOL,
        "constants projected from commutators match the table",
    );

    let mut group: f64 = 0.0;
    let members = gens.iter().chain(std::iter::once(&r));
    for g in members {
        for _ in 0..10 {
            let theta = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
            let m = exp_generator(g, theta).expect("finite angle");
            group = group.max(orthogonality_residual(&m)).max(symplectic_residual(&m));
        }
    }
    c.push("group_membership", group, DEFAULT_TOL, "exp(θF_i), exp(θR) orthogonal and symplectic, 10 θ each");

    let quarter = exp_generator(&r, std::f64::consts::FRAC_PI_2).expect("finite");
    let reflection = quarter * quarter + Transformation6::identity();
    c.push("reciprocity_squared", reflection.amax(), DEFAULT_TOL, "exp(π/2 R)² = −I");
}

fn pairings(c: &mut Collector) {
    for color in Color::ALL {
        match derive_pairing_from_rotation(color) {
            Ok(d) => c.push(
                format!("derive_{color}"),
                d.residual,
                0.0,
                format!(
                    "exp(π/2 {}) with {} quarter turn(s) about axis {} ({:?})",
                    d.quarter_turn, d.quarter_turns, d.rotation_axis, d.order
                ),
            ),
            Err(e) => c.push(format!("derive_{color}"), f64::INFINITY, 0.0, e.to_string()),
        }
        let even = derive_even_pairing(color).expect("even pairing");
        let target = pairing(ColorTag::Even(color)).matrix();
        c.push(format!("even_{color}"), (even - target).amax(), DEFAULT_TOL, "exp(−π/2 R) applied to the colour pairing");
    }
    let tags = [
        ColorTag::Standard,
        ColorTag::Color(Color::R),
        ColorTag::Color(Color::Y),
        ColorTag::Color(Color::B),
        ColorTag::Even(Color::R),
    ];
    for tag in tags {
        let m = pairing(tag).matrix();
        c.push(
            format!("symplectic_{tag}"),
            symplectic_residual(&m),
            0.0,
            format!("{} preserves the symplectic form: {}", pairing(tag), is_symplectic(&m, 0.0)),
        );
    }
}

fn clifford(c: &mut Collector, rng: &mut ChaCha8Rng) {
    let gens = clifford_generators();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            let expected = if i == j { Matrix8c::identity() * Complex64::new(2.0, 0.0) } else { Matrix8c::zeros() };
            let residual = max_abs(&(anticommutator(&gens[i].entries, &gens[j].entries) - expected));
            c.push(format!("anticommutator[{},{}]", gens[i].label, gens[j].label), residual, 0.0, "{X, Y} = 2δ·1");
        }
    }
    let herm = gens.iter().map(|g| g.hermiticity_residual()).fold(0.0, f64::max);
    c.push("hermitian", herm, 0.0, "all seven generators Hermitian");

    let mut square: f64 = 0.0;
    for _ in 0..20 {
        let coeffs: [f64; 7] = std::array::from_fn(|_| rng.random_range(-3.0..3.0));
        let m = gens.iter().zip(coeffs).fold(Matrix8c::zeros(), |acc, (g, k)| acc + g.entries * Complex64::new(k, 0.0));
        let norm: f64 = coeffs.iter().map(|k| k * k).sum();
        let res = max_abs(&(m * m - Matrix8c::identity() * Complex64::new(norm, 0.0))) / norm;
        square = square.max(res);
    }
    c.push("linear_combination_square", square, 1e-13, "(Σ c_i Γ_i)² = |c|²·1, 20 random c, relative");

    let g5 = build_gamma5().entries;
    let mut chir: f64 = max_abs(&anticommutator(&g5, &build_b().entries));
    for k in 1..=3 {
        chir = chir.max(max_abs(&anticommutator(&g5, &build_bk(k).expect("B_k").entries)));
    }
    c.push("gamma5_anticommutes", chir, 0.0, "{γ5, B} = {γ5, B_k} = 0");

    let mut colored: f64 = 0.0;
    for color in Color::ALL {
        colored = colored.max(max_abs(&anticommutator(&build_colored_gamma5(color).entries, &build_b().entries)));
    }
    c.push("colored_gamma5_anticommute_b", colored, 0.0, "{γ_c5, B} = 0 for c = R, Y, B");
    let gr5 = build_colored_gamma5(Color::R).entries - kron3(Pauli::S1, Pauli::S1, Pauli::S1).entries;
    c.push("gammaR5_closed_form", max_abs(&gr5), 0.0, "γ_R5 = σ1⊗σ1⊗σ1");
}

fn rotation(c: &mut Collector, rng: &mut ChaCha8Rng) {
    let (p, x, m) = (vec3(rng, 2.0), vec3(rng, 2.0), rng.random_range(0.0..2.0));
    for color in [Color::R, Color::Y] {
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let phi = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
            let (lhs, rhs) = axis3_mixing(p, x, m, phi, color).expect("valid inputs");
            worst = worst.max(max_abs(&(lhs - rhs)));
        }
        c.push(format!("mixing_axis3_{color}"), worst, 1e-12, "H_c = c²H'_c + s²H'_c' ± sc(...), 10 φ");
    }

    let blue = HamiltonianSpec::new(HamiltonianKind::ColorB, p, x, m);
    let hb = build_hamiltonian(&blue).expect("valid");
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let phi = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let r = rotate_hamiltonian(&blue, [0.0, 0.0, 1.0], phi).expect("valid");
        worst = worst.max(hb.distance(&r.entries));
    }
    c.push("blue_axis3_invariant", worst, 1e-12, "H_B form-invariant about axis 3, 10 φ");

    for kind in [HamiltonianKind::QuarkSum, HamiltonianKind::Dirac] {
        let spec = HamiltonianSpec::new(kind, p, x, m);
        let h = build_hamiltonian(&spec).expect("valid");
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let n = Vector3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let n = n.normalize();
            let phi = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
            let r = rotate_hamiltonian(&spec, [n[0], n[1], n[2]], phi).expect("valid");
            worst = worst.max(h.distance(&r.entries));
        }
        c.push(format!("form_invariant_{kind:?}"), worst, 1e-12, "20 random axes and angles");
    }

    let red = HamiltonianSpec::new(HamiltonianKind::ColorR, [1.0, 0.5, -0.5], [0.25, 1.0, 2.0], 1.0);
    let moved = rotate_hamiltonian(&red, [0.0, 0.0, 1.0], 0.7).expect("valid");
    c.push_negative(
        "red_not_invariant_axis3",
        build_hamiltonian(&red).expect("valid").distance(&moved.entries),
        1e-3,
        "a single colour Hamiltonian changes form under rotation about axis 3",
    );
}

fn conjugation(c: &mut Collector, rng: &mut ChaCha8Rng, seed: u64) {
    let cm = build_c(Pauli::S2);
    let conj = |m: &Matrix8c| m.map(|z| z.conj());
    let b = build_b().entries;
    c.push("CBC^-1=-B", max_abs(&(charge_conjugate(&cm, &b) + b)), 0.0, "τ = σ2");
    let mut ak: f64 = 0.0;
    let mut bk: f64 = 0.0;
    for k in 1..=3 {
        let a = build_a(k).expect("A_k").entries;
        let bb = build_bk(k).expect("B_k").entries;
        ak = ak.max(max_abs(&(charge_conjugate(&cm, &conj(&a)) - a)));
        bk = bk.max(max_abs(&(charge_conjugate(&cm, &conj(&bb)) - bb)));
    }
    c.push("CA*C^-1=A", ak, 0.0, "k = 1, 2, 3");
    c.push("CB*C^-1=B_k", bk, 0.0, "k = 1, 2, 3");

    for tau in [Pauli::S0, Pauli::S1, Pauli::S3] {
        let ct = build_c(tau);
        let dev = (1..=3)
            .map(|k| {
                let bb = build_bk(k).expect("B_k").entries;
                max_abs(&(charge_conjugate(&ct, &conj(&bb)) - bb))
            })
            .fold(0.0, f64::max);
        c.push_negative(format!("tau={tau}_rejected"), dev, 1.0, "C B_k* C⁻¹ = B_k fails for some k");
    }

    let (p, x, m) = (vec3(rng, 2.0), vec3(rng, 2.0), rng.random_range(0.0..2.0));
    for color in Color::ALL {
        let out = conjugate_hamiltonian(&HamiltonianSpec::new(HamiltonianKind::particle(color), p, x, m)).expect("valid");
        let anti = build_hamiltonian(&HamiltonianSpec::new(HamiltonianKind::antiparticle(color), p, x, m)).expect("valid");
        c.push(
            format!("antiparticle_{color}"),
            out.matrix.distance(&anti.entries).max(out.closed_form_residual),
            1e-13,
            "C H'* C⁻¹ equals the antiparticle form",
        );
    }

    let em = EmCoupling {
        e: rng.random_range(-1.0..1.0),
        a0: rng.random_range(-2.0..2.0),
        avec: vec3(rng, 2.0),
    };
    let dirac = HamiltonianSpec::new(HamiltonianKind::Dirac, p, [0.0; 3], m).with_em(em);
    let out = conjugate_hamiltonian(&dirac).expect("valid");
    c.push("dirac_em_charge_flip", out.closed_form_residual, 1e-13, "result equals e → −e");
    let twice = conjugate_hamiltonian(&out.spec).expect("valid");
    let inv = build_hamiltonian(&dirac).expect("valid").distance(&twice.matrix.entries);
    c.push("involution", inv, 1e-13, "conjugating twice returns the original");

    let report = antiparticle_distinctness_check(&DistinctnessParams {
        seed,
        ..Default::default()
    });
    c.push_negative(
        "antiparticle_distinct",
        report.min_distance,
        report.params.margin,
        format!(
            "no sampled O(3) element maps H_R̄ onto H_R: min distance {:.6} (reflection alone {:.6}, margin {})",
            report.min_distance, report.reflection_distance, report.params.margin
        ),
    );
}

fn composite(c: &mut Collector, rng: &mut ChaCha8Rng) {
    let mut square: f64 = 0.0;
    let mut spectrum: f64 = 0.0;
    let mut degeneracy_ok = true;
    for _ in 0..200 {
        let spec = HamiltonianSpec::qqbar(vec3(rng, 3.0), vec3(rng, 3.0), vec3(rng, 3.0), vec3(rng, 3.0), rng.random_range(0.0..2.0));
        let h = build_hamiltonian(&spec).expect("valid").entries;
        let lambda = meson_mass_squared(&spec);
        let res = max_abs(&(h * h - Matrix8c::identity() * Complex64::new(lambda, 0.0))) / lambda.max(1.0);
        square = square.max(res);
        let report = square_and_spectrum(&crate::clifford::OperatorMatrix::custom(h, "QQbar")).expect("Hermitian");
        let root = lambda.sqrt();
        for (i, e) in report.eigenvalues.iter().enumerate() {
            let target = if i < 4 { -root } else { root };
            spectrum = spectrum.max((e - target).abs() / root.max(1.0));
        }
        degeneracy_ok &= report.degeneracies == [4, 4];
    }
    c.push("mass_squared_law", square, 1e-11, "H² = (|P|² + 4|Δx|² + 36m²)·1, 200 samples, relative");
    c.push("spectrum_pm_sqrt_lambda", spectrum, 1e-11, format!("eigenvalues ±√λ, 4 each: {degeneracy_ok}"));

    let mut shift: f64 = 0.0;
    for _ in 0..20 {
        let spec = HamiltonianSpec::qqbar(dyadic3(rng, 4), dyadic3(rng, 4), dyadic3(rng, 4), dyadic3(rng, 4), 1.0);
        let a = dyadic3(rng, 4);
        let mut moved = spec.clone();
        for k in 0..3 {
            moved.x[k] += a[k];
            moved.x_bar[k] += a[k];
        }
        let h = build_hamiltonian(&spec).expect("valid");
        shift = shift.max(h.distance(&build_hamiltonian(&moved).expect("valid").entries));
    }
    c.push("translation_invariant", shift, 0.0, "x, x̄ shifted together, 20 dyadic samples");

    let hq = HamiltonianSpec::new(HamiltonianKind::QuarkSum, [1.0, 0.0, 0.0], [0.0, 1.0, 1.0], 1.0);
    let mut hq_moved = hq.clone();
    hq_moved.x[0] += 1.0;
    let dev = build_hamiltonian(&hq).expect("valid").distance(&build_hamiltonian(&hq_moved).expect("valid").entries);
    c.push_negative("quark_sum_not_translation_invariant", dev, 1.0, "shifting x1 by 1 changes H_q");
}

fn symbolic(c: &mut Collector, rng: &mut ChaCha8Rng) {
    let mut worst: f64 = 0.0;
    let mut failures = 0usize;
    for _ in 0..100 {
        let ta = random_expression(rng, 2);
        let tb = random_expression(rng, 2);
        let bindings = random_bindings(rng);
        let (Ok(a), Ok(b)) = (PauliExpr::parse(&ta), PauliExpr::parse(&tb)) else {
            failures += 1;
            continue;
        };
        let ma = a.to_matrix(&bindings).expect("bound").entries;
        let mb = b.to_matrix(&bindings).expect("bound").entries;
        let mab = a.multiply(&b).to_matrix(&bindings).expect("bound").entries;
        let numeric = ma * mb;
        worst = worst.max(max_abs(&(mab - numeric)) / max_abs(&numeric).max(1.0));
    }
    if failures > 0 {
        worst = f64::INFINITY;
    }
    c.push("product_agreement", worst, 1e-12, format!("100 random pairs, relative; {failures} parse failures"));

    let mut unstable = Vec::new();
    for text in CORPUS {
        let ok = PauliExpr::parse(text)
            .ok()
            .and_then(|e| PauliExpr::parse(&e.to_string()).ok().map(|again| again == e))
            .unwrap_or(false);
        if !ok {
            unstable.push(text);
        }
    }
    c.push(
        "round_trip_corpus",
        unstable.len() as f64,
        0.0,
        format!("{} expressions; unstable: {:?}", CORPUS.len(), unstable),
    );

    let mut assoc = 0usize;
    for _ in 0..30 {
        let [a, b, d] = std::array::from_fn(|_| PauliExpr::parse(&random_expression(rng, 1)).expect("generated"));
        if a.multiply(&b).multiply(&d) != a.multiply(&b.multiply(&d)) {
            assoc += 1;
        }
    }
    c.push("associativity", assoc as f64, 0.0, "30 random triples, exact");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_by_default() {
        let report = run(SuiteSelection::All, None, DEFAULT_SEED);
        let failed: Vec<_> = report.failures().map(|c| (&c.name, c.max_residual, &c.details)).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert!(report.checks.iter().filter(|c| c.name.starts_with("su3.commutator")).count() == 28);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run(SuiteSelection::One(Suite::Composite), None, 7).to_json().unwrap();
        let b = run(SuiteSelection::One(Suite::Composite), None, 7).to_json().unwrap();
        assert_eq!(a, b);
        assert!(run(SuiteSelection::One(Suite::Composite), None, 7).all_pass());
    }

    #[test]
    fn unreachable_tolerance_fails() {
        let report = run(SuiteSelection::One(Suite::Clifford), Some(1e-30), DEFAULT_SEED);
        assert!(!report.all_pass());
        assert!(report.failures().any(|c| c.name == "clifford.linear_combination_square"));
    }

    #[test]
    fn suite_names() {
        assert_eq!("all".parse::<SuiteSelection>().unwrap(), SuiteSelection::All);
        assert_eq!("su3".parse::<SuiteSelection>().unwrap(), SuiteSelection::One(Suite::Su3));
        assert!("bogus".parse::<SuiteSelection>().is_err());
    }
}

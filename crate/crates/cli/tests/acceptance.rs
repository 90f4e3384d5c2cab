//! Acceptance criteria AC-1 … AC-11, one pass/fail line each.
//!
//! Run with `cargo test -p chromaphase-cli --test acceptance`.

#![allow(clippy::needless_range_loop)]

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use nalgebra::{Matrix6, Vector3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use chromaphase::clifford::{
    build_a, build_b, build_bk, build_c, build_colored_gamma5, build_gamma5, charge_conjugate, clifford_generators,
    kron3, max_abs, Matrix8c, Pauli,
};
use chromaphase::hamiltonian::{
    axis3_mixing, build_hamiltonian, conjugate_hamiltonian, rotate_hamiltonian, square_and_spectrum, EmCoupling,
    HamiltonianKind, HamiltonianSpec,
};
use chromaphase::pauli_expr::sample::{random_bindings, random_expression, CORPUS};
use chromaphase::pauli_expr::PauliExpr;
use chromaphase::phase_space::{
    build_r, derive_pairing_from_rotation, exp_generator, orthogonality_residual, pairing, su3_generators,
    symplectic_residual, Color, ColorTag,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

/// The structure-constant table written out independently, 1-based: (i, j, k, f_ijk).
fn printed_constants() -> [[[f64; 8]; 8]; 8] {
    let h = 0.5;
    let r = 3f64.sqrt() / 2.0;
    let triples = [
        (1, 2, 3, 1.0),
        (1, 4, 7, h),
        (1, 6, 5, h),
        (2, 4, 6, h),
        (2, 5, 7, h),
        (3, 4, 5, h),
        (3, 7, 6, h),
        (4, 5, 8, r),
        (6, 7, 8, r),
    ];
    let mut f = [[[0.0; 8]; 8]; 8];
    for (i, j, k, v) in triples {
        let (i, j, k) = (i - 1, j - 1, k - 1);
        for (a, b, c, s) in [(i, j, k, 1.0), (j, k, i, 1.0), (k, i, j, 1.0), (j, i, k, -1.0), (i, k, j, -1.0), (k, j, i, -1.0)] {
            f[a][b][c] = s * v;
        }
    }
    f
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let gens = su3_generators();
    let f = printed_constants();
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    for i in 0..8 {
        for k in (i + 1)..8 {
            let c = gens[i].entries * gens[k].entries - gens[k].entries * gens[i].entries;
            let expected = (0..8).fold(Matrix6::zeros(), |acc: Matrix6<f64>, j| acc + gens[j].entries * (2.0 * f[i][k][j]));
            worst = worst.max((c - expected).amax());
            pairs += 1;
        }
    }
    ensure(pairs == 28, "expected 28 pairs")?;
    ensure(worst <= 1e-12, format!("max residual {worst:e}"))?;
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("28 commutators, max residual {worst:.2e}, {t:.2?}"))
}

fn ac2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    let r = build_r();
    for g in su3_generators().iter().chain(std::iter::once(&r)) {
        for _ in 0..10 {
            let theta = rng.random_range(-6.3..6.3);
            let m = exp_generator(g, theta).map_err(|e| e.to_string())?;
            worst = worst.max(orthogonality_residual(&m)).max(symplectic_residual(&m));
        }
    }
    ensure(worst <= 1e-12, format!("orthogonality/symplecticity residual {worst:e}"))?;
    let q = exp_generator(&r, std::f64::consts::FRAC_PI_2).map_err(|e| e.to_string())?;
    let refl = (q * q + Matrix6::identity()).amax();
    ensure(refl <= 1e-12, format!("(reciprocity)² + I = {refl:e}"))?;
    Ok(format!("9 generators × 10 θ, residual {worst:.2e}; reciprocity² = −I within {refl:.2e}"))
}

fn ac3() -> Outcome {
    let printed = [
        (ColorTag::Standard, "{(p1,p2,p3),(x1,x2,x3)}"),
        (ColorTag::Color(Color::R), "{(p1,x2,-x3),(x1,-p2,p3)}"),
        (ColorTag::Color(Color::Y), "{(-x1,p2,x3),(p1,x2,-p3)}"),
        (ColorTag::Color(Color::B), "{(x1,-x2,p3),(-p1,p2,x3)}"),
        (ColorTag::Even(Color::R), "{(x1,-p2,p3),(-p1,-x2,x3)}"),
    ];
    for (tag, text) in printed {
        let scheme = pairing(tag);
        ensure(scheme.to_string() == text, format!("{tag}: {scheme} != {text}"))?;
        ensure(symplectic_residual(&scheme.matrix()) == 0.0, format!("{tag} not symplectic"))?;
    }
    let mut parts = Vec::new();
    for color in Color::ALL {
        let d = derive_pairing_from_rotation(color).map_err(|e| e.to_string())?;
        let target = pairing(ColorTag::Color(color)).matrix();
        ensure(d.composite == target, format!("{color}: composite is not the printed signed permutation"))?;
        parts.push(format!("{color}: exp(π/2 {}) + {}×90° about {}", d.quarter_turn, d.quarter_turns, d.rotation_axis));
    }
    Ok(format!("{}; five pairings symplectic", parts.join(", ")))
}

fn ac4() -> Outcome {
    let gens = clifford_generators();
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            let ac = a.entries * b.entries + b.entries * a.entries;
            let expected = if i == j { Matrix8c::identity() * re(2.0) } else { Matrix8c::zeros() };
            ensure(ac == expected, format!("{{{}, {}}} wrong", a.label, b.label))?;
        }
        let integral = a.entries.iter().all(|z| z.re.fract() == 0.0 && z.im.fract() == 0.0);
        ensure(integral, format!("{} has non-integer entries", a.label))?;
    }
    Ok("49 ordered pairs exact".into())
}

fn ac5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (p, x, m) = ([0.8, -1.4, 0.6], [1.2, 0.3, -0.9], 1.7);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let phi = rng.random_range(-PI..PI);
        let (lhs, rhs) = axis3_mixing(p, x, m, phi, Color::R).map_err(|e| e.to_string())?;
        worst = worst.max(max_abs(&(lhs - rhs)));
    }
    ensure(worst <= 1e-12, format!("mixing residual {worst:e}"))?;
    let spec = HamiltonianSpec::new(HamiltonianKind::QuarkSum, p, x, m);
    let h = build_hamiltonian(&spec).map_err(|e| e.to_string())?;
    let mut inv: f64 = 0.0;
    for _ in 0..20 {
        let n = Vector3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)).normalize();
        let phi = rng.random_range(-PI..PI);
        let r = rotate_hamiltonian(&spec, [n[0], n[1], n[2]], phi).map_err(|e| e.to_string())?;
        inv = inv.max(h.distance(&r.entries));
    }
    ensure(inv <= 1e-12, format!("form-invariance residual {inv:e}"))?;
    Ok(format!("mixing law {worst:.2e} over 10 φ; H_R+H_Y+H_B invariant {inv:.2e} over 20 rotations"))
}

fn ac6() -> Outcome {
    let c = build_c(Pauli::S2);
    let conj = |m: &Matrix8c| m.map(|z| z.conj());
    let b = build_b().entries;
    ensure(charge_conjugate(&c, &b) == -b, "C B C⁻¹ ≠ −B")?;
    for k in 1..=3 {
        let a = build_a(k).unwrap().entries;
        let bk = build_bk(k).unwrap().entries;
        ensure(charge_conjugate(&c, &conj(&a)) == a, format!("C A{k}* C⁻¹ ≠ A{k}"))?;
        ensure(charge_conjugate(&c, &conj(&bk)) == bk, format!("C B{k}* C⁻¹ ≠ B{k}"))?;
    }
    for tau in [Pauli::S0, Pauli::S1, Pauli::S3] {
        let ct = build_c(tau);
        let fails = (1..=3).any(|k| {
            let bk = build_bk(k).unwrap().entries;
            charge_conjugate(&ct, &conj(&bk)) != bk
        });
        ensure(fails, format!("τ = {tau} unexpectedly satisfies the B_k identity"))?;
    }

    let (p, x, m) = ([1.1, -0.7, 2.3], [0.4, 1.9, -1.2], 0.9);
    let a = |k| build_a(k).unwrap().entries;
    let bk = |k| build_bk(k).unwrap().entries;
    let printed = [
        (Color::R, a(1) * re(p[0]) - bk(2) * re(x[1]) - bk(3) * re(x[2]) + b * re(m)),
        (Color::Y, -bk(1) * re(x[0]) + a(2) * re(p[1]) - bk(3) * re(x[2]) + b * re(m)),
        (Color::B, -bk(1) * re(x[0]) - bk(2) * re(x[1]) + a(3) * re(p[2]) + b * re(m)),
    ];
    for (color, expected) in printed {
        let out = conjugate_hamiltonian(&HamiltonianSpec::new(HamiltonianKind::particle(color), p, x, m)).map_err(|e| e.to_string())?;
        let d = out.matrix.distance(&expected);
        ensure(d <= 1e-14, format!("H_{color}bar differs by {d:e}"))?;
    }

    let em = EmCoupling { e: 0.6, a0: -1.1, avec: [0.3, -0.8, 1.4] };
    let dirac = HamiltonianSpec::new(HamiltonianKind::Dirac, p, [0.0; 3], m).with_em(em);
    let out = conjugate_hamiltonian(&dirac).map_err(|e| e.to_string())?;
    let flipped = build_hamiltonian(&dirac.clone().with_em(EmCoupling { e: -0.6, ..em })).map_err(|e| e.to_string())?;
    let d = out.matrix.distance(&flipped.entries);
    ensure(d <= 1e-13, format!("EM conjugation differs from e → −e by {d:e}"))?;
    Ok(format!("τ = σ2 identities exact; σ0, σ1, σ3 rejected; three antiparticle forms; EM {d:.2e}"))
}

fn ac7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let v = |rng: &mut ChaCha8Rng| std::array::from_fn::<f64, 3, _>(|_| rng.random_range(-3.0..3.0));
    let (mut sq, mut eig): (f64, f64) = (0.0, 0.0);
    for _ in 0..200 {
        let (pt, dx, m) = (v(&mut rng), v(&mut rng), rng.random_range(0.0..2.0));
        // Total momentum P carried by the quark, separation Δx by its position.
        let spec = HamiltonianSpec::qqbar(pt, dx, [0.0; 3], [0.0; 3], m);
        let lambda: f64 = pt.iter().map(|c| c * c).sum::<f64>() + 4.0 * dx.iter().map(|c| c * c).sum::<f64>() + 36.0 * m * m;
        let h = build_hamiltonian(&spec).map_err(|e| e.to_string())?;
        sq = sq.max(max_abs(&(h.entries * h.entries - Matrix8c::identity() * re(lambda))) / lambda);
        let report = square_and_spectrum(&h).map_err(|e| e.to_string())?;
        ensure(report.degeneracies == [4, 4], format!("degeneracies {:?}", report.degeneracies))?;
        let root = lambda.sqrt();
        for (i, e) in report.eigenvalues.iter().enumerate() {
            let target = if i < 4 { -root } else { root };
            eig = eig.max((e - target).abs() / root);
        }
    }
    ensure(sq <= 1e-11, format!("relative H² residual {sq:e}"))?;
    ensure(eig <= 1e-11, format!("relative eigenvalue residual {eig:e}"))?;
    let t = within(start, Duration::from_secs(2))?;
    Ok(format!("200 samples, H² {sq:.2e}, eigenvalues {eig:.2e}, {t:.2?}"))
}

fn ac8() -> Outcome {
    let g5 = build_gamma5().entries;
    let b = build_b().entries;
    ensure(g5 * b + b * g5 == Matrix8c::zeros(), "{γ5, B} ≠ 0")?;
    for k in 1..=3 {
        let bk = build_bk(k).unwrap().entries;
        ensure(g5 * bk + bk * g5 == Matrix8c::zeros(), format!("{{γ5, B{k}}} ≠ 0"))?;
    }
    for color in Color::ALL {
        let g = build_colored_gamma5(color).entries;
        ensure(g * b + b * g == Matrix8c::zeros(), format!("{{γ_{color}5, B}} ≠ 0"))?;
    }
    let s1 = Pauli::S1.entries();
    let mut closed = Matrix8c::zeros();
    // σ1⊗σ1⊗σ1 has ones exactly where the row and column indices are bitwise complements.
    for r in 0..8 {
        closed[(r, 7 - r)] = s1[(0, 1)];
    }
    ensure(build_colored_gamma5(Color::R).entries == closed, "γ_R5 ≠ σ1⊗σ1⊗σ1")?;
    ensure(kron3(Pauli::S1, Pauli::S1, Pauli::S1).entries == closed, "tensor product layout")?;
    Ok("γ5 and γ_c5 anticommutation exact; γ_R5 = σ1⊗σ1⊗σ1".into())
}

fn ac9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let d = |rng: &mut ChaCha8Rng| std::array::from_fn::<f64, 3, _>(|_| rng.random_range(-256i32..=256) as f64 / 64.0);
    for _ in 0..50 {
        let spec = HamiltonianSpec::qqbar(d(&mut rng), d(&mut rng), d(&mut rng), d(&mut rng), 1.5);
        let shift = d(&mut rng);
        let mut moved = spec.clone();
        for k in 0..3 {
            moved.x[k] += shift[k];
            moved.x_bar[k] += shift[k];
        }
        let h0 = build_hamiltonian(&spec).map_err(|e| e.to_string())?;
        let h1 = build_hamiltonian(&moved).map_err(|e| e.to_string())?;
        ensure(h0.entries == h1.entries, "H_qq̄ changed under a common shift")?;
    }
    let hq = HamiltonianSpec::new(HamiltonianKind::QuarkSum, [1.0, 0.0, 0.0], [0.0, 1.0, 1.0], 1.0);
    let mut moved = hq.clone();
    moved.x = [1.0, 1.0, 1.0];
    let d = build_hamiltonian(&hq).unwrap().distance(&build_hamiltonian(&moved).unwrap().entries);
    ensure(d > 0.5, "H_q unchanged by the witness shift")?;
    Ok(format!("50 common shifts leave H_qq̄ bit-identical; witness x1 += 1 moves H_q by {d}"))
}

fn ac10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let a = PauliExpr::parse(&random_expression(&mut rng, 2)).map_err(|e| e.to_string())?;
        let b = PauliExpr::parse(&random_expression(&mut rng, 2)).map_err(|e| e.to_string())?;
        let bind = random_bindings(&mut rng);
        let numeric = a.to_matrix(&bind).unwrap().entries * b.to_matrix(&bind).unwrap().entries;
        let symbolic = a.multiply(&b).to_matrix(&bind).unwrap().entries;
        worst = worst.max(max_abs(&(symbolic - numeric)) / max_abs(&numeric).max(1.0));
    }
    ensure(worst <= 1e-12, format!("product residual {worst:e}"))?;
    ensure(CORPUS.len() >= 50, "corpus too small")?;
    for text in CORPUS {
        let e = PauliExpr::parse(text).map_err(|e| e.to_string())?;
        let printed = e.to_string();
        let again = PauliExpr::parse(&printed).map_err(|err| format!("{printed}: {err}"))?;
        ensure(again == e && again.to_string() == printed, format!("`{text}` unstable"))?;
    }
    Ok(format!("100 pairs, residual {worst:.2e}; {} expressions round-trip", CORPUS.len()))
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_chromaphase"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn ac11() -> Outcome {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: [(&[&str], i32, &str); 5] = [
        (&["verify", "--suite", "su3"], 0, "verify_su3.json"),
        (&["verify", "--suite", "composite", "--seed", "7"], 0, "verify_composite_seed7.json"),
        (&["spectrum", "tests/golden/qqbar_rest.spec.json"], 0, "spectrum_qqbar_rest.json"),
        (&["conjugate", "tests/golden/red.spec.json"], 0, "conjugate_red.json"),
        (&["spectrum", "tests/golden/malformed.spec.json"], 2, "spectrum_malformed.json"),
    ];
    for (args, code, file) in cases {
        let (c1, o1) = run_cli(args);
        let (c2, o2) = run_cli(args);
        ensure(c1 == code && c2 == code, format!("{args:?}: exit {c1}/{c2}, expected {code}"))?;
        ensure(o1 == o2, format!("{args:?}: output differs between runs"))?;
        let expected = std::fs::read_to_string(golden.join(file)).map_err(|e| format!("{file}: {e}"))?;
        ensure(o1 == expected, format!("{args:?}: output differs from {file}"))?;
    }
    let (c, _) = run_cli(&["verify", "--suite", "clifford", "--tol", "1e-30"]);
    ensure(c == 1, format!("unreachable tolerance exits {c}, expected 1"))?;
    let (c, _) = run_cli(&["verify", "--suite", "bogus"]);
    ensure(c == 2, format!("unknown suite exits {c}, expected 2"))?;
    Ok("5 golden files byte-identical across runs; exit codes 0/1/2".into())
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("AC-1", "SU(3) closure", ac1),
        ("AC-2", "group membership", ac2),
        ("AC-3", "pairing generation", ac3),
        ("AC-4", "Clifford table", ac4),
        ("AC-5", "rotation mixing", ac5),
        ("AC-6", "charge conjugation", ac6),
        ("AC-7", "mass-squared law", ac7),
        ("AC-8", "chirality", ac8),
        ("AC-9", "translational invariance", ac9),
        ("AC-10", "symbolic-numeric equivalence", ac10),
        ("AC-11", "CLI determinism and exit codes", ac11),
    ];
    let mut failed = 0;
    for (id, title, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[PASS] {id} {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {title}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

//! `chromaphase`: verification suites, phase-space transforms, spectra,
//! charge conjugation and matrix export.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use chromaphase::clifford::clifford_coefficients;
use chromaphase::export::{export_label, ExportFormat, MatrixExport};
use chromaphase::hamiltonian::{conjugate_hamiltonian, spectrum_for_spec, HamiltonianSpec};
use chromaphase::phase_space::{exp_generator, pairing, ColorTag, Generator6, GeneratorLabel, PhaseVector};
use chromaphase::verify::{self, SuiteSelection, DEFAULT_SEED, TOOL_VERSION};
use chromaphase::Error;

#[derive(Parser)]
#[command(name = "chromaphase", version, about = "Phase-space SU(3), coloured Dirac Hamiltonians and their checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and print a JSON report.
    Verify {
        /// all, su3, pairing, clifford, rotation, conjugation, composite or symbolic.
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: SuiteSelection,
        /// Tolerance applied to every check instead of its own.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a pairing or `exp(angle·generator)` to a phase-space vector.
    Transform {
        /// Standard, R, Y, B, EvenR, EvenY or EvenB.
        #[arg(long, required_unless_present = "generator", conflicts_with = "generator")]
        pairing: Option<String>,
        /// F1..F8, R, R1..R3, H1..H3, J1..J3 or G(m,n).
        #[arg(long)]
        generator: Option<String>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        angle: f64,
        /// Six comma-separated numbers `p1,p2,p3,x1,x2,x3`.
        #[arg(long, allow_hyphen_values = true)]
        input: String,
    },
    /// Eigenvalues, degeneracies and `H²` of the Hamiltonian in a JSON spec file.
    Spectrum {
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Charge-conjugate the Hamiltonian in a JSON spec file.
    Conjugate {
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a named generator or operator matrix.
    Export {
        label: String,
        #[arg(long, default_value = "json", value_parser = parse_format)]
        format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_suite(s: &str) -> Result<SuiteSelection, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<ExportFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// An input problem reported as a JSON error object with exit code 2.
struct InputError {
    kind: &'static str,
    message: String,
}

impl InputError {
    fn new(kind: &'static str, message: impl ToString) -> Self {
        Self {
            kind,
            message: message.to_string(),
        }
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::Parse(_) => "parse",
            Error::Serialization(_) => "serialization",
            Error::UnknownTag(_) => "unknown_label",
            _ => "invalid_input",
        };
        Self::new(kind, e)
    }
}

struct Output {
    text: String,
    success: bool,
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// `-0.0` printed as `0.0`.
fn clean(v: f64) -> f64 {
    v + 0.0
}

fn read_spec(path: &Path) -> Result<HamiltonianSpec, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError::new("io", format!("{}: {e}", path.display())))?;
    let spec: HamiltonianSpec =
        serde_json::from_str(&text).map_err(|e| InputError::new("invalid_spec", format!("{}: {e}", path.display())))?;
    spec.validate().map_err(|e| InputError::new("invalid_spec", e))?;
    Ok(spec)
}

fn parse_input(text: &str) -> Result<PhaseVector, InputError> {
    let values = text
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<Vec<f64>, _>>()
        .map_err(|e| InputError::new("invalid_input", format!("--input `{text}`: {e}")))?;
    Ok(PhaseVector::from_slice(&values)?)
}

fn cmd_verify(suite: SuiteSelection, tol: Option<f64>, seed: u64) -> Result<Output, InputError> {
    if tol.is_some_and(|t| t.is_nan() || t < 0.0) {
        return Err(InputError::new("invalid_input", "--tol must be a non-negative number"));
    }
    let report = verify::run(suite, tol, seed);
    Ok(Output {
        text: report.to_json()? + "\n",
        success: report.all_pass(),
    })
}

fn cmd_transform(pairing_tag: Option<String>, generator: Option<String>, angle: f64, input: &str) -> Result<Output, InputError> {
    let v = parse_input(input)?;
    let value = if let Some(tag) = pairing_tag {
        let tag: ColorTag = tag.parse()?;
        let scheme = pairing(tag);
        let out = v.transform(&scheme.matrix());
        let (gp, gx) = scheme.apply(&v);
        json!({
            "pairing": tag.to_string(),
            "scheme": scheme.to_string(),
            "input": v.0,
            "output": out.0.map(clean),
            "generalized_p": gp.map(clean),
            "generalized_x": gx.map(clean),
            "tool_version": TOOL_VERSION,
        })
    } else {
        let label: GeneratorLabel = generator.expect("clap requires one of the two").parse()?;
        let g = Generator6::from_label(&label)?;
        let m = exp_generator(&g, angle)?;
        json!({
            "generator": label.to_string(),
            "angle": angle,
            "input": v.0,
            "output": v.transform(&m).0.map(clean),
            "tool_version": TOOL_VERSION,
        })
    };
    Ok(Output {
        text: pretty(&value),
        success: true,
    })
}

fn cmd_spectrum(path: &Path) -> Result<Output, InputError> {
    let spec = read_spec(path)?;
    match spectrum_for_spec(&spec) {
        Ok(report) => Ok(Output {
            text: pretty(&json!({
                "spec": spec,
                "eigenvalues": report.eigenvalues.iter().map(|e| clean(*e)).collect::<Vec<_>>(),
                "degeneracies": report.degeneracies,
                "scalar_square": report.scalar_square,
                "tool_version": TOOL_VERSION,
            })),
            success: true,
        }),
        Err(e @ Error::IdentityViolated(_)) => Ok(Output {
            text: pretty(&json!({ "spec": spec, "error": { "kind": "check_failed", "message": e.to_string() } })),
            success: false,
        }),
        Err(e) => Err(e.into()),
    }
}

fn complex_pair(z: Complex64) -> [f64; 2] {
    [clean(z.re), clean(z.im)]
}

fn cmd_conjugate(path: &Path) -> Result<Output, InputError> {
    let spec = read_spec(path)?;
    let out = conjugate_hamiltonian(&spec)?;
    let coeffs = clifford_coefficients(&out.matrix.entries);
    let value = json!({
        "input": spec,
        "conjugated_spec": out.spec,
        "closed_form_residual": out.closed_form_residual,
        "coefficients": {
            "identity": complex_pair(coeffs.identity),
            "A": coeffs.a.map(complex_pair),
            "B_k": coeffs.b.map(complex_pair),
            "B": complex_pair(coeffs.beta),
        },
        "matrix": MatrixExport::from_operator(&out.matrix),
        "tool_version": TOOL_VERSION,
    });
    Ok(Output {
        text: pretty(&value),
        success: out.closed_form_residual <= 1e-12,
    })
}

fn cmd_export(label: &str, format: ExportFormat) -> Result<Output, InputError> {
    let mut text = export_label(label)?.render(format)?;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    Ok(Output { text, success: true })
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), InputError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| InputError::new("io", format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = match cli.command {
        Command::Verify { suite, tol, seed, out } => (cmd_verify(suite, tol, seed), out),
        Command::Transform {
            pairing,
            generator,
            angle,
            input,
        } => (cmd_transform(pairing, generator, angle, &input), None),
        Command::Spectrum { spec, out } => (cmd_spectrum(&spec), out),
        Command::Conjugate { spec, out } => (cmd_conjugate(&spec), out),
        Command::Export { label, format, out } => (cmd_export(&label, format), out),
    };
    let outcome = result.and_then(|o| emit(&o.text, out.as_deref()).map(|_| o.success));
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            print!("{}", pretty(&json!({ "error": { "kind": e.kind, "message": e.message } })));
            eprintln!("error: {}", e.message);
            ExitCode::from(2)
        }
    }
}

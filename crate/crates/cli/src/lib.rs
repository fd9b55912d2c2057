//! Command logic for the `qgeom` binary.
//!
//! Exit codes: 0 success, 1 input error, 2 semantic refusal, 3 invariance
//! violation.

mod state_file;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use qgeom::linalg::apply_local;
use qgeom::projective::fs_distance_spinors;
use qgeom::qubit1::{angles_from_spinor, bloch_from_spinor};
use qgeom::qubit2::{
    concurrence, quadric_value, segre_factor_with_tol, singlet, triplet, TripletProjection,
};
use qgeom::qubit3::{
    flattening_singular_values, ghz_state, hyperdeterminant, on_tangent_developable_sym,
    on_twisted_cubic, q_tensor, quartic_h_value, random_slocc, singlet_line_point,
    slocc_classify_with, sym_asym_split, three_tangle, veronese3, w_state, ClassifyTolerance,
    Party, SYM_TOL,
};
use qgeom::spinor::{random_state, seeded_rng};
use qgeom::{AnySpinor, Complex, GeometryError, Spinor, Spinor1, Spinor3};
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

pub use state_file::StateFile;

pub const SCHEMA_VERSION: u32 = 1;

const STATE_FILE_HELP: &str = "\
State files are JSON: {\"qubits\": n, \"amplitudes\": [[re, im], ...]} with 2^n \
amplitudes in big-endian basis order (index 4A + 2B + C for three qubits; \
qubit 1 is the leftmost slot, |0> is spin up).

Exit codes: 0 success, 1 input error, 2 semantic refusal, 3 invariance violation.";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Refusal(String),
}

impl CliError {
    pub(crate) fn input(e: GeometryError) -> CliError {
        CliError::Input(e.to_string())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Refusal(_) => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "qgeom", version, about = "Geometry and entanglement of 1-3 qubit pure states", after_help = STATE_FILE_HELP)]
pub struct Cli {
    /// Relative cut for numerical rank, tangle and factorization decisions.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Seed for commands that draw random numbers.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructName {
    Singlet,
    Triplet,
    Ghz,
    W,
    Veronese,
    AsymLine,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// SLOCC class, three-tangle, local ranks and variety memberships of a 3-qubit state.
    Classify { file: PathBuf },
    /// Entanglement invariants appropriate to the qubit count.
    Invariants { file: PathBuf },
    /// Writes a canonical state file.
    Construct {
        #[arg(value_enum)]
        name: ConstructName,
        /// Polar angle of the spin direction, in [0, pi].
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        /// Azimuth of the spin direction, in [0, 2 pi).
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        /// Particle (1-3) carrying the direction for asym-line.
        #[arg(long, default_value_t = 1)]
        party: usize,
        /// Spin projection (-1, 0, 1) for triplet.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        m: i32,
    },
    /// Fubini-Study distance between two states of equal qubit count.
    Distance { first: PathBuf, second: PathBuf },
    /// Bloch vector of a 1-qubit state.
    Bloch { file: PathBuf },
    /// Factors a 2-qubit product state; refuses entangled input.
    Factor { file: PathBuf },
    /// Checks that the SLOCC class survives random local operations.
    OrbitCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
    /// Writes a seeded random state file.
    Random {
        #[arg(long, default_value_t = 3)]
        qubits: usize,
    },
}

/// A finished command: the JSON document and the exit code to use.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub json: Value,
    pub code: u8,
}

impl Output {
    fn ok(json: Value) -> Output {
        Output { json, code: 0 }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    #[serde(flatten)]
    body: T,
}

fn report<T: Serialize>(command: &str, body: T) -> Result<Value, CliError> {
    let v = serde_json::to_value(Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        body,
    })
    .map_err(|e| CliError::Input(e.to_string()))?;
    check_finite(&v)?;
    Ok(v)
}

fn check_finite(v: &Value) -> Result<(), CliError> {
    match v {
        Value::Null => Err(CliError::Input("non-finite number in report".into())),
        Value::Array(items) => items.iter().try_for_each(check_finite),
        Value::Object(map) => map.values().try_for_each(check_finite),
        _ => Ok(()),
    }
}

fn pairs(c: &[Complex]) -> Vec<[f64; 2]> {
    c.iter().map(|z| [z.re, z.im]).collect()
}

fn load(path: &Path) -> Result<AnySpinor, CliError> {
    StateFile::read(path)?.to_state()
}

fn load_three(path: &Path) -> Result<Spinor3, CliError> {
    match load(path)? {
        AnySpinor::Three(s) => Ok(s.normalized().map_err(CliError::input)?),
        other => Err(CliError::Input(format!(
            "expected a 3-qubit state, got {} qubit(s)",
            other.qubits()
        ))),
    }
}

fn direction(theta: f64, phi: f64) -> Result<Spinor1, CliError> {
    let d = qgeom::qubit1::SphericalDirection::new(theta, phi).map_err(CliError::input)?;
    Ok(qgeom::qubit1::spinor_from_angles(&d))
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(CliError::Input(format!(
            "--tol must be positive, got {}",
            cli.tol
        )));
    }
    let tol = ClassifyTolerance {
        rank: cli.tol,
        tangle: cli.tol,
    };
    match &cli.command {
        Command::Classify { file } => classify(&load_three(file)?, tol).map(Output::ok),
        Command::Invariants { file } => invariants(&load(file)?, tol).map(Output::ok),
        Command::Construct {
            name,
            theta,
            phi,
            party,
            m,
        } => construct(*name, *theta, *phi, *party, *m).map(Output::ok),
        Command::Distance { first, second } => {
            distance(&load(first)?, &load(second)?).map(Output::ok)
        }
        Command::Bloch { file } => bloch(&load(file)?).map(Output::ok),
        Command::Factor { file } => factor(&load(file)?, cli.tol).map(Output::ok),
        Command::OrbitCheck { file, trials } => {
            orbit_check(&load_three(file)?, *trials, cli.seed, tol)
        }
        Command::Random { qubits } => {
            let s = random_state(*qubits, cli.seed).map_err(CliError::input)?;
            state_json(&s).map(Output::ok)
        }
    }
}

fn state_json(s: &AnySpinor) -> Result<Value, CliError> {
    serde_json::to_value(StateFile::from_state(s)?).map_err(|e| CliError::Input(e.to_string()))
}

#[allow(non_snake_case)]
#[derive(Serialize)]
struct ClassifyReport {
    class: String,
    tau: f64,
    ranks: [u8; 3],
    on_D: bool,
    on_Q1: bool,
    on_Q2: bool,
    on_Q3: bool,
    on_sym: bool,
    on_asym: bool,
    on_T: bool,
    on_H_sym: bool,
    on_H: bool,
}

fn classify(psi: &Spinor3, tol: ClassifyTolerance) -> Result<Value, CliError> {
    let class = slocc_classify_with(psi, tol).map_err(|e| match e {
        GeometryError::InconsistentRanks(_) => CliError::Refusal(e.to_string()),
        other => CliError::input(other),
    })?;
    let (sym, asym) = sym_asym_split(psi);
    let n = psi.norm();
    let r = class.ranks;
    let body = ClassifyReport {
        class: class.label.to_string(),
        tau: class.tau,
        ranks: r,
        on_D: r == [1, 1, 1],
        on_Q1: r[0] == 1,
        on_Q2: r[1] == 1,
        on_Q3: r[2] == 1,
        on_sym: asym.norm() < SYM_TOL * n,
        on_asym: sym.norm() < SYM_TOL * n,
        on_T: on_twisted_cubic(psi),
        on_H_sym: on_tangent_developable_sym(psi),
        on_H: class.tau <= tol.tangle,
    };
    report("classify", body)
}

#[derive(Serialize)]
struct OneQubitInvariants {
    qubits: usize,
    bloch: [f64; 3],
    radius: f64,
}

#[derive(Serialize)]
struct TwoQubitInvariants {
    qubits: usize,
    concurrence: f64,
    quadric_value: [f64; 2],
}

#[derive(Serialize)]
struct ThreeQubitInvariants {
    qubits: usize,
    tau: f64,
    hyperdeterminant: [f64; 2],
    quartic_h: [f64; 2],
    q_tensor: Vec<[f64; 2]>,
    q_self_contraction: [f64; 2],
    singular_values: [[f64; 2]; 3],
    ranks: [u8; 3],
}

fn c2(z: Complex) -> [f64; 2] {
    [z.re, z.im]
}

fn invariants(state: &AnySpinor, tol: ClassifyTolerance) -> Result<Value, CliError> {
    let unit = state.normalized().map_err(CliError::input)?;
    match unit {
        AnySpinor::One(s) => {
            let d = bloch_from_spinor(&s).map_err(CliError::input)?;
            report(
                "invariants",
                OneQubitInvariants {
                    qubits: 1,
                    bloch: d.bloch_vector(),
                    radius: d.radius(),
                },
            )
        }
        AnySpinor::Two(s) => report(
            "invariants",
            TwoQubitInvariants {
                qubits: 2,
                concurrence: concurrence(&s).map_err(CliError::input)?,
                quadric_value: c2(quadric_value(&s)),
            },
        ),
        AnySpinor::Three(s) => {
            let sv = Party::ALL.map(|p| flattening_singular_values(&s, p));
            let ranks = sv.map(|[a, b]| if b < tol.rank * a { 1 } else { 2 });
            let q = q_tensor(&s);
            report(
                "invariants",
                ThreeQubitInvariants {
                    qubits: 3,
                    tau: three_tangle(&s).map_err(CliError::input)?.value(),
                    hyperdeterminant: c2(hyperdeterminant(&s)),
                    quartic_h: c2(quartic_h_value(&s)),
                    q_tensor: pairs(&[q.0[0][0], q.0[0][1], q.0[1][0], q.0[1][1]]),
                    q_self_contraction: c2(q.self_contraction()),
                    singular_values: sv,
                    ranks,
                },
            )
        }
    }
}

fn construct(
    name: ConstructName,
    theta: f64,
    phi: f64,
    party: usize,
    m: i32,
) -> Result<Value, CliError> {
    let dir = direction(theta, phi)?;
    let state: AnySpinor = match name {
        ConstructName::Singlet => singlet().into(),
        ConstructName::Triplet => {
            let m = TripletProjection::try_from(m).map_err(CliError::input)?;
            triplet(&dir, m).map_err(CliError::input)?.into()
        }
        ConstructName::Ghz => ghz_state(&dir).map_err(CliError::input)?.into(),
        ConstructName::W => w_state(&dir).map_err(CliError::input)?.into(),
        ConstructName::Veronese => veronese3(&dir).map_err(CliError::input)?.into(),
        ConstructName::AsymLine => {
            let p = Party::from_number(party).map_err(CliError::input)?;
            singlet_line_point(p, &dir).map_err(CliError::input)?.into()
        }
    };
    state_json(&state)
}

fn transition_probability(a: &AnySpinor, b: &AnySpinor) -> Result<f64, CliError> {
    let (a, b) = (
        a.normalized().map_err(CliError::input)?,
        b.normalized().map_err(CliError::input)?,
    );
    Ok(a.inner_product(&b)
        .map_err(CliError::input)?
        .norm_sqr()
        .min(1.0))
}

#[derive(Serialize)]
struct DistanceReport {
    qubits: usize,
    distance: f64,
    transition_probability: f64,
}

fn distance(a: &AnySpinor, b: &AnySpinor) -> Result<Value, CliError> {
    let d = match (a, b) {
        (AnySpinor::One(p), AnySpinor::One(q)) => fs_distance_spinors(p, q),
        (AnySpinor::Two(p), AnySpinor::Two(q)) => fs_distance_spinors(p, q),
        (AnySpinor::Three(p), AnySpinor::Three(q)) => fs_distance_spinors(p, q),
        _ => {
            return Err(CliError::Input(format!(
                "qubit counts differ: {} vs {}",
                a.qubits(),
                b.qubits()
            )))
        }
    }
    .map_err(CliError::input)?;
    report(
        "distance",
        DistanceReport {
            qubits: a.qubits(),
            distance: d,
            transition_probability: transition_probability(a, b)?,
        },
    )
}

#[derive(Serialize)]
struct BlochReport {
    bloch: [f64; 3],
    radius: f64,
    theta: f64,
    phi: f64,
}

fn bloch(state: &AnySpinor) -> Result<Value, CliError> {
    let AnySpinor::One(s) = state else {
        return Err(CliError::Input(format!(
            "bloch needs a 1-qubit state, got {} qubits",
            state.qubits()
        )));
    };
    let d = bloch_from_spinor(s).map_err(CliError::input)?;
    let angles = angles_from_spinor(s).map_err(CliError::input)?;
    report(
        "bloch",
        BlochReport {
            bloch: d.bloch_vector(),
            radius: d.radius(),
            theta: angles.theta(),
            phi: angles.phi(),
        },
    )
}

#[derive(Serialize)]
struct FactorReport {
    concurrence: f64,
    first: Vec<[f64; 2]>,
    second: Vec<[f64; 2]>,
}

fn factor(state: &AnySpinor, tol: f64) -> Result<Value, CliError> {
    let AnySpinor::Two(s) = state else {
        return Err(CliError::Input(format!(
            "factor needs a 2-qubit state, got {} qubit(s)",
            state.qubits()
        )));
    };
    let unit = s.normalized().map_err(CliError::input)?;
    let pair = segre_factor_with_tol(&unit, tol).map_err(|e| match e {
        GeometryError::NotProductState { .. } => CliError::Refusal(e.to_string()),
        other => CliError::input(other),
    })?;
    // Both factors unit norm; the product phase goes to the first.
    let second = pair.second.normalized().map_err(CliError::input)?;
    let first = pair.first * Complex::from(pair.second.norm());
    report(
        "factor",
        FactorReport {
            concurrence: concurrence(&unit).map_err(CliError::input)?,
            first: pairs(first.components()),
            second: pairs(second.components()),
        },
    )
}

#[derive(Serialize)]
struct OrbitReport {
    class: String,
    tau: f64,
    trials: u64,
    seed: u64,
    preserved: u64,
    max_tau_drift: f64,
    max_tau: f64,
}

fn orbit_check(
    psi: &Spinor3,
    trials: u64,
    seed: u64,
    tol: ClassifyTolerance,
) -> Result<Output, CliError> {
    if trials == 0 {
        return Err(CliError::Input("--trials must be at least 1".into()));
    }
    let base = slocc_classify_with(psi, tol).map_err(|e| CliError::Refusal(e.to_string()))?;
    let mut rng = seeded_rng(seed);
    let mut preserved = 0;
    let mut max_drift: f64 = 0.0;
    let mut max_tau: f64 = 0.0;
    for _ in 0..trials {
        let ops = random_slocc(&mut rng, true);
        let moved = apply_local(&ops, psi).map_err(CliError::input)?;
        // unit psi and det-1 operators: 4|Det| of the image is tau itself
        max_drift = max_drift.max((4.0 * hyperdeterminant(&moved).norm() - base.tau).abs());
        let unit = moved.normalized().map_err(CliError::input)?;
        if let Ok(c) = slocc_classify_with(&unit, tol) {
            max_tau = max_tau.max(c.tau);
            if c.label == base.label {
                preserved += 1;
            }
        }
    }
    let json = report(
        "orbit-check",
        OrbitReport {
            class: base.label.to_string(),
            tau: base.tau,
            trials,
            seed,
            preserved,
            max_tau_drift: max_drift,
            max_tau,
        },
    )?;
    let code = if preserved == trials { 0 } else { 3 };
    Ok(Output { json, code })
}

/// Pretty JSON followed by a newline, to `path` or stdout.
pub fn emit(json: &Value, path: Option<&Path>) -> Result<(), CliError> {
    let mut text =
        serde_json::to_string_pretty(json).map_err(|e| CliError::Input(e.to_string()))?;
    text.push('\n');
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Input(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three(psi: Spinor3) -> Value {
        classify(&psi.normalized().unwrap(), ClassifyTolerance::default()).unwrap()
    }

    #[test]
    fn classify_examples() {
        let g = three(ghz_state(&Spinor1::UP).unwrap());
        assert_eq!(g["class"], "GHZ");
        assert_eq!(g["schema_version"], 1);
        assert!((g["tau"].as_f64().unwrap() - 1.0).abs() < 1e-12);
        let w = three(w_state(&Spinor1::UP).unwrap());
        assert_eq!(
            (w["class"].as_str(), w["on_H"].as_bool()),
            (Some("W"), Some(true))
        );
        assert_eq!(w["on_H_sym"], true);
        let up = three(Spinor3::basis(0, 0, 0));
        assert_eq!(up["class"], "Separable");
        assert_eq!(
            (up["on_D"].as_bool(), up["on_T"].as_bool()),
            (Some(true), Some(true))
        );
        let asym = three(singlet_line_point(Party::A, &Spinor1::UP).unwrap());
        assert_eq!(
            (asym["on_asym"].as_bool(), asym["on_Q1"].as_bool()),
            (Some(true), Some(true))
        );
    }

    #[test]
    fn construct_round_trips() {
        let v = construct(ConstructName::Ghz, 0.0, 0.0, 1, 0).unwrap();
        let f: StateFile = serde_json::from_value(v).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(f.amplitudes[0], [h, 0.0]);
        assert_eq!(f.amplitudes[7], [h, 0.0]);
        assert!(construct(ConstructName::Triplet, 0.0, 0.0, 1, 2).is_err());
        assert!(construct(ConstructName::AsymLine, 0.0, 0.0, 4, 0).is_err());
        assert!(construct(ConstructName::W, 4.0, 0.0, 1, 0).is_err());
    }

    #[test]
    fn factor_refuses_singlet() {
        let e = factor(&singlet().into(), 1e-8).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("not a product state"));
    }
}

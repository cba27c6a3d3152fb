//! `elliptic-canon`: classify, canonicalize and verify planar elliptic systems.
//!
//! Reports go to stdout as a single line of JSON; diagnostics go to stderr.
//! Exit codes: 0 success, 1 internal error or failed self-test, 2 invalid
//! input, 3 not elliptic, 4 solver failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use elliptic_canon::descriptor::parse_system;
use elliptic_canon::dirichlet::{verify, BoundaryData, Grid};
use elliptic_canon::expr::parse_boundary_expr;
use elliptic_canon::report::{to_json, Classification};
use elliptic_canon::selftest::run_selftest;
use elliptic_canon::{canonicalize, energy_decision, Error, SystemSpec, DEFAULT_TOL};

const SEED_VAR: &str = "ELLIPTIC_CANON_SEED";

#[derive(Parser)]
#[command(name = "elliptic-canon", version, about = "Canonical forms and energy functionals of planar elliptic systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ellipticity, strong ellipticity and reducibility of a system.
    Classify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Full reduction to canonical form with the transform trace.
    Canonicalize {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Decides whether a non-negative energy functional exists.
    Energy {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Solves the Dirichlet problem on the unit square and, when an energy
    /// exists, checks its minimizer against the direct solution.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        /// Boundary values of u, e.g. "x^2 - y^2" or "re_zn(3)".
        #[arg(long = "bc")]
        bc_u: String,
        /// Boundary values of v.
        #[arg(long = "bc-v")]
        bc_v: String,
        /// Interior points per side.
        #[arg(long)]
        n: usize,
        /// Writes the direct solution as `n h` followed by `i j u v` rows.
        #[arg(long)]
        dump: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Seeded invariant checks at reduced sizes (seed from ELLIPTIC_CANON_SEED).
    Selftest,
}

#[derive(Debug)]
enum Failure {
    Internal(String),
    Input(String),
    NotElliptic(String),
    Solver(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Internal(_) => 1,
            Failure::Input(_) => 2,
            Failure::NotElliptic(_) => 3,
            Failure::Solver(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Internal(m) | Failure::Input(m) | Failure::NotElliptic(m) | Failure::Solver(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::NotElliptic => Failure::NotElliptic(msg),
            Error::SolverDiverged { .. } | Error::MaxIterations { .. } | Error::IndefiniteEnergy => Failure::Solver(msg),
            Error::InternalInconsistency(_) | Error::PoleHit => Failure::Internal(msg),
            Error::DegenerateLeadingCoefficient { .. }
            | Error::SingularTransform { .. }
            | Error::InvalidParams(_)
            | Error::DegenerateMultiplier
            | Error::OutOfTheoremRange { .. }
            | Error::InvalidBoundary(_)
            | Error::GridTooSmall(_) => Failure::Input(msg),
        }
    }
}

/// A complete report and the exit code to return with it.
struct Output {
    json: String,
    code: u8,
}

impl Output {
    fn ok(json: String) -> Self {
        Self { json, code: 0 }
    }
}

fn read_system(path: &Path) -> Result<SystemSpec, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_system(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn check_tol(tol: f64) -> Result<f64, Failure> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(Failure::Input(format!("--tol must be positive and finite (got {tol})")))
    }
}

fn boundary_data(bc_u: &str, bc_v: &str) -> Result<BoundaryData<'static>, Failure> {
    let parse = |flag: &str, src: &str| parse_boundary_expr(src).map_err(|e| Failure::Input(format!("{flag} {src:?}: {e}")));
    let u = parse("--bc", bc_u)?;
    let v = parse("--bc-v", bc_v)?;
    // Evaluation errors become NaN, which the boundary check rejects.
    let bd = BoundaryData::new(move |x, y| [u.eval(x, y).unwrap_or(f64::NAN), v.eval(x, y).unwrap_or(f64::NAN)])?;
    Ok(bd)
}

fn seed_from_env() -> Result<u64, Failure> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| Failure::Input(format!("{SEED_VAR}={s:?} is not an unsigned integer"))),
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(e) => Err(Failure::Input(format!("{SEED_VAR}: {e}"))),
    }
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Classify { input, tol } => {
            let spec = read_system(&input)?;
            let report = canonicalize(&spec, check_tol(tol)?)?;
            let c = Classification::new(&spec, &report);
            Ok(Output { json: to_json(&c), code: if c.elliptic { 0 } else { 3 } })
        }
        Command::Canonicalize { input, tol } => {
            let spec = read_system(&input)?;
            let report = canonicalize(&spec, check_tol(tol)?)?;
            let code = if report.elliptic { 0 } else { 3 };
            Ok(Output { json: to_json(&report), code })
        }
        Command::Energy { input, tol } => {
            let spec = read_system(&input)?;
            Ok(Output::ok(to_json(&energy_decision(&spec, check_tol(tol)?)?)))
        }
        Command::Verify { input, bc_u, bc_v, n, dump, tol } => {
            let spec = read_system(&input)?;
            let tol = check_tol(tol)?;
            let bc = boundary_data(&bc_u, &bc_v)?;
            let (report, field) = verify(&spec, Grid::new(n)?, &bc, tol)?;
            if let Some(path) = dump {
                let mut text = Vec::new();
                field.dump(&mut text).map_err(|e| Failure::Internal(e.to_string()))?;
                fs::write(&path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            Ok(Output::ok(to_json(&report)))
        }
        Command::Selftest => {
            let report = run_selftest(seed_from_env()?);
            for s in report.suites.iter().filter(|s| !s.passed) {
                eprintln!("selftest: {} failed {} of {} cases (max error {:e})", s.name, s.failures, s.cases, s.max_error);
            }
            Ok(Output { json: to_json(&report), code: if report.passed { 0 } else { 1 } })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            println!("{}", out.json);
            if out.code == 3 {
                eprintln!("error: system is not elliptic");
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

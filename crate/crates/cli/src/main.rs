//! `steerq`: steering criteria for two-qubit Werner-like states and measured counts.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use steerq_core::criteria::{chi_threshold, Criterion};
use steerq_core::expio::{
    evaluate_record, evaluate_state, parse_counts_csv, reproduce_tables, simulate_record,
    sweep_curve, to_counts_csv, DEFAULT_BOOTSTRAP, DEFAULT_SHOTS,
};
use steerq_core::{ErrorKind, TsallisParam, WernerLikeParams};

const EXIT_VALIDATION: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "steerq",
    version,
    about = "Steering criteria from Tsallis entropic uncertainty relations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate Poisson coincidence counts for a Werner-like state and write a counts CSV.
    Simulate {
        #[command(flatten)]
        state: StateArgs,
        /// Mean number of coincidences per measurement setting.
        #[arg(long, default_value_t = DEFAULT_SHOTS)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate SCG and LSC from a counts CSV, with bootstrap error bars.
    Eval {
        #[arg(long)]
        counts: PathBuf,
        #[command(flatten)]
        qs: QArgs,
        #[arg(long, default_value_t = DEFAULT_BOOTSTRAP)]
        bootstrap: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate SCG and LSC analytically for a Werner-like state.
    EvalState {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        qs: QArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve for the mixing weight above which each criterion detects steering.
    Threshold {
        /// State angle in degrees.
        #[arg(long)]
        theta: f64,
        #[command(flatten)]
        qs: QArgs,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Tabulate criterion values over a uniform chi grid as CSV.
    Sweep {
        /// State angle in degrees.
        #[arg(long)]
        theta: f64,
        #[command(flatten)]
        qs: QArgs,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare analytic predictions against the published measured values.
    Tables {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct StateArgs {
    /// State angle in degrees, in [0, 45].
    #[arg(long)]
    theta: f64,
    /// Mixing weight of the entangled component, in [0, 1].
    #[arg(long)]
    chi: f64,
}

#[derive(Debug, Args)]
struct QArgs {
    /// Entropic indices for the SCG, comma separated; `1` selects the Shannon form.
    #[arg(long = "q", value_delimiter = ',', default_values_t = [2.0, 1.0])]
    q: Vec<f64>,
}

impl QArgs {
    fn params(&self) -> Result<Vec<TsallisParam>, Failure> {
        self.q
            .iter()
            .map(|&q| TsallisParam::new(q).map_err(Failure::from))
            .collect()
    }
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<steerq_core::Error> for Failure {
    fn from(e: steerq_core::Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Validation => EXIT_VALIDATION,
            ErrorKind::Domain => EXIT_DOMAIN,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn state(args: &StateArgs) -> Result<WernerLikeParams, Failure> {
    Ok(WernerLikeParams::from_degrees(args.theta, args.chi)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Simulate {
            state: s,
            shots,
            seed,
            out,
        } => {
            let rec = simulate_record(state(&s)?, shots, seed)?;
            emit(out.as_deref(), &to_counts_csv(&rec))
        }
        Command::Eval {
            counts,
            qs,
            bootstrap,
            seed,
            out,
        } => {
            let text = fs::read_to_string(&counts).map_err(|e| io_failure(&counts, e))?;
            let mut rec = parse_counts_csv(&text).map_err(|e| {
                let mut f = Failure::from(e);
                f.message = format!("{}: {}", counts.display(), f.message);
                f
            })?;
            if let Some(stem) = counts.file_stem() {
                rec.label = stem.to_string_lossy().into_owned();
            }
            let report = evaluate_record(&rec, &qs.params()?, bootstrap, seed)?;
            emit(out.as_deref(), &(report.to_json() + "\n"))
        }
        Command::EvalState { state: s, qs, out } => {
            let report = evaluate_state(state(&s)?, &qs.params()?)?;
            emit(out.as_deref(), &(report.to_json() + "\n"))
        }
        Command::Threshold { theta, qs, tol } => {
            let theta = theta.to_radians();
            let mut criteria = qs
                .params()?
                .iter()
                .map(|q| Criterion::scg(q.value()))
                .collect::<Result<Vec<_>, _>>()?;
            criteria.push(Criterion::Lsc);
            let mut text = String::new();
            for c in criteria {
                let t = chi_threshold(theta, c, tol)?;
                if t.crossed {
                    text.push_str(&format!("{c}\t{:.9}\n", t.chi));
                } else {
                    text.push_str(&format!("{c}\t{:.9}\tno violation on [0, 1]\n", t.chi));
                }
            }
            emit(None, &text)
        }
        Command::Sweep {
            theta,
            qs,
            steps,
            out,
        } => {
            let curve = sweep_curve(theta.to_radians(), &qs.params()?, steps)?;
            emit(out.as_deref(), &curve.to_csv())
        }
        Command::Tables { out } => emit(out.as_deref(), &reproduce_tables()?.render()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

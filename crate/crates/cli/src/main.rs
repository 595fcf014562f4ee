use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rank2sep_cli::commands::{self, GenerateKind, GenerateRequest, Outcome};
use rank2sep_cli::CliError;
use rank2sep_core::tolerance::DEFAULT_BASE;

/// Separability of rank-two states on M parties of local dimension N.
#[derive(Parser)]
#[command(name = "rank2sep", version)]
struct Cli {
    /// Base tolerance; structural checks use a tenth of it.
    #[arg(long, global = true, default_value_t = DEFAULT_BASE)]
    tol: f64,
    /// Per-check overrides, e.g. `criterion=1e-7,psd=1e-10`.
    #[arg(long, global = true)]
    tol_profile: Option<String>,
    /// Write the machine-readable report here.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generalized concurrence and invariants of a pure state.
    Concurrence { path: PathBuf },
    /// Decide separability of a rank-two state or density matrix.
    Decide {
        path: PathBuf,
        /// Use the real-amplitude test (input must be real).
        #[arg(long)]
        real_branch: bool,
        /// Cross-check the verdict by reconstruction and partial transposes.
        #[arg(long)]
        verify: bool,
    },
    /// Criterion-free oracle battery.
    Verify { path: PathBuf },
    /// Write a seeded test input.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        parties: usize,
        #[arg(long)]
        local_dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Weight of E1 for `ghz-orthogonal`.
        #[arg(long, default_value_t = 0.4)]
        p: f64,
        /// Real amplitudes only.
        #[arg(long)]
        real: bool,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    ProductMixture,
    GhzOrthogonal,
    RandomPure,
}

fn write(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.display().to_string(),
        source,
    })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let tol = commands::tolerances(cli.tol, cli.tol_profile.as_deref())?;
    let outcome: Outcome = match cli.command {
        Command::Concurrence { path } => commands::concurrence_cmd(&path, &tol)?,
        Command::Decide {
            path,
            real_branch,
            verify,
        } => commands::decide_cmd(&path, &tol, real_branch, verify)?,
        Command::Verify { path } => commands::verify_cmd(&path, &tol)?,
        Command::Generate {
            kind,
            parties,
            local_dim,
            seed,
            p,
            real,
            out,
        } => {
            let kind = match kind {
                Kind::ProductMixture => GenerateKind::ProductMixture,
                Kind::GhzOrthogonal => GenerateKind::GhzOrthogonal,
                Kind::RandomPure => GenerateKind::RandomPure,
            };
            let text = commands::generate(&GenerateRequest {
                kind,
                parties,
                local_dim,
                seed,
                p,
                real,
            })?;
            match out {
                Some(path) => {
                    write(&path, &text)?;
                    Outcome {
                        code: 0,
                        human: format!("wrote {}\n", path.display()),
                        report: None,
                    }
                }
                None => Outcome {
                    code: 0,
                    human: text,
                    report: None,
                },
            }
        }
    };
    print!("{}", outcome.human);
    if let (Some(path), Some(report)) = (&cli.json_out, &outcome.report) {
        write(path, report)?;
    }
    Ok(outcome.code)
}

fn main() -> ExitCode {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}

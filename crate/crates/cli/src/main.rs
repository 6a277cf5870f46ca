//! `usub`: seeded, reproducible case studies in orbit universality.
//!
//! Every subcommand writes one JSON report (plus a CSV sidecar for its
//! table) and exits 0 on success, 1 on configuration errors, 2 when any
//! consistency flag is false, and 3 when a search exhausted its budget
//! without reaching a decision.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use universal_subspaces::lie::GroupSpec;

use commands::SearchOverrides;
use report::{OutputFormat, OutputOptions, TableRow};

#[derive(Parser)]
#[command(
    name = "usub",
    version,
    about = "Universality of linear subspaces under group orbits: obstruction classes, orbit searches, and constructive witnesses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for every randomized search.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Restarts per orbit search.
    #[arg(long, global = true)]
    restarts: Option<usize>,

    /// Distance below which an orbit counts as meeting the subspace.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Random probe vectors per universality verdict.
    #[arg(long, global = true)]
    samples: Option<usize>,

    /// Report file path (the CSV sidecar lands next to it). Defaults to
    /// $USUB_OUT_DIR/<command>.json when that variable is set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// What to print on stdout.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Obstruction class and verdict for every weight-line complement of
    /// the degree-n SU(2) module.
    Su2Classify {
        /// Degree of the module (dimension n+1), between 1 and 20.
        #[arg(long)]
        n: usize,
    },
    /// The product case whose top obstruction class vanishes although
    /// the subspace is universal.
    Counterexample,
    /// The block group whose subspace is universal while its semisimple
    /// factor leaves a witness at constant distance.
    LeviDemo,
    /// Borel subalgebra universality under the compact group.
    Schur {
        /// Which algebra to triangularize into.
        #[arg(long, value_parser = ["su2", "su3"])]
        group: String,
    },
    /// Constructive witnesses for random hyperplanes under the
    /// upper-triangular group.
    Solvable {
        /// Matrix size, between 2 and 6.
        #[arg(long, default_value_t = 3)]
        size: usize,
        /// Number of random hyperplanes.
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Euler characteristic and fixed-point count of a quotient.
    Euler {
        /// One of su2, su3, su2xsu2.
        #[arg(long)]
        group: String,
        /// One of t, nt, u2, diagonal-su2, factor1, factor2, full.
        #[arg(long)]
        subgroup: String,
    },
    /// General pipeline driven by a TOML configuration file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let overrides = SearchOverrides {
        seed: cli.seed,
        restarts: cli.restarts,
        tol: cli.tol,
        samples: cli.samples,
    };
    let output = OutputOptions {
        out: cli.out.clone(),
        format: cli.format,
        out_dir_env: std::env::var_os(report::OUT_DIR_ENV).map(PathBuf::from),
    };

    let outcome = match &cli.command {
        Command::Su2Classify { n } => {
            emit(commands::su2_classify::cmd_su2_classify(*n, &overrides), &output)
        }
        Command::Counterexample => {
            emit(commands::counterexample::cmd_counterexample(&overrides), &output)
        }
        Command::LeviDemo => emit(commands::levi_demo::cmd_levi_demo(&overrides), &output),
        Command::Schur { group } => {
            let g = if group == "su3" {
                GroupSpec::Su3
            } else {
                GroupSpec::Su2
            };
            emit(commands::schur::cmd_schur(g, &overrides), &output)
        }
        Command::Solvable { size, trials } => emit(
            commands::solvable::cmd_solvable(*size, *trials, &overrides),
            &output,
        ),
        Command::Euler { group, subgroup } => {
            emit(commands::euler::cmd_euler(group, subgroup), &output)
        }
        Command::Run { config } => {
            let parsed = std::fs::read_to_string(config)
                .map_err(|e| {
                    universal_subspaces::Error::Config(format!(
                        "cannot read {}: {e}",
                        config.display()
                    ))
                })
                .and_then(|text| config::RunConfig::parse(&text));
            match parsed {
                Ok(cfg) => emit(commands::run::cmd_run(&cfg, &overrides), &output),
                Err(e) => Err(e),
            }
        }
    };

    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn emit<R: TableRow>(
    result: universal_subspaces::Result<report::Report<R>>,
    output: &OutputOptions,
) -> universal_subspaces::Result<u8> {
    let report = result?;
    report
        .emit(output)
        .map_err(|e| universal_subspaces::Error::Config(format!("cannot write report: {e}")))?;
    Ok(report.exit_code())
}

//! `hypercover`: covering numbers, sensing matrices and plank witnesses from
//! the command line. Every subcommand prints a JSON report on stdout.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on usage,
//! I/O or capacity errors.

mod commands;
mod io;
mod report;
mod repro;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hypercover_core::{Budget, DEFAULT_SUBSET_BUDGET};
use num_bigint::BigInt;

use commands::{Ctx, Output};

#[derive(Parser, Debug)]
#[command(name = "hypercover", version, about, propagate_version = true)]
struct Cli {
    /// Maximum number of subsets (column sets, edge sets, supports,
    /// bipartitions) any one enumeration may visit.
    #[arg(long, global = true, env = "HYPERCOVER_BUDGET", default_value_t = DEFAULT_SUBSET_BUDGET)]
    budget: u128,

    /// Largest point set searched for a covering by two hyperplanes.
    #[arg(long, global = true, default_value_t = Budget::default().cover_points_two)]
    cover_points_two: usize,

    /// Largest point set searched for a covering by three or more hyperplanes.
    #[arg(long, global = true, default_value_t = Budget::default().cover_points_many)]
    cover_points_many: usize,

    /// Worker threads for parallel searches (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output format. `csv` is only available for matrix exports (`build`).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the point set S_n.
    Sn {
        #[arg(long)]
        n: usize,
    },
    /// Covering number of a point set, with a certificate.
    Cover {
        #[arg(long)]
        input: PathBuf,
        /// Only decide whether at most this many hyperplanes suffice.
        #[arg(long)]
        max_t: Option<usize>,
    },
    /// Bipartite graph with girth above `ell` (greedy) or complete.
    Graph {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        complete: bool,
    },
    /// Sensing matrix from S_n and a high-girth bipartite graph.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        /// Also write the matrix here (JSON, or CSV with `--format csv`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that every `ell` columns of a matrix are independent.
    Verify {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        ell: usize,
    },
    /// Recover a sparse bounded integer signal from its measurements.
    Recover {
        #[arg(long)]
        matrix: PathBuf,
        /// Measurements, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Maximum number of nonzero entries.
        #[arg(long)]
        s: usize,
        /// Maximum absolute value of an entry.
        #[arg(long, allow_hyphen_values = true)]
        bound: BigInt,
    },
    /// Distinct projections of a point set onto a direction.
    Project {
        #[arg(long)]
        input: PathBuf,
        /// Direction, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
    },
    /// Exact squared width of the convex hull (dimension at most 3).
    Width {
        #[arg(long)]
        input: PathBuf,
        /// Uncertified upper bound from this many candidate directions,
        /// for dimension 4 and above.
        #[arg(long)]
        sampled: Option<usize>,
    },
    /// Wide empty plank in a body avoiding a point set.
    Plank {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        points: PathBuf,
    },
    /// Rerun a named example end to end.
    Repro {
        #[arg(value_enum)]
        name: repro::Name,
    },
}

fn run(cli: Cli) -> Result<Output> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            bail!("--threads must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()?;
    }
    let csv = cli.format == Format::Csv;
    if csv && !matches!(cli.command, Command::Build { .. }) {
        bail!("--format csv is only available for matrix exports (build)");
    }
    let ctx = Ctx {
        budget: Budget {
            subsets: cli.budget,
            cover_points_two: cli.cover_points_two,
            cover_points_many: cli.cover_points_many,
        },
        csv,
    };
    let report = match &cli.command {
        Command::Sn { n } => commands::sn(*n)?,
        Command::Cover { input, max_t } => commands::cover(&ctx, input, *max_t)?,
        Command::Graph {
            m,
            l,
            ell,
            complete,
        } => commands::graph(*m, *l, *ell, *complete)?,
        Command::Build { n, ell, out } => return commands::build(&ctx, *n, *ell, out.as_ref()),
        Command::Verify { matrix, ell } => commands::verify(&ctx, matrix, *ell)?,
        Command::Recover {
            matrix,
            y,
            s,
            bound,
        } => commands::recover_cmd(&ctx, matrix, y, *s, bound)?,
        Command::Project { input, dir } => commands::project_cmd(&ctx, input, dir)?,
        Command::Width { input, sampled } => commands::width(&ctx, input, *sampled)?,
        Command::Plank { body, points } => commands::plank(&ctx, body, points)?,
        Command::Repro { name } => repro::run(*name, &ctx.budget)?,
    };
    Ok(Output::Report(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            let (text, pass) = match output {
                Output::Report(r) => (
                    serde_json::to_string_pretty(&r).expect("reports serialize") + "\n",
                    r.passed(),
                ),
                Output::Text(t, pass) => (t, pass),
            };
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

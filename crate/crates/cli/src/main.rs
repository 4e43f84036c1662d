use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use quadric_cli::atlas::{self, Grid};
use quadric_cli::commands::{self, Check};
use quadric_cli::report::ReportDocument;
use quadric_core::config::Config;

#[derive(Parser)]
#[command(name = "quadric", version, about = "Clifford deformations of noncommutative quadric hypersurfaces")]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Rewriting truncation degree [default: 2·generators + 2]
    #[arg(long, global = true, env = "QUADRIC_TRUNCATION")]
    truncation: Option<usize>,
    /// Degree up to which regularity of f is certified
    #[arg(long, global = true, env = "QUADRIC_REGULARITY_DEGREE")]
    regularity_degree: Option<usize>,
    /// Height bound for Gaussian-integer searches
    #[arg(long, global = true, env = "QUADRIC_SEARCH_HEIGHT")]
    search_height: Option<i64>,
    /// Random draws in the Frobenius-form search
    #[arg(long, global = true, env = "QUADRIC_FROBENIUS_ATTEMPTS")]
    frobenius_attempts: Option<usize>,
    #[arg(long, global = true, env = "QUADRIC_SEED")]
    seed: Option<u64>,
}

impl ConfigArgs {
    fn config(&self) -> Config {
        let d = Config::default();
        Config {
            truncation: self.truncation,
            regularity_degree: self.regularity_degree.unwrap_or(d.regularity_degree),
            search_height: self.search_height.unwrap_or(d.search_height),
            frobenius_attempts: self.frobenius_attempts.unwrap_or(d.frobenius_attempts),
            seed: self.seed.unwrap_or(d.seed),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Tensor,
    Knorrer,
    Rank,
    Copy,
}

#[derive(Subcommand)]
enum Command {
    /// Build C_{A!}(θ_f) for a quadric and classify it
    Analyze {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyze A[x]/(f + x²) (or the double cover twice) next to the original
    Cover {
        file: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        times: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the conic family over a parameter grid into an NDJSON dataset
    Atlas {
        /// Grid spec, inline or a path to a file holding one
        #[arg(long)]
        grid: String,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (0: one per core)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Run one structural check; exits 0 iff it passes
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        check: CheckArg,
        /// Second factor for `--check tensor` [default: FILE itself]
        #[arg(long)]
        with: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(doc: &ReportDocument, out: Option<&Path>) -> anyhow::Result<u8> {
    let json = doc.to_json();
    match out {
        Some(p) => fs::write(p, json + "\n").with_context(|| format!("cannot write {}", p.display()))?,
        None => println!("{json}"),
    }
    Ok(commands::exit_code(doc))
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let cfg = cli.config.config();
    match cli.command {
        Command::Analyze { file, out } => emit(&commands::cmd_analyze(&file, &cfg)?, out.as_deref()),
        Command::Cover { file, times, out } => emit(&commands::cmd_cover(&file, times, &cfg)?, out.as_deref()),
        Command::Verify { file, check, with, out } => {
            let check = match check {
                CheckArg::Tensor => Check::Tensor,
                CheckArg::Knorrer => Check::Knorrer,
                CheckArg::Rank => Check::Rank,
                CheckArg::Copy => Check::Copy,
            };
            emit(&commands::cmd_verify(&file, check, with.as_deref(), &cfg)?, out.as_deref())
        }
        Command::Atlas { grid, out, jobs } => {
            let spec = if Path::new(&grid).is_file() {
                fs::read_to_string(&grid).with_context(|| format!("cannot read {grid}"))?
            } else {
                grid
            };
            let g = Grid::parse(&spec)?;
            let s = atlas::sweep(&g, &spec, &out, jobs, &cfg)?;
            eprintln!("{}: {} points, {} computed, {} reused", out.display(), s.points, s.computed, s.reused);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

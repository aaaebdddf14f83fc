mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use procmatch_core::matcher::{DEFAULT_THRESHOLD, DEFAULT_WEIGHT};
use procmatch_core::petri::DEFAULT_BOUND;

/// Translate process descriptions into workflow Petri nets and match them
/// against reference models.
#[derive(Debug, Parser)]
#[command(name = "procmatch", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Translate a plain-English process description into a net document.
    Translate {
        input: PathBuf,
        /// Write the net document here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a Graphviz rendering of the net.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Match a business net against one reference net.
    Match {
        business: PathBuf,
        reference: PathBuf,
        #[command(flatten)]
        scoring: Scoring,
        #[arg(long)]
        json: bool,
        /// Write the business net as DOT with matched tasks annotated.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Rank every `*.net.json` in a directory against a business net.
    Rank {
        business: PathBuf,
        #[arg(long)]
        refs: PathBuf,
        #[command(flatten)]
        scoring: Scoring,
        /// Print only the best k references.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        top: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Validate a net as a workflow net and check soundness.
    Check {
        net: PathBuf,
        /// Maximum number of distinct markings to explore.
        #[arg(long, default_value_t = DEFAULT_BOUND as u64, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, clap::Args)]
struct Scoring {
    /// Word-vector file (GloVe text format).
    #[arg(long, env = "PROCMATCH_EMBEDDINGS")]
    embeddings: PathBuf,
    /// Minimum label cosine for two tasks to be aligned.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD, value_parser = unit_interval)]
    threshold: f64,
    /// Weight of embedding similarity in the combined score.
    #[arg(long, default_value_t = DEFAULT_WEIGHT, value_parser = unit_interval)]
    weight: f64,
}

fn unit_interval(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is outside [0, 1]"))
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Translate { input, out, dot } => {
            commands::translate(&input, out.as_deref(), dot.as_deref())
        }
        Command::Match {
            business,
            reference,
            scoring,
            json,
            dot,
        } => commands::match_one(&business, &reference, &scoring.into(), json, dot.as_deref()),
        Command::Rank {
            business,
            refs,
            scoring,
            top,
            json,
        } => commands::rank(
            &business,
            &refs,
            &scoring.into(),
            top.map(|k| k as usize),
            json,
        ),
        Command::Check { net, bound, json } => commands::check(&net, bound as usize, json),
    };
    match result {
        Ok(code) => code.into(),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code().into()
        }
    }
}

impl From<Scoring> for commands::ScoringOptions {
    fn from(s: Scoring) -> Self {
        Self {
            embeddings: s.embeddings,
            threshold: s.threshold,
            weight: s.weight,
        }
    }
}

//! `prop`: command-line front end for exact pro-p group computations.
//!
//! Exit status: 0 on success, 1 when `selftest` finds a failing check, 2 on
//! input errors and 3 when a size guardrail refuses the computation.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "prop", version, about = "Exact computations on finitely presented pro-p groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,

    /// Run computations that exceed the size guardrails
    /// (same as PROP_GUARDRAIL_OVERRIDE=1).
    #[arg(long = "override", global = true)]
    pub override_guardrail: bool,
}

#[derive(Args, Debug)]
pub struct PresArgs {
    /// Presentation file, e.g. `p = 2  gens: x1, x2  rels: [x1, x2]`.
    #[arg(long)]
    pub pres: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Magnus expansion of a word, truncated at degree N.
    Expand {
        #[command(flatten)]
        pres: PresArgs,
        #[arg(long)]
        word: String,
        #[arg(short = 'N')]
        truncation: usize,
    },
    /// Fox derivative of a relator (or any word) with respect to a generator.
    Fox {
        #[command(flatten)]
        pres: PresArgs,
        /// Index of the relator, starting at 0.
        #[arg(long, conflicts_with = "word", required_unless_present = "word")]
        relator: Option<usize>,
        #[arg(long)]
        word: Option<String>,
        /// Generator name.
        #[arg(long)]
        wrt: String,
    },
    /// Dimensions b_n of the graded quotient algebra through degree N.
    Grade {
        #[command(flatten)]
        pres: PresArgs,
        #[arg(short = 'N')]
        truncation: usize,
    },
    /// Linear obstruction to an epimorphism onto a free pro-p group of rank m.
    Obstruct {
        #[command(flatten)]
        pres: PresArgs,
        #[arg(short = 'N')]
        truncation: usize,
        #[arg(short = 'm')]
        m: usize,
        /// Worker threads for the search (default: sequential).
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Obstruction verdicts for m = 1..m_max, with optional candidate epimorphisms.
    Rank {
        #[command(flatten)]
        pres: PresArgs,
        #[arg(short = 'N')]
        truncation: usize,
        #[arg(short = 'm', long = "m-max")]
        m_max: usize,
        /// Candidate image `x1=y1^-1`, one per generator; targets are y1..ym.
        #[arg(long = "image")]
        images: Vec<String>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Golod-Shafarevich and Koch inequality values.
    Gs {
        #[command(flatten)]
        pres: PresArgs,
        #[arg(short = 'N')]
        truncation: usize,
    },
    /// Dimension of the E1 term from homology dimensions h_1, h_2, ...
    E1 {
        /// Comma-separated dim H_q for q = 1, 2, ...
        #[arg(long, value_delimiter = ',', required = true)]
        h: Vec<u64>,
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(short = 'm', long = "m")]
        m: usize,
    },
    /// One-skeleton of a presentation and its simplicial identity check.
    Skeleton {
        #[command(flatten)]
        pres: PresArgs,
        #[arg(short = 'L')]
        levels: usize,
    },
    /// Mod-p homology of a finite group from its multiplication table.
    Wbar {
        /// JSON file `{"order": n, "table": [[...]]}`.
        #[arg(long, conflicts_with = "cyclic", required_unless_present = "cyclic")]
        group: Option<PathBuf>,
        /// Use the cyclic group of this order instead of a table file.
        #[arg(long)]
        cyclic: Option<usize>,
        #[arg(short = 'p')]
        p: u64,
        #[arg(long = "q-max")]
        q_max: usize,
    },
    /// Run the built-in reproduction checks.
    Selftest {
        #[arg(long, default_value_t = prop_core::selftest::DEFAULT_SEED)]
        seed: u64,
    },
}

/// Writes to stdout, tolerating a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            emit(&e.to_string());
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let lines: Vec<&str> =
                msg.lines().map(str::trim).take_while(|l| !l.starts_with("Usage:")).filter(|l| !l.is_empty()).collect();
            eprintln!("{}", lines.join(" "));
            return ExitCode::from(2);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            emit(&out.text);
            ExitCode::from(out.status)
        }
        Err(e) => {
            let guardrail = e.downcast_ref::<prop_core::Error>().is_some_and(prop_core::Error::is_guardrail);
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::from(if guardrail { 3 } else { 2 })
        }
    }
}

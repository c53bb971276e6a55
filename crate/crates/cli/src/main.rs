//! Command line front end. Every verb prints a JSON envelope
//! `{"meta": ..., "report": ...}` and a one-line summary on stderr.
//!
//! Exit status: 0 when every check passes, 1 when a mathematical check
//! fails, 2 on unreadable input or an exhausted budget.

mod commands;
mod format;

use std::{
    fs,
    path::{Path, PathBuf},
    process::ExitCode,
};

use clap::{Parser, Subcommand};
use quantale::Budget;
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(quantale::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Io(..) => "io",
            CliError::Parse(_) => "parse",
            CliError::Invalid(quantale::Error::BudgetExceeded { .. } | quantale::Error::TooManyAtoms { .. }) => {
                "budget"
            }
            CliError::Invalid(_) => "validation",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "quantale", version, about = "Checks and constructions on finite quantales")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cap on candidate maps visited by enumerations.
    #[arg(long, global = true)]
    max_candidates: Option<u64>,
    /// Largest semigroup whose powerset may be formed.
    #[arg(long, global = true)]
    max_powerset: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a lattice and describe it.
    CheckLattice {
        /// JSON file or a name such as `M3`, `chain:4`, `n5`.
        #[arg(long)]
        lattice: String,
    },
    /// Validate the quantale laws.
    CheckQuantale {
        #[arg(long)]
        quantale: PathBuf,
    },
    /// Check the Frobenius laws of the negations in the file.
    CheckFrobenius {
        #[arg(long)]
        quantale: PathBuf,
    },
    /// Print both residual tables.
    Residuals {
        #[arg(long)]
        quantale: PathBuf,
    },
    /// Build the Chu construction.
    Chu {
        #[arg(long)]
        quantale: PathBuf,
    },
    /// Quotient by a nucleus, or by the Serre Galois connection in the file.
    Nucleus {
        #[arg(long)]
        quantale: PathBuf,
        /// Endomap file holding an explicit nucleus.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Build the phase quantale of a semigroup and a relation.
    Phase {
        #[arg(long)]
        semigroup: PathBuf,
        #[arg(long)]
        relation: PathBuf,
    },
    /// Represent a Frobenius quantale as a phase quantale.
    Represent {
        #[arg(long)]
        quantale: PathBuf,
    },
    /// Raney transforms of a map, or tightness counts of a lattice.
    Raney {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Build the Girard quantale of tight endomaps.
    TightQuantale {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        find_unit: bool,
    },
    /// Check the quantale of meet-preserving endomaps against the tight one.
    Bullet {
        #[arg(long)]
        lattice: String,
    },
    /// Count tight endomaps of M_n.
    MnCount {
        #[arg(long)]
        n: usize,
        #[arg(long, overrides_with = "no_enumerate")]
        enumerate: bool,
        #[arg(long)]
        no_enumerate: bool,
    },
    /// Check the negation formulas on M_n.
    MnNegations {
        #[arg(long)]
        n: usize,
    },
    /// Check positivity of the tight quantale of M_n.
    MnPositivity {
        #[arg(long)]
        n: usize,
    },
    /// Summarise the tight quantale of a lattice, or of M_n.
    Report {
        #[arg(long)]
        lattice: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
}

impl Command {
    fn verb(&self) -> &'static str {
        match self {
            Command::CheckLattice { .. } => "check-lattice",
            Command::CheckQuantale { .. } => "check-quantale",
            Command::CheckFrobenius { .. } => "check-frobenius",
            Command::Residuals { .. } => "residuals",
            Command::Chu { .. } => "chu",
            Command::Nucleus { .. } => "nucleus",
            Command::Phase { .. } => "phase",
            Command::Represent { .. } => "represent",
            Command::Raney { .. } => "raney",
            Command::TightQuantale { .. } => "tight-quantale",
            Command::Bullet { .. } => "bullet",
            Command::MnCount { .. } => "mn-count",
            Command::MnNegations { .. } => "mn-negations",
            Command::MnPositivity { .. } => "mn-positivity",
            Command::Report { .. } => "report",
        }
    }

    fn run(&self, budget: &Budget) -> Result<commands::Outcome, CliError> {
        match self {
            Command::CheckLattice { lattice } => commands::check_lattice(lattice),
            Command::CheckQuantale { quantale } => commands::check_quantale(quantale),
            Command::CheckFrobenius { quantale } => commands::check_frobenius(quantale),
            Command::Residuals { quantale } => commands::residuals(quantale),
            Command::Chu { quantale } => commands::chu(quantale),
            Command::Nucleus { quantale, map } => commands::nucleus(quantale, map.as_deref()),
            Command::Phase { semigroup, relation } => commands::phase(semigroup, relation, budget),
            Command::Represent { quantale } => commands::represent(quantale),
            Command::Raney { lattice, map } => commands::raney(lattice, map.as_deref(), budget),
            Command::TightQuantale { lattice, find_unit } => commands::tight_quantale(lattice, *find_unit, budget),
            Command::Bullet { lattice } => commands::bullet(lattice, budget),
            Command::MnCount { n, no_enumerate, .. } => commands::mn_count(*n, !no_enumerate, budget),
            Command::MnNegations { n } => commands::mn_negations(*n, budget),
            Command::MnPositivity { n } => commands::mn_positivity(*n, budget),
            Command::Report { lattice, n } => commands::report(lattice.as_deref(), *n, budget),
        }
    }
}

fn envelope(verb: &str, status: &str, report: Value) -> Value {
    json!({
        "meta": {
            "tool": "quantale",
            "version": env!("CARGO_PKG_VERSION"),
            "command": verb,
            "status": status,
        },
        "report": report,
    })
}

fn emit(out: Option<&Path>, value: &Value) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let defaults = Budget::default();
    let budget = Budget {
        max_candidates: cli.max_candidates.unwrap_or(defaults.max_candidates),
        max_powerset: cli.max_powerset.unwrap_or(defaults.max_powerset),
        ..defaults
    };
    let verb = cli.command.verb();
    let (value, code) = match cli.command.run(&budget) {
        Ok(outcome) => {
            eprintln!("{verb}: {}", outcome.summary);
            let status = if outcome.passed { "pass" } else { "fail" };
            (envelope(verb, status, outcome.report), if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("{verb}: error: {e}");
            let mut error = match &e {
                CliError::Invalid(inner) => commands::error_json(inner),
                other => json!({ "message": other.to_string() }),
            };
            error["kind"] = json!(e.kind());
            let report = json!({ "error": error });
            (envelope(verb, "error", report), 2)
        }
    };
    if let Err(e) = emit(cli.out.as_deref(), &value) {
        eprintln!("{verb}: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}

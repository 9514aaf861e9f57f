//! Command-line front end for the `ybe-growth` library.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use ybe_growth::{Error, Exec};

use crate::output::{Outcome, Report};

#[derive(Parser, Debug)]
#[command(
    name = "ybe-growth",
    version,
    about = "Growth series of structure groups and monoids of conjugation-quandle solutions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Subcommand, Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Growth series of a structure group.
    Group,
    /// Growth series of a structure monoid.
    Monoid,
    /// Class multiplication table and nonzero defects of a finite group.
    DefectTable,
    /// Coefficients of the exponential generating function of transposition monoids.
    Egf,
    /// Canonical representative of a word.
    NormalForm,
    /// Orbit invariants of a word.
    Invariants,
    /// Run the verification matrix.
    Verify,
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
enum Solution {
    Transpositions,
    Permutations,
    Reflections,
    Dihedral,
    CustomJson,
}

impl Solution {
    fn name(self) -> &'static str {
        match self {
            Solution::Transpositions => "transpositions",
            Solution::Permutations => "permutations",
            Solution::Reflections => "reflections",
            Solution::Dihedral => "dihedral",
            Solution::CustomJson => "custom-json",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone, Serialize)]
struct GlobalOpts {
    /// Solution family.
    #[arg(long, global = true, value_enum)]
    solution: Option<Solution>,
    /// Size parameter `d` (for `egf`, the largest `d`).
    #[arg(long, global = true)]
    d: Option<u64>,
    /// Truncation order in `t`.
    #[arg(long, global = true, default_value_t = 8)]
    order: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Fail with exit code 3 unless an exact closed form is produced.
    #[arg(long, global = true)]
    closed_form: bool,
    /// Compare against the brute-force oracle.
    #[arg(long, global = true)]
    verify: bool,
    /// State budget for the oracles and the defect engine.
    #[arg(long, global = true, env = "YBE_GROWTH_BUDGET", value_parser = clap::value_parser!(u64).range(1..))]
    budget_states: Option<u64>,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// Seed for randomized property sampling.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// JSON input file: a quandle `{op, labels}` for `monoid`, a group `{labels, mult}` for `defect-table`.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Word to analyse (`normal-form`, `invariants`).
    #[arg(long, global = true, allow_hyphen_values = true)]
    word: Option<String>,
    /// Use the infinite reflection solution.
    #[arg(long, global = true)]
    infinite: bool,
    /// Criteria to run with `verify` (default: all).
    #[arg(long, global = true, value_delimiter = ',')]
    criterion: Vec<u8>,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    #[serde(skip)]
    timing: bool,
}

impl GlobalOpts {
    fn exec(&self) -> Exec {
        if self.threads == Some(1) {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok = 0,
    VerificationFailed = 1,
    Usage = 2,
    Budget = 3,
}

fn status_of(e: &Error) -> Status {
    match e {
        Error::BudgetExceeded(_) => Status::Budget,
        Error::Internal(_) => Status::VerificationFailed,
        _ => Status::Usage,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.opts.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("error: cannot configure thread pool: {e}");
            return ExitCode::from(Status::Usage as u8);
        }
    }
    let start = Instant::now();
    let outcome = commands::run(cli.command, &cli.opts);
    let elapsed = start.elapsed().as_secs_f64();
    match outcome {
        Ok(out) => emit(cli.command, &cli.opts, out, elapsed),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(status_of(&e) as u8)
        }
    }
}

fn emit(command: Command, opts: &GlobalOpts, out: Outcome, elapsed: f64) -> ExitCode {
    let status = if out.budget_hit {
        Status::Budget
    } else if out.verified == Some(false) {
        Status::VerificationFailed
    } else if opts.closed_form && out.closed_form_missing {
        Status::Budget
    } else {
        Status::Ok
    };
    let text = match opts.format {
        Format::Json => {
            let report = Report::new(command, opts, &out, opts.timing.then_some(elapsed));
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
        Format::Csv => out.csv.clone(),
        Format::Text => {
            let mut t = out.text.clone();
            if opts.timing {
                t.push_str(&format!("elapsed: {elapsed:.3}s\n"));
            }
            t
        }
    };
    print!("{text}");
    if opts.closed_form && out.closed_form_missing {
        eprintln!("error: no closed form was produced");
    }
    ExitCode::from(status as u8)
}

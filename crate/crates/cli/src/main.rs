//! `pliable`: analyse, generate and verify pliable-index-coding problems.
//!
//! Exit codes: 0 success, 1 counterexample or internal inconsistency,
//! 2 invalid input, 3 capacity or budget exceeded.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pliable_core::analysis::{analyze_with, criticality_check, AnalyzeOptions};
use pliable_core::suites::{self, SuiteStatus, VerifyConfig};
use pliable_core::{codec, generate, Error, PartitionNested};

#[derive(Parser)]
#[command(name = "pliable", version, about = "Broadcast-rate bounds for pliable index coding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bound or determine the optimal broadcast rate of a problem file.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Field size; overrides the file's "q".
        #[arg(long)]
        q: Option<u32>,
        /// Run the exhaustive linear-code search (m <= 6, q <= 7).
        #[arg(long)]
        oracle: bool,
        /// Embed the full game table in the report.
        #[arg(long)]
        verbose: bool,
    },
    /// Write a problem file.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
        #[arg(long, global = true)]
        output: Option<PathBuf>,
    },
    /// Run verification sweeps.
    Verify {
        /// Suite name, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        /// Field size for the linear-code searches.
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value_t = 4)]
        max_m: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Decoding-choice budget for the brute-force game solver.
        #[arg(long, default_value_t = pliable_core::chain::DEFAULT_BRUTE_FORCE_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Check whether adding any absent receiver strictly raises the rate.
    Criticality {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        q: Option<u32>,
    },
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Every receiver whose side-information size is listed.
    CompleteS {
        #[arg(long)]
        m: usize,
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
    },
    /// Perfectly nested absent receivers from a partition.
    PerfectlyNested(NestedArgs),
    /// Complete family minus uniformly chosen receivers.
    Random {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        absent: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct NestedArgs {
    #[arg(long)]
    m: usize,
    /// Messages of P_0 (may be omitted for an empty P_0).
    #[arg(long, value_delimiter = ',')]
    p0: Vec<usize>,
    /// One block per flag, comma separated.
    #[arg(long = "block", required = true)]
    blocks: Vec<String>,
}

enum Failure {
    Input(String),
    Capacity(String),
    Logic(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity(_) => Failure::Capacity(e.to_string()),
            Error::Inconsistent(_) => Failure::Logic(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Logic(m) => (1, m),
                Failure::Input(m) => (2, m),
                Failure::Capacity(m) => (3, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Analyze { input, q, oracle, verbose } => {
            let doc = read_problem(&input)?;
            let opts = AnalyzeOptions { q: q.unwrap_or(doc.q), use_oracle: oracle, full_table: verbose };
            let report = analyze_with(&doc.problem, &opts)?;
            emit(&report.to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Generate { kind, output } => {
            let problem = match kind {
                GenerateKind::CompleteS { m, sizes } => generate::complete_s(m, &sizes)?,
                GenerateKind::PerfectlyNested(args) => {
                    let blocks = args.blocks.iter().map(|b| parse_list(b)).collect::<Result<Vec<_>, _>>()?;
                    generate::perfectly_nested(&PartitionNested::new(args.m, &args.p0, &blocks)?)?
                }
                GenerateKind::Random { m, absent, seed } => generate::random(m, absent, seed)?,
            };
            let text = codec::encode(&problem);
            match output {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?,
                None => emit_raw(&text)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, q, max_m, trials, budget, seed } => {
            if !pliable_core::gf::oracle_supported(1, q) {
                return Err(Failure::Input(format!(
                    "--q must be a prime no larger than {}",
                    pliable_core::gf::ORACLE_MAX_Q
                )));
            }
            let cfg = VerifyConfig { q, max_m, trials, budget, seed };
            let outcomes = if suite == "all" {
                suites::run_all(&cfg)
            } else {
                match suites::run_suite(&suite, &cfg) {
                    Some(o) => vec![o],
                    None => {
                        return Err(Failure::Input(format!(
                            "unknown suite {suite:?}; expected one of {} or \"all\"",
                            suites::SUITES.join(", ")
                        )))
                    }
                }
            };
            for o in &outcomes {
                eprintln!(
                    "{:<18} {:<8} checked {:>6}  skipped {:>4}",
                    o.suite,
                    format!("{:?}", o.status).to_lowercase(),
                    o.checked,
                    o.skipped
                );
                for c in &o.counterexamples {
                    eprintln!("    counterexample: {c}");
                }
            }
            let passed = outcomes.iter().all(|o| o.status != SuiteStatus::Failed);
            let summary = serde_json::json!({ "passed": passed, "suites": outcomes });
            emit(&serde_json::to_string_pretty(&summary).expect("summary serializes"))?;
            Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Criticality { input, q } => {
            let doc = read_problem(&input)?;
            let report = criticality_check(&doc.problem, q.unwrap_or(doc.q))?;
            let mut value = serde_json::to_value(&report).expect("report serializes");
            value["conclusive"] = report.conclusive().into();
            emit(&serde_json::to_string_pretty(&value).expect("report serializes"))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_problem(path: &Path) -> Result<codec::ProblemDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(codec::decode_document(&text)?)
}

fn parse_list(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse().map_err(|_| Failure::Input(format!("bad index {x:?} in {s:?}"))))
        .collect()
}

fn emit(text: &str) -> Result<(), Failure> {
    emit_raw(text)?;
    emit_raw("\n")
}

fn emit_raw(text: &str) -> Result<(), Failure> {
    std::io::stdout()
        .write_all(text.as_bytes())
        .map_err(|e| Failure::Input(format!("cannot write to standard output: {e}")))
}

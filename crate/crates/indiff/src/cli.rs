//! The `indiff` command line.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use indiff_core::responsive::rank_vector;
use indiff_core::solutions::{analyze_matching, solution_report, solution_set};
use indiff_core::tiebreak::{tie_breaking_count, tie_breakings};
use indiff_core::{fixtures, Concept, GuardrailError, Limits, Market, Matching};

use crate::format::{parse_market, parse_matching, serialize_market};
use crate::fuzz::run_fuzz;
use crate::generate::GenConfig;
use crate::report::{matching_line, relation_failures, relations_line, verdict, witness};

#[derive(Debug, Parser)]
#[command(name = "indiff", version, about = "Stable sets and cores of matching markets with indifferences")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify one matching in all six solution sets.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        matching: String,
        /// Also print the rank vectors behind each firm comparison.
        #[arg(long)]
        explain: bool,
    },
    /// List every matching in a solution set.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        set: SetArg,
    },
    /// Check the relations between the six sets.
    Verify { file: PathBuf },
    /// Count, and optionally list, the strict tie-breakings.
    Tiebreaks {
        file: PathBuf,
        #[arg(long)]
        list: bool,
    },
    /// Check the relations on random markets.
    Fuzz {
        #[arg(long, default_value_t = 3)]
        firms: usize,
        #[arg(long, default_value_t = 4)]
        workers: usize,
        #[arg(long, default_value_t = 1)]
        qmin: usize,
        #[arg(long, default_value_t = 2)]
        qmax: usize,
        #[arg(long, default_value_t = 0.3)]
        ties: f64,
        #[arg(long, default_value_t = 0.9)]
        accept: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Tie-breaking checks are skipped on markets with more tie-breakings.
        #[arg(long, default_value_t = 1024)]
        max_tie_breakings: u128,
    },
    /// Classify the four reference matchings of the built-in example market.
    Example1,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SetArg {
    S,
    Ss,
    Sss,
    Core,
    StrongCore,
    SuperCore,
}

impl From<SetArg> for Concept {
    fn from(s: SetArg) -> Concept {
        match s {
            SetArg::S => Concept::Stable,
            SetArg::Ss => Concept::StronglyStable,
            SetArg::Sss => Concept::SuperStable,
            SetArg::Core => Concept::Core,
            SetArg::StrongCore => Concept::StrongCore,
            SetArg::SuperCore => Concept::SuperCore,
        }
    }
}

enum Failure {
    Relation,
    Usage(String),
    Guardrail(GuardrailError),
}

impl From<GuardrailError> for Failure {
    fn from(e: GuardrailError) -> Self {
        Failure::Guardrail(e)
    }
}

fn load(path: &Path) -> Result<Market, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_market(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn explain(market: &Market, m: &Matching, out: &mut Vec<String>) {
    for f in market.firms() {
        let held = m.of_firm(f);
        let v = rank_vector(market, f, held).expect("matchings respect quotas");
        let names: Vec<&str> = held.iter().map(|&w| market.worker_name(w)).collect();
        out.push(format!("  {} holds {{{}}} rank vector {v}", market.firm_name(f), names.join(",")));
    }
}

fn run(cli: Cli, out: &mut Vec<String>) -> Result<(), Failure> {
    let limits = Limits::default();
    match cli.command {
        Command::Analyze { file, matching, explain: show } => {
            let market = load(&file)?;
            let m = parse_matching(&market, &matching).map_err(|e| Failure::Usage(e.to_string()))?;
            let row = analyze_matching(&market, &m, &limits)?;
            out.push(matching_line(&market, &row));
            for c in Concept::ALL {
                if let Some(w) = witness(&market, &row, c) {
                    out.push(format!("  not {}: {w}", c.label()));
                }
            }
            if show {
                explain(&market, &m, out);
                for n in indiff_core::DomNotion::ALL {
                    let Some(w) = row.witness(n) else { continue };
                    for (f, ws) in w.assignment.firm_blocks() {
                        let v = rank_vector(&market, f, ws).expect("enforceable assignments respect quotas");
                        out.push(format!("  {n:?}: {} would hold rank vector {v}", market.firm_name(f)));
                    }
                }
            }
        }
        Command::Enumerate { file, set } => {
            let market = load(&file)?;
            let mut lits: Vec<String> =
                solution_set(&market, set.into(), &limits)?.iter().map(|m| market.matching_literal(m)).collect();
            lits.sort();
            out.extend(lits);
        }
        Command::Verify { file } => {
            let market = load(&file)?;
            let relations = solution_report(&market, &limits)?.relations();
            out.push(relations_line(&relations));
            out.extend(relation_failures(&market, &relations));
            if !relations.all_pass() {
                return Err(Failure::Relation);
            }
        }
        Command::Tiebreaks { file, list } => {
            let market = load(&file)?;
            out.push(tie_breaking_count(&market).to_string());
            if list {
                for (i, p) in tie_breakings(&market, &limits)?.enumerate() {
                    out.push(format!("# tie-breaking {}", i + 1));
                    out.extend(serialize_market(p.market()).lines().map(String::from));
                }
            }
        }
        Command::Fuzz { firms, workers, qmin, qmax, ties, accept, seed, trials, max_tie_breakings } => {
            let cfg = GenConfig { firms, workers, qmin, qmax, ties, accept, seed };
            let limits = Limits { max_tie_breakings, ..limits };
            let report = run_fuzz(&cfg, trials, &limits).map_err(|e| Failure::Usage(e.to_string()))?;
            out.extend(report.to_string().lines().map(String::from));
            if !report.success() {
                return Err(Failure::Relation);
            }
        }
        Command::Example1 => {
            let market = fixtures::example_one();
            for i in 1..=4 {
                let row = analyze_matching(&market, &fixtures::mu(&market, i), &limits)?;
                out.push(format!("mu{i}: {}", verdict(&row)));
            }
        }
    }
    Ok(())
}

/// Parses `args`, runs the command, and writes its output. Exit codes: 0
/// success, 1 a relation failed, 2 bad usage or input, 3 a guardrail was
/// exceeded.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return ExitCode::from(code);
        }
    };
    let mut out = Vec::new();
    let result = run(cli, &mut out);
    for line in &out {
        let _ = writeln!(stdout, "{line}");
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Relation) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guardrail(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            ExitCode::from(3)
        }
    }
}

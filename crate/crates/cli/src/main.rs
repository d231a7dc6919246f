use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use connexive::battery;
use connexive::connectives::{defining_formula, gen_rules, load_definitions};
use connexive::derivation::Verdict;
use connexive::format::{load_derivation, write_g3c, DerivationFile, FormatError};
use connexive::g3c::{check_g3c_with_hypotheses, prove_g3c, G3Sequent, SearchBudget, SearchOutcome};
use connexive::nc::check_nc;
use connexive::sc_inf::check_scinf;
use connexive::syntax::parse_rexpr;
use connexive::witnesses::verify_definition;

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "connexive", version, about = "Proof search and proof checking for the connexive logic C")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normalize an R-expression and print its R-degree.
    Parse {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Decide a sequent `A1, ..., An => B` in G3C.
    Prove {
        #[arg(allow_hyphen_values = true)]
        sequent: String,
        /// Extra initial sequent (repeatable).
        #[arg(long = "hyp")]
        hyps: Vec<String>,
        /// Write the derivation here; `-` for standard output.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Maximum number of search states.
        #[arg(long)]
        budget: Option<usize>,
        /// Time limit in seconds.
        #[arg(long)]
        time: Option<f64>,
    },
    /// Check a derivation file.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        calculus: CalculusArg,
        /// Connective definitions, overriding the file's env header.
        #[arg(long)]
        defs: Option<PathBuf>,
    },
    /// Print the rules and defining formula of each connective in a file.
    Define {
        file: PathBuf,
        #[arg(long)]
        rules: bool,
        #[arg(long)]
        formula: bool,
    },
    /// Verify each connective in a definitions file.
    Verify {
        file: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        no_timings: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the acceptance battery.
    Theses {
        #[arg(long)]
        no_timings: bool,
    },
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum CalculusArg {
    G3c,
    Scinf,
    Nc,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    let code = match run(cli.cmd) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            USAGE
        }
    };
    ExitCode::from(code)
}

fn budget(states: Option<usize>, secs: Option<f64>) -> Result<SearchBudget, String> {
    let mut b = SearchBudget::default();
    if let Some(n) = states {
        b.max_visited = n;
    }
    if let Some(s) = secs {
        b.time_limit = Duration::try_from_secs_f64(s).map_err(|e| format!("--time: {e}"))?;
    }
    Ok(b)
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cmd: Cmd) -> Result<u8, String> {
    match cmd {
        Cmd::Parse { expr } => {
            let e = parse_rexpr(&expr).map_err(|e| e.to_string())?;
            println!("{e}");
            println!("degree {}", e.r_degree());
            Ok(OK)
        }
        Cmd::Prove { sequent, hyps, emit, budget: states, time } => {
            let goal = G3Sequent::parse(&sequent).map_err(|e| e.to_string())?;
            let hyps =
                hyps.iter().map(|h| G3Sequent::parse(h)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
            let report = prove_g3c(&goal, &hyps, &budget(states, time)?).map_err(|e| e.to_string())?;
            match report.outcome {
                SearchOutcome::Found(d) => {
                    println!("found: {goal} ({} nodes)", d.size());
                    match emit {
                        Some(p) if p.as_os_str() == "-" => print!("{}", write_g3c(&d, &hyps)),
                        Some(p) => fs::write(&p, write_g3c(&d, &hyps)).map_err(|e| format!("{}: {e}", p.display()))?,
                        None => {}
                    }
                    Ok(OK)
                }
                SearchOutcome::Unprovable => {
                    println!("unprovable: {goal}");
                    Ok(NEGATIVE)
                }
                SearchOutcome::BudgetExceeded => {
                    println!("budget exceeded: {goal}");
                    Ok(BUDGET)
                }
            }
        }
        Cmd::Check { file, calculus, defs } => check(&file, calculus, defs.as_deref()),
        Cmd::Define { file, rules, formula } => {
            let defs = load_definitions(&read(&file)?).map_err(|e| format!("{}: {e}", file.display()))?;
            let (rules, formula) = if rules || formula { (rules, formula) } else { (true, true) };
            for def in &defs {
                println!("{def}");
                if rules {
                    for r in gen_rules(def).all() {
                        println!("  {r}");
                    }
                }
                if formula {
                    println!("  {} <=>s {}", def.generic_application(), defining_formula(def));
                }
            }
            Ok(OK)
        }
        Cmd::Verify { file, budget: states, no_timings, json } => {
            let defs = load_definitions(&read(&file)?).map_err(|e| format!("{}: {e}", file.display()))?;
            let b = budget(states, None)?;
            let mut all = true;
            for def in &defs {
                let report = verify_definition(def, &b);
                all &= report.passed();
                if json {
                    print!("{}", report.to_json_lines(!no_timings));
                } else {
                    print!("{}", report.to_text(!no_timings));
                }
            }
            Ok(if all { OK } else { NEGATIVE })
        }
        Cmd::Theses { no_timings } => {
            let results = battery::run_all(&SearchBudget::default());
            for c in &results {
                println!("{}", c.line(!no_timings));
            }
            let passed = results.iter().filter(|c| c.passed).count();
            println!("{passed}/{} criteria passed", results.len());
            Ok(if passed == results.len() { OK } else { NEGATIVE })
        }
    }
}

fn check(file: &Path, calculus: CalculusArg, defs: Option<&Path>) -> Result<u8, String> {
    let (parsed, env) = match load_derivation(file, defs) {
        Ok(x) => x,
        Err(FormatError::Rejected(r)) => {
            println!("rejected: {r}");
            return Ok(NEGATIVE);
        }
        Err(e @ FormatError::Io { .. }) => return Err(e.to_string()),
        Err(e) => return Err(format!("{}: {e}", file.display())),
    };
    if !env.is_empty() {
        println!("env {}", env.env_hash());
    }
    let verdict: Verdict = match (calculus, parsed) {
        (CalculusArg::G3c, DerivationFile::G3c { hyps, tree }) => check_g3c_with_hypotheses(&tree, &hyps),
        (CalculusArg::Scinf, DerivationFile::Scinf { tree, .. }) => check_scinf(&tree, &env),
        (CalculusArg::Nc, DerivationFile::Nc { premises, tree }) => check_nc(&tree, &premises),
        (_, other) => {
            return Err(format!("{}: file holds a {} derivation", file.display(), other.calculus().tag()));
        }
    };
    match verdict {
        Ok(()) => {
            println!("accepted");
            Ok(OK)
        }
        Err(r) => {
            println!("rejected: {r}");
            Ok(NEGATIVE)
        }
    }
}

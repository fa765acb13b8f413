use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use wronsk::certify::{CertifyError, Verdict, DEFAULT_GUARD};
use wronsk::jet::{parse_rows, WronskianSpec};
use wronsk::parser::{parse_fixture, ParseError};
use wronsk::report::VerificationReport;
use wronsk::suite::{self, PeanoCase, SuiteConfig, VerifyMode, VerifyOptions, DEFAULT_SEED};
use wronsk::{enumerate_multi_indices, parse_polynomial, QPolynomial};

const EXIT_ZERO: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_GUARD: u8 = 2;
const EXIT_NONZERO: u8 = 3;
const EXIT_SUITE_MISMATCH: u8 = 4;

/// Exact generalized Wronskians and certified Jacobi identities.
#[derive(Parser)]
#[command(name = "wronsk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit line-delimited JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Upper bound on tuples × shuffle terms for certification.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD as u64)]
    guard: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// List the multi-indices of order at most k.
    Enumerate {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: u32,
    },
    /// Evaluate one Wronskian on explicit functions.
    Wronskian {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        spec: String,
        /// Argument expression; repeat once per column.
        #[arg(long = "f", allow_hyphen_values = true)]
        functions: Vec<String>,
        /// File with one expression per line (`#` starts a comment).
        #[arg(long = "functions")]
        file: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        rho: Option<String>,
        #[arg(long)]
        relaxed_validity: bool,
    },
    /// Decide whether outer[inner] vanishes identically.
    Verify(VerifyArgs),
    /// Run the pinned regression suite.
    PaperSuite {
        /// Run a single group.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(suite::GROUPS))]
        only: Option<String>,
        /// Also run the complete second-order pair.
        #[arg(long)]
        stretch: bool,
    },
    /// Orthant-wise Peano examples.
    Peano {
        #[arg(long = "case", value_parser = ["1d", "2d"])]
        case: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    outer: String,
    #[arg(long)]
    inner: String,
    #[arg(long, allow_hyphen_values = true)]
    outer_rho: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    inner_rho: Option<String>,
    /// Accept specs violating the first-order completeness condition.
    #[arg(long)]
    allow_inadmissible: bool,
    /// Experimental: only orders <= 1 need to be complete.
    #[arg(long)]
    relaxed_validity: bool,
    /// Random screening instead of certification.
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Per-variable degree of random arguments (default: sum of the orders).
    #[arg(long)]
    degree: Option<u32>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<CertifyError> for Failure {
    fn from(e: CertifyError) -> Self {
        let code = match e {
            CertifyError::GuardExceeded { .. } => EXIT_GUARD,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_ZERO };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Enumerate { d, k } => {
            let indices = enumerate_multi_indices(*d, *k).map_err(|e| Failure::usage(e.to_string()))?;
            let words: Vec<String> = indices.iter().map(|m| m.to_string()).collect();
            if cli.json {
                println!("{}", json!({ "d": d, "k": k, "indices": words, "count": words.len() }));
            } else {
                for w in &words {
                    println!("{w}");
                }
                println!("count: {}", words.len());
            }
            Ok(EXIT_ZERO)
        }
        Command::Wronskian {
            d,
            spec,
            functions,
            file,
            rho,
            relaxed_validity,
        } => {
            let spec = build_spec(*d, spec, *relaxed_validity, "spec")?;
            let mut args: Vec<QPolynomial> = functions
                .iter()
                .map(|f| polynomial(f, *d, "--f"))
                .collect::<Result<_, _>>()?;
            if let Some(path) = file {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
                let parsed = parse_fixture(&text, *d).map_err(|(line, e)| {
                    Failure::usage(format!("{} line {line}: {e}", path.display()))
                })?;
                args.extend(parsed);
            }
            let rho = rho.as_deref().map(|r| polynomial(r, *d, "--rho")).transpose()?;
            let report = suite::evaluate_wronskian("wronskian", &spec, rho.as_ref(), &args)
                .map_err(|e| Failure::usage(e.to_string()))?;
            if cli.json {
                println!("{}", report.to_json_line());
            } else {
                println!("{}", report.evaluations[0].value);
            }
            Ok(EXIT_ZERO)
        }
        Command::Verify(v) => {
            let outer = build_spec(v.d, &v.outer, v.relaxed_validity, "outer")?;
            let inner = build_spec(v.d, &v.inner, v.relaxed_validity, "inner")?;
            if !v.allow_inadmissible {
                for (name, spec) in [("outer", &outer), ("inner", &inner)] {
                    if !spec.is_admissible() {
                        return Err(Failure::usage(format!(
                            "{name} spec {{{spec}}} is inadmissible: the condition that the set of first-order \
                             derivatives is complete is violated (rerun with --allow-inadmissible to explore)"
                        )));
                    }
                }
            }
            let outer_rho = v.outer_rho.as_deref().map(|r| polynomial(r, v.d, "--outer-rho")).transpose()?;
            let inner_rho = v.inner_rho.as_deref().map(|r| polynomial(r, v.d, "--inner-rho")).transpose()?;
            let options = VerifyOptions {
                mode: if v.random {
                    VerifyMode::Random {
                        trials: v.trials,
                        max_degree: v.degree,
                    }
                } else {
                    VerifyMode::Certify
                },
                guard: cli.guard as u128,
                seed: cli.seed,
            };
            let report = suite::verify_pair("verify", &outer, &inner, outer_rho.as_ref(), inner_rho.as_ref(), &options)?;
            emit(cli, &report);
            Ok(verdict_code(report.verdict))
        }
        Command::PaperSuite { only, stretch } => {
            let config = SuiteConfig {
                only: only.clone(),
                stretch: *stretch,
                guard: cli.guard as u128,
                seed: cli.seed,
            };
            let outcome = suite::run_suite(&config, |r| emit(cli, r))?;
            for failure in &outcome.failures {
                eprintln!("mismatch: {failure}");
            }
            if !cli.json {
                println!(
                    "suite: {} reports, {} mismatches",
                    outcome.reports.len(),
                    outcome.failures.len()
                );
            }
            Ok(if outcome.failures.is_empty() {
                EXIT_ZERO
            } else {
                EXIT_SUITE_MISMATCH
            })
        }
        Command::Peano { case } => {
            let case = PeanoCase::parse(case).expect("clap restricts the values");
            let report = suite::peano_report(case);
            emit(cli, &report);
            Ok(verdict_code(report.verdict))
        }
    }
}

fn verdict_code(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::Zero => EXIT_ZERO,
        Verdict::Nonzero => EXIT_NONZERO,
    }
}

fn emit(cli: &Cli, report: &VerificationReport) {
    let line = if cli.json { report.to_json_line() } else { report.to_text() };
    // A closed pipe (e.g. `| head`) is not an error worth a panic.
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn build_spec(d: usize, text: &str, relaxed: bool, what: &str) -> Result<WronskianSpec, Failure> {
    let rows = parse_rows(d, text).map_err(|e| Failure::usage(format!("{what} spec {text:?}: {e}")))?;
    let spec = if relaxed {
        WronskianSpec::relaxed(d, rows)
    } else {
        WronskianSpec::new(d, rows)
    };
    spec.map_err(|e| Failure::usage(format!("{what} spec {text:?}: {e}")))
}

fn polynomial(src: &str, d: usize, flag: &str) -> Result<QPolynomial, Failure> {
    parse_polynomial(src, d).map_err(|e: ParseError| {
        let caret = " ".repeat(e.position);
        Failure::usage(format!("{flag} {e}\n  {src}\n  {caret}^"))
    })
}

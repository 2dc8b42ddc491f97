//! Command-line interface: word reduction, automorphism algebra, and
//! the scenario check runner.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gogaut::harness::{self, Config, Report};
use gogaut::{mu, twist_kernel_rank, Alphabet, FreeAut, Pi1Basis, Scenario, Word};

#[derive(Parser)]
#[command(name = "gogaut", version, about = "Free-group automorphisms and Dehn twists on graphs of groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ReportArgs {
    /// Emit one JSON record per check instead of human-readable text.
    #[arg(long)]
    jsonl: bool,
    /// Include per-check timings (makes reports nondeterministic).
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Freely reduce a word and print its normal form.
    Reduce {
        /// Word text, e.g. `a*b^-1*a^3` (`1` is the identity).
        word: String,
        /// Comma-separated generator names.
        #[arg(long, default_value = "a,b,alpha,beta")]
        alphabet: String,
    },
    /// Compose two automorphisms (files in `x -> word` format): first then second.
    Compose { first: String, second: String },
    /// Decide whether an automorphism is inner; print the witness.
    Inner { aut: String },
    /// Decide whether two automorphisms commute in the outer automorphism group.
    Commute { first: String, second: String },
    /// Restrict a named graph-of-groups automorphism to its vertex groups.
    Mu {
        /// Scenario file declaring the graph and the automorphism.
        scenario: String,
        /// Name of a `gogaut` block in the scenario.
        #[arg(long)]
        name: String,
    },
    /// Rank of the group of Dehn twists of a scenario's graph, with certificate.
    TwistRank { scenario: String },
    /// Run the checks of a scenario file, or of the built-in corpus (`section4`).
    Run {
        /// Path to a scenario file, or the literal `section4`.
        scenario: String,
        /// Subset of check names to run.
        #[arg(long, num_args = 0..)]
        checks: Vec<String>,
        /// Seed for the randomised property checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the gluing word g of the built-in corpus.
        #[arg(long)]
        g: Option<String>,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Run every built-in corpus check.
    VerifySection4 {
        #[command(flatten)]
        report: ReportArgs,
    },
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_aut(path: &str) -> gogaut::Result<FreeAut> {
    let text = fs::read_to_string(path)
        .map_err(|e| gogaut::Error::Other(format!("cannot read {path}: {e}")))?;
    FreeAut::parse(&text)
}

fn read_scenario(path: &str) -> gogaut::Result<Scenario> {
    let text = fs::read_to_string(path)
        .map_err(|e| gogaut::Error::Other(format!("cannot read {path}: {e}")))?;
    Scenario::parse(&text)
}

fn emit(report: &Report, jsonl: bool) -> gogaut::Result<ExitCode> {
    if jsonl {
        print!("{}", report.jsonl()?);
    } else {
        print!("{}", report.human());
    }
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn dispatch() -> gogaut::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Reduce { word, alphabet } => {
            let al = Alphabet::new(alphabet.split(','))?;
            println!("{}", Word::parse(&al, &word)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Compose { first, second } => {
            let f = read_aut(&first)?;
            let g = read_aut(&second)?;
            print!("{}", f.compose(&g)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Inner { aut } => {
            let f = read_aut(&aut)?;
            match f.is_inner()? {
                Some(h) => {
                    println!("inner: conjugation by {h}");
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("not inner");
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        Command::Commute { first, second } => {
            let f = read_aut(&first)?;
            let g = read_aut(&second)?;
            if f.outer_commutes(&g)? {
                println!("commute in the outer automorphism group");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("do not commute in the outer automorphism group");
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Mu { scenario, name } => {
            let sc = read_scenario(&scenario)?;
            let a = sc.gogaut(&name)?;
            let report = mu(a)?;
            for (v, class) in report.classes.iter().enumerate() {
                let trivial = if class.is_trivial()? { "trivial" } else { "nontrivial" };
                println!("vertex {}: {trivial} outer class", sc.gog.vertex_name(v));
            }
            for (e, w) in report.edge_witnesses.iter().enumerate() {
                match w {
                    Some(w) => println!(
                        "edge {}: image conjugate back by {w}",
                        sc.gog.edge_name(e)
                    ),
                    None => println!("edge {}: conjugacy class not preserved", sc.gog.edge_name(e)),
                }
            }
            Ok(if report.preserves_edge_classes {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::TwistRank { scenario } => {
            let sc = read_scenario(&scenario)?;
            let basis = Pi1Basis::new(&sc.gog, sc.base)?;
            let rank = twist_kernel_rank(&sc.gog, &basis, 2)?;
            println!("twist group rank {rank} (certified over the exponent grid {{-2..2}}^{rank})");
            Ok(ExitCode::SUCCESS)
        }
        Command::Run {
            scenario,
            checks,
            seed,
            g,
            report,
        } => {
            let cfg = Config {
                seed,
                g: g.unwrap_or_else(|| gogaut::DEFAULT_G.to_string()),
                timings: report.timings,
                ..Config::default()
            };
            let filter = (!checks.is_empty()).then_some(checks.as_slice());
            let out = if scenario == "section4" {
                harness::run_section4(&cfg, filter)?
            } else {
                harness::run_scenario(&read_scenario(&scenario)?, &cfg, filter)?
            };
            emit(&out, report.jsonl)
        }
        Command::VerifySection4 { report } => {
            let cfg = Config {
                timings: report.timings,
                ..Config::default()
            };
            let out = harness::run_section4(&cfg, None)?;
            emit(&out, report.jsonl)
        }
    }
}

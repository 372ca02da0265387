use std::collections::BTreeSet;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use delta2::alternating::{
    a1w_to_ltl, ltl_to_a1w_with, normalize_a1w, AlternatingAutomaton, InitialMode,
};
use delta2::corpus::{CorpusSpec, SEED_ENV};
use delta2::det::ltl_to_drw_over;
use delta2::hoa::{alternating_to_dot, det_to_dot, emit_alternating_hoa, emit_hoa};
use delta2::ltl::smallest_classes;
use delta2::normalize::{normalize_stable, normalize_with, Simplifier, Variant};
use delta2::word::{evaluate, parse_lasso_props, Alphabet, LassoWord};
use delta2::xcheck::{xcheck, XcheckOptions};
use delta2::{parse, Error, Formula};

/// Normal forms for LTL and translations to alternating and deterministic
/// automata.
#[derive(Parser)]
#[command(name = "delta2", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite a formula into a disjunction of Delta2 formulas.
    Normalize {
        formula: String,
        /// Use the dual normal form.
        #[arg(long)]
        dual: bool,
        /// Skip simplification of the disjuncts.
        #[arg(long)]
        no_simplify: bool,
        /// Print the full report as JSON.
        #[arg(long)]
        report_json: bool,
    },
    /// Print the smallest hierarchy classes containing a formula.
    Classify { formula: String },
    /// Translate a formula into a very weak alternating automaton.
    ToA1w {
        formula: String,
        #[command(flatten)]
        ap: ApArg,
        #[arg(long, conflicts_with_all = ["hoa", "dot"])]
        json: bool,
        #[arg(long, conflicts_with = "dot")]
        hoa: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Translate a formula into a deterministic Rabin automaton.
    ToDrw {
        formula: String,
        #[command(flatten)]
        ap: ApArg,
        #[arg(long, conflicts_with_all = ["dot", "json"])]
        hoa: bool,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a formula on a lasso word `u ; v`, e.g. "{a} ; {b}{}".
    Check {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        lasso: String,
        /// Also run the Rabin automaton; exit 1 if the two disagree.
        #[arg(long)]
        via_drw: bool,
    },
    /// Print the normal form that is exact on stable words.
    StableNf { formula: String },
    /// Translate an alternating automaton in JSON (file or `-`) to LTL.
    A1wToLtl {
        file: String,
        /// Print the normalized automaton as JSON instead.
        #[arg(long)]
        normalize: bool,
    },
    /// Print a generated corpus, one formula per line.
    Corpus {
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Run every construction against the lasso oracle on a corpus.
    Xcheck {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, default_value_t = 2)]
        prefix: usize,
        #[arg(long, default_value_t = 3)]
        cycle: usize,
        /// Number of extra random lassos per formula.
        #[arg(long, default_value_t = 0)]
        random: usize,
        /// Skip the Rabin automaton.
        #[arg(long)]
        no_drw: bool,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Print the full report as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct ApArg {
    /// Comma-separated propositions; defaults to those of the formula.
    #[arg(long, value_delimiter = ',')]
    ap: Vec<String>,
}

#[derive(Args)]
struct CorpusArgs {
    /// Corpus seed; defaults to $DELTA2_SEED, then 1.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 2)]
    max_props: usize,
    #[arg(long, default_value_t = 10)]
    max_size: usize,
}

impl CorpusArgs {
    fn spec(&self) -> CorpusSpec {
        let spec = CorpusSpec::new(1, self.count, self.max_props, self.max_size).with_env_seed();
        match self.seed {
            Some(seed) => CorpusSpec { seed, ..spec },
            None => spec,
        }
    }
}

enum Failure {
    Usage(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn formula(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| Failure::Usage(format!("cannot parse formula: {e}")))
}

fn alphabet(phi: &Formula, extra: &[String]) -> Result<Alphabet, Failure> {
    let mut props: BTreeSet<String> = phi.atoms();
    props.extend(
        extra
            .iter()
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty()),
    );
    Ok(Alphabet::new(props)?)
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Usage(e.to_string()))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    }
    Ok(text)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Normalize {
            formula: text,
            dual,
            no_simplify,
            report_json,
        } => {
            let phi = formula(&text)?;
            let variant = if dual {
                Variant::Dual
            } else {
                Variant::Primary
            };
            let simplifier = if no_simplify {
                Simplifier::none()
            } else {
                Simplifier::default()
            };
            let report = normalize_with(&phi, variant, &simplifier);
            if report_json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                );
            } else {
                println!("{}", report.result);
            }
        }
        Command::Classify { formula: text } => {
            let phi = formula(&text)?;
            let classes: Vec<String> = smallest_classes(&phi)
                .iter()
                .map(|c| c.to_string())
                .collect();
            println!("{}", classes.join(" "));
        }
        Command::ToA1w {
            formula: text,
            ap,
            json,
            hoa,
            dot,
        } => {
            let phi = formula(&text)?;
            let a = ltl_to_a1w_with(&phi, &alphabet(&phi, &ap.ap)?, InitialMode::Bracket)?;
            if json {
                println!("{}", a.to_json());
            } else if hoa {
                print!("{}", emit_alternating_hoa(&a, &text));
            } else if dot {
                print!("{}", alternating_to_dot(&a));
            } else {
                let c = a.classify();
                print!("{a}");
                let h = c.height.map_or("-".to_string(), |h| h.to_string());
                println!("height: {h}, polarity: {}", c.polarity);
            }
        }
        Command::ToDrw {
            formula: text,
            ap,
            hoa,
            dot,
            json,
        } => {
            let phi = formula(&text)?;
            let report = ltl_to_drw_over(&phi, &alphabet(&phi, &ap.ap)?)?;
            let d = &report.automaton;
            if hoa {
                print!("{}", emit_hoa(d, &text));
            } else if dot {
                print!("{}", det_to_dot(d));
            } else if json {
                println!("{}", d.to_json());
            } else {
                print!("{d}");
                println!(
                    "disjuncts: {}, pairs: {} (bound {})",
                    report.disjuncts, report.pairs, report.pair_bound
                );
            }
        }
        Command::Check {
            formula: text,
            lasso,
            via_drw,
        } => {
            let phi = formula(&text)?;
            let (u, v) = parse_lasso_props(&lasso)?;
            let seen: Vec<String> = u.iter().chain(&v).flatten().cloned().collect();
            let ab = alphabet(&phi, &seen)?;
            let w = LassoWord::parse(&lasso, &ab)?;
            let holds = evaluate(&phi, &w)?;
            println!("{}", if holds { "SAT" } else { "UNSAT" });
            if via_drw {
                let accepted = ltl_to_drw_over(&phi, &ab)?.automaton.accepts(&w)?;
                if accepted != holds {
                    return Err(Failure::Violation(format!(
                        "the Rabin automaton {} the word",
                        if accepted { "accepts" } else { "rejects" }
                    )));
                }
            }
        }
        Command::StableNf { formula: text } => {
            println!("{}", normalize_stable(&formula(&text)?));
        }
        Command::A1wToLtl { file, normalize } => {
            let a = AlternatingAutomaton::from_json(&read_input(&file)?)?;
            if normalize {
                println!("{}", normalize_a1w(&a)?.to_json());
            } else {
                println!("{}", a1w_to_ltl(&a)?);
            }
        }
        Command::Corpus { corpus } => {
            for f in corpus.spec().generate() {
                println!("{f}");
            }
        }
        Command::Xcheck {
            corpus,
            prefix,
            cycle,
            random,
            no_drw,
            threads,
            json,
        } => {
            let spec = corpus.spec();
            let opts = XcheckOptions {
                max_prefix: prefix,
                max_cycle: cycle,
                random_lassos: random,
                drw: !no_drw,
                threads,
                ..XcheckOptions::default()
            };
            let report = xcheck(&spec, &opts)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                );
            } else {
                for f in report.formulas.iter().filter(|f| !f.passed()) {
                    for c in f.failed() {
                        let mut line = format!("FAIL {} {}", c.check, f.formula);
                        if let Some(w) = &c.counterexample {
                            line.push_str(&format!(" on {w}"));
                        }
                        if let Some(d) = &c.detail {
                            line.push_str(&format!(" ({d})"));
                        }
                        println!("{line}");
                    }
                }
                println!(
                    "seed {}: {} formulas, {} failed",
                    report.seed,
                    report.formulas.len(),
                    report.failures
                );
            }
            if !report.passed() {
                return Err(Failure::Violation(format!(
                    "{} formulas failed (set {SEED_ENV}={} to reproduce)",
                    report.failures, report.seed
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("delta2: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("delta2: {msg}");
            ExitCode::from(2)
        }
    }
}

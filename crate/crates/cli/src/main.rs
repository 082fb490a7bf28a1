//! `selfref`: command-line front end.
//!
//! Exit codes: 0 when the command ran, 1 when a checked verdict differs
//! from the expected one, 2 on usage or input errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use selfref::coding::{decode_formula, encode_formula, tokens, GodelNumber};
use selfref::diagonal::{fixed_point_literal, verify_certificate};
use selfref::fixpoint::compute_fixed_point;
use selfref::gl::{enumerate_countermodel, gl_decide, gls_holds, letterless_truth, GLVerdict};
use selfref::proofs::{
    eval_delta0, eval_pi1, eval_sentence, eval_sigma1, prove_bounded, EvalOptions, SearchOutcome, TheorySpec,
};
use selfref::schemes::{check_file, render_verdict, run_paper_suite};
use selfref::syntax::{
    classify_arith, parse_arith, parse_arith_open, parse_modal, render_arith, render_modal, SyntacticClass,
};

const GRAMMAR: &str = "\
arithmetic formulas:
  0, S(t), t + t, t * t, decimal numerals, diag(t), variables
  t = t, t <= t, Pr[PA](t), Pr[Q](t), Pr[S](t)
  ~A, A & B, A | B, A -> B, A <-> B
  A x. A, E x. A, A x < t. A, E x < t. A
modal formulas:
  #F, #T, letters, ~A, []A, <>A, A & B, A | B, A -> B, A <-> B";

#[derive(Parser)]
#[command(name = "selfref", version, about = "Self-referential sentences, provability logic and argument schemes")]
struct Cli {
    /// Output format; only plain text is supported.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theory {
    #[value(name = "Q")]
    Q,
    #[value(name = "PA")]
    Pa,
}

#[derive(Subcommand)]
enum Command {
    /// Gödel number of an arithmetic formula.
    Encode { formula: String },
    /// Formula coded by a number.
    Decode { number: BigUint },
    /// Literal fixed point of F(x), with its certificate.
    Diagonalize { formula: String },
    /// Bounded proof search.
    Prove {
        #[arg(long, value_enum, default_value = "PA")]
        theory: Theory,
        sentence: String,
        #[arg(long, default_value_t = 12)]
        depth: u32,
    },
    /// Truth in N by evaluation.
    Eval {
        sentence: String,
        #[arg(long, default_value_t = 10_000)]
        bound: u64,
    },
    /// Provability logic.
    Gl {
        #[command(subcommand)]
        command: GlCommand,
    },
    /// Explicit fixed point of a modal formula in a letter.
    Fixpoint {
        formula: String,
        #[arg(long, default_value = "p")]
        letter: String,
    },
    /// Argument-scheme instances.
    Scheme {
        #[command(subcommand)]
        command: SchemeCommand,
    },
    /// The built-in suite of scheme instances and theory checks.
    PaperSuite,
}

#[derive(Subcommand)]
enum GlCommand {
    /// Decide GL provability; prints a derivation or a countermodel.
    Prove {
        formula: String,
        /// Size bound for the smallest-countermodel search.
        #[arg(long, default_value_t = 6)]
        worlds: usize,
    },
    /// Truth in N under the provability reading (GLS).
    Truth { formula: String },
}

#[derive(Subcommand)]
enum SchemeCommand {
    /// Check every instance in a file.
    Check { file: std::path::PathBuf },
}

fn usage(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}\n\n{GRAMMAR}");
    ExitCode::from(2)
}

fn run(cli: Cli) -> ExitCode {
    let Format::Text = cli.format;
    match cli.command {
        Command::Encode { formula } => {
            let f = match parse_arith(&formula) {
                Ok(f) => f,
                Err(e) => return usage(e),
            };
            println!("formula: {}", render_arith(&f));
            println!("tokens: {}", tokens(&f).len());
            println!("code: {}", encode_formula(&f));
        }
        Command::Decode { number } => match decode_formula(&GodelNumber(number)) {
            Ok(f) => println!("formula: {}", render_arith(&f)),
            Err(e) => println!("{e:?}"),
        },
        Command::Diagonalize { formula } => {
            let f = match parse_arith_open(&formula, &["x"]) {
                Ok(f) => f,
                Err(e) => return usage(e),
            };
            let (_, cert) = match fixed_point_literal(&f) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            print!("{cert}");
            println!("verified: {}", if verify_certificate(&cert) { "yes" } else { "no" });
        }
        Command::Prove { theory, sentence, depth } => {
            let s = match parse_arith(&sentence) {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            let spec = match theory {
                Theory::Q => TheorySpec::q(),
                Theory::Pa => TheorySpec::pa(Vec::new()),
            };
            match prove_bounded(&spec, &s, depth) {
                SearchOutcome::Proved(p) => {
                    println!("proved");
                    print!("{}", p.render());
                }
                SearchOutcome::Unknown => println!("unknown: no proof of height <= {depth} found"),
            }
        }
        Command::Eval { sentence, bound } => {
            let s = match parse_arith(&sentence) {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            let class = classify_arith(&s);
            println!("class: {class}");
            let result = match class {
                _ if !s.contains_pr() && class == SyntacticClass::Delta0 => eval_delta0(&s).map(|b| b.to_string()),
                SyntacticClass::Sigma1 if !s.contains_pr() => eval_sigma1(&s, bound).map(|v| v.to_string()),
                SyntacticClass::Pi1 if !s.contains_pr() => eval_pi1(&s, bound).map(|v| v.to_string()),
                _ => eval_sentence(&s, &EvalOptions { bound, ..EvalOptions::default() }).map(|t| format!("{t:?}").to_lowercase()),
            };
            match result {
                Ok(r) => println!("value: {r}"),
                Err(e) => return usage(e),
            }
        }
        Command::Gl { command: GlCommand::Prove { formula, worlds } } => {
            let f = match parse_modal(&formula) {
                Ok(f) => f,
                Err(e) => return usage(e),
            };
            match gl_decide(&f) {
                GLVerdict::Proved(d) => {
                    println!("proved ({} GL steps)", d.gl_steps());
                    print!("{}", d.render());
                }
                GLVerdict::Refuted(m) => {
                    println!("refuted; countermodel:");
                    print!("{m}");
                    if let Some(small) = enumerate_countermodel(&f, worlds) {
                        println!("smallest countermodel ({} worlds):", small.worlds);
                        print!("{small}");
                    }
                }
            }
        }
        Command::Gl { command: GlCommand::Truth { formula } } => {
            let f = match parse_modal(&formula) {
                Ok(f) => f,
                Err(e) => return usage(e),
            };
            println!("gls: {}", gls_holds(&f));
            match letterless_truth(&f) {
                Ok(t) => println!("letterless truth: {t}"),
                Err(_) => println!("letterless truth: n/a (formula has letters)"),
            }
        }
        Command::Fixpoint { formula, letter } => {
            let f = match parse_modal(&formula) {
                Ok(f) => f,
                Err(e) => return usage(e),
            };
            match compute_fixed_point(&f, &letter) {
                Ok(r) => {
                    println!("A({letter}) = {}", render_modal(&r.input));
                    println!("D = {}", render_modal(&r.solution));
                    println!("GL |- D <-> A(D): {}", if r.equivalence_verdict.is_proved() { "proved" } else { "refuted" });
                }
                Err(e) => return usage(e),
            }
        }
        Command::Scheme { command: SchemeCommand::Check { file } } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => return usage(format!("{}: {e}", file.display())),
            };
            let results = match check_file(&text) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            let mut mismatches = 0;
            for (parsed, verdict) in &results {
                print!("{}", render_verdict(&parsed.instance, verdict));
                if let Some(expected) = parsed.expect {
                    let ok = expected == verdict.classification;
                    mismatches += usize::from(!ok);
                    println!("  expected={expected} {}", if ok { "ok" } else { "MISMATCH" });
                }
            }
            println!("instances: {}, mismatches: {mismatches}", results.len());
            if mismatches > 0 {
                return ExitCode::from(1);
            }
        }
        Command::PaperSuite => {
            let report = run_paper_suite();
            print!("{}", report.text);
            if !report.passed() {
                return ExitCode::from(1);
            }
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    run(Cli::parse())
}

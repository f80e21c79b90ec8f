//! The `fpc` command line.
//!
//! Exit codes: 0 success, 1 a check or assertion failed, 2 usage, parse or
//! type error, 3 timeout or undecided within fuel.

use std::path::{Path, PathBuf};
use std::rc::Rc;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::denot::{denote, observe, Env, Side};
use crate::meta::{ctx_equiv_suite, exec, load_contexts, Exec, Harness, Report};
use crate::opsem::{eval_big, eval_small, EvalError};
use crate::surface::SourceFile;
use crate::syntax::{set_fresh_seed, Type};
use crate::types::{elaborate_closed, CoreTerm};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TIMEOUT: i32 = 3;

const DEFAULT_FUEL: usize = 10_000;
const DEFAULT_DEPTH: u32 = 50;

#[derive(Debug, Parser)]
#[command(name = "fpc", version, about = "Typecheck, run, denote and relate FPC programs")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and typecheck a program, printing its type.
    Check { file: PathBuf },
    /// Evaluate a program, printing its value and counted steps.
    Run {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        /// Evaluate by small steps and print every step.
        #[arg(long)]
        trace: bool,
    },
    /// Force the denotation of a program of type 1 or 1 + 1.
    Denote {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
    },
    /// Compare operational and denotational step counts.
    Adequacy {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
    },
    /// Check weak bisimilarity of two programs' denotations.
    Bisim {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u32,
    },
    /// Run the denotation of a program of type 1 + 1 for a bounded number of steps.
    Exec {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
    },
    /// Compare two programs in every context of a suite directory.
    CtxEquiv {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        contexts: PathBuf,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
    },
}

/// Output for stdout and stderr, plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn new(code: i32, stdout: impl Into<String>) -> Outcome {
        Outcome {
            code,
            stdout: stdout.into(),
            stderr: String::new(),
        }
    }
}

struct Failure(Outcome);

type CliResult<T> = Result<T, Failure>;

struct Out {
    json: bool,
}

impl Out {
    fn emit(&self, code: i32, text: String, value: impl Serialize) -> Outcome {
        if self.json {
            let s = serde_json::to_string(&value).expect("serializable");
            Outcome::new(code, s + "\n")
        } else {
            Outcome::new(code, text + "\n")
        }
    }

    /// Text-mode errors go to stderr; JSON errors stay on stdout.
    fn error(&self, code: i32, message: String) -> Failure {
        if self.json {
            Failure(self.emit(code, String::new(), json!({ "error": message })))
        } else {
            Failure(Outcome {
                code,
                stdout: String::new(),
                stderr: format!("error: {message}\n"),
            })
        }
    }
}

/// Reads `FPC_SEED` for the fresh-name supply.
pub fn apply_seed() -> Result<(), String> {
    match std::env::var("FPC_SEED") {
        Ok(s) => {
            let seed = s
                .trim()
                .parse::<u64>()
                .map_err(|_| format!("FPC_SEED must be a non-negative integer, got `{s}`"))?;
            set_fresh_seed(seed);
            Ok(())
        }
        Err(_) => Ok(()),
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let out = Out { json: cli.json };
    if let Err(e) = apply_seed() {
        return out.error(EXIT_USAGE, e).0;
    }
    match dispatch(&cli.command, &out) {
        Ok(o) => o,
        Err(Failure(o)) => o,
    }
}

fn load(path: &Path, out: &Out) -> CliResult<(SourceFile, Rc<CoreTerm>)> {
    let file = SourceFile::load(path).map_err(|e| out.error(EXIT_USAGE, e.to_string()))?;
    let core = elaborate_closed(&file.main)
        .map_err(|e| out.error(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    Ok((file, core))
}

fn ground(path: &Path, ty: &Type, out: &Out) -> CliResult<()> {
    if *ty == Type::Unit || ty.alpha_eq(&Type::bool()) {
        Ok(())
    } else {
        Err(out.error(
            EXIT_USAGE,
            format!("{}: expected a program of type 1 or 1 + 1, found {ty}", path.display()),
        ))
    }
}

fn stuck(out: &Out, e: EvalError) -> Failure {
    out.error(EXIT_FAIL, e.to_string())
}

fn dispatch(cmd: &Command, out: &Out) -> CliResult<Outcome> {
    match cmd {
        Command::Check { file } => {
            let (_, core) = load(file, out)?;
            Ok(out.emit(
                EXIT_OK,
                core.ty.to_string(),
                json!({ "file": file.display().to_string(), "type": core.ty.to_string() }),
            ))
        }
        Command::Run { file, fuel, trace } => {
            let (src, core) = load(file, out)?;
            let m = Rc::new(src.main.clone());
            let result = if *trace {
                eval_small(&m, *fuel).map(|r| (r.value.clone(), r.k, Some(r.trace)))
            } else {
                eval_big(&m, *fuel).map(|(v, k)| (v, k, None))
            };
            match result {
                Ok((v, k, trace)) => {
                    let mut text = String::new();
                    match &trace {
                        Some(t) => text.push_str(&format!("{}{v} : {}", t.to_text(), core.ty)),
                        None => text.push_str(&format!("{v} : {}\nk = {k}", core.ty)),
                    }
                    Ok(out.emit(
                        EXIT_OK,
                        text,
                        json!({
                            "verdict": "converged",
                            "value": v.to_string(),
                            "type": core.ty.to_string(),
                            "k": k,
                            "trace": trace,
                        }),
                    ))
                }
                Err(EvalError::Timeout { fuel }) => Ok(out.emit(
                    EXIT_TIMEOUT,
                    format!("Timeout (fuel {fuel})"),
                    json!({ "verdict": "timeout", "fuel": fuel }),
                )),
                Err(e) => Err(stuck(out, e)),
            }
        }
        Command::Denote { file, fuel } => {
            let (_, core) = load(file, out)?;
            ground(file, &core.ty, out)?;
            let d = denote(&core, &Env::new());
            let obs = observe(&core.ty, &d, *fuel).expect("ground type");
            let code = if obs.steps.is_some() { EXIT_OK } else { EXIT_TIMEOUT };
            Ok(out.emit(code, obs.to_string(), &obs))
        }
        Command::Adequacy { file, fuel } => {
            let (src, core) = load(file, out)?;
            ground(file, &core.ty, out)?;
            let op = match eval_big(&Rc::new(src.main.clone()), *fuel) {
                Ok((_, k)) => Some(k),
                Err(EvalError::Timeout { .. }) => None,
                Err(e) => return Err(stuck(out, e)),
            };
            let obs = observe(&core.ty, &denote(&core, &Env::new()), *fuel).expect("ground type");
            let den = obs.steps;
            let show = |k: Option<usize>, what: &str| match k {
                Some(k) => format!("{what}={k}"),
                None => "Timeout".to_string(),
            };
            let (code, verdict) = match (op, den) {
                (Some(a), Some(b)) if a == b => (EXIT_OK, "MATCH"),
                (Some(_), Some(_)) => (EXIT_FAIL, "MISMATCH"),
                _ => (EXIT_TIMEOUT, "UNDECIDED"),
            };
            let text = format!(
                "operational {}, denotational {}, {verdict}",
                show(op, "k"),
                show(den, "steps")
            );
            Ok(out.emit(
                code,
                text,
                json!({ "operational_k": op, "denotational_steps": den, "fuel": fuel, "verdict": verdict.to_lowercase() }),
            ))
        }
        Command::Bisim { left, right, depth } => {
            let (_, l) = load(left, out)?;
            let (_, r) = load(right, out)?;
            if !l.ty.alpha_eq(&r.ty) {
                return Err(out.error(
                    EXIT_USAGE,
                    format!("programs have different types: {} and {}", l.ty, r.ty),
                ));
            }
            let (dl, dr) = (denote(&l, &Env::new()), denote(&r, &Env::new()));
            let v = Harness::default().bisim(&l.ty, &dl, &dr, *depth);
            let code = if v.holds() { EXIT_OK } else { EXIT_FAIL };
            Ok(out.emit(code, format!("bisim at {}: {v}", l.ty), Report::new("bisim", &l.ty, *depth, &v)))
        }
        Command::Exec { file, fuel } => {
            let (_, core) = load(file, out)?;
            if !core.ty.alpha_eq(&Type::bool()) {
                return Err(out.error(
                    EXIT_USAGE,
                    format!("{}: exec needs a program of type 1 + 1, found {}", file.display(), core.ty),
                ));
            }
            let d = denote(&core, &Env::new()).into_sum();
            Ok(match exec(*fuel, &d) {
                Exec::Done(side) => {
                    let word = match side {
                        Side::Left => "true",
                        Side::Right => "false",
                    };
                    out.emit(EXIT_OK, format!("{side} ({word})"), json!({ "result": "done", "side": side, "fuel": fuel }))
                }
                Exec::More(_) => out.emit(
                    EXIT_TIMEOUT,
                    "More (not yet decided)".to_string(),
                    json!({ "result": "more", "fuel": fuel }),
                ),
            })
        }
        Command::CtxEquiv {
            left,
            right,
            contexts,
            fuel,
        } => {
            let (lsrc, l) = load(left, out)?;
            let (rsrc, r) = load(right, out)?;
            if !l.ty.alpha_eq(&r.ty) {
                return Err(out.error(
                    EXIT_USAGE,
                    format!("programs have different types: {} and {}", l.ty, r.ty),
                ));
            }
            let ctxs = load_contexts(contexts).map_err(|e| out.error(EXIT_USAGE, e.to_string()))?;
            let report = ctx_equiv_suite(&lsrc.main, &rsrc.main, &l.ty, &ctxs, *fuel)
                .map_err(|e| out.error(EXIT_USAGE, e.to_string()))?;
            let mut text = String::new();
            for res in &report.results {
                let line = match &res.outcome {
                    crate::meta::CtxOutcome::Agree { k1, k2 } => format!("agree (k = {k1} / {k2})"),
                    crate::meta::CtxOutcome::Unknown { left, right } => {
                        let side = |k: &Option<usize>| k.map_or("timeout".to_string(), |k| format!("k = {k}"));
                        let flag = if res.flagged { ", flagged" } else { "" };
                        format!("unknown ({} / {}{flag})", side(left), side(right))
                    }
                };
                text.push_str(&format!("{:<24} {line}\n", res.name));
            }
            text.push_str(&format!(
                "{} contexts: {} agree, {} flagged",
                report.results.len(),
                report.agreed(),
                report.flagged()
            ));
            let code = if report.flagged() > 0 {
                EXIT_FAIL
            } else if !report.all_agree() {
                EXIT_TIMEOUT
            } else {
                EXIT_OK
            };
            Ok(out.emit(code, text, &report))
        }
    }
}

/// Entry point for the binary: parses `std::env::args`, runs on a thread
/// with a large stack, prints, and returns the exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let handle = std::thread::Builder::new()
        .stack_size(1 << 28)
        .spawn(move || run(&cli))
        .expect("spawn worker thread");
    match handle.join() {
        Ok(o) => {
            print!("{}", o.stdout);
            eprint!("{}", o.stderr);
            o.code
        }
        Err(_) => EXIT_FAIL,
    }
}

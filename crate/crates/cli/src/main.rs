//! `sympword`: batch front end for the factorization pipelines.
//!
//! Every command reads one JSON payload (`--in <path>`, `--in -` for stdin,
//! or inline JSON), writes one JSON report (stdout or `--out`), and exits
//! with 0 on success, 1 when a mathematical hypothesis fails, 2 on malformed
//! input.

mod commands;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sympword::RingSpec;

#[derive(Parser, Debug)]
#[command(name = "sympword", version, about = "Certified symplectic factorizations over euclidean domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Pfaffian of a skew-symmetric matrix (ψ_n when only --n is given).
    Pfaffian,
    /// Whether a matrix preserves a form (ψ_n by default).
    IsSymplectic,
    /// Elementary congruence certificate from ψ_n to a Pfaffian-one form.
    ReduceForm,
    /// Factor a matrix of Sp_2n(R) into se generators.
    Factor,
    /// Decompose a matrix of Sp_φ(R) into C_φ / R_φ generators.
    DecomposePhi,
    /// Evaluate a word.
    EvalWord,
    /// Check a word against a matrix, or a reduction certificate.
    Verify,
    /// Relativize a polynomial word; with --ideal, run the full relative pipeline.
    Relativize,
    /// Substitute X = --ideal in a polynomial word.
    Substitute,
    /// Generate a reproducible random instance.
    Random {
        #[arg(long, value_enum, default_value_t = Kind::SeWord)]
        kind: Kind,
        /// Number of random generators used to build the instance.
        #[arg(long, default_value_t = 10)]
        len: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    SeWord,
    LinWord,
    Form,
    Unimodular,
    SpPhi,
    PolyWord,
    Skew,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SideArg {
    #[default]
    Psi,
    Phi,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Ring tag: ZZ, QQ, ZZ_half, GFpX:<p> (or GF<p>X).
    #[arg(long, global = true)]
    ring: Option<RingSpec>,
    /// Half size n (forms and symplectic matrices are 2n x 2n).
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Seed for the ChaCha8 generator.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Input: a path, `-` for stdin, or inline JSON.
    #[arg(long = "in", global = true)]
    input: Option<String>,
    /// Output path; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Side of the relative decomposition.
    #[arg(long, value_enum, global = true, default_value_t = SideArg::Psi)]
    side: SideArg,
    /// Ideal generator / substitution point, as a ring entry (JSON or plain text).
    #[arg(long, global = true, allow_hyphen_values = true)]
    ideal: Option<String>,
}

/// A failed command: exit code, stage and message.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub stage: String,
    pub message: String,
    pub partial: Option<Value>,
}

impl Failure {
    pub fn malformed(message: impl Into<String>) -> Self {
        Failure { code: 2, stage: "input".into(), message: message.into(), partial: None }
    }

    pub fn from_error(stage: &str, e: sympword::Error) -> Self {
        let code = if e.is_parse() { 2 } else { 1 };
        let stage = if code == 2 { "input".into() } else { stage.to_string() };
        Failure { code, stage, message: e.to_string(), partial: None }
    }
}

impl Options {
    pub fn payload(&self) -> Result<Option<Value>, Failure> {
        let Some(src) = self.input.as_deref() else { return Ok(None) };
        let text = if src == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::malformed(format!("stdin: {e}")))?;
            s
        } else if src.trim_start().starts_with(['{', '[']) {
            src.to_string()
        } else {
            std::fs::read_to_string(src).map_err(|e| Failure::malformed(format!("{src}: {e}")))?
        };
        serde_json::from_str(&text).map(Some).map_err(|e| Failure::malformed(format!("invalid JSON: {e}")))
    }
}

fn emit(opts: &Options, report: &Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(report).expect("serializable") + "\n";
    match &opts.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, code) = match commands::run(cli.command, &cli.opts) {
        Ok(report) => (report, 0),
        Err(f) => {
            eprintln!("sympword: {} failed: {}", f.stage, f.message);
            let mut report = json!({"error": f.message, "stage": f.stage, "certified": false});
            if let Some(p) = f.partial {
                report["partial"] = p;
            }
            (report, f.code)
        }
    };
    if let Err(e) = emit(&cli.opts, &report) {
        eprintln!("sympword: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use invsub::decompose::{decompose_with, is_simple};
use invsub::enumerate::Enumerator;
use invsub::factor::{product, Factorizer};
use invsub::nielsen::{NielsenEngine, Refutation, Verdict};
use invsub::{Endomorphism, Error, Substitution, SubstitutionMatrix};
use serde_json::{json, Value};

/// Invertible substitutions over {a, b, c}.
///
/// Substitutions are written as three comma-separated images, e.g.
/// `ab,acb,acc`. Uppercase letters denote inverses (`A` = a⁻¹).
///
/// Exit status: 0 affirmative or success, 1 negative answer or NONE,
/// 2 input error, 3 search budget or size cap exceeded. The SUBST_BUDGET
/// environment variable overrides the node budget of the searches.
#[derive(Parser)]
#[command(name = "invsub", version)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide invertibility (Nielsen cancellation).
    Check {
        sub: String,
        /// Print the sequence of elementary moves reaching the identity.
        #[arg(long)]
        witness: bool,
    },
    /// Print the inverse automorphism.
    Invert { sub: String },
    /// Write σ = I_W ∘ g₁ ∘ … ∘ g_k with permutation and Fibonacci factors.
    Decompose {
        sub: String,
        /// Recompose the factors and compare with the input.
        #[arg(long)]
        verify: bool,
        /// Write every factor over π₁, π₂, φ_l, φ_r.
        #[arg(long)]
        expand: bool,
    },
    /// Is the substitution a product of permutations and Fibonacci maps?
    Simple { sub: String },
    /// Exhaustive check that no split into two non-trivial invertible
    /// substitutions exists.
    Indecomposable { sub: String },
    /// Print the substitution matrix.
    Matrix { sub: String },
    /// Factor a non-negative matrix (nine entries, row-major) into
    /// non-negative elementary matrices.
    #[command(allow_negative_numbers = true)]
    FactorMatrix {
        #[arg(num_args = 9, required = true)]
        entries: Vec<i64>,
    },
    /// List substitutions of total length at most L.
    #[command(group(ArgGroup::new("kind").args(["invertible", "simple"])))]
    Enumerate {
        #[arg(long, value_name = "L")]
        max_len: usize,
        /// Invertible substitutions (the default).
        #[arg(long)]
        invertible: bool,
        /// Simple substitutions only.
        #[arg(long)]
        simple: bool,
    },
}

/// Outcome of a command: affirmative (exit 0) or negative (exit 1).
type Outcome = Result<bool, Failure>;

enum Failure {
    Input(String),
    Resource(String),
    Negative(String),
    /// Stdout was closed by the reader, e.g. `enumerate … | head`.
    Closed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget { .. } | Error::BoundTooLarge { .. } => Failure::Resource(e.to_string()),
            Error::NotInvertible | Error::NoPattern(_) | Error::InternalContradiction(_) => {
                Failure::Negative(e.to_string())
            }
            Error::Parse(_)
            | Error::EmptyWord
            | Error::NotSubstitution(_)
            | Error::NegativeEntry
            | Error::Precondition(_) => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Failure::Closed
        } else {
            Failure::Resource(format!("write failed: {e}"))
        }
    }
}

struct Ctx<W: Write> {
    json: bool,
    budget: Option<usize>,
    out: W,
}

impl<W: Write> Ctx<W> {
    fn engine(&self) -> NielsenEngine {
        self.budget.map_or_else(NielsenEngine::default, NielsenEngine::with_budget)
    }

    fn factorizer(&self) -> Factorizer {
        self.budget.map_or_else(Factorizer::default, Factorizer::with_budget)
    }

    fn emit(&mut self, text: impl AsRef<str>, value: Value) -> io::Result<()> {
        if self.json {
            writeln!(self.out, "{value}")
        } else {
            writeln!(self.out, "{}", text.as_ref())
        }
    }
}

fn parse_sub(s: &str) -> Result<Substitution, Failure> {
    Ok(s.parse()?)
}

fn parse_endo(s: &str) -> Result<Endomorphism, Failure> {
    Ok(s.parse()?)
}

fn refutation_text(r: &Refutation) -> String {
    match r {
        Refutation::Determinant(d) => format!("determinant {d}"),
        Refutation::Mixed => "mixed substitution".into(),
        Refutation::Exhausted { explored } => format!("no reduction to the identity ({explored} states explored)"),
    }
}

fn check<W: Write>(ctx: &mut Ctx<W>, sub: &str, show_witness: bool) -> Outcome {
    let sigma = parse_endo(sub)?;
    let verdict = ctx.engine().decide(&sigma)?;
    match &verdict {
        Verdict::Invertible(w) => {
            let steps: Vec<&str> = w.steps.iter().map(|g| g.name()).collect();
            let mut value = json!({ "input": sigma.to_string(), "invertible": true });
            let mut text = "invertible".to_string();
            if show_witness {
                value["witness"] = json!(steps);
                text.push_str(&format!("\nwitness: {}", if steps.is_empty() { "(none)".into() } else { w.to_string() }));
            }
            ctx.emit(text, value)?;
        }
        Verdict::NotInvertible(r) => {
            let reason = refutation_text(r);
            ctx.emit(
                format!("not invertible: {reason}"),
                json!({ "input": sigma.to_string(), "invertible": false, "reason": reason }),
            )?;
        }
    }
    Ok(verdict.is_invertible())
}

fn invert<W: Write>(ctx: &mut Ctx<W>, sub: &str) -> Outcome {
    let sigma = parse_endo(sub)?;
    match ctx.engine().invert(&sigma) {
        Ok(inv) => {
            ctx.emit(inv.to_string(), json!({ "input": sigma.to_string(), "inverse": inv.to_string() }))?;
            Ok(true)
        }
        Err(Error::NotInvertible) => {
            ctx.emit("not invertible", json!({ "input": sigma.to_string(), "inverse": null }))?;
            Ok(false)
        }
        Err(e) => Err(e.into()),
    }
}

fn decompose<W: Write>(ctx: &mut Ctx<W>, sub: &str, verify: bool, expand: bool) -> Outcome {
    let sigma = parse_sub(sub)?;
    let d = match decompose_with(&sigma, &ctx.engine()) {
        Ok(d) => d,
        Err(Error::NotInvertible) => {
            ctx.emit("not invertible", json!({ "input": sigma.to_string(), "decomposition": null }))?;
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    let verified = !verify || d.recompose() == *sigma.as_endo();
    let mut value = if expand { d.to_expanded_json() } else { d.to_json() };
    let mut text = if expand {
        let parts: Vec<String> = d
            .factors
            .iter()
            .map(|f| f.expand().iter().map(|g| g.name()).collect::<Vec<_>>().join(" "))
            .map(|s| format!("({s})"))
            .collect();
        let w = if d.conjugator.is_empty() { "ε".to_string() } else { d.conjugator.to_string() };
        format!("W = {w}\n{}", parts.join(" "))
    } else {
        d.to_string()
    };
    if verify {
        value["verified"] = json!(verified);
        text.push_str(if verified { "\nverified" } else { "\nverification FAILED" });
    }
    ctx.emit(text, value)?;
    Ok(verified)
}

fn simple<W: Write>(ctx: &mut Ctx<W>, sub: &str) -> Outcome {
    let sigma = parse_sub(sub)?;
    let answer = is_simple(&sigma);
    ctx.emit(
        if answer { "simple" } else { "not simple" },
        json!({ "input": sigma.to_string(), "simple": answer }),
    )?;
    Ok(answer)
}

fn indecomposable<W: Write>(ctx: &mut Ctx<W>, sub: &str) -> Outcome {
    let sigma = parse_sub(sub)?;
    if !ctx.engine().is_invertible(sigma.as_endo())? {
        ctx.emit(
            "not invertible",
            json!({ "input": sigma.to_string(), "invertible": false, "indecomposable": false }),
        )?;
        return Ok(false);
    }
    match Enumerator::default().decomposition_witness(&sigma)? {
        None => {
            ctx.emit("indecomposable", json!({ "input": sigma.to_string(), "indecomposable": true }))?;
            Ok(true)
        }
        Some((left, right)) => {
            ctx.emit(
                format!("decomposable: {sigma} = ({left}) ∘ ({right})"),
                json!({
                    "input": sigma.to_string(),
                    "indecomposable": false,
                    "left": left.to_string(),
                    "right": right.to_string(),
                }),
            )?;
            Ok(false)
        }
    }
}

fn matrix<W: Write>(ctx: &mut Ctx<W>, sub: &str) -> Outcome {
    let sigma = parse_endo(sub)?;
    let m = sigma.matrix();
    let text: Vec<String> = m
        .rows
        .iter()
        .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    ctx.emit(text.join("\n"), json!({ "input": sigma.to_string(), "matrix": m.rows, "det": m.det() }))?;
    Ok(true)
}

fn factor_matrix<W: Write>(ctx: &mut Ctx<W>, entries: &[i64]) -> Outcome {
    let e: [i64; 9] = entries
        .try_into()
        .map_err(|_| Failure::Input(format!("expected 9 entries, got {}", entries.len())))?;
    let m = SubstitutionMatrix::from_row_major(e);
    let factorizer = ctx.factorizer();
    match factorizer.factor(&m)? {
        None => {
            ctx.emit("NONE", json!({ "matrix": m.rows, "factors": null }))?;
            Ok(false)
        }
        Some(fs) => {
            debug_assert_eq!(product(&fs), m);
            let names: Vec<String> = fs.iter().map(ToString::to_string).collect();
            let witness = factorizer.witness_substitution(&m)?.expect("factorization exists");
            let text = if names.is_empty() { "I".to_string() } else { names.join(" ") };
            ctx.emit(
                format!("{text}\nsubstitution: {witness}"),
                json!({ "matrix": m.rows, "factors": names, "substitution": witness.to_string() }),
            )?;
            Ok(true)
        }
    }
}

fn enumerate<W: Write>(ctx: &mut Ctx<W>, max_len: usize, simple: bool) -> Outcome {
    let enumerator = Enumerator::default();
    let mut failed: Option<io::Error> = None;
    let mut line = |s: &Substitution| {
        if failed.is_some() {
            return;
        }
        let text = s.to_string();
        let r = if ctx.json {
            writeln!(ctx.out, "{}", Value::String(text))
        } else {
            writeln!(ctx.out, "{text}")
        };
        if let Err(e) = r {
            failed = Some(e);
        }
    };
    if simple {
        enumerator.for_each_simple(max_len, |t| line(&t.sigma))?;
    } else {
        enumerator.for_each_invertible(max_len, |t| line(&t.sigma))?;
    }
    match failed {
        Some(e) => Err(e.into()),
        None => Ok(true),
    }
}

fn budget_from_env() -> Result<Option<usize>, Failure> {
    match std::env::var("SUBST_BUDGET") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Failure::Input(format!("SUBST_BUDGET must be a positive integer, got {v:?}"))),
        },
    }
}

fn run(cli: Cli) -> Outcome {
    let stdout = io::stdout();
    let mut ctx = Ctx {
        json: cli.json,
        budget: budget_from_env()?,
        out: BufWriter::new(stdout.lock()),
    };
    let outcome = match &cli.command {
        Command::Check { sub, witness } => check(&mut ctx, sub, *witness),
        Command::Invert { sub } => invert(&mut ctx, sub),
        Command::Decompose { sub, verify, expand } => decompose(&mut ctx, sub, *verify, *expand),
        Command::Simple { sub } => simple(&mut ctx, sub),
        Command::Indecomposable { sub } => indecomposable(&mut ctx, sub),
        Command::Matrix { sub } => matrix(&mut ctx, sub),
        Command::FactorMatrix { entries } => factor_matrix(&mut ctx, entries),
        Command::Enumerate { max_len, simple, .. } => enumerate(&mut ctx, *max_len, *simple),
    };
    ctx.out.flush()?;
    outcome
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Negative(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

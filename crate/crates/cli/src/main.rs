use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use merogerm::config::{load_q, DecompositionJson};
use merogerm::evaluators::{evaluate, orth_q, Scheme, SpeerOptions};
use merogerm::germs::{dep_subspace, parse, validate_poles, Denominator, GeneratingSetTag, Germ};
use merogerm::splitq::decompose;
use merogerm::{Error, InnerProductFamily};
use serde_json::json;

/// Exact decompositions and evaluators for meromorphic germs with linear poles.
///
/// Exit codes: 0 ok, 1 I/O or configuration error, 2 syntax error, 3 non-linear pole,
/// 4 pole outside the generating set, 5 factorial budget exceeded.
#[derive(Parser)]
#[command(name = "merogerm", version)]
struct Cli {
    /// Ambient dimension; variables are z1..zk.
    #[arg(short = 'k', global = true, value_parser = clap::value_parser!(u64).range(1..))]
    k: Option<u64>,
    /// Gram block file, `{"block": [[...]], "beyond": "identity"}`. Identity when absent.
    #[arg(long, global = true)]
    q: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Allowed pole forms: free, F (sums of distinct variables) or C (prefix sums z1 + ... + zj).
    #[arg(long, global = true, default_value = "free")]
    poles: GeneratingSetTag,
    /// Largest k accepted by the permutation average.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Run the permutation average on all cores.
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Ms,
    Speer,
    SpeerSigma,
}

#[derive(Subcommand)]
enum Command {
    /// Split into holomorphic part and polar terms.
    Decompose { expr: String },
    /// Evaluate with a renormalization scheme.
    Eval {
        #[arg(long, value_enum, default_value_t = SchemeArg::Ms)]
        scheme: SchemeArg,
        /// Permutation for speer-sigma, e.g. `2,1`.
        #[arg(long, value_delimiter = ',')]
        sigma: Option<Vec<usize>>,
        expr: String,
    },
    /// Basis of the dependence subspace as integer covectors.
    Dep { expr: String },
    /// Whether two germs are orthogonal for Q.
    Orth { expr1: String, expr2: String },
    /// Check every pole form against --poles.
    ValidatePoles { expr: String },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. } | Error::ZeroDivision => 2,
            Error::NonLinearPole(_) => 3,
            Error::DegreeBudgetExceeded { .. } => 5,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

struct Context {
    k: usize,
    q: InnerProductFamily,
    format: Format,
    poles: GeneratingSetTag,
    speer: SpeerOptions,
    stdin_used: bool,
}

impl Context {
    fn germ(&mut self, expr: &str) -> Result<Germ, Failure> {
        let text = if expr == "-" {
            if std::mem::replace(&mut self.stdin_used, true) {
                return Err(fail(1, "standard input can supply only one expression"));
            }
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| fail(1, format!("reading stdin: {e}")))?;
            s
        } else {
            expr.to_string()
        };
        let f = parse(text.trim(), self.k)?;
        if !validate_poles(&f, self.poles) {
            return Err(fail(4, format!("{f} has a pole outside the generating set {}", self.poles)));
        }
        Ok(f)
    }
}

fn bracket_denominator(den: &Denominator) -> String {
    den.iter().map(|(l, m)| format!("({l})^{m}")).collect::<Vec<_>>().join("*")
}

fn run(cli: Cli) -> Result<String, Failure> {
    let k = cli.k.ok_or_else(|| fail(2, "the ambient dimension -k is required"))? as usize;
    let q = match &cli.q {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| fail(1, format!("{}: {e}", path.display())))?;
            load_q(&text)?
        }
        None => InnerProductFamily::identity(),
    };
    let mut cx = Context {
        k,
        q,
        format: cli.format,
        poles: cli.poles,
        speer: SpeerOptions { budget: cli.budget as usize, parallel: cli.parallel },
        stdin_used: false,
    };
    let json_mode = cx.format == Format::Json;
    match cli.command {
        Command::Decompose { expr } => {
            let f = cx.germ(&expr)?;
            let d = decompose(&f, &cx.q);
            if json_mode {
                let out = serde_json::to_string_pretty(&DecompositionJson::from_decomposition(&d)).expect("serializable");
                return Ok(out);
            }
            let mut lines = vec![format!("holomorphic: {}", d.holomorphic())];
            for p in d.polar() {
                lines.push(format!("polar: [{}]/[{}]", p.numerator(), bracket_denominator(p.denominator())));
            }
            Ok(lines.join("\n"))
        }
        Command::Eval { scheme, sigma, expr } => {
            let f = cx.germ(&expr)?;
            let (name, scheme) = match (scheme, sigma) {
                (SchemeArg::Ms, None) => ("ms", Scheme::Ms(cx.q.clone())),
                (SchemeArg::Speer, None) => ("speer", Scheme::SpeerF),
                (SchemeArg::SpeerSigma, Some(s)) => ("speer-sigma", Scheme::SpeerSigma(s)),
                (SchemeArg::SpeerSigma, None) => return Err(fail(2, "--scheme speer-sigma needs --sigma")),
                (_, Some(_)) => return Err(fail(2, "--sigma is only used with --scheme speer-sigma")),
            };
            let value = evaluate(&f, &scheme, cx.speer)?;
            if json_mode {
                Ok(json!({"scheme": name, "value": value.to_string()}).to_string())
            } else {
                Ok(value.to_string())
            }
        }
        Command::Dep { expr } => {
            let f = cx.germ(&expr)?;
            // Integer rows printed directly so large coefficients stay exact JSON numbers.
            let rows: Vec<String> = dep_subspace(&f)
                .integer_rows()
                .iter()
                .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            Ok(format!("[{}]", rows.join(",")))
        }
        Command::Orth { expr1, expr2 } => {
            let f1 = cx.germ(&expr1)?;
            let f2 = cx.germ(&expr2)?;
            Ok(orth_q(&f1, &f2, &cx.q).to_string())
        }
        Command::ValidatePoles { expr } => {
            cx.germ(&expr)?;
            Ok(if json_mode { json!({"valid": true}).to_string() } else { "ok".into() })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hym_core::algebra::eig_small;
use hym_core::compound::{add_compound_hyper, mult_compound_hyper};
use hym_core::det::{cdet, ddet, inverse, sdet, Budget};
use hym_core::io::{parse_hypermatrix, to_value, FieldKind, FileScalar};
use hym_core::stp::stph;
use hym_core::verify::run_suite;
use hym_core::{HymError, Hypermatrix, IndexPartition, Permutation, Rational};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hym", version, about = "Semi-tensor products, hyperdeterminants and compounds of hypermatrices")]
struct Cli {
    /// Field used for the computation; inputs are converted to it.
    #[arg(long, global = true, default_value = "rational", value_parser = parse_field)]
    field: FieldKind,
    /// Write the result here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Enumeration guard `n,d` for cdet/ddet (also read from HYM_BUDGET).
    #[arg(long, global = true, value_parser = parse_list)]
    budget: Option<List>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Semi-tensor product of two or more hypermatrices, left to right.
    Stp {
        #[arg(required = true, num_args = 2..)]
        inputs: Vec<PathBuf>,
    },
    /// Hyperdeterminant, written as a 1x1x1 hypermatrix.
    Det {
        #[arg(long, value_enum)]
        kind: DetArg,
        input: PathBuf,
    },
    /// Multiplicative or additive compound.
    Compound {
        #[command(flatten)]
        order: CompoundOrder,
        input: PathBuf,
    },
    /// Slicewise inverse of a hypersquare.
    Inverse { input: PathBuf },
    /// Index transpose by a permutation given as 1-based images.
    Transpose {
        #[arg(long, value_parser = parse_list)]
        perm: List,
        input: PathBuf,
    },
    /// Matrix expression with row positions `alpha` (1-based).
    Mexpr {
        #[arg(long, value_parser = parse_list)]
        alpha: List,
        input: PathBuf,
    },
    /// Eigenvalues of every slice of a hypersquare with n <= 3.
    Eig { input: PathBuf },
    /// Run a seeded law-verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_list)]
        dims: Option<List>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DetArg {
    Cdet,
    Ddet,
    Sdet,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CompoundOrder {
    #[arg(long)]
    mult: Option<usize>,
    #[arg(long)]
    add: Option<usize>,
}

fn parse_field(s: &str) -> Result<FieldKind, String> {
    s.parse().map_err(|e: HymError| e.to_string())
}

/// Comma-separated list of non-negative integers.
#[derive(Clone)]
struct List(Vec<usize>);

fn parse_list(s: &str) -> Result<List, String> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()
        .map(List)
}

enum Failure {
    Domain(HymError),
    Input { kind: &'static str, message: String },
    LawFailed(Value),
}

impl From<HymError> for Failure {
    fn from(e: HymError) -> Self {
        Failure::Domain(e)
    }
}

fn input_error(path: &Path, kind: &'static str, e: impl std::fmt::Display) -> Failure {
    Failure::Input {
        kind,
        message: format!("{}: {e}", path.display()),
    }
}

fn read<T: FileScalar>(path: &Path) -> Result<Hypermatrix<T>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error(path, "Io", e))?;
    let any = parse_hypermatrix(&text).map_err(|e| input_error(path, e.kind(), e))?;
    any.into_field().map_err(|e| input_error(path, e.kind(), e))
}

fn budget(flag: Option<&[usize]>) -> Result<Budget, Failure> {
    let from_env;
    let list = match flag {
        Some(l) => l,
        None => match std::env::var("HYM_BUDGET") {
            Ok(s) => {
                from_env = parse_list(&s).map_err(|message| Failure::Input { kind: "Parse", message })?;
                &from_env.0
            }
            Err(_) => return Ok(Budget::default()),
        },
    };
    match list {
        [n, d] => Ok(Budget { max_n: *n, max_d: *d }),
        _ => Err(Failure::Input {
            kind: "Parse",
            message: format!("budget must be `n,d`, got {list:?}"),
        }),
    }
}

fn scalar_file<T: FileScalar>(x: T) -> Value {
    to_value(&Hypermatrix::scalar(x))
}

fn compute<T: FileScalar>(cli: &Cli) -> Result<Value, Failure> {
    Ok(match &cli.command {
        Command::Stp { inputs } => {
            let mut acc = read::<T>(&inputs[0])?;
            for p in &inputs[1..] {
                acc = stph(&acc, &read(p)?);
            }
            to_value(&acc)
        }
        Command::Det { kind, input } => {
            let a = read::<T>(input)?;
            let value = match kind {
                DetArg::Cdet => cdet(&a, budget(cli.budget.as_ref().map(|l| &l.0[..]))?)?,
                DetArg::Ddet => ddet(&a, budget(cli.budget.as_ref().map(|l| &l.0[..]))?)?,
                DetArg::Sdet => sdet(&a)?,
            };
            scalar_file(value)
        }
        Command::Compound { order, input } => {
            let a = read::<T>(input)?;
            match (order.mult, order.add) {
                (Some(k), _) => to_value(&mult_compound_hyper(&a, k)?),
                (_, Some(k)) => to_value(&add_compound_hyper(&a, k)?),
                _ => unreachable!("clap requires one of --mult, --add"),
            }
        }
        Command::Inverse { input } => to_value(&inverse(&read::<T>(input)?)?),
        Command::Transpose { perm, input } => {
            let sigma = Permutation::from_images(&perm.0)?;
            to_value(&read::<T>(input)?.sigma_transpose(&sigma)?)
        }
        Command::Mexpr { alpha, input } => {
            let a = read::<T>(input)?;
            let p = IndexPartition::from_alpha(&alpha.0, a.order())?;
            to_value(&Hypermatrix::from_matrix(&a.matrix_expression(&p)?))
        }
        Command::Eig { input } => {
            let a = read::<f64>(input)?;
            let slices = a
                .slices()?
                .slices
                .iter()
                .map(|s| {
                    let roots = eig_small(s)?;
                    Ok(roots.iter().map(|z| json!({"re": z.re, "im": z.im})).collect::<Vec<_>>())
                })
                .collect::<Result<Vec<_>, HymError>>()?;
            json!({ "dims": a.dims(), "slices": slices })
        }
        Command::Verify { suite, trials, seed, dims } => {
            let report = run_suite(suite, *trials, *seed, dims.as_ref().map(|l| &l.0[..]))?;
            let value = serde_json::to_value(&report).expect("report serializes");
            if !report.ok() {
                return Err(Failure::LawFailed(value));
            }
            value
        }
    })
}

fn emit(cli: &Cli, value: &Value) -> io::Result<()> {
    let text = format!("{value}\n");
    match &cli.output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn error_line(kind: &str, message: &str) -> ExitCode {
    eprintln!("{}", json!({ "error": kind, "message": message }));
    ExitCode::from(match kind {
        "Io" | "Parse" => 2,
        _ => 1,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.field {
        FieldKind::Rational => compute::<Rational>(&cli),
        FieldKind::F64 => compute::<f64>(&cli),
    };
    match result {
        Ok(value) => match emit(&cli, &value) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => error_line("Io", &e.to_string()),
        },
        Err(Failure::Domain(e)) => error_line(e.kind(), &e.to_string()),
        Err(Failure::Input { kind, message }) => {
            eprintln!("{}", json!({ "error": kind, "message": message }));
            ExitCode::from(2)
        }
        Err(Failure::LawFailed(report)) => {
            if let Err(e) = emit(&cli, &report) {
                return error_line("Io", &e.to_string());
            }
            ExitCode::from(1)
        }
    }
}

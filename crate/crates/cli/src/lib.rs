//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns its payload; `main` only prints and exits.

use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

use genperm::counting::{f_polynomial, flag_polynomial, validate_chain};
use genperm::egf::{extract_flag_count, xi_series, DEFAULT_CAPS};
use genperm::exact::{format_rational, parse_rational};
use genperm::faces::{count_flags, enumerate_faces, vertices, FlagMethod};
use genperm::minkowski::{decompose, mobius, rado_membership, zeta, Decomposition, RadoMethod, SubsetCollection, WeightVector};
use genperm::oracle::{f_vector_oracle, flag_count_oracle, SimplexFamily};
use genperm::{Opp, Subset};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Usage(#[from] clap::Error),
    #[error(transparent)]
    Domain(#[from] genperm::Error),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    /// 2 for usage errors, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(e) => e.exit_code(),
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Error,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Json(Value),
    Csv(String),
}

impl Payload {
    /// Exactly what goes to stdout.
    pub fn render(&self) -> String {
        match self {
            Payload::Json(v) => format!("{v}\n"),
            Payload::Csv(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Payload,
    pub timing_ms: u128,
}

impl CommandResult {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Error => 1,
        }
    }
}

/// Nonnegative integer, written as an integer or an integral `p/q`.
fn parse_count(text: &str) -> Result<usize, String> {
    let value = parse_rational(text).map_err(|e| e.to_string())?;
    if !value.is_integer() {
        return Err(format!("{text} is not an integer"));
    }
    usize::try_from(value.to_integer()).map_err(|_| format!("{text} is not a nonnegative integer"))
}

fn parse_value(text: &str) -> Result<BigRational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "genperm", version, about = "Face and flag counts of generalized permutohedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Shape {
    /// Ambient dimension n
    #[arg(short = 'n', long = "n", value_parser = parse_count)]
    n: usize,
    /// Simplex size k; the polytope is the sum of all (k-1)-simplices
    #[arg(short = 'k', long = "k", value_parser = parse_count)]
    k: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OracleMode {
    /// Compare the closed form against the independent face oracle
    Compare,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Formula,
    Enumerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RadoArg {
    Exhaustive,
    Prefix,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Direction {
    /// y_I to z_I = sum over subsets
    Y2z,
    /// z_I back to y_I by Möbius inversion
    Z2y,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the vertices
    Vertices(Shape),
    /// List faces as ordered pseudo-partitions, or count them
    Faces {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_parser = parse_count)]
        dim: Option<usize>,
        #[arg(long)]
        count: bool,
    },
    /// Count chains of faces with the given dimensions
    Flags {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_parser = parse_count, value_delimiter = ',', required = true)]
        chain: Vec<usize>,
        #[arg(long, value_enum, default_value = "formula")]
        method: MethodArg,
        #[arg(long, value_enum)]
        oracle: Option<OracleMode>,
    },
    /// Face counts by dimension
    Fvector {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_enum)]
        oracle: Option<OracleMode>,
    },
    /// The l-flag polynomial
    Flagpoly {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_parser = parse_count)]
        ell: usize,
        /// Largest accepted l
        #[arg(long, value_parser = parse_count, default_value = "4")]
        max_ell: usize,
    },
    /// Coefficients of the exponential flag generating function as CSV
    Egf(EgfArgs),
    /// Read a flag count back out of the generating function
    Extract {
        #[command(flatten)]
        series: EgfArgs,
        #[arg(long = "n", value_parser = parse_count)]
        n: usize,
        #[arg(long, value_parser = parse_count, value_delimiter = ',', required = true)]
        chain: Vec<usize>,
    },
    /// Write a sorted weight vector in the Minkowski basis
    Decompose {
        #[arg(short = 'v', long = "v", value_parser = parse_value, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        v: Vec<BigRational>,
        /// Treat an infeasible vector as an error
        #[arg(long)]
        strict: bool,
    },
    /// Transform a subset collection, read as JSON from a file or stdin
    Mobius {
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Test membership of a point in the permutation polytope of v
    Rado {
        #[arg(short = 'v', long = "v", value_parser = parse_value, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        v: Vec<BigRational>,
        #[arg(long, value_parser = parse_value, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        point: Vec<BigRational>,
        #[arg(long, value_enum, default_value = "both")]
        method: RadoArg,
    },
    /// Run the independent face oracle alone
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Args)]
struct EgfArgs {
    #[arg(long = "k", value_parser = parse_count)]
    k: usize,
    #[arg(long, value_parser = parse_count)]
    ell: Option<usize>,
    #[arg(long, value_parser = parse_count, default_value_t = DEFAULT_CAPS.0)]
    dx: usize,
    #[arg(long, value_parser = parse_count, default_value_t = DEFAULT_CAPS.1)]
    ds: usize,
    #[arg(long, value_parser = parse_count, default_value_t = DEFAULT_CAPS.2)]
    dy: usize,
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    Fvector(Shape),
    Flags {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_parser = parse_count, value_delimiter = ',', required = true)]
        chain: Vec<usize>,
    },
}

fn int(value: &BigInt) -> Value {
    Value::Number(value.to_string().parse::<Number>().expect("decimal integer"))
}

fn ints(values: &[BigInt]) -> Value {
    Value::Array(values.iter().map(int).collect())
}

fn rat(value: &BigRational) -> Value {
    Value::String(format_rational(value))
}

fn labels(s: Subset) -> Value {
    json!(s.labels())
}

fn opp_json(f: &Opp) -> Value {
    json!({
        "z": labels(f.zero_block()),
        "parts": f.parts().iter().map(|&p| labels(p)).collect::<Vec<_>>(),
        "dim": f.dim(),
        "improper": f.is_improper(),
    })
}

fn flag_method(m: MethodArg) -> FlagMethod {
    match m {
        MethodArg::Formula => FlagMethod::Formula,
        MethodArg::Enumerate => FlagMethod::Enumerate,
    }
}

fn read_collection(input: Option<&PathBuf>) -> Result<SubsetCollection, CliError> {
    let text = match input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    parse_collection(&text)
}

/// `{"n": 3, "entries": [{"subset": [1, 2], "value": "1/2"}]}`
pub fn parse_collection(text: &str) -> Result<SubsetCollection, CliError> {
    let bad = |why: &str| CliError::Input(format!("invalid collection: {why}"));
    let doc: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let n = doc
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing integer \"n\""))? as usize;
    let mut out = SubsetCollection::new(n)?;
    let mut seen = std::collections::HashSet::new();
    let entries = doc
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing array \"entries\""))?;
    for entry in entries {
        let subset: Vec<usize> = entry
            .get("subset")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("entry without \"subset\""))?
            .iter()
            .map(|x| x.as_u64().map(|v| v as usize).ok_or_else(|| bad("subset labels must be integers")))
            .collect::<Result<_, _>>()?;
        let value = match entry.get("value") {
            Some(Value::String(s)) => parse_rational(s)?,
            Some(Value::Number(num)) => parse_rational(&num.to_string())?,
            _ => return Err(bad("entry without \"value\"")),
        };
        let subset = Subset::from_labels(&subset, n)?;
        if !seen.insert(subset) {
            return Err(bad(&format!("subset {subset} listed twice")));
        }
        out.insert(subset, value)?;
    }
    Ok(out)
}

pub fn collection_json(c: &SubsetCollection) -> Value {
    let entries: Vec<Value> = c
        .entries()
        .map(|(s, v)| json!({"subset": s.labels(), "value": rat(v)}))
        .collect();
    json!({"n": c.n(), "entries": entries})
}

fn family(shape: &Shape) -> Result<SimplexFamily, CliError> {
    Ok(SimplexFamily::uniform(shape.n, shape.k)?)
}

fn execute(command: Command) -> Result<(Status, Payload), CliError> {
    let ok = |v: Value| Ok((Status::Ok, Payload::Json(v)));
    match command {
        Command::Vertices(shape) => {
            let list: Vec<Value> = vertices(shape.n, shape.k)?.iter().map(|v| ints(v)).collect();
            ok(Value::Array(list))
        }
        Command::Faces { shape, dim, count } => {
            let faces = enumerate_faces(shape.n, shape.k, dim)?;
            if count {
                ok(json!({"count": faces.len()}))
            } else {
                ok(Value::Array(faces.iter().map(opp_json).collect()))
            }
        }
        Command::Flags { shape, chain, method, oracle } => {
            if oracle.is_some() {
                let formula = count_flags(shape.n, shape.k, &chain, FlagMethod::Formula)?;
                let enumerated = count_flags(shape.n, shape.k, &chain, FlagMethod::Enumerate)?;
                let from_oracle = flag_count_oracle(&family(&shape)?, &chain)?;
                let agree = formula == enumerated && formula == from_oracle;
                ok(json!({
                    "formula": int(&formula),
                    "enumerated": int(&enumerated),
                    "oracle": int(&from_oracle),
                    "match": agree,
                }))
            } else {
                ok(json!({"count": int(&count_flags(shape.n, shape.k, &chain, flag_method(method))?)}))
            }
        }
        Command::Fvector { shape, oracle } => {
            let formula = f_polynomial(shape.n, shape.k)?;
            if oracle.is_some() {
                let from_oracle = f_vector_oracle(&family(&shape)?)?;
                let agree = formula.coeffs() == from_oracle.as_slice();
                ok(json!({
                    "formula": ints(formula.coeffs()),
                    "oracle": ints(&from_oracle),
                    "match": agree,
                }))
            } else {
                ok(ints(formula.coeffs()))
            }
        }
        Command::Flagpoly { shape, ell, max_ell } => {
            if ell > max_ell {
                return Err(CliError::Input(format!("--ell {ell} exceeds --max-ell {max_ell}")));
            }
            let poly = flag_polynomial(shape.n, shape.k, ell)?;
            let terms: Vec<Value> = poly
                .terms()
                .map(|(exps, c)| json!({"exponents": exps, "coeff": int(c)}))
                .collect();
            ok(json!({"ell": ell, "terms": terms}))
        }
        Command::Egf(args) => {
            let ell = args.ell.unwrap_or(1);
            let series = xi_series(args.k, ell, (args.dx, args.ds, args.dy))?;
            Ok((Status::Ok, Payload::Csv(series.to_csv(args.k, ell))))
        }
        Command::Extract { series, n, chain } => {
            let ell = series.ell.unwrap_or(chain.len());
            if n < series.k {
                return Err(CliError::Input(format!("the family starts at n = k = {}", series.k)));
            }
            validate_chain(&chain, n.saturating_sub(1))?;
            let xi = xi_series(series.k, ell, (series.dx, series.ds, series.dy))?;
            ok(json!({"count": int(&extract_flag_count(&xi, n, &chain, ell)?)}))
        }
        Command::Decompose { v, strict } => {
            let weights = WeightVector::new(v)?;
            match decompose(&weights) {
                Decomposition::Feasible(c) => {
                    ok(json!({"feasible": true, "y": c.y.iter().map(rat).collect::<Vec<_>>()}))
                }
                Decomposition::Infeasible(w) => {
                    let payload = json!({
                        "feasible": false,
                        "witness": {"order": w.order, "index": w.index},
                    });
                    let status = if strict { Status::Error } else { Status::Ok };
                    Ok((status, Payload::Json(payload)))
                }
            }
        }
        Command::Mobius { direction, input } => {
            let collection = read_collection(input.as_ref())?;
            match direction {
                Direction::Y2z => ok(collection_json(&zeta(&collection))),
                Direction::Z2y => {
                    let result = mobius(&collection);
                    let mut out = collection_json(&result.y);
                    out.as_object_mut()
                        .unwrap()
                        .insert("nonnegative".into(), Value::Bool(result.nonnegative));
                    ok(out)
                }
            }
        }
        Command::Rado { v, point, method } => {
            let weights = WeightVector::sorted(v)?;
            let mut verdicts = Map::new();
            for (name, m) in [("exhaustive", RadoMethod::Exhaustive), ("prefix", RadoMethod::Prefix)] {
                let wanted = match method {
                    RadoArg::Both => true,
                    RadoArg::Exhaustive => m == RadoMethod::Exhaustive,
                    RadoArg::Prefix => m == RadoMethod::Prefix,
                };
                if wanted {
                    verdicts.insert(name.into(), Value::Bool(rado_membership(&point, &weights, m)?));
                }
            }
            let first = verdicts.values().next().cloned().expect("at least one method");
            let mut out = Map::new();
            out.insert("member".into(), first.clone());
            let agree = verdicts.values().all(|v| *v == first);
            out.extend(verdicts);
            if method == RadoArg::Both {
                out.insert("match".into(), Value::Bool(agree));
            }
            ok(Value::Object(out))
        }
        Command::Oracle(OracleCommand::Fvector(shape)) => ok(ints(&f_vector_oracle(&family(&shape)?)?)),
        Command::Oracle(OracleCommand::Flags { shape, chain }) => {
            ok(json!({"count": int(&flag_count_oracle(&family(&shape)?, &chain)?)}))
        }
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> Result<CommandResult, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    let start = Instant::now();
    let (status, payload) = execute(cli.command)?;
    Ok(CommandResult {
        status,
        payload,
        timing_ms: start.elapsed().as_millis(),
    })
}

//! Command-line front end. Every request is parsed and validated into a
//! [`Request`] before any computation starts; the output is rendered either
//! as text or as a JSON document tagged `"schema": "klr/1"`.
//!
//! Exit codes: 0 on success, 1 on domain errors, 2 on usage errors.

use std::ffi::OsString;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{mpsc, Arc};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::basis::{basis_index_set, graded_dim_tilde, BasisIndexSet, TildeData};
use crate::cartan::{builtin_cartan, CartanData, IndexTuple, RootElement, Weight};
use crate::dims::DimContext;
use crate::error::{Error, Result};
use crate::idempotents::{
    fundamentals_of, nonzero_by_shuffle, nonzero_direct, nonzero_divided, nonzero_tilde, Method, NonzeroVerdict,
    Witness,
};
use crate::levelred::{LevelReducer, LevelSplit};
use crate::qpoly::LaurentPoly;
use crate::verify::{verify_suites, Battery, Suite};

pub const SCHEMA: &str = "klr/1";

const AFTER_HELP: &str = "Cartan sources: a registry name or a JSON file {\"matrix\": [[...]], \"labels\": [...]}.\n\
Registry: A<n>, B<n>, C<n>, D<n>, E6, E7, E8, F4, G2 (finite); A<n>~, C<n>~, D<n>~ (untwisted affine, \
also A<n>_affine); A<2l>^2, D<l+1>^2 (twisted affine). Builtin nodes are labelled 1..=rank.\n\
Weights are comma lists in node order (3,2) or label=coefficient pairs (1=3,2=2).\n\
Tuples are comma lists of node labels.";

#[derive(Parser, Debug)]
#[command(name = "klr", version, about = "Dimensions of cyclotomic KLR algebras", after_help = AFTER_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Registry name or path to a Cartan JSON file.
    #[arg(long, global = true)]
    pub cartan: Option<String>,
    /// Dominant weight.
    #[arg(long, global = true)]
    pub weight: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for the transport-set sums and the verify battery.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Abort with a partial-result error after this many seconds.
    #[arg(long, global = true, value_name = "SECONDS")]
    pub time_budget: Option<f64>,
    /// Print polynomials with decreasing exponents in text output.
    #[arg(long, global = true)]
    pub descending: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// dim e(nu) R e(nu'), or a table over a block with --all-pairs.
    Dim(PairArgs),
    /// Graded dimension of e(nu) R e(nu').
    Gdim(PairArgs),
    /// dim and graded dim of the block R(beta).
    Block(BlockArgs),
    /// dim and graded dim of R(n), the sum over all beta of height n.
    Algebra(AlgebraArgs),
    /// Decide whether e(nu) vanishes.
    Nonzero(NonzeroArgs),
    /// Basis index set of e(nu~) R e(mu).
    Basis(BasisArgs),
    /// Level reduction against the direct computation.
    Reduce(ReduceArgs),
    /// Closed forms for a tuple in tilde form.
    Tilde(TildeArgs),
    /// Run the verification battery.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    /// Defaults to --nu.
    #[arg(long, allow_hyphen_values = true)]
    pub nuprime: Option<String>,
    /// Root multiplicities; without --all-pairs gives the block total.
    #[arg(long, conflicts_with_all = ["nu", "nuprime"])]
    pub beta: Option<String>,
    #[arg(long, requires = "beta")]
    pub all_pairs: bool,
}

#[derive(Args, Debug)]
pub struct BlockArgs {
    #[arg(long)]
    pub beta: String,
}

#[derive(Args, Debug)]
pub struct AlgebraArgs {
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Divided,
    Tilde,
    Shuffle,
    All,
}

#[derive(Args, Debug)]
pub struct NonzeroArgs {
    #[arg(long)]
    pub nu: String,
    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    pub method: MethodArg,
}

#[derive(Args, Debug)]
pub struct BasisArgs {
    /// The tuple mu.
    #[arg(long)]
    pub nu: String,
    /// Block letter order of nu~; defaults to first occurrence in mu.
    #[arg(long)]
    pub order: Option<String>,
    /// Omit the element list.
    #[arg(long)]
    pub count_only: bool,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    /// Dominant parts separated by '+', e.g. 1,0+0,1. Defaults to the
    /// split into fundamental weights.
    #[arg(long)]
    pub split: Option<String>,
    #[arg(long)]
    pub nu: Option<String>,
    #[arg(long)]
    pub nuprime: Option<String>,
    #[arg(long, conflicts_with_all = ["nu", "nuprime", "n"])]
    pub beta: Option<String>,
    #[arg(long, conflicts_with_all = ["nu", "nuprime"])]
    pub n: Option<usize>,
    /// Also compare the graded shuffle sum (not an identity in general).
    #[arg(long, requires = "nu")]
    pub graded: bool,
}

#[derive(Args, Debug)]
pub struct TildeArgs {
    #[arg(long)]
    pub nu: String,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 3)]
    pub max_n: usize,
    /// Weights of level up to this are tested when --weight is absent.
    #[arg(long, default_value_t = 3)]
    pub max_level: i64,
}

/// A fully validated request.
#[derive(Debug, Clone)]
pub enum Request {
    Pair { graded: bool, ctx: DimContext, nu: IndexTuple, nu_prime: IndexTuple },
    Table { graded: bool, ctx: DimContext, beta: RootElement },
    Block { command: &'static str, ctx: DimContext, beta: RootElement },
    Algebra { ctx: DimContext, n: usize },
    Nonzero { ctx: DimContext, nu: IndexTuple, methods: Vec<Method>, strict_tilde: bool },
    Basis { ctx: DimContext, mu: IndexTuple, tilde: TildeData, count_only: bool },
    Reduce { ctx: DimContext, split: LevelSplit, target: ReduceTarget, graded: bool },
    Tilde { ctx: DimContext, tilde: TildeData },
    Verify { battery: Battery, suites: Vec<Suite> },
}

#[derive(Debug, Clone)]
pub enum ReduceTarget {
    Pair(IndexTuple, IndexTuple),
    Block(RootElement),
    Algebra(usize),
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// Parses `args` (including the program name) and runs the request.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = cli.common.format;
    let ascending = !cli.common.descending;
    let budget = cli.common.time_budget;
    let threads = cli.common.threads;
    let request = match prepare(cli) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") };
        }
        Err(Failure::Domain(e)) => return domain_error(format, &e),
    };
    match execute_with_budget(request, threads, budget) {
        Ok(doc) => Outcome { code: 0, stdout: doc.render(format, ascending), stderr: String::new() },
        Err(e) => domain_error(format, &e),
    }
}

fn domain_error(format: Format, e: &Error) -> Outcome {
    let kind = error_kind(e);
    match format {
        Format::Text => Outcome { code: 1, stdout: String::new(), stderr: format!("error[{kind}]: {e}\n") },
        Format::Json => {
            let doc = json!({ "schema": SCHEMA, "error": { "kind": kind, "message": e.to_string() } });
            Outcome { code: 1, stdout: format!("{doc}\n"), stderr: String::new() }
        }
    }
}

/// The variant name of an error, e.g. `NotSymmetrizable`.
pub fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

fn load_cartan(source: &str) -> Result<CartanData> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{source}: {e}")))?;
        return CartanData::from_json(&text);
    }
    if source.ends_with(".json") || source.contains('/') {
        return Err(Error::Parse(format!("cannot read cartan file `{source}`")));
    }
    builtin_cartan(source)
}

/// Weights as a comma list in node order, or as `label=coefficient` pairs
/// with unlisted nodes at zero.
pub fn parse_weight(cartan: &CartanData, text: &str) -> Result<Weight> {
    if !text.contains('=') {
        return cartan.parse_weight(text);
    }
    let mut coeffs = vec![0i64; cartan.rank()];
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (label, value) = item.split_once('=').ok_or_else(|| Error::Parse(format!("bad weight entry `{item}`")))?;
        let label: i64 = label.trim().parse().map_err(|_| Error::Parse(format!("bad label `{label}`")))?;
        let value: i64 = value.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient `{value}`")))?;
        coeffs[cartan.index_of_label(label)?] += value;
    }
    Ok(Weight::new(coeffs))
}

fn prepare(cli: Cli) -> std::result::Result<Request, Failure> {
    let common = cli.common;
    if let Command::Verify(args) = &cli.command {
        let suites = Suite::parse_scope(&args.suite)?;
        let battery = match &common.cartan {
            None => {
                if common.weight.is_some() {
                    return Err(Failure::Usage("--weight needs --cartan for verify".into()));
                }
                Battery::standard(args.max_n, args.max_level)
            }
            Some(source) => {
                let cartan = load_cartan(source)?;
                let weights = match &common.weight {
                    Some(w) => {
                        let w = parse_weight(&cartan, w)?;
                        DimContext::new(cartan.clone(), w.clone())?;
                        vec![w]
                    }
                    None => Weight::dominant_up_to_level(cartan.rank(), args.max_level),
                };
                Battery::single(source, cartan, weights, args.max_n)
            }
        };
        return Ok(Request::Verify { battery, suites });
    }
    let source = common.cartan.as_deref().ok_or_else(|| Failure::Usage("--cartan is required".into()))?;
    let weight = common.weight.as_deref().ok_or_else(|| Failure::Usage("--weight is required".into()))?;
    let cartan = load_cartan(source)?;
    let weight = parse_weight(&cartan, weight)?;
    let ctx = DimContext::new(cartan, weight)?.with_parallel(common.threads.is_some_and(|t| t > 1));
    let tuple = |text: &str| ctx.cartan().parse_tuple(text);
    let graded = matches!(cli.command, Command::Gdim(_));
    let request = match cli.command {
        Command::Dim(args) | Command::Gdim(args) if args.beta.is_some() => {
            let beta = ctx.cartan().parse_root(args.beta.as_deref().unwrap_or_default())?;
            if args.all_pairs {
                Request::Table { graded, ctx, beta }
            } else {
                Request::Block { command: if graded { "gdim" } else { "dim" }, ctx, beta }
            }
        }
        Command::Dim(args) | Command::Gdim(args) => {
            let nu_text = args.nu.as_deref().ok_or_else(|| Failure::Usage("give --nu or --beta".into()))?;
            let nu = tuple(nu_text)?;
            let nu_prime = match &args.nuprime {
                Some(t) => tuple(t)?,
                None => nu.clone(),
            };
            if nu.len() != nu_prime.len() {
                return Err(Error::LengthMismatch(nu.len(), nu_prime.len()).into());
            }
            if !nu.same_content(&nu_prime) {
                return Err(Error::IncompatibleContent.into());
            }
            Request::Pair { graded, ctx, nu, nu_prime }
        }
        Command::Block(args) => {
            let beta = ctx.cartan().parse_root(&args.beta)?;
            Request::Block { command: "block", ctx, beta }
        }
        Command::Algebra(args) => Request::Algebra { ctx, n: args.n },
        Command::Nonzero(args) => {
            let nu = tuple(&args.nu)?;
            let methods = match args.method {
                MethodArg::Direct => vec![Method::Direct],
                MethodArg::Divided => vec![Method::Divided],
                MethodArg::Tilde => vec![Method::Tilde],
                MethodArg::Shuffle => vec![Method::Shuffle],
                MethodArg::All => vec![Method::Direct, Method::Divided, Method::Tilde, Method::Shuffle],
            };
            Request::Nonzero { ctx, nu, methods, strict_tilde: args.method == MethodArg::Tilde }
        }
        Command::Basis(args) => {
            let mu = tuple(&args.nu)?;
            let tilde = match &args.order {
                Some(order) => {
                    let letters = tuple(order)?;
                    TildeData::with_order(&mu, letters.entries())?
                }
                None => TildeData::of(&mu),
            };
            Request::Basis { ctx, mu, tilde, count_only: args.count_only }
        }
        Command::Reduce(args) => {
            let split = match &args.split {
                Some(text) => {
                    let parts =
                        text.split(['+', ';']).map(|p| parse_weight(ctx.cartan(), p)).collect::<Result<Vec<_>>>()?;
                    LevelSplit::new(parts, ctx.weight())?
                }
                None => LevelSplit::fundamental(ctx.weight())?,
            };
            let target = match (&args.nu, &args.beta, args.n) {
                (Some(nu), _, _) => {
                    let nu = tuple(nu)?;
                    let mu = match &args.nuprime {
                        Some(t) => tuple(t)?,
                        None => nu.clone(),
                    };
                    if nu.len() != mu.len() {
                        return Err(Error::LengthMismatch(nu.len(), mu.len()).into());
                    }
                    ReduceTarget::Pair(nu, mu)
                }
                (None, Some(beta), _) => ReduceTarget::Block(ctx.cartan().parse_root(beta)?),
                (None, None, Some(n)) => ReduceTarget::Algebra(n),
                (None, None, None) => return Err(Failure::Usage("give --nu, --beta or --n".into())),
            };
            Request::Reduce { ctx, split, target, graded: args.graded }
        }
        Command::Tilde(args) => {
            let tilde = TildeData::new(tuple(&args.nu)?)?;
            Request::Tilde { ctx, tilde }
        }
        Command::Verify(_) => unreachable!("handled above"),
    };
    Ok(request)
}

fn execute_with_budget(request: Request, threads: Option<usize>, budget: Option<f64>) -> Result<Document> {
    let progress = Arc::new(AtomicU64::new(0));
    let deadline = budget.map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0)));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Parse(e.to_string()))?;
    let Some(seconds) = budget else {
        return pool.install(|| execute(request, &progress, None));
    };
    let (tx, rx) = mpsc::channel();
    let counter = progress.clone();
    std::thread::spawn(move || {
        let out = pool.install(|| execute(request, &counter, deadline));
        let _ = tx.send(out);
    });
    let budget_ms = (seconds * 1000.0) as u64;
    match rx.recv_timeout(Duration::from_secs_f64(seconds.max(0.0))) {
        Ok(Err(Error::TimeBudget { partial, .. })) => Err(Error::TimeBudget { budget_ms, partial }),
        Ok(out) => out,
        Err(_) => Err(Error::TimeBudget {
            budget_ms,
            partial: format!("{} permutations summed", progress.load(Ordering::Relaxed)),
        }),
    }
}

/// A rendered result: the JSON document and its text form.
struct Document {
    json: Value,
    text: Vec<TextLine>,
}

enum TextLine {
    Plain(String),
    /// A polynomial rendered in the requested order, after a prefix.
    Poly(String, LaurentPoly),
    /// Tab separated polynomials after a prefix.
    Polys(String, Vec<LaurentPoly>),
}

impl Document {
    fn render(&self, format: Format, ascending: bool) -> String {
        match format {
            Format::Json => {
                let mut doc = self.json.clone();
                doc["schema"] = Value::from(SCHEMA);
                format!("{doc}\n")
            }
            Format::Text => {
                let mut out = String::new();
                for line in &self.text {
                    match line {
                        TextLine::Plain(s) => out.push_str(s),
                        TextLine::Poly(prefix, p) => {
                            out.push_str(prefix);
                            out.push_str(&poly_text(p, ascending));
                        }
                        TextLine::Polys(prefix, ps) => {
                            out.push_str(prefix);
                            let cells: Vec<String> = ps.iter().map(|p| poly_text(p, ascending)).collect();
                            out.push_str(&cells.join("\t"));
                        }
                    }
                    out.push('\n');
                }
                out
            }
        }
    }
}

fn poly_text(p: &LaurentPoly, ascending: bool) -> String {
    if ascending {
        p.to_string_ascending()
    } else {
        p.to_string()
    }
}

fn compact<T: std::fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(T::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn big(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse().expect("integer literal"))
}

fn poly(p: &LaurentPoly) -> Value {
    json!({ "terms": serde_json::to_value(p).expect("serializable"), "text": p.to_string() })
}

fn labels(ctx: &DimContext, t: &IndexTuple) -> Vec<i64> {
    ctx.cartan().tuple_labels(t)
}

fn show(ctx: &DimContext, t: &IndexTuple) -> String {
    format!("({})", labels(ctx, t).iter().map(i64::to_string).collect::<Vec<_>>().join(","))
}

fn header(command: &str, ctx: &DimContext) -> Value {
    json!({
        "command": command,
        "cartan": ctx.cartan().to_json_value(),
        "weight": ctx.weight().coeffs(),
    })
}

fn execute(request: Request, progress: &Arc<AtomicU64>, deadline: Option<Instant>) -> Result<Document> {
    use TextLine::{Plain, Poly};
    let doc = match request {
        Request::Pair { graded, ctx, nu, nu_prime } => {
            let ctx = ctx.with_progress(progress.clone());
            let mut json = header(if graded { "gdim" } else { "dim" }, &ctx);
            json["nu"] = json!(labels(&ctx, &nu));
            json["nuprime"] = json!(labels(&ctx, &nu_prime));
            if graded {
                let p = ctx.graded_dim(&nu, &nu_prime)?;
                json["gdim"] = poly(&p);
                Document { json, text: vec![Poly(String::new(), p)] }
            } else {
                let d = ctx.dim(&nu, &nu_prime)?;
                json["dim"] = big(&d);
                Document { json, text: vec![Plain(d.to_string())] }
            }
        }
        Request::Table { graded, ctx, beta } => {
            let ctx = ctx.with_progress(progress.clone());
            let tuples = beta.tuples();
            let mut json = header(if graded { "gdim" } else { "dim" }, &ctx);
            json["beta"] = json!(beta.coeffs());
            json["tuples"] = json!(tuples.iter().map(|t| labels(&ctx, t)).collect::<Vec<_>>());
            let mut text = vec![Plain(format!(
                "nu \\ nu'\t{}",
                tuples.iter().map(|t| show(&ctx, t)).collect::<Vec<_>>().join("\t")
            ))];
            let mut rows = Vec::with_capacity(tuples.len());
            if graded {
                let mut total = LaurentPoly::zero();
                let mut cells = Vec::new();
                for nu in &tuples {
                    let mut row = Vec::new();
                    for mu in &tuples {
                        let p = ctx.graded_dim(nu, mu)?;
                        total += &p;
                        row.push(p);
                    }
                    cells.push((nu, row));
                }
                for (nu, row) in cells {
                    rows.push(json!(row.iter().map(poly).collect::<Vec<_>>()));
                    text.push(TextLine::Polys(format!("{}\t", show(&ctx, nu)), row));
                }
                json["table"] = Value::Array(rows);
                json["total"] = poly(&total);
                text.push(Poly("total\t".into(), total));
            } else {
                let mut total = BigInt::from(0);
                for nu in &tuples {
                    let mut row = Vec::new();
                    for mu in &tuples {
                        row.push(ctx.dim(nu, mu)?);
                    }
                    total += row.iter().sum::<BigInt>();
                    rows.push(json!(row.iter().map(big).collect::<Vec<_>>()));
                    text.push(Plain(format!(
                        "{}\t{}",
                        show(&ctx, nu),
                        row.iter().map(ToString::to_string).collect::<Vec<_>>().join("\t")
                    )));
                }
                json["table"] = Value::Array(rows);
                json["total"] = big(&total);
                text.push(Plain(format!("total\t{total}")));
            }
            Document { json, text }
        }
        Request::Block { command, ctx, beta } => {
            let ctx = ctx.with_progress(progress.clone());
            let p = ctx.block_graded_dim(&beta)?;
            let d = ctx.block_dim(&beta)?;
            let mut json = header(command, &ctx);
            json["beta"] = json!(beta.coeffs());
            json["dim"] = big(&d);
            json["gdim"] = poly(&p);
            let text = match command {
                "dim" => vec![Plain(d.to_string())],
                "gdim" => vec![Poly(String::new(), p)],
                _ => vec![Plain(format!("dim\t{d}")), Poly("gdim\t".into(), p)],
            };
            Document { json, text }
        }
        Request::Algebra { ctx, n } => {
            let ctx = ctx.with_progress(progress.clone());
            let mut json = header("algebra", &ctx);
            let mut blocks = Vec::new();
            let mut text = Vec::new();
            let mut total = BigInt::from(0);
            let mut graded = LaurentPoly::zero();
            for beta in RootElement::of_height(n, ctx.cartan().rank()) {
                let d = ctx.block_dim(&beta)?;
                let p = ctx.block_graded_dim(&beta)?;
                blocks.push(json!({ "beta": beta.coeffs(), "dim": big(&d), "gdim": poly(&p) }));
                text.push(Poly(format!("beta {}\t{d}\t", compact(beta.coeffs())), p.clone()));
                total += &d;
                graded += &p;
            }
            json["n"] = json!(n);
            json["blocks"] = Value::Array(blocks);
            json["dim"] = big(&total);
            json["gdim"] = poly(&graded);
            text.push(Plain(format!("dim\t{total}")));
            text.push(Poly("gdim\t".into(), graded));
            Document { json, text }
        }
        Request::Nonzero { ctx, nu, methods, strict_tilde } => {
            let ctx = ctx.with_progress(progress.clone());
            let mut verdicts: Vec<NonzeroVerdict> = Vec::new();
            for m in methods {
                let v = match m {
                    Method::Direct => nonzero_direct(&ctx, &nu),
                    Method::Divided => nonzero_divided(&ctx, &nu),
                    Method::Tilde => match nonzero_tilde(&ctx, &nu) {
                        Err(Error::NotTildeForm) if !strict_tilde => continue,
                        other => other,
                    },
                    Method::Shuffle => nonzero_by_shuffle(&ctx, &nu, &fundamentals_of(ctx.weight())),
                }?;
                verdicts.push(v);
            }
            let nonzero = verdicts[0].nonzero;
            if verdicts.iter().any(|v| v.nonzero != nonzero) {
                return Err(Error::PreconditionFail("nonvanishing tests disagree".into()));
            }
            let mut json = header("nonzero", &ctx);
            json["nu"] = json!(labels(&ctx, &nu));
            json["nonzero"] = json!(nonzero);
            json["verdicts"] = Value::Array(verdicts.iter().map(|v| verdict_json(&ctx, &nu, v)).collect());
            let mut text = vec![Plain(format!("e{} {}", show(&ctx, &nu), if nonzero { "!= 0" } else { "= 0" }))];
            for v in &verdicts {
                text.push(Plain(format!("  {}: {}", v.method.name(), witness_text(&ctx, &nu, &v.witness))));
            }
            Document { json, text }
        }
        Request::Basis { ctx, mu, tilde, count_only } => {
            let set = basis_index_set(&ctx, &mu, &tilde)?;
            basis_document(&ctx, &set, count_only)
        }
        Request::Reduce { ctx, split, target, graded } => {
            let ctx = ctx.with_progress(progress.clone());
            let mut reducer = LevelReducer::new(&ctx, &split)?;
            let mut json = header("reduce", &ctx);
            json["split"] = json!(split.parts().iter().map(|p| p.coeffs().to_vec()).collect::<Vec<_>>());
            let (reduced, direct) = match &target {
                ReduceTarget::Pair(nu, mu) => {
                    json["nu"] = json!(labels(&ctx, nu));
                    json["nuprime"] = json!(labels(&ctx, mu));
                    (reducer.pair_dim(nu, mu)?, ctx.dim(nu, mu)?)
                }
                ReduceTarget::Block(beta) => {
                    json["beta"] = json!(beta.coeffs());
                    (reducer.block_dim(beta)?, ctx.block_dim(beta)?)
                }
                ReduceTarget::Algebra(n) => {
                    json["n"] = json!(n);
                    (reducer.algebra_dim(*n)?, ctx.algebra_dim(*n)?)
                }
            };
            json["reduced"] = big(&reduced);
            json["direct"] = big(&direct);
            json["agree"] = json!(reduced == direct);
            let mut text = vec![
                Plain(format!("reduced\t{reduced}")),
                Plain(format!("direct\t{direct}")),
                Plain(if reduced == direct { "agree".into() } else { "DISAGREE".into() }),
            ];
            if let (true, ReduceTarget::Pair(nu, mu)) = (graded, &target) {
                let shuffled = reducer.pair_graded(nu, mu)?;
                let direct = ctx.graded_dim(nu, mu)?;
                json["graded_reduced"] = poly(&shuffled);
                json["graded_direct"] = poly(&direct);
                text.push(Poly("graded shuffle sum\t".into(), shuffled));
                text.push(Poly("graded direct\t".into(), direct));
            }
            Document { json, text }
        }
        Request::Tilde { ctx, tilde } => {
            let n_values = tilde.block_n_values(&ctx);
            let sizes = tilde.blocks().sizes();
            let p = graded_dim_tilde(&ctx, &tilde);
            let d = crate::basis::dim_tilde(&ctx, &tilde);
            let nonzero = n_values.iter().zip(sizes).all(|(&n, &b)| n >= b as i64);
            let mut json = header("tilde", &ctx);
            json["nu"] = json!(labels(&ctx, tilde.tuple()));
            json["blocks"] = Value::Array(
                tilde
                    .letters()
                    .iter()
                    .zip(sizes)
                    .zip(&n_values)
                    .map(|((&letter, &b), &n)| json!({ "letter": ctx.cartan().label(letter), "size": b, "n": n }))
                    .collect(),
            );
            json["nonzero"] = json!(nonzero);
            json["dim"] = big(&d);
            json["gdim"] = poly(&p);
            let mut text: Vec<TextLine> = tilde
                .letters()
                .iter()
                .zip(sizes)
                .zip(&n_values)
                .map(|((&letter, &b), &n)| Plain(format!("block {}^{b}\tN = {n}", ctx.cartan().label(letter))))
                .collect();
            text.push(Plain(format!("nonzero\t{nonzero}")));
            text.push(Plain(format!("dim\t{d}")));
            text.push(Poly("gdim\t".into(), p));
            Document { json, text }
        }
        Request::Verify { battery, suites } => {
            let report = verify_suites(&battery, &suites, deadline)?;
            let mut json = serde_json::to_value(&report).expect("serializable");
            json["command"] = json!("verify");
            json["passed"] = json!(report.passed());
            json["max_n"] = json!(battery.max_n);
            let text = report.to_string().lines().map(|l| TextLine::Plain(l.to_string())).collect();
            Document { json, text }
        }
    };
    Ok(doc)
}

fn verdict_json(ctx: &DimContext, nu: &IndexTuple, v: &NonzeroVerdict) -> Value {
    let witness = match &v.witness {
        Witness::Sum(s) => json!({ "sum": big(s) }),
        Witness::Blocks(b) => json!({ "blocks": b.iter().map(|&(n, size)| json!([n, size])).collect::<Vec<_>>() }),
        Witness::Shuffle { fundamentals, split } => json!({
            "fundamentals": fundamentals.iter().map(|&t| ctx.cartan().label(t)).collect::<Vec<_>>(),
            "split": split.as_ref().map(|s| s.one_based()),
            "parts": split.as_ref().map(|s| s.restrict(nu).iter().map(|p| labels(ctx, p)).collect::<Vec<_>>()),
        }),
    };
    json!({ "method": v.method.name(), "nonzero": v.nonzero, "witness": witness })
}

fn witness_text(ctx: &DimContext, nu: &IndexTuple, w: &Witness) -> String {
    match w {
        Witness::Sum(s) => format!("sum = {s}"),
        Witness::Blocks(b) => {
            let parts: Vec<String> = b.iter().map(|(n, size)| format!("N={n} b={size}")).collect();
            parts.join(", ")
        }
        Witness::Shuffle { split: Some(s), .. } => {
            let parts: Vec<String> = s.restrict(nu).iter().map(|p| show(ctx, p)).collect();
            format!("shuffle of {}", parts.join(" "))
        }
        Witness::Shuffle { split: None, .. } => "no shuffle of nonzero level-one tuples".into(),
    }
}

fn basis_document(ctx: &DimContext, set: &BasisIndexSet, count_only: bool) -> Document {
    use TextLine::Plain;
    let mut json = header("basis", ctx);
    json["mu"] = json!(labels(ctx, set.mu()));
    json["tilde"] = json!(labels(ctx, set.tilde().tuple()));
    json["d_mu"] = json!(set.d_mu().one_line());
    json["bounds"] = json!(set.bounds());
    json["empty"] = json!(set.is_empty());
    json["cardinality"] = big(&set.cardinality());
    let mut text = vec![
        Plain(format!("nu~\t{}", show(ctx, set.tilde().tuple()))),
        Plain(format!("mu\t{}", show(ctx, set.mu()))),
        Plain(format!("d_mu\t{}", set.d_mu())),
        Plain(format!("bounds\t{}", compact(set.bounds()))),
        Plain(format!("cardinality\t{}", set.cardinality())),
    ];
    if !count_only {
        let elements: Vec<Value> = set.elements().map(|(w, r)| json!({ "w": w.one_line(), "r": r })).collect();
        for (w, r) in set.elements() {
            text.push(Plain(format!("{w}\t{r:?}")));
        }
        json["elements"] = Value::Array(elements);
    }
    Document { json, text }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanType;

    fn klr(args: &str) -> Outcome {
        run(std::iter::once("klr").chain(args.split_whitespace()))
    }

    #[test]
    fn graded_pair() {
        let out = klr("gdim --cartan A1~ --weight 1,2 --nu 2,1 --nuprime 2,1");
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(out.stdout.trim(), "1+2q^2+2q^4+q^6");
        let out = klr("gdim --cartan A1~ --weight 1,2 --beta 1,1 --descending");
        assert_eq!(out.stdout.trim(), "2q^6+5q^4+5q^2+2");
    }

    #[test]
    fn usage_and_domain_codes() {
        assert_eq!(klr("dim --cartan A2 --weight 1,1 --bogus").code, 2);
        assert_eq!(klr("dim --weight 1,1 --nu 1").code, 2);
        let out = klr("dim --cartan A2 --weight 1,1 --nu 1,2 --nuprime 1,1");
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("IncompatibleContent"));
        let out = klr("dim --cartan X9 --weight 1 --nu 1 --format json");
        assert_eq!(out.code, 1);
        let doc: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(doc["error"]["kind"], "UnknownType");
        assert_eq!(doc["schema"], SCHEMA);
    }

    #[test]
    fn labelled_weights() {
        let a2 = builtin_cartan("A2").unwrap();
        assert_eq!(parse_weight(&a2, "2=3").unwrap(), Weight::new(vec![0, 3]));
        assert_eq!(parse_weight(&a2, "1=1,2=2").unwrap(), Weight::new(vec![1, 2]));
        assert!(parse_weight(&a2, "3=1").is_err());
    }

    #[test]
    fn registry_help_mentions_every_family() {
        for family in ["A<n>~", "D<l+1>^2", "G2"] {
            assert!(AFTER_HELP.contains(family));
            assert!(CartanType::REGISTRY_HELP.contains(family));
        }
    }
}

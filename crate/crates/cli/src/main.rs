//! `tmzv`: products, interpolation maps, truncated zeta evaluation and
//! identity sweeps from the command line.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use tmzv_core::interp::{s_at, s_t};
use tmzv_core::stuffle::{stuffle_classical, stuffle_o_index, stuffle_t_index};
use tmzv_core::theorems::{eq31_sides, sweep, zeta8_sides, Case};
use tmzv_core::zeta::Evaluator;
use tmzv_core::{Element, Error, EvalConfig, Index, Rational, Statement, SweepOptions, VerifyReport, Word};

const DEFAULT_CUTOFF: usize = 100_000;
const DEFAULT_RANDOM_CASES: u32 = 1000;

#[derive(Parser)]
#[command(name = "tmzv", version, about = "Interpolated multiple zeta values: t-stuffle algebra and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Product of two z-words given as indices
    Product(ProductArgs),
    /// Apply S_t to a word
    St(StArgs),
    /// Truncated multiple zeta value
    Zeta(ZetaArgs),
    /// Truncated multiple zeta-star value
    ZetaStar(ZetaArgs),
    /// Truncated interpolated value at a numeric t
    ZetaT(ZetaTArgs),
    /// Check identities over their parameter sweeps
    Verify(VerifyArgs),
    /// Alternating factorial-reciprocal identity for even k
    Eq31(RangeArgs),
    /// Gaussian-rational identity behind zeta({8}^l)
    Zeta8(Zeta8Args),
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    T,
    O,
    Classical,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Boxes,
    St,
}

#[derive(Args)]
struct ProductArgs {
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
    #[arg(long, value_enum, default_value = "t")]
    op: Op,
    /// Specialize t exactly ("p/q" or decimal)
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct StArgs {
    /// Word over {x, y}
    #[arg(long, conflicts_with = "index", required_unless_present = "index")]
    word: Option<String>,
    /// Index, as an alternative to --word
    #[arg(long)]
    index: Option<String>,
    /// Specialize t exactly ("p/q" or decimal)
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ZetaArgs {
    #[arg(long)]
    index: String,
    #[arg(long, default_value_t = DEFAULT_CUTOFF)]
    cutoff: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ZetaTArgs {
    #[arg(long)]
    index: String,
    #[arg(long, default_value_t = DEFAULT_CUTOFF)]
    cutoff: usize,
    #[arg(long, default_value = "0")]
    t: String,
    #[arg(long, value_enum, default_value = "st")]
    method: Method,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// A statement id, `all`, or `random`
    statement: String,
    /// Caps every sweep range at N; for `random`, the number of cases
    #[arg(long)]
    max: Option<u32>,
    /// A single parameter tuple instead of the sweep
    #[arg(long)]
    params: Option<String>,
    /// Truncation for numeric statements
    #[arg(long)]
    cutoff: Option<usize>,
    /// t for numeric single cases
    #[arg(long)]
    t: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RangeArgs {
    #[arg(long, conflicts_with = "max")]
    k: Option<u32>,
    #[arg(long)]
    max: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Zeta8Args {
    #[arg(long, conflicts_with = "max")]
    l: Option<u32>,
    #[arg(long)]
    max: Option<u32>,
    #[arg(long)]
    json: bool,
}

/// Failure of a command: a usage problem (exit 2) or a failed check (exit 1).
enum Failure {
    Usage(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

/// Formats with 12 significant digits.
fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if (-5..12).contains(&magnitude) {
        format!("{:.*}", (11 - magnitude).max(0) as usize, x)
    } else {
        format!("{x:.11e}")
    }
}

fn parse_index(s: &str) -> Result<Index, Failure> {
    Ok(s.parse::<Index>()?)
}

fn parse_t(s: &str) -> Result<Rational, Failure> {
    Ok(Rational::parse_exact(s)?)
}

fn print_element(e: &Element, json: bool) {
    if json {
        println!("{}", e.to_json());
    } else {
        println!("{e}");
    }
}

fn cmd_product(a: ProductArgs) -> CmdResult {
    let (left, right) = (parse_index(&a.left)?, parse_index(&a.right)?);
    let mut e = match a.op {
        Op::T => stuffle_t_index(&left, &right),
        Op::O => stuffle_o_index(&left, &right),
        Op::Classical => stuffle_classical(&left, &right),
    };
    if let Some(t) = &a.t {
        e = e.eval_at_t(&parse_t(t)?);
    }
    print_element(&e, a.json);
    Ok(())
}

fn cmd_st(a: StArgs) -> CmdResult {
    let word: Word = match (&a.word, &a.index) {
        (Some(w), _) => w.parse()?,
        (None, Some(i)) => parse_index(i)?.to_word(),
        (None, None) => return Err(Failure::Usage("one of --word or --index is required".into())),
    };
    let e = Element::from_word(word);
    let image = match &a.t {
        Some(t) => s_at(&e, &parse_t(t)?),
        None => s_t(&e),
    };
    print_element(&image, a.json);
    Ok(())
}

fn print_value(kind: &str, index: &Index, cutoff: usize, t: Option<f64>, value: f64, json: bool) {
    if json {
        let mut out = json!({ "kind": kind, "index": index.to_string(), "cutoff": cutoff, "value": value });
        if let Some(t) = t {
            out["t"] = json!(t);
        }
        println!("{out}");
    } else {
        println!("{}", sig12(value));
    }
}

fn cmd_zeta(a: ZetaArgs, star: bool) -> CmdResult {
    let idx = parse_index(&a.index)?;
    let mut ev = Evaluator::new(EvalConfig::new(a.cutoff, 0.0));
    let (kind, value) = if star { ("zeta-star", ev.mzv_star(&idx)?) } else { ("zeta", ev.mzv(&idx)?) };
    print_value(kind, &idx, a.cutoff, None, value, a.json);
    Ok(())
}

fn cmd_zeta_t(a: ZetaTArgs) -> CmdResult {
    let idx = parse_index(&a.index)?;
    let t = parse_t(&a.t)?.to_f64();
    let mut ev = Evaluator::new(EvalConfig::new(a.cutoff, t));
    let value = match a.method {
        Method::Boxes => ev.zeta_t_boxes(&idx)?,
        Method::St => ev.z_t_eval(&Element::from_index(&idx))?,
    };
    print_value("zeta-t", &idx, a.cutoff, Some(t), value, a.json);
    Ok(())
}

/// Random index pairs checked against the product oracles and the recursive formula.
fn random_cases(count: u32, seed: u64) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let index = |rng: &mut ChaCha8Rng, min_depth: usize| {
        let depth = rng.random_range(min_depth..=4);
        Index::new((0..depth).map(|_| rng.random_range(1..=4)).collect()).expect("positive parts")
    };
    (0..count)
        .map(|i| {
            let a = index(&mut rng, 1);
            let b = index(&mut rng, 0);
            match i % 3 {
                0 => Case::Combinatorial { a, b },
                1 => Case::T0Reduction { a, b },
                _ => {
                    let j = rng.random_range(1..=a.depth());
                    Case::Prop31 { idx1: a, idx2: b, j }
                }
            }
        })
        .collect()
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    let t0 = a.t.as_deref().map(parse_t).transpose()?;
    let cases: Vec<Case> = match a.statement.as_str() {
        "all" | "random" if a.params.is_some() => {
            return Err(Failure::Usage("--params needs a single statement".into()));
        }
        "all" => {
            let opts = SweepOptions { max: a.max, cutoff: a.cutoff };
            Statement::ALL.iter().flat_map(|&s| sweep(s, &opts)).collect()
        }
        "random" => random_cases(a.max.unwrap_or(DEFAULT_RANDOM_CASES), a.seed),
        id => {
            let statement: Statement = id.parse()?;
            match &a.params {
                Some(p) => vec![Case::parse(statement, p, t0, a.cutoff)?],
                None => sweep(statement, &SweepOptions { max: a.max, cutoff: a.cutoff }),
            }
        }
    };
    let reports: Vec<VerifyReport> = cases.par_iter().map(Case::run).collect::<Result<_, _>>()?;

    let all_passed = reports.iter().all(VerifyReport::passed);
    if a.json {
        println!("{}", serde_json::to_string(&reports).expect("report serialization"));
    } else if a.params.is_some() {
        for r in &reports {
            println!("{r}");
        }
    } else {
        let mut order: Vec<Statement> = Vec::new();
        for r in &reports {
            if !order.contains(&r.statement) {
                order.push(r.statement);
            }
        }
        for st in order {
            let of_st: Vec<&VerifyReport> = reports.iter().filter(|r| r.statement == st).collect();
            let passed = of_st.iter().filter(|r| r.passed()).count();
            let verdict = if passed == of_st.len() { "PASS" } else { "FAIL" };
            println!("{verdict} {st}: {passed}/{} cases", of_st.len());
        }
        if let Some(first) = reports.iter().find(|r| !r.passed()) {
            println!("first counterexample: {first}");
        }
    }
    if all_passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn exact_rows<T>(values: Vec<u32>, sides: impl Fn(u32) -> Result<T, Error>, show: impl Fn(u32, &T) -> (bool, serde_json::Value, String), json: bool) -> CmdResult {
    let mut rows = Vec::new();
    let mut all = true;
    for v in values {
        let s = sides(v)?;
        let (ok, row, text) = show(v, &s);
        all &= ok;
        if json {
            rows.push(row);
        } else {
            println!("{} {text}", if ok { "PASS" } else { "FAIL" });
        }
    }
    if json {
        println!("{}", serde_json::Value::Array(rows));
    }
    if all {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn cmd_eq31(a: RangeArgs) -> CmdResult {
    let ks = match a.k {
        Some(k) => vec![k],
        None => (2..=a.max.unwrap_or(12)).step_by(2).collect(),
    };
    exact_rows(
        ks,
        eq31_sides,
        |k, (lhs, rhs)| {
            let ok = lhs == rhs;
            (ok, json!({ "k": k, "lhs": lhs, "rhs": rhs, "pass": ok }), format!("k={k} lhs={lhs} rhs={rhs}"))
        },
        a.json,
    )
}

fn cmd_zeta8(a: Zeta8Args) -> CmdResult {
    let ls = match a.l {
        Some(l) => vec![l],
        None => (1..=a.max.unwrap_or(3)).collect(),
    };
    exact_rows(
        ls,
        zeta8_sides,
        |l, (lhs, rhs)| {
            let ok = lhs.im.is_zero() && lhs.re == *rhs;
            let row = json!({ "l": l, "lhs_re": lhs.re, "lhs_im": lhs.im, "rhs": rhs, "pass": ok });
            (ok, row, format!("l={l} lhs={} + {}i rhs={rhs}", lhs.re, lhs.im))
        },
        a.json,
    )
}

fn configure_threads() {
    if let Some(n) = std::env::var("TMZV_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // A pool may already exist in tests; ignoring that error keeps its size.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let result = match cli.command {
        Command::Product(a) => cmd_product(a),
        Command::St(a) => cmd_st(a),
        Command::Zeta(a) => cmd_zeta(a, false),
        Command::ZetaStar(a) => cmd_zeta(a, true),
        Command::ZetaT(a) => cmd_zeta_t(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Eq31(a) => cmd_eq31(a),
        Command::Zeta8(a) => cmd_zeta8(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

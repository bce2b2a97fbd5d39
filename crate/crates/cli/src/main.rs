//! `peaklab`: count permutations by peak composition, print boundary
//! tables, and search for maximal compositions.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 invalid input,
//! 3 resource limit.

mod cache;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use peaklab::closed_forms::formula_count;
use peaklab::maximality::CountCache;
use peaklab::{count_fast, Composition, Engine, Error, Oracle, PeakSet};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cache::CacheFile;

#[derive(Parser)]
#[command(name = "peaklab", version, about = "Exact counts of permutations by peak composition")]
struct Cli {
    /// Line-delimited JSON count cache.
    #[arg(long, global = true, env = "PEAKLAB_CACHE")]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the permutations with a given peak composition or peak set.
    Count {
        #[arg(long, conflicts_with = "peakset", required_unless_present = "peakset")]
        composition: Option<String>,
        /// Comma-separated peak positions, with --n.
        #[arg(long, requires = "n", allow_hyphen_values = true)]
        peakset: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// One or more of fast, brute, formula; all must agree.
        #[arg(long, value_delimiter = ',', default_value = "fast")]
        method: Vec<Method>,
        /// Largest size counted by listing.
        #[arg(long, default_value_t = Oracle::DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Print the Int or Ini matrix, or the T vector, of a composition.
    Table {
        #[arg(long)]
        composition: String,
        #[arg(long)]
        stat: Stat,
        #[arg(long, default_value = "json")]
        format: Format,
        /// Largest size tabulated by listing.
        #[arg(long, default_value_t = Oracle::DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Find the maximal compositions of n.
    Maximal {
        #[arg(long)]
        n: usize,
        /// Skip compositions ruled out by the forbidden patterns.
        #[arg(long)]
        prune: bool,
        /// Include every composition's count in the report.
        #[arg(long)]
        dump_counts: bool,
    },
    /// Check the maximal sets and maximum values for every n in a range.
    Verify {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Split a composition at its parts equal to 3.
    Factorize {
        #[arg(long)]
        composition: String,
    },
    /// List the first permutations with a peak composition, lexicographically.
    Enumerate {
        #[arg(long)]
        composition: String,
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Fast,
    Brute,
    Formula,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Fast => "fast",
            Method::Brute => "brute",
            Method::Formula => "formula",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Stat {
    Int,
    Ini,
    T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Everything that ends a run early, with its exit code.
enum Failure {
    Invalid(String),
    Limit(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ExhaustionLimit { .. } => Failure::Limit(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

struct Outcome {
    output: String,
    ok: bool,
}

impl Outcome {
    fn json<T: Serialize>(value: &T, ok: bool) -> Self {
        let output = serde_json::to_string_pretty(value).expect("outputs serialize");
        Outcome { output, ok }
    }
}

fn parse_composition(s: &str) -> Result<Composition, Failure> {
    s.parse().map_err(Failure::from)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{}", out.output);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Limit(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let cache = CountCache::new();
    let mut file = cli.cache.as_deref().map(|p| CacheFile::load(p, &cache)).transpose()?;
    let engine = Engine::with_cache(cache);
    let out = match cli.command {
        Command::Count { composition, peakset, n, method, limit } => {
            count(&engine, composition, peakset, n, &method, limit)?
        }
        Command::Table { composition, stat, format, limit } => {
            table(&parse_composition(&composition)?, stat, format, limit)?
        }
        Command::Maximal { n, prune, dump_counts } => {
            if n == 0 {
                return Err(Failure::Invalid("n must be at least 1".into()));
            }
            let engine = engine.dump_counts(dump_counts);
            let report = engine.exact_maximal(n, prune)?;
            save(&mut file, &engine)?;
            return Ok(Outcome::json(&report, report.passes()));
        }
        Command::Verify { from, to } => {
            let reports = engine.verify_theorems(from, to)?;
            let ok = reports.iter().all(|r| r.passes());
            Outcome::json(&reports, ok)
        }
        Command::Factorize { composition } => {
            let c = parse_composition(&composition)?;
            let f = c.three_factorization();
            let factors: Vec<String> = f.factors().iter().map(|x| x.to_string()).collect();
            Outcome::json(&json!({ "composition": c.to_string(), "k": f.k(), "factors": factors }), true)
        }
        Command::Enumerate { composition, limit } => {
            let c = parse_composition(&composition)?;
            let members = Oracle::default().class_members(&c, limit)?;
            let words: Vec<&[u32]> = members.iter().map(|p| p.word()).collect();
            Outcome::json(&json!({ "composition": c.to_string(), "permutations": words }), true)
        }
    };
    save(&mut file, &engine)?;
    Ok(out)
}

fn save(file: &mut Option<CacheFile>, engine: &Engine) -> Result<(), Failure> {
    if let Some(f) = file {
        f.save(engine.cache())?;
    }
    Ok(())
}

fn count(
    engine: &Engine,
    composition: Option<String>,
    peakset: Option<String>,
    n: Option<usize>,
    methods: &[Method],
    limit: usize,
) -> Result<Outcome, Failure> {
    let c = match (composition, peakset, n) {
        (Some(s), _, _) => parse_composition(&s)?,
        (None, Some(s), Some(n)) => PeakSet::parse(&s, n)?.to_composition(),
        _ => return Err(Failure::Invalid("give --composition or --peakset with --n".into())),
    };
    let mut values: Vec<(Method, BigUint)> = Vec::new();
    for &m in methods {
        if values.iter().any(|(seen, _)| *seen == m) {
            continue;
        }
        let v = match m {
            Method::Fast if c.is_admissible() => engine.cache().count(&c),
            Method::Fast => count_fast(&c),
            Method::Brute => Oracle::with_limit(limit).count(&c)?,
            Method::Formula if !c.is_admissible() => BigUint::default(),
            Method::Formula => formula_count(&c)
                .map(|(_, v)| v)
                .ok_or_else(|| Failure::Invalid(format!("no closed form applies to ({c})")))?,
        };
        values.push((m, v));
    }
    let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
    let method: Vec<&str> = values.iter().map(|(m, _)| m.name()).collect();
    let peakset = c.to_peak_set().ok().map(|s| s.positions().to_vec());
    let mut out = json!({
        "n": c.size(),
        "composition": c.to_string(),
        "peakset": peakset,
        "count": values[0].1.to_string(),
        "method": method.join(","),
    });
    if !agree {
        let counts: serde_json::Map<String, Value> =
            values.iter().map(|(m, v)| (m.name().to_string(), Value::String(v.to_string()))).collect();
        out["counts"] = Value::Object(counts);
    }
    Ok(Outcome::json(&out, agree))
}

fn table(c: &Composition, stat: Stat, format: Format, limit: usize) -> Result<Outcome, Failure> {
    let oracle = Oracle::with_limit(limit);
    let n = c.size();
    let labels: Vec<usize> = (1..=n).collect();
    let output = match stat {
        Stat::Int | Stat::Ini => {
            let m = if stat == Stat::Int { oracle.int_matrix(c)? } else { oracle.ini_matrix(c)? };
            let rows: Vec<Vec<String>> =
                m.rows().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
            match format {
                Format::Json => {
                    let name = if stat == Stat::Int { "int" } else { "ini" };
                    serde_json::to_string_pretty(&json!({
                        "composition": c.to_string(),
                        "stat": name,
                        "rows": labels,
                        "columns": labels,
                        "matrix": rows,
                    }))
                    .expect("tables serialize")
                }
                Format::Csv => {
                    let mut s = String::from("a\\b");
                    for b in &labels {
                        write!(s, ",{b}").unwrap();
                    }
                    for (a, row) in labels.iter().zip(&rows) {
                        write!(s, "\n{a},{}", row.join(",")).unwrap();
                    }
                    s
                }
            }
        }
        Stat::T => {
            let t = oracle.t_vector(c)?;
            let values: Vec<String> = t.entries().iter().map(|v| v.to_string()).collect();
            match format {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "composition": c.to_string(),
                    "stat": "t",
                    "columns": labels,
                    "vector": values,
                }))
                .expect("tables serialize"),
                Format::Csv => {
                    let mut s = String::from("b,T");
                    for (b, v) in labels.iter().zip(&values) {
                        write!(s, "\n{b},{v}").unwrap();
                    }
                    s
                }
            }
        }
    };
    Ok(Outcome { output, ok: true })
}

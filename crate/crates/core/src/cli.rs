//! Command-line front end: `compute`, `table`, `verify`, `bench`.
//!
//! Exit codes: 0 success, 1 identity failure, 2 usage or domain error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::bench::{run_bench, BenchConfig};
use crate::bernoulli::{poly_bernoulli, poly_bernoulli_row};
use crate::error::Error;
use crate::exact::{format_rational, parse_rational, rational_from};
use crate::harmonic::{harmonic, HarmonicMethod};
use crate::powersum::{polylog_neg_eval, FormulaId, PowerSumQuery};
use crate::report::BenchRecord;
use crate::series::{polybernoulli_egf, series_li, PowerSeries};
use crate::verify::{self, Suite, VerifyOptions};
use crate::Tables;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "POWSUM_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "powsum",
    version,
    about = "Exact power sums, harmonic and poly-Bernoulli numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print exact values.
    Compute(ComputeArgs),
    /// Dump a Stirling triangle (CSV) or a series (JSON).
    Table(TableArgs),
    /// Run an identity suite and print its report as JSON.
    Verify(VerifyArgs),
    /// Time the power-sum formulas against each other.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Quantity {
    Powersum,
    Harmonic,
    Bernoulli,
    Polybernoulli,
    Stirling1,
    Stirling2,
    Polylog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    #[arg(value_enum)]
    quantity: Quantity,
    #[arg(short = 'n')]
    n: Option<u64>,
    #[arg(short = 'p', allow_hyphen_values = true)]
    p: Option<i64>,
    #[arg(short = 'k')]
    k: Option<u64>,
    /// Evaluation point for `polylog`, as num/den.
    #[arg(short = 't', allow_hyphen_values = true)]
    t: Option<String>,
    /// Power-sum formula, or harmonic method (direct|theorem1|eq2).
    #[arg(long)]
    formula: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Sweep the leading index (n, or k for polybernoulli) from 0 to this bound.
    #[arg(long)]
    nmax: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Stirling1,
    Stirling2,
    Li,
    #[value(name = "polybernoulli_egf")]
    PolybernoulliEgf,
    #[value(name = "harmonic_ogf")]
    HarmonicOgf,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(value_enum)]
    kind: TableKind,
    #[arg(short = 'n')]
    n: Option<usize>,
    #[arg(short = 'p', allow_hyphen_values = true)]
    p: Option<i64>,
    #[arg(long, default_value_t = 25)]
    order: usize,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    suite: String,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long)]
    pmax: Option<usize>,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',')]
    formulas: Vec<String>,
    #[arg(short = 'n', value_delimiter = ',', required = true)]
    n: Vec<u64>,
    #[arg(short = 'p', value_delimiter = ',', required = true)]
    p: Vec<u32>,
    #[arg(long, default_value_t = 5)]
    reps: u32,
    #[arg(long, default_value_t = 1)]
    warmup: u32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return e.exit_code();
        }
    };
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => match v.parse::<usize>() {
            Ok(n) if n > 0 => Some(n),
            _ => {
                let _ = writeln!(
                    err,
                    "error: {THREADS_ENV} must be a positive integer, got {v:?}"
                );
                return EXIT_USAGE;
            }
        },
        Err(_) => None,
    };
    match threads {
        None => dispatch(cli.command, out, err),
        Some(n) => {
            let pool = match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(pool) => pool,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_USAGE;
                }
            };
            let (mut obuf, mut ebuf) = (Vec::new(), Vec::new());
            let code = pool.install(|| dispatch(cli.command, &mut obuf, &mut ebuf));
            let _ = out.write_all(&obuf);
            let _ = err.write_all(&ebuf);
            code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let tables = Tables::new();
    let result = match command {
        Command::Compute(a) => run_compute(&tables, &a, out),
        Command::Table(a) => run_table(&tables, &a, out),
        Command::Verify(a) => run_verify(&tables, &a, out),
        Command::Bench(a) => run_bench_cmd(&tables, &a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::ChecksumMismatch { .. } | Error::NonIntegral { .. } => EXIT_FAILURE,
                _ => EXIT_USAGE,
            }
        }
    }
}

type CmdResult = Result<i32, Error>;

fn io_err(e: std::io::Error) -> Error {
    Error::Domain(format!("write failed: {e}"))
}

fn require<T>(v: Option<T>, quantity: &str, flag: &str) -> Result<T, Error> {
    v.ok_or_else(|| Error::Domain(format!("{quantity} requires {flag}")))
}

fn nonneg(v: i64, what: &str) -> Result<u32, Error> {
    u32::try_from(v).map_err(|_| Error::Domain(format!("{what} requires p >= 0, got p = {v}")))
}

/// One output record: ordered fields, exact values as strings.
struct Row(Vec<(&'static str, Value)>);

impl Row {
    fn value(&self) -> &Value {
        self.0
            .iter()
            .find(|(k, _)| *k == "value")
            .map(|(_, v)| v)
            .expect("row has a value field")
    }
}

fn field_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn emit(rows: &[Row], format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Plain => {
            for r in rows {
                writeln!(out, "{}", field_text(r.value()))?;
            }
        }
        Format::Json => {
            for r in rows {
                let fields: Vec<String> =
                    r.0.iter()
                        .map(|(k, v)| format!("{}:{}", Value::from(*k), v))
                        .collect();
                writeln!(out, "{{{}}}", fields.join(","))?;
            }
        }
        Format::Csv => {
            if let Some(first) = rows.first() {
                let header: Vec<&str> = first.0.iter().map(|(k, _)| *k).collect();
                writeln!(out, "{}", header.join(","))?;
            }
            for r in rows {
                let cells: Vec<String> = r.0.iter().map(|(_, v)| field_text(v)).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
        }
    }
    Ok(())
}

fn indices(
    single: Option<u64>,
    nmax: Option<u64>,
    quantity: &str,
    flag: &str,
) -> Result<Vec<u64>, Error> {
    match (single, nmax) {
        (_, Some(m)) => Ok((0..=m).collect()),
        (Some(v), None) => Ok(vec![v]),
        (None, None) => Err(Error::Domain(format!(
            "{quantity} requires {flag} (or --nmax)"
        ))),
    }
}

fn run_compute(tables: &Tables, a: &ComputeArgs, out: &mut dyn Write) -> CmdResult {
    let s = |r: &crate::Rational| Value::from(format_rational(r));
    let rows: Vec<Row> = match a.quantity {
        Quantity::Powersum => {
            let p = nonneg(require(a.p, "powersum", "-p")?, "powersum")?;
            let formula: FormulaId = a.formula.as_deref().unwrap_or("direct").parse()?;
            let mut rows = Vec::new();
            for n in indices(a.n, a.nmax, "powersum", "-n")? {
                let v = PowerSumQuery { n, p, formula }.evaluate(tables)?;
                rows.push(Row(vec![
                    ("n", n.into()),
                    ("p", p.into()),
                    ("formula", formula.name().into()),
                    ("value", s(&rational_from(v))),
                ]));
            }
            rows
        }
        Quantity::Harmonic => {
            let p = require(a.p, "harmonic", "-p")?;
            let method: HarmonicMethod = a.formula.as_deref().unwrap_or("direct").parse()?;
            let mut rows = Vec::new();
            for n in indices(a.n, a.nmax, "harmonic", "-n")? {
                let v = harmonic(tables, n, p, method)?;
                rows.push(Row(vec![
                    ("n", n.into()),
                    ("p", p.into()),
                    ("value", s(&v)),
                    ("method", method.name().into()),
                ]));
            }
            rows
        }
        Quantity::Bernoulli => indices(a.n, a.nmax, "bernoulli", "-n")?
            .into_iter()
            .map(|n| {
                Row(vec![
                    ("n", n.into()),
                    ("value", s(&tables.bernoulli.get(n as usize))),
                ])
            })
            .collect(),
        Quantity::Polybernoulli => {
            let p = require(a.p, "polybernoulli", "-p")?;
            let ks = indices(a.k, a.nmax, "polybernoulli", "-k")?;
            let values = if a.nmax.is_some() {
                poly_bernoulli_row(p, *ks.last().expect("nonempty") as usize)
            } else {
                vec![poly_bernoulli(ks[0] as usize, p)]
            };
            ks.iter()
                .zip(values)
                .map(|(&k, v)| Row(vec![("k", k.into()), ("p", p.into()), ("value", s(&v))]))
                .collect()
        }
        Quantity::Stirling1 | Quantity::Stirling2 => {
            let name = if a.quantity == Quantity::Stirling1 {
                "stirling1"
            } else {
                "stirling2"
            };
            let k = require(a.k, name, "-k")?;
            let table = if a.quantity == Quantity::Stirling1 {
                &tables.first
            } else {
                &tables.second
            };
            indices(a.n, a.nmax, name, "-n")?
                .into_iter()
                .map(|n| {
                    let v = table.get(n as usize, k as usize);
                    Row(vec![
                        ("n", n.into()),
                        ("k", k.into()),
                        ("value", Value::from(v.to_string())),
                    ])
                })
                .collect()
        }
        Quantity::Polylog => {
            if a.nmax.is_some() {
                return Err(Error::Domain("polylog does not take --nmax".into()));
            }
            let p = nonneg(require(a.p, "polylog", "-p")?, "polylog")?;
            let t = parse_rational(&require(a.t.clone(), "polylog", "-t")?)?;
            let v = polylog_neg_eval(tables, p, &t)?;
            vec![Row(vec![("p", p.into()), ("t", s(&t)), ("value", s(&v))])]
        }
    };
    emit(&rows, a.format, out).map_err(io_err)?;
    Ok(EXIT_OK)
}

fn run_table(tables: &Tables, a: &TableArgs, out: &mut dyn Write) -> CmdResult {
    let text = match a.kind {
        TableKind::Stirling1 => tables.first.to_csv(require(a.n, "table stirling1", "-n")?),
        TableKind::Stirling2 => tables.second.to_csv(require(a.n, "table stirling2", "-n")?),
        TableKind::Li => series_li(require(a.p, "table li", "-p")?, a.order).to_json() + "\n",
        TableKind::PolybernoulliEgf => {
            polybernoulli_egf(require(a.p, "table polybernoulli_egf", "-p")?, a.order).to_json()
                + "\n"
        }
        TableKind::HarmonicOgf => {
            let p = require(a.p, "table harmonic_ogf", "-p")?;
            let one_minus_t = &PowerSeries::one(a.order) - &PowerSeries::variable(a.order);
            series_li(p, a.order).checked_div(&one_minus_t)?.to_json() + "\n"
        }
    };
    out.write_all(text.as_bytes()).map_err(io_err)?;
    Ok(EXIT_OK)
}

fn run_verify(tables: &Tables, a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let suite: Suite = a.suite.parse()?;
    let opts = VerifyOptions {
        nmax: a.nmax,
        pmax: a.pmax,
        order: a.order,
        inject_fault: a.inject_fault,
    };
    let reports = verify::run(tables, suite, &opts);
    for r in &reports {
        writeln!(out, "{}", r.to_json()).map_err(io_err)?;
    }
    let passed = reports.last().is_some_and(|r| r.passed);
    Ok(if passed { EXIT_OK } else { EXIT_FAILURE })
}

fn run_bench_cmd(
    tables: &Tables,
    a: &BenchArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let formulas = if a.formulas.is_empty() {
        FormulaId::ALL.to_vec()
    } else {
        a.formulas
            .iter()
            .map(|f| f.parse())
            .collect::<Result<Vec<FormulaId>, _>>()?
    };
    let config = BenchConfig {
        formulas,
        ns: a.n.clone(),
        ps: a.p.clone(),
        reps: a.reps,
        warmup: a.warmup,
    };
    let outcome = run_bench(tables, &config)?;
    if config.reps == 0 {
        writeln!(out, "n,p,checksum").map_err(io_err)?;
        for c in &outcome.checksums {
            writeln!(out, "{},{},{}", c.n, c.p, c.value).map_err(io_err)?;
        }
        return Ok(EXIT_OK);
    }
    for c in &outcome.checksums {
        writeln!(err, "checksum,{},{},{}", c.n, c.p, c.value).map_err(io_err)?;
    }
    writeln!(out, "{}", BenchRecord::CSV_HEADER).map_err(io_err)?;
    for r in &outcome.records {
        writeln!(out, "{}", r.csv_row()).map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

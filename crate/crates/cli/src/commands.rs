use std::fmt::Write as _;

use clap::{Args, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::json;

use frobkit::exec::Execution;
use frobkit::verifier::{
    verify_grid_with, Family, IntRange, PPolicy, Quantity, SweepSpec, DEFAULT_COST_THRESHOLD,
};
use frobkit::{Error, Limits, Oracle, Result};

use crate::output::{csv_table, gens_json, json, text_table, Format};
use crate::source::{recoverable, GeneratorArgs, Source};

/// What a command prints and how it exits.
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn new(stdout: String, failed: bool) -> Self {
        Self {
            stdout,
            code: u8::from(failed),
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Method {
    Closed,
    Oracle,
    #[default]
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum QuantityArg {
    #[default]
    Frobenius,
    Sylvester,
}

impl From<QuantityArg> for Quantity {
    fn from(q: QuantityArg) -> Self {
        match q {
            QuantityArg::Frobenius => Quantity::Frobenius,
            QuantityArg::Sylvester => Quantity::Sylvester,
        }
    }
}

struct Resolved {
    closed: Option<Result<BigInt>>,
    oracle: Option<BigInt>,
    value: BigInt,
    label: &'static str,
    agree: Option<bool>,
}

fn resolve(
    method: Method,
    closed: impl FnOnce() -> Result<BigInt>,
    oracle: impl FnOnce() -> Result<BigInt>,
) -> Result<Resolved> {
    let closed = (method != Method::Oracle).then(closed);
    if let Some(Err(e)) = &closed {
        if !recoverable(e) {
            return Err(e.clone());
        }
    }
    let closed_value = closed.as_ref().and_then(|c| c.as_ref().ok()).cloned();
    let oracle = match (method, &closed_value) {
        (Method::Closed, Some(_)) => None,
        _ => Some(oracle()?),
    };
    let (value, label, agree) = match (method, closed_value, &oracle) {
        (Method::Closed, Some(v), _) => (v, "closed", None),
        (Method::Closed, None, Some(o)) => (o.clone(), "oracle-fallback", None),
        (Method::Both, Some(v), Some(o)) => (o.clone(), "both", Some(v == *o)),
        (_, _, Some(o)) => (o.clone(), "oracle", None),
        (_, _, None) => unreachable!("oracle runs unless the closed method succeeded"),
    };
    Ok(Resolved {
        closed,
        oracle,
        value,
        label,
        agree,
    })
}

fn closed_value(src: &Source, p: u64, quantity: Quantity) -> Result<BigInt> {
    let params = src
        .params
        .as_ref()
        .ok_or_else(|| Error::Unsupported("no closed form for these generators".into()))?;
    match quantity {
        Quantity::Frobenius => params.frobenius_closed(p),
        Quantity::Sylvester => params.sylvester_closed(p).map(BigInt::from),
    }
}

fn oracle_value(oracle: &mut Oracle, p: u64, quantity: Quantity) -> Result<BigInt> {
    match quantity {
        Quantity::Frobenius => oracle.frobenius_scan(p),
        Quantity::Sylvester => oracle.sylvester_count(p).map(BigInt::from),
    }
}

fn header_lines(out: &mut String, src: &Source) {
    writeln!(out, "generators: {}", src.gens).unwrap();
    for (k, v) in &src.details {
        writeln!(out, "{k}: {v}").unwrap();
    }
}

fn details_json(src: &Source) -> serde_json::Value {
    src.details
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub source: GeneratorArgs,
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_enum, default_value_t)]
    pub quantity: QuantityArg,
    #[arg(long, value_enum, default_value_t)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

pub fn compute(args: &ComputeArgs, limits: Limits) -> Result<Outcome> {
    let src = args.source.resolve()?;
    let quantity = Quantity::from(args.quantity);
    let p = args.p;
    let r = resolve(
        args.method,
        || closed_value(&src, p, quantity),
        || oracle_value(&mut Oracle::with_limits(&src.gens, limits)?, p, quantity),
    )?;
    let failed = r.agree == Some(false);

    let stdout = match args.format {
        Format::Text => {
            let mut out = String::new();
            header_lines(&mut out, &src);
            writeln!(out, "p: {p}\nquantity: {quantity}").unwrap();
            match &r.closed {
                Some(Ok(v)) => writeln!(out, "closed: {v}").unwrap(),
                Some(Err(e)) => writeln!(out, "closed: unavailable ({e})").unwrap(),
                None => {}
            }
            if let Some(o) = &r.oracle {
                writeln!(out, "oracle: {o}").unwrap();
            }
            if let Some(agree) = r.agree {
                writeln!(out, "agreement: {}", if agree { "yes" } else { "NO" }).unwrap();
            }
            writeln!(out, "value: {} ({})", r.value, r.label).unwrap();
            out
        }
        Format::Json => {
            let (closed, closed_error) = split_closed(&r.closed);
            json(&json!({
                "generators": gens_json(&src.gens),
                "details": details_json(&src),
                "p": p.to_string(),
                "quantity": quantity.to_string(),
                "closed": closed,
                "closed_error": closed_error,
                "oracle": r.oracle.as_ref().map(ToString::to_string),
                "value": r.value.to_string(),
                "source": r.label,
                "match": r.agree,
            })) + "\n"
        }
        Format::Csv => {
            let (closed, closed_error) = split_closed(&r.closed);
            csv_table(
                [
                    "generators",
                    "p",
                    "quantity",
                    "closed",
                    "closed_error",
                    "oracle",
                    "value",
                    "source",
                    "match",
                ],
                [[
                    gens_json(&src.gens).join(" "),
                    p.to_string(),
                    quantity.to_string(),
                    closed.unwrap_or_default(),
                    closed_error.unwrap_or_default(),
                    r.oracle
                        .as_ref()
                        .map(ToString::to_string)
                        .unwrap_or_default(),
                    r.value.to_string(),
                    r.label.to_string(),
                    r.agree.map(|a| a.to_string()).unwrap_or_default(),
                ]],
            )
        }
    };
    Ok(Outcome::new(stdout, failed))
}

fn split_closed(closed: &Option<Result<BigInt>>) -> (Option<String>, Option<String>) {
    match closed {
        Some(Ok(v)) => (Some(v.to_string()), None),
        Some(Err(e)) => (None, Some(e.tag().to_string())),
        None => (None, None),
    }
}

#[derive(Args, Debug)]
pub struct AperyArgs {
    #[command(flatten)]
    pub source: GeneratorArgs,
    #[arg(long)]
    pub p: u64,
    /// Also lay out the `(x2, x3)` positions (triples with c > 0).
    #[arg(long)]
    pub grid: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

pub fn apery(args: &AperyArgs, limits: Limits) -> Result<Outcome> {
    let src = args.source.resolve()?;
    let p = args.p;
    let grid = if args.grid {
        let t = src
            .triple()
            .ok_or_else(|| Error::Unsupported("--grid needs a shifted triple with c > 0".into()))?;
        Some(t.apery_grid(p)?)
    } else {
        None
    };
    let mut oracle = Oracle::with_limits(&src.gens, limits)?;
    let table = oracle.apery(p)?;
    let frobenius = table.frobenius();
    let sylvester = table.sylvester()?;
    let entries = table.entries();

    let mut positions = vec![None; entries.len()];
    let mut grid_matches = None;
    if let Some(g) = &grid {
        grid_matches = Some(g.values_by_residue().as_deref() == Some(entries));
        for &pos in g.positions() {
            let j = (g.value_at(pos) % src.gens.a1())
                .to_usize()
                .expect("residue < a1");
            positions[j] = Some(pos);
        }
    }
    let rows: Vec<[String; 4]> = entries
        .iter()
        .zip(&positions)
        .enumerate()
        .map(|(j, (e, pos))| {
            let (x2, x3) = pos.map_or((String::new(), String::new()), |(x2, x3)| {
                (x2.to_string(), x3.to_string())
            });
            [j.to_string(), e.to_string(), x2, x3]
        })
        .collect();
    let failed = grid_matches == Some(false);

    let stdout = match args.format {
        Format::Text => {
            let mut out = String::new();
            header_lines(&mut out, &src);
            writeln!(out, "p: {p}").unwrap();
            let table = if grid.is_some() {
                text_table(["residue", "entry", "x2", "x3"], &rows)
            } else {
                let short: Vec<[String; 2]> =
                    rows.iter().map(|r| [r[0].clone(), r[1].clone()]).collect();
                text_table(["residue", "entry"], &short)
            };
            writeln!(out, "{table}").unwrap();
            writeln!(out, "max entry: {}", table_max(entries)).unwrap();
            writeln!(out, "g_p: {frobenius}\nn_p: {sylvester}").unwrap();
            if let (Some(g), Some(ok)) = (&grid, grid_matches) {
                let (x2, x3) = g.max_position();
                writeln!(
                    out,
                    "grid positions: {}, max at ({x2}, {x3})",
                    g.positions().len()
                )
                .unwrap();
                writeln!(
                    out,
                    "grid: {}",
                    if ok {
                        "matches the Apéry set"
                    } else {
                        "MISMATCH"
                    }
                )
                .unwrap();
            }
            out
        }
        Format::Json => {
            json(&json!({
                "generators": gens_json(&src.gens),
                "details": details_json(&src),
                "p": p.to_string(),
                "entries": entries.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "max_entry": table_max(entries),
                "frobenius": frobenius.to_string(),
                "sylvester": sylvester.to_string(),
                "grid": grid.as_ref().map(|g| g.positions().iter().map(|&(x2, x3)| json!({
                    "x2": x2.to_string(),
                    "x3": x3.to_string(),
                    "value": g.value_at((x2, x3)).to_string(),
                })).collect::<Vec<_>>()),
                "grid_matches": grid_matches,
            })) + "\n"
        }
        Format::Csv => csv_table(["residue", "entry", "x2", "x3"], rows),
    };
    Ok(Outcome::new(stdout, failed))
}

fn table_max(entries: &[num_bigint::BigUint]) -> String {
    entries
        .iter()
        .max()
        .map(ToString::to_string)
        .unwrap_or_default()
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// 3 for triples, 4 for quads.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(3..=4))]
    pub vars: u8,
    #[arg(long, default_value = "1..3", allow_hyphen_values = true)]
    pub a_range: IntRange,
    #[arg(long, default_value = "2..4", allow_hyphen_values = true)]
    pub b_range: IntRange,
    #[arg(long, default_value = "-10..10", allow_hyphen_values = true)]
    pub c_range: IntRange,
    #[arg(long, default_value = "1..2", allow_hyphen_values = true)]
    pub n_range: IntRange,
    /// `theorem-range`, or a fixed maximum p.
    #[arg(long, default_value = "theorem-range")]
    pub p_policy: PPolicy,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Subsample at most this many tuples.
    #[arg(long)]
    pub limit: Option<usize>,
    /// Skip tuples whose smallest generator exceeds this.
    #[arg(long, default_value_t = DEFAULT_COST_THRESHOLD)]
    pub cost_threshold: u64,
    /// Run on one thread.
    #[arg(long)]
    pub sequential: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

pub fn verify(args: &VerifyArgs, limits: Limits) -> Result<Outcome> {
    let family = if args.vars == 4 {
        Family::Quad
    } else {
        Family::Triple
    };
    let mut spec = SweepSpec::new(
        family,
        args.a_range,
        args.b_range,
        args.c_range,
        args.n_range,
    )?;
    spec.p_policy = args.p_policy;
    spec.sample_seed = args.seed;
    spec.sample_limit = args.limit;
    spec.cost_threshold = args.cost_threshold;
    spec.limits = limits;
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let report = verify_grid_with(&spec, exec)?;
    let failed = !report.passed();

    let stdout = match args.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
        Format::Text => {
            let s = &report.summary;
            let mut out = String::new();
            for (k, v) in [
                ("total", s.total),
                ("matched", s.matched),
                ("mismatched", s.mismatched),
                ("no case", s.no_case),
                ("out of range", s.out_of_range),
                ("skipped (gcd)", s.skipped_gcd),
                ("skipped (invalid)", s.skipped_invalid),
                ("skipped (cost)", s.skipped_cost),
                ("oracle errors", s.oracle_errors),
            ] {
                writeln!(out, "{k:<18} {v}").unwrap();
            }
            for m in report.mismatches() {
                let case = m
                    .case
                    .as_deref()
                    .map(|c| format!(" case {c}"))
                    .unwrap_or_default();
                writeln!(
                    out,
                    "mismatch: a={} b={} c={} n={} p={} {}{case}: closed {}, oracle {}",
                    m.a,
                    m.b,
                    m.c,
                    m.n,
                    m.p,
                    m.quantity,
                    m.closed.as_deref().unwrap_or("-"),
                    m.oracle
                )
                .unwrap();
            }
            for f in &report.failures {
                writeln!(
                    out,
                    "oracle error: a={} b={} c={} n={} p={} {}: {}",
                    f.a, f.b, f.c, f.n, f.p, f.quantity, f.error
                )
                .unwrap();
            }
            writeln!(out, "result: {}", if failed { "FAIL" } else { "pass" }).unwrap();
            out
        }
    };
    Ok(Outcome::new(stdout, failed))
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub source: GeneratorArgs,
    #[arg(long)]
    pub p_max: u64,
    /// `closed` falls back to the oracle where no closed form applies.
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

pub fn table(args: &TableArgs, limits: Limits) -> Result<Outcome> {
    let src = args.source.resolve()?;
    let mut oracle = Oracle::with_limits(&src.gens, limits)?;
    let mut rows = Vec::new();
    let mut failed = false;
    for p in 0..=args.p_max {
        let mut cell = |q| -> Result<(String, String)> {
            let r = resolve(
                args.method,
                || closed_value(&src, p, q),
                || oracle_value(&mut oracle, p, q),
            )?;
            let label = match r.agree {
                Some(false) => {
                    failed = true;
                    "MISMATCH"
                }
                _ => r.label,
            };
            Ok((r.value.to_string(), label.to_string()))
        };
        let (g, g_method) = cell(Quantity::Frobenius)?;
        let (n, n_method) = cell(Quantity::Sylvester)?;
        rows.push([p.to_string(), g, n, g_method, n_method]);
    }
    let header = ["p", "g_p", "n_p", "g_method", "n_method"];

    let stdout = match args.format {
        Format::Text => {
            let mut out = String::new();
            header_lines(&mut out, &src);
            writeln!(out, "{}", text_table(header, &rows)).unwrap();
            out
        }
        Format::Json => {
            json(&json!({
                "generators": gens_json(&src.gens),
                "details": details_json(&src),
                "rows": rows.iter().map(|r| {
                    header.iter().zip(r).map(|(k, v)| (k.to_string(), json!(v)))
                        .collect::<serde_json::Map<_, _>>()
                }).collect::<Vec<_>>(),
            })) + "\n"
        }
        Format::Csv => csv_table(header, rows),
    };
    Ok(Outcome::new(stdout, failed))
}

//! Command dispatch for the `nilbound` binary.
//!
//! Every command produces one JSON document (see `docs/report-schema.md`);
//! `--out DIR` additionally writes it, plus any CSV tables, into `DIR`.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nilbound_core::counting::{
    count_cyclic_ell, count_quadratic, enumerate_cyclic_ell, enumerate_quadratic, enumerate_v4, v4_fiber_check,
    write_counts_csv, write_records_csv, FieldRecord,
};
use nilbound_core::dirichlet::{
    geometric_checkpoints, log_spaced_checkpoints, multi_factor_sum, parse_specs, slope_estimate, write_csv,
};
use nilbound_core::malle::{b_constant, min_index};
use nilbound_core::series::{d_range, enumerate_refinements, minimal_index_is_central, optimize_d_with_cap};
use nilbound_core::verify::{run_suite, suite_names, VerifyConfig};
use nilbound_core::{catalog, BaseFieldData, FiniteGroup, PermGroup, Permutation, Ratio};

pub const SCHEMA_VERSION: u32 = 1;

/// Record tables above this bound are skipped; counts still stream.
const RECORDS_MAX_X: u64 = 10_000_000;

#[derive(Parser, Debug)]
#[command(name = "nilbound", version, about = "Counting exponents for nilpotent Galois groups")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Catalog name or 1-based cycle notation, generators separated by `;`.
    #[arg(long, global = true, env = "NILBOUND_GROUP")]
    pub group: Vec<String>,
    /// `Q`, a JSON file, or inline JSON.
    #[arg(long, global = true, env = "NILBOUND_FIELD", default_value = "Q")]
    pub field: String,
    #[arg(long, global = true, env = "NILBOUND_SEED", default_value_t = 42)]
    pub seed: u64,
    /// Accepts `100000`, `1e8` or `10^8`.
    #[arg(long, global = true, env = "NILBOUND_MAX_X", value_parser = parse_count)]
    pub max_x: Option<u64>,
    /// Number of log-spaced checkpoints; doubling steps from 1000 when absent.
    #[arg(long, global = true, env = "NILBOUND_CHECKPOINTS")]
    pub checkpoints: Option<usize>,
    #[arg(long, global = true, env = "NILBOUND_EXHAUSTIVE_CAP", default_value_t = nilbound_core::series::DEFAULT_EXHAUSTIVE_CAP)]
    pub exhaustive_cap: usize,
    /// Directory for the report and CSV tables.
    #[arg(long, global = true, env = "NILBOUND_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// a, b, the optimal refinement and d for each `--group`.
    Invariants,
    /// Every refinement of one group with its d, plus the range of d.
    Refinements {
        /// Chains listed in full before truncating.
        #[arg(long, default_value_t = 200)]
        limit: usize,
    },
    /// Runs verification suites; all of them when none are named.
    Verify {
        suites: Vec<String>,
        /// Random ramification profiles per counting suite.
        #[arg(long, default_value_t = 200)]
        profiles: usize,
        /// Print the suite names and exit.
        #[arg(long)]
        list: bool,
    },
    /// Partial sums of restricted Euler products given as `ℓ:d:m[,ℓ:d:m…]`.
    Dseries { specs: String },
    /// Counts fields over ℚ by discriminant.
    Count {
        kind: CountKind,
        /// Also write one row per field (only for `--max-x` up to 1e7).
        #[arg(long)]
        records: bool,
    },
    /// Lists the named groups.
    Catalog,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CountKind {
    Quadratic,
    Cyclic3,
    Cyclic5,
    Cyclic7,
    V4,
}

/// A finished command: the JSON report and the process exit code.
pub struct Outcome {
    pub report: Value,
    pub success: bool,
}

/// Parses `12345`, `1e8`, `2.5e6`, `10^8` and `1_000_000`.
pub fn parse_count(text: &str) -> std::result::Result<u64, String> {
    let t: String = text.trim().chars().filter(|&c| c != '_').collect();
    let bad = || format!("not a positive integer: `{text}`");
    if let Some((b, e)) = t.split_once('^') {
        let b: u64 = b.parse().map_err(|_| bad())?;
        let e: u32 = e.parse().map_err(|_| bad())?;
        return b.checked_pow(e).ok_or_else(bad);
    }
    if let Ok(v) = t.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = t.parse().map_err(|_| bad())?;
    if !(v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v < u64::MAX as f64) {
        return Err(bad());
    }
    Ok(v as u64)
}

/// `"Q"`, inline JSON (starting with `{`), or a path to a JSON file.
pub fn load_field(spec: &str) -> Result<BaseFieldData> {
    let t = spec.trim();
    if t == "Q" || t.starts_with('{') {
        return Ok(BaseFieldData::parse(t)?);
    }
    let text = fs::read_to_string(t).with_context(|| format!("reading field data from {t}"))?;
    Ok(BaseFieldData::from_json_str(&text)?)
}

/// A catalog name, or generators such as `(1,2,3,4);(1,3)`.
pub fn load_group(spec: &str) -> Result<PermGroup> {
    let t = spec.trim();
    if !t.starts_with('(') {
        return Ok(catalog::group(t)?);
    }
    let parts: Vec<&str> = t.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
    let degree = parts
        .iter()
        .map(|p| Permutation::parse(p, None).map(|g| g.degree()))
        .collect::<nilbound_core::Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    Ok(PermGroup::from_cycle_strings(degree, &parts, nilbound_core::permcore::DEFAULT_CAP)?)
}

fn exponent(r: Ratio<i64>) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        format!("({r})")
    }
}

/// `O(x^{a} log(x)^{e})` with the trivial parts dropped.
pub fn bound_string(a: Ratio<i64>, log_exponent: Ratio<i64>) -> String {
    let x = if a == Ratio::from_integer(1) { "x".to_string() } else { format!("x^{{{a}}}") };
    let zero = Ratio::from_integer(0);
    let one = Ratio::from_integer(1);
    if log_exponent == zero {
        format!("O({x})")
    } else if log_exponent == one {
        format!("O({x} log(x))")
    } else {
        format!("O({x} log(x)^{})", exponent(log_exponent))
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let opts = &cli.opts;
    let outcome = match &cli.command {
        Command::Invariants => invariants(opts)?,
        Command::Refinements { limit } => refinements(opts, *limit)?,
        Command::Verify { suites, profiles, list } => verify(opts, suites, *profiles, *list)?,
        Command::Dseries { specs } => dseries(opts, specs)?,
        Command::Count { kind, records } => count(opts, *kind, *records)?,
        Command::Catalog => {
            Outcome { report: envelope("catalog", json!({ "groups": catalog::catalog() })), success: true }
        }
    };
    if let Some(dir) = &opts.out {
        write_file(dir, "report.json", |p| Ok(fs::write(p, serde_json::to_string_pretty(&outcome.report)? + "\n")?))?;
    }
    Ok(outcome)
}

fn envelope(command: &str, body: Value) -> Value {
    let mut v = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let (Value::Object(m), Value::Object(b)) = (&mut v, body) {
        m.extend(b);
    }
    v
}

fn write_file(dir: &Path, name: &str, f: impl FnOnce(&Path) -> Result<()>) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    f(&path).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn csv_file(dir: &Path, name: &str, f: impl FnOnce(fs::File) -> nilbound_core::Result<()>) -> Result<String> {
    let path = write_file(dir, name, |p| Ok(f(fs::File::create(p)?)?))?;
    Ok(path.display().to_string())
}

fn require_groups(opts: &GlobalOpts) -> Result<&[String]> {
    if opts.group.is_empty() {
        bail!("--group is required for this command");
    }
    Ok(&opts.group)
}

fn invariants(opts: &GlobalOpts) -> Result<Outcome> {
    let field = load_field(&opts.field)?;
    let mut rows = Vec::new();
    for name in require_groups(opts)? {
        let g = load_group(name)?;
        rows.push(group_invariants(name, &g, &field, opts.exhaustive_cap)?);
    }
    let report = envelope("invariants", json!({ "field": field.to_json(), "groups": rows }));
    Ok(Outcome { report, success: true })
}

fn group_invariants(name: &str, g: &PermGroup, field: &BaseFieldData, cap: usize) -> Result<Value> {
    let (ind, a) = min_index(g)?;
    let b = b_constant(g, field)?;
    let b_log = Ratio::from_integer(b as i64 - 1);
    let mut row = json!({
        "group": name,
        "degree": g.degree(),
        "order": g.order(),
        "ind": ind,
        "a": a.to_string(),
        "b": b,
        "malle_prediction": bound_string(a, b_log),
    });
    let m = row.as_object_mut().expect("object");
    m.insert("minimal_index_is_central".into(), json!(minimal_index_is_central(g).ok()));
    match optimize_d_with_cap(g, field, cap) {
        Ok(opt) => {
            m.insert("refinement".into(), serde_json::to_value(opt.refinement.report(field)?)?);
            m.insert("heuristic_only".into(), json!(opt.heuristic_only));
            m.insert("d_g".into(), json!(opt.d_g));
            m.insert("d_k".into(), json!(opt.d_k.to_string()));
            m.insert("bound".into(), json!(bound_string(a, opt.d_k - 1)));
        }
        Err(e) => {
            m.insert("error".into(), json!(e.to_string()));
        }
    }
    Ok(row)
}

fn refinements(opts: &GlobalOpts, limit: usize) -> Result<Outcome> {
    let field = load_field(&opts.field)?;
    let groups = require_groups(opts)?;
    if groups.len() != 1 {
        bail!("refinements takes exactly one --group");
    }
    let g = load_group(&groups[0])?;
    let range = d_range(&g, opts.exhaustive_cap)?;
    let all = enumerate_refinements(&g, opts.exhaustive_cap)?;
    let chains = all.iter().take(limit).map(|r| r.report(&field)).collect::<nilbound_core::Result<Vec<_>>>()?;
    let report = envelope(
        "refinements",
        json!({
            "group": groups[0],
            "order": g.order(),
            "d_range": range,
            "listed": chains.len(),
            "truncated": all.len() > chains.len(),
            "chains": chains,
        }),
    );
    Ok(Outcome { report, success: true })
}

fn verify(opts: &GlobalOpts, suites: &[String], profiles: usize, list: bool) -> Result<Outcome> {
    if list {
        let report = envelope(
            "verify",
            json!({ "suites": nilbound_core::verify::SUITES.iter().map(|(s, d)| json!({"suite": s, "description": d})).collect::<Vec<_>>() }),
        );
        return Ok(Outcome { report, success: true });
    }
    let mut config =
        VerifyConfig { seed: opts.seed, profiles, exhaustive_cap: opts.exhaustive_cap, ..VerifyConfig::default() };
    if !opts.group.is_empty() {
        for name in &opts.group {
            catalog::lookup(name)?;
        }
        config.groups = opts.group.clone();
    }
    if let Some(x) = opts.max_x {
        config.fiber_x = x;
    }
    let names: Vec<String> =
        if suites.is_empty() { suite_names().into_iter().map(String::from).collect() } else { suites.to_vec() };
    let mut reports = Vec::new();
    for slug in &names {
        reports.push(run_suite(slug, &config)?);
    }
    let success = reports.iter().all(|r| r.passed);
    let report = envelope(
        "verify",
        json!({
            "seed": config.seed,
            "profiles": config.profiles,
            "fiber_x": config.fiber_x,
            "groups": config.groups,
            "passed": success,
            "suites": reports,
        }),
    );
    Ok(Outcome { report, success })
}

fn checkpoints(opts: &GlobalOpts, default_x: u64) -> Vec<u64> {
    let x = opts.max_x.unwrap_or(default_x);
    match opts.checkpoints {
        Some(n) => log_spaced_checkpoints(x, n),
        None => geometric_checkpoints(x),
    }
}

fn dseries(opts: &GlobalOpts, specs: &str) -> Result<Outcome> {
    let specs = parse_specs(specs)?;
    let series = multi_factor_sum(&specs, &checkpoints(opts, 1_000_000))?;
    let slope = match slope_estimate(&series) {
        Ok(s) => json!(s),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let mut body = json!({
        "specs": specs.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "alpha_predicted": series.alpha.to_string(),
        "beta_predicted": series.beta.to_string(),
        "checkpoints": series.checkpoints,
        "values": series.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "slope": slope,
    });
    if let Some(dir) = &opts.out {
        let path = csv_file(dir, "dseries.csv", |f| write_csv(&series, f))?;
        body["csv"] = json!(path);
    }
    Ok(Outcome { report: envelope("dseries", body), success: true })
}

fn count(opts: &GlobalOpts, kind: CountKind, records: bool) -> Result<Outcome> {
    let xs = checkpoints(opts, 1_000_000);
    let x = *xs.last().ok_or_else(|| anyhow!("no checkpoints"))?;
    let want_records = records && opts.out.is_some();
    if want_records && x > RECORDS_MAX_X {
        bail!("--records needs --max-x at most {RECORDS_MAX_X}");
    }
    let (label, alpha, counts, rows, extra): (&str, f64, Vec<u64>, Option<Vec<FieldRecord>>, Value) = match kind {
        CountKind::Quadratic => {
            let counts = count_quadratic(&xs);
            let density = counts.last().copied().unwrap_or(0) as f64 / x as f64;
            let reference = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
            let rows = if want_records { Some(enumerate_quadratic(x)?) } else { None };
            let extra = json!({
                "density": density,
                "reference_density": reference,
                "relative_error": (density / reference - 1.0).abs(),
            });
            ("C2", 1.0, counts, rows, extra)
        }
        CountKind::Cyclic3 | CountKind::Cyclic5 | CountKind::Cyclic7 => {
            let ell = match kind {
                CountKind::Cyclic3 => 3,
                CountKind::Cyclic5 => 5,
                _ => 7,
            };
            let counts = count_cyclic_ell(ell, &xs)?;
            let alpha = 1.0 / (ell - 1) as f64;
            let rows = if want_records { Some(enumerate_cyclic_ell(ell, x)?) } else { None };
            let extra = json!({ "ell": ell, "local_slope": local_slope(&xs, &counts) });
            (
                if ell == 3 {
                    "C3"
                } else if ell == 5 {
                    "C5"
                } else {
                    "C7"
                },
                alpha,
                counts,
                rows,
                extra,
            )
        }
        CountKind::V4 => {
            let fields = enumerate_v4(x);
            let counts = xs.iter().map(|&c| fields.partition_point(|f| f.discriminant <= c) as u64).collect();
            let rows = want_records.then(|| fields.iter().flat_map(|f| f.records()).collect());
            let fiber = v4_fiber_check(x);
            let extra = json!({ "fiber_check": fiber, "fiber_check_passed": fiber.passed() });
            ("C2xC2", 0.5, counts, rows, extra)
        }
    };
    let normalized: Vec<f64> = xs.iter().zip(&counts).map(|(&x, &c)| c as f64 / (x as f64).powf(alpha)).collect();
    let success = extra.get("fiber_check_passed").and_then(Value::as_bool).unwrap_or(true);
    let mut body = json!({
        "kind": label,
        "max_x": x,
        "alpha": alpha,
        "checkpoints": xs,
        "counts": counts,
        "normalized": normalized,
    });
    body.as_object_mut().expect("object").extend(extra.as_object().cloned().unwrap_or_default());
    if let Some(dir) = &opts.out {
        body["csv"] = json!(csv_file(dir, "counts.csv", |f| write_counts_csv(&xs, &counts, alpha, f))?);
        if let Some(rows) = &rows {
            body["records_csv"] = json!(csv_file(dir, "records.csv", |f| write_records_csv(rows, f))?);
        }
    }
    Ok(Outcome { report: envelope("count", body), success })
}

/// `log(Z₂/Z₁)/log(x₂/x₁)` over the last two checkpoints with nonzero counts.
fn local_slope(xs: &[u64], counts: &[u64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        xs.iter().zip(counts).filter(|(_, &c)| c > 0).map(|(&x, &c)| (x as f64, c as f64)).collect();
    let [.., (x1, c1), (x2, c2)] = pts[..] else { return None };
    Some((c2 / c1).ln() / (x2 / x1).ln())
}

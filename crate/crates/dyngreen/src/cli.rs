//! Command-line front end: map-spec parsing, subcommand dispatch, and
//! deterministic report emission.
//!
//! A map arrives as a small JSON document (`--map file.json`):
//!
//! ```json
//! {"d": 2, "F1": [1, 0, 1], "F2": [0, 2, 0], "label": "newton-x2-1"}
//! ```
//!
//! Coefficients are leading-first, either JSON integers or `"p/q"` strings;
//! the spec is rejected unless it defines a valid pair (equal degrees d ≥ 2,
//! nonzero resultant). Reports go to stdout — tab-separated by default,
//! JSON with `--format json` — and every report embeds the tool version,
//! map label, place, tolerance, and seed, so identical invocations produce
//! byte-identical output. Exact rationals are serialized as strings; floats
//! carry 15 significant digits.
//!
//! Exit codes: 0 success, 1 validation failure, 2 property violation (a
//! mathematical identity or certified bound observed to fail — a bug
//! signal), 3 resource limit.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_traits::{Signed, ToPrimitive};
use serde_json::Value;

use crate::basis::{change_matrix_det, prop_exponent, SigmaIndex};
use crate::bounds::{
    bound_report, discriminant, dsum, mahler_inequality_check, mahler_measure, UnivariatePoly,
};
use crate::dynheight::{green, hhat};
use crate::error::Error;
use crate::forms::{parse_rat, rat_pow, BinaryForm, Lift, MapPair, Rat};
use crate::global::{
    canonical_height, green_sum_identity_check, lattes_from_curve, small_point_census,
    RationalPoint,
};
use crate::places::{bad_primes, Place};
use crate::tfd::verify_tfd_inequality;
use crate::Result;

/// A validated map specification: a label plus the pair it parsed to.
#[derive(Clone, Debug)]
pub struct MapSpec {
    /// Display label; defaults to the file stem when the JSON has none.
    pub label: String,
    /// The validated pair (equal degrees, nonzero resultant).
    pub map: MapPair,
}

/// Parse a JSON map spec: `{"d": …, "F1": […], "F2": […], "label": …?}`
/// with integer or `"p/q"`-string coefficients, leading-first. Rejected
/// with a diagnostic unless it defines a valid [`MapPair`].
pub fn parse_map_spec(text: &str) -> Result<MapSpec> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::validation(format!("malformed map JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::validation("map spec must be a JSON object"))?;
    let d = obj
        .get("d")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::validation("map spec needs an integer field \"d\""))?;
    if !(2..=64).contains(&d) {
        return Err(Error::validation(format!("degree d = {d} outside [2, 64]")));
    }
    let f1 = coeff_list(obj.get("F1"), "F1", d as usize)?;
    let f2 = coeff_list(obj.get("F2"), "F2", d as usize)?;
    let label = match obj.get("label") {
        None => String::new(),
        Some(Value::String(s)) => {
            if s.chars().any(char::is_control) {
                return Err(Error::validation("label must not contain control characters"));
            }
            s.clone()
        }
        Some(_) => return Err(Error::validation("\"label\" must be a string")),
    };
    let map = MapPair::new(BinaryForm::new(f1)?, BinaryForm::new(f2)?)?;
    Ok(MapSpec { label, map })
}

fn coeff_list(v: Option<&Value>, name: &str, d: usize) -> Result<Vec<Rat>> {
    let arr = v
        .and_then(Value::as_array)
        .ok_or_else(|| Error::validation(format!("map spec needs an array field \"{name}\"")))?;
    if arr.len() != d + 1 {
        return Err(Error::validation(format!(
            "\"{name}\" must list {} coefficients for degree {d} (leading first), got {}",
            d + 1,
            arr.len()
        )));
    }
    arr.iter().map(|c| coeff_value(c, name)).collect()
}

fn coeff_value(c: &Value, name: &str) -> Result<Rat> {
    match c {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => n
            .as_i64()
            .map(|k| Rat::from_integer(k.into()))
            .ok_or_else(|| {
                Error::validation(format!(
                    "coefficient {n} in \"{name}\" is not an integer; write rationals as \"p/q\" strings"
                ))
            }),
        other => Err(Error::validation(format!(
            "coefficient {other} in \"{name}\" must be an integer or a \"p/q\" string"
        ))),
    }
}

/// Output format for reports.
#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// Tab-separated values with `#`-prefixed metadata lines.
    Tsv,
    /// One compact JSON object with a `"meta"` field.
    Json,
}

/// Run-wide options shared by every subcommand.
#[derive(Args, Clone, Debug)]
pub struct RunConfig {
    /// Map specification file (JSON; see `parse_map_spec`).
    #[arg(short, long, global = true, value_name = "FILE")]
    pub map: Option<PathBuf>,

    /// Place of Q: "inf" or "p:<prime>". Height-style subcommands default
    /// to "inf"; global subcommands (height without --place, census,
    /// green-sum) aggregate over all places and reject an explicit one.
    #[arg(long, global = true, value_name = "PLACE")]
    pub place: Option<String>,

    /// Certified error tolerance for iterative computations.
    #[arg(long, global = true, default_value = "1e-10", allow_negative_numbers = true)]
    pub tol: f64,

    /// RNG seed for search subcommands; fixed default for reproducibility.
    #[arg(long, global = true, default_value = "0")]
    pub seed: u64,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "tsv")]
    pub format: Format,

    /// Worker threads for parallel scans; results are independent of this.
    #[arg(long, global = true, default_value = "1")]
    pub workers: usize,

    /// Requested mantissa precision in bits; the f64 backend caps it at 53.
    #[arg(long, global = true, default_value = "53")]
    pub precision: u32,
}

/// Top-level argument grammar.
#[derive(Parser, Debug)]
#[command(
    name = "dyngreen",
    version,
    about = "Dynamical Green's functions, canonical heights, and resultant bounds on P^1",
    disable_help_subcommand = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
    #[command(flatten)]
    pub config: RunConfig,
}

/// Subcommand grammar.
#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Print the exact homogeneous resultant Res(F).
    Resultant,
    /// Canonical height of a rational point: global, or local with --place.
    Height {
        /// Point as "[a:b]", "a:b", "a/b", or an integer.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Two-point Green's function g(z, w) at one place.
    Green {
        /// First point.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Second point.
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Pairwise discriminant-energy sum D(z_1, …, z_N) at one place.
    Dsum {
        /// Comma-separated distinct points, e.g. "[0:1],[1:1],[2:1]".
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    /// Verify det(A) = ±Res(F)^r for the iterate basis of size N = t·d^k.
    BasisCheck {
        /// Multiplier t in N = t·d^k (2 ≤ t ≤ 2d−1).
        #[arg(long)]
        t: u64,
        /// Exponent k ≥ 1 in N = t·d^k.
        #[arg(long)]
        k: u32,
    },
    /// Estimate transfinite diameters d⁰_n(K_F) against exp(−r(F)).
    Tfd {
        /// Comma-separated strictly increasing n values.
        #[arg(long = "n-list", default_value = "2,4,8")]
        n_list: String,
    },
    /// Enumerate small points: every [a:b] with |a|, |b| ≤ exp(B).
    Census {
        /// Window bound B (coordinates up to exp(B)).
        #[arg(long)]
        bound: f64,
        /// Report points with canonical height at most this threshold.
        #[arg(long)]
        theta: f64,
    },
    /// Residual of the identity Σ_v g_v(z, w) = ĥ(z) + ĥ(w).
    GreenSum {
        /// First point.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Second point.
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Print the degree-4 pair induced by y² = x³ + ax + b on x-coordinates.
    Lattes {
        /// Curve coefficient a (integer or "p/q").
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Curve coefficient b (integer or "p/q").
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Full lower-bound report for one configuration at one place.
    BoundReport {
        /// Multiplier t in N = t·d^k.
        #[arg(long)]
        t: u64,
        /// Exponent k ≥ 1 in N = t·d^k.
        #[arg(long)]
        k: u32,
        /// Comma-separated points; the count must equal N = t·d^k.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    /// Check N^N·M(f)^{2N−2} ≥ |disc f| for a univariate polynomial.
    MahlerCheck {
        /// Comma-separated coefficients, leading first, integers or "p/q".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
}

/// Parse argv and run; returns the process exit code. Help and version
/// requests exit 0; argument errors exit 1.
pub fn run_cli() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    run(&cli)
}

/// Execute a parsed invocation: report to stdout, diagnostics to stderr,
/// exit code by error class (1 validation, 2 property violation, 3
/// resource limit).
pub fn run(cli: &Cli) -> i32 {
    if cli.config.precision != 53 {
        eprintln!(
            "dyngreen: warning: precision {} requested; the numeric backend is fixed at 53 mantissa bits",
            cli.config.precision
        );
    }
    if cli.config.workers > 1 {
        // Results are independent of pool size by contract, so a pool that
        // already exists (e.g. under a test harness) is fine to keep.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.config.workers)
            .build_global();
    }
    match execute(cli) {
        Ok(out) => {
            print!("{}", out.text);
            match out.violation {
                None => 0,
                Some(msg) => {
                    eprintln!("dyngreen: property violation: {msg}");
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("dyngreen: {e}");
            e.exit_code()
        }
    }
}

/// A finished report plus an optional property violation discovered while
/// producing it (the report is still printed; the process then exits 2).
#[derive(Debug)]
pub struct Outcome {
    /// Full stdout payload, trailing newline included.
    pub text: String,
    /// A failed mathematical check, if any.
    pub violation: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, violation: None }
    }
}

/// Metadata embedded in every report.
struct Meta {
    map: String,
    place: String,
    tol: f64,
    seed: u64,
}

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Build the report for a parsed invocation without printing it.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let rc = &cli.config;
    if rc.tol.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::validation("tol must be positive"));
    }
    if rc.workers == 0 {
        return Err(Error::validation("workers must be at least 1"));
    }
    match &cli.cmd {
        Cmd::Resultant => cmd_resultant(rc),
        Cmd::Height { point } => cmd_height(rc, point),
        Cmd::Green { z, w } => cmd_green(rc, z, w),
        Cmd::Dsum { points } => cmd_dsum(rc, points),
        Cmd::BasisCheck { t, k } => cmd_basis_check(rc, *t, *k),
        Cmd::Tfd { n_list } => cmd_tfd(rc, n_list),
        Cmd::Census { bound, theta } => cmd_census(rc, *bound, *theta),
        Cmd::GreenSum { z, w } => cmd_green_sum(rc, z, w),
        Cmd::Lattes { a, b } => cmd_lattes(rc, a, b),
        Cmd::BoundReport { t, k, points } => cmd_bound_report(rc, *t, *k, points),
        Cmd::MahlerCheck { poly } => cmd_mahler_check(rc, poly),
    }
}

// ---------------------------------------------------------------------------
// shared plumbing

fn load_map(rc: &RunConfig) -> Result<MapSpec> {
    let path = rc
        .map
        .as_ref()
        .ok_or_else(|| Error::validation("this subcommand needs --map FILE"))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::validation(format!("cannot read {}: {e}", path.display())))?;
    let mut spec = parse_map_spec(&text)?;
    if spec.label.is_empty() {
        spec.label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "-".into());
    }
    Ok(spec)
}

fn local_place(rc: &RunConfig) -> Result<Place> {
    match &rc.place {
        None => Ok(Place::Archimedean),
        Some(s) => Place::parse(s),
    }
}

fn no_place(rc: &RunConfig, what: &str) -> Result<()> {
    if rc.place.is_some() {
        return Err(Error::validation(format!(
            "{what} aggregates over all places; --place is not accepted here"
        )));
    }
    Ok(())
}

fn parse_lifts(s: &str) -> Result<Vec<Lift>> {
    let pts = parse_rational_points(s)?;
    Ok(pts.iter().map(RationalPoint::lift).collect())
}

fn parse_rational_points(s: &str) -> Result<Vec<RationalPoint>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(RationalPoint::parse(part)?);
    }
    if out.is_empty() {
        return Err(Error::validation("empty point list"));
    }
    Ok(out)
}

fn parse_rat_list(s: &str) -> Result<Vec<Rat>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(parse_rat(part)?);
    }
    if out.is_empty() {
        return Err(Error::validation("empty coefficient list"));
    }
    Ok(out)
}

/// Render with 15 significant digits, trailing zeros trimmed (printf
/// `%.15g` semantics). Deterministic for a given bit pattern.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        trim_fixed(format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.14e}");
        let (mant, e) = s.split_once('e').expect("scientific float format");
        format!("{}e{}", trim_fixed(mant.to_string()), e)
    }
}

fn trim_fixed(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// A real as a JSON token: a number when finite, a quoted string otherwise.
fn json_real(x: f64) -> String {
    if x.is_finite() {
        fmt_real(x)
    } else {
        format!("\"{}\"", fmt_real(x))
    }
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization is infallible")
}

fn tsv_preamble(meta: &Meta, extra: &[(&str, String)]) -> String {
    let mut s = format!("# dyngreen {VERSION}\n");
    let _ = writeln!(
        s,
        "# map={} place={} tol={} seed={}",
        meta.map,
        meta.place,
        fmt_real(meta.tol),
        meta.seed
    );
    for (k, v) in extra {
        let _ = writeln!(s, "# {k}={v}");
    }
    s
}

fn json_meta(meta: &Meta) -> String {
    format!(
        "{{\"version\":{},\"map\":{},\"place\":{},\"tol\":{},\"seed\":{}}}",
        json_str(VERSION),
        json_str(&meta.map),
        json_str(&meta.place),
        fmt_real(meta.tol),
        meta.seed
    )
}

// ---------------------------------------------------------------------------
// subcommands

fn cmd_resultant(rc: &RunConfig) -> Result<Outcome> {
    let spec = load_map(rc)?;
    no_place(rc, "resultant is an exact rational invariant; it")?;
    let meta = Meta { map: spec.label.clone(), place: "-".into(), tol: rc.tol, seed: rc.seed };
    let res = spec.map.resultant();
    let text = match rc.format {
        Format::Tsv => format!("{}resultant\n{res}\n", tsv_preamble(&meta, &[])),
        Format::Json => format!(
            "{{\"meta\":{},\"d\":{},\"resultant\":{}}}\n",
            json_meta(&meta),
            spec.map.d(),
            json_str(&res.to_string())
        ),
    };
    Ok(Outcome::ok(text))
}

fn cmd_height(rc: &RunConfig, point: &str) -> Result<Outcome> {
    let spec = load_map(rc)?;
    let pt = RationalPoint::parse(point)?;
    match &rc.place {
        None => {
            let h = canonical_height(&spec.map, &pt, rc.tol)?;
            let meta =
                Meta { map: spec.label, place: "global".into(), tol: rc.tol, seed: rc.seed };
            let text = match rc.format {
                Format::Tsv => format!(
                    "{}point\tvalue\terr\n{pt}\t{}\t{}\n",
                    tsv_preamble(&meta, &[]),
                    fmt_real(h.value),
                    fmt_real(h.err)
                ),
                Format::Json => format!(
                    "{{\"meta\":{},\"point\":{},\"value\":{},\"err\":{}}}\n",
                    json_meta(&meta),
                    json_str(&pt.to_string()),
                    json_real(h.value),
                    json_real(h.err)
                ),
            };
            Ok(Outcome::ok(text))
        }
        Some(s) => {
            let v = Place::parse(s)?;
            let h = hhat(&spec.map, &pt.lift(), &v, rc.tol)?;
            let meta =
                Meta { map: spec.label, place: v.to_string(), tol: rc.tol, seed: rc.seed };
            let text = match rc.format {
                Format::Tsv => format!(
                    "{}point\tvalue\terr\titers\n{pt}\t{}\t{}\t{}\n",
                    tsv_preamble(&meta, &[]),
                    fmt_real(h.value),
                    fmt_real(h.err),
                    h.iters
                ),
                Format::Json => format!(
                    "{{\"meta\":{},\"point\":{},\"value\":{},\"err\":{},\"iters\":{}}}\n",
                    json_meta(&meta),
                    json_str(&pt.to_string()),
                    json_real(h.value),
                    json_real(h.err),
                    h.iters
                ),
            };
            Ok(Outcome::ok(text))
        }
    }
}

fn cmd_green(rc: &RunConfig, z: &str, w: &str) -> Result<Outcome> {
    let spec = load_map(rc)?;
    let v = local_place(rc)?;
    let zp = RationalPoint::parse(z)?;
    let wp = RationalPoint::parse(w)?;
    let g = green(&spec.map, &zp.lift(), &wp.lift(), &v, rc.tol)?;
    let meta = Meta { map: spec.label, place: v.to_string(), tol: rc.tol, seed: rc.seed };
    let text = match rc.format {
        Format::Tsv => format!(
            "{}z\tw\tvalue\terr\n{zp}\t{wp}\t{}\t{}\n",
            tsv_preamble(&meta, &[]),
            fmt_real(g.value),
            fmt_real(g.err)
        ),
        Format::Json => format!(
            "{{\"meta\":{},\"z\":{},\"w\":{},\"value\":{},\"err\":{}}}\n",
            json_meta(&meta),
            json_str(&zp.to_string()),
            json_str(&wp.to_string()),
            json_real(g.value),
            json_real(g.err)
        ),
    };
    Ok(Outcome::ok(text))
}

fn cmd_dsum(rc: &RunConfig, points: &str) -> Result<Outcome> {
    let spec = load_map(rc)?;
    let v = local_place(rc)?;
    let lifts = parse_lifts(points)?;
    let value = dsum(&spec.map, &lifts, &v, rc.tol)?;
    let meta = Meta { map: spec.label, place: v.to_string(), tol: rc.tol, seed: rc.seed };
    let text = match rc.format {
        Format::Tsv => format!(
            "{}n\tdsum\n{}\t{}\n",
            tsv_preamble(&meta, &[]),
            lifts.len(),
            fmt_real(value)
        ),
        Format::Json => format!(
            "{{\"meta\":{},\"n\":{},\"dsum\":{}}}\n",
            json_meta(&meta),
            lifts.len(),
            json_real(value)
        ),
    };
    Ok(Outcome::ok(text))
}

fn cmd_basis_check(rc: &RunConfig, t: u64, k: u32) -> Result<Outcome> {
    let spec = load_map(rc)?;
    no_place(rc, "basis-check is an exact rational identity; it")?;
    let idx = SigmaIndex::new(spec.map.d() as u64, t, k)?;
    let det = change_matrix_det(&spec.map, &idx)?;
    let r = prop_exponent(&idx);
    if !r.is_integer() || r.is_negative() {
        return Err(Error::property(format!(
            "exponent r = {r} is not a nonnegative integer"
        )));
    }
    let e = r
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::resource("exponent r overflows u64"))?;
    let power = rat_pow(&spec.map.resultant().abs(), e);
    let verified = det.abs() == power;
    let meta = Meta { map: spec.label, place: "-".into(), tol: rc.tol, seed: rc.seed };
    let text = match rc.format {
        Format::Tsv => format!(
            "{}n\tt\tk\tr\tdet\tres_power\tverified\n{}\t{t}\t{k}\t{e}\t{det}\t{power}\t{verified}\n",
            tsv_preamble(&meta, &[]),
            idx.n
        ),
        Format::Json => format!(
            "{{\"meta\":{},\"N\":{},\"t\":{t},\"k\":{k},\"r\":{e},\"det\":{},\"res_power\":{},\"verified\":{verified}}}\n",
            json_meta(&meta),
            idx.n,
            json_str(&det.to_string()),
            json_str(&power.to_string())
        ),
    };
    let violation = if verified {
        None
    } else {
        Some(format!("|det A| = {} differs from |Res|^{e} = {power}", det.abs()))
    };
    Ok(Outcome { text, violation })
}

fn cmd_tfd(rc: &RunConfig, n_list: &str) -> Result<Outcome> {
    let spec = load_map(rc)?;
    let v = local_place(rc)?;
    let ns: Vec<usize> = n_list
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::validation(format!("invalid n value {:?}", t.trim())))
        })
        .collect::<Result<_>>()?;
    let report = verify_tfd_inequality(&spec.map, &v, &ns, rc.seed)?;
    let meta = Meta { map: spec.label, place: v.to_string(), tol: rc.tol, seed: rc.seed };
    let text = match rc.format {
        Format::Tsv => {
            let mut s = tsv_preamble(
                &meta,
                &[("c_effective", fmt_real(report.c_effective))],
            );
            s.push_str("n\testimate\tbound\tslack\titerations\tchain_ok\n");
            for row in &report.rows {
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    row.n,
                    fmt_real(row.estimate),
                    fmt_real(row.bound),
                    fmt_real(row.slack),
                    row.iterations,
                    row.chain_ok
                );
            }
            s
        }
        Format::Json => {
            let mut s = format!(
                "{{\"meta\":{},\"c_effective\":{},\"rows\":[",
                json_meta(&meta),
                json_real(report.c_effective)
            );
            for (i, row) in report.rows.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                let _ = write!(
                    s,
                    "{{\"n\":{},\"estimate\":{},\"bound\":{},\"slack\":{},\"iterations\":{},\"chain_ok\":{}}}",
                    row.n,
                    json_real(row.estimate),
                    json_real(row.bound),
                    json_real(row.slack),
                    row.iterations,
                    row.chain_ok
                );
            }
            s.push_str("]}\n");
            s
        }
    };
    let violation = report
        .rows
        .iter()
        .find(|r| !r.chain_ok)
        .map(|r| {
            format!(
                "estimate {} at n = {} exceeds the chained bound {}·(1 + slack allowance)",
                fmt_real(r.estimate),
                r.n,
                fmt_real(r.bound)
            )
        });
    Ok(Outcome { text, violation })
}

fn cmd_census(rc: &RunConfig, bound: f64, theta: f64) -> Result<Outcome> {
    let spec = load_map(rc)?;
    no_place(rc, "census")?;
    let c = small_point_census(&spec.map, bound, theta)?;
    let meta = Meta { map: spec.label, place: "global".into(), tol: rc.tol, seed: rc.seed };
    let min_pos = match c.min_positive_height {
        Some(h) => fmt_real(h),
        None => "none".to_string(),
    };
    let text = match rc.format {
        Format::Tsv => {
            let mut s = tsv_preamble(
                &meta,
                &[
                    ("bound", fmt_real(c.bound)),
                    ("theta", fmt_real(c.theta)),
                    ("count", c.count.to_string()),
                    ("min_positive_height", min_pos),
                ],
            );
            s.push_str("a\tb\thhat\terr\tpreperiodic\n");
            for w in &c.witnesses {
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}",
                    w.point.a(),
                    w.point.b(),
                    fmt_real(w.hhat),
                    fmt_real(w.err),
                    w.preperiodic
                );
            }
            s
        }
        Format::Json => {
            let mut s = format!(
                "{{\"meta\":{},\"bound\":{},\"theta\":{},\"count\":{},\"min_positive_height\":{},\"witnesses\":[",
                json_meta(&meta),
                json_real(c.bound),
                json_real(c.theta),
                c.count,
                match c.min_positive_height {
                    Some(h) => json_real(h),
                    None => "null".to_string(),
                }
            );
            for (i, w) in c.witnesses.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                let _ = write!(
                    s,
                    "{{\"point\":{},\"hhat\":{},\"err\":{},\"preperiodic\":{}}}",
                    json_str(&w.point.to_string()),
                    json_real(w.hhat),
                    json_real(w.err),
                    w.preperiodic
                );
            }
            s.push_str("]}\n");
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn cmd_green_sum(rc: &RunConfig, z: &str, w: &str) -> Result<Outcome> {
    let spec = load_map(rc)?;
    no_place(rc, "green-sum")?;
    let zp = RationalPoint::parse(z)?;
    let wp = RationalPoint::parse(w)?;
    let residual = green_sum_identity_check(&spec.map, &zp, &wp, rc.tol)?;
    let ok = residual <= rc.tol + 1e-12;
    let meta = Meta { map: spec.label, place: "global".into(), tol: rc.tol, seed: rc.seed };
    let text = match rc.format {
        Format::Tsv => format!(
            "{}z\tw\tresidual\tok\n{zp}\t{wp}\t{}\t{ok}\n",
            tsv_preamble(&meta, &[]),
            fmt_real(residual)
        ),
        Format::Json => format!(
            "{{\"meta\":{},\"z\":{},\"w\":{},\"residual\":{},\"ok\":{ok}}}\n",
            json_meta(&meta),
            json_str(&zp.to_string()),
            json_str(&wp.to_string()),
            json_real(residual)
        ),
    };
    let violation = if ok {
        None
    } else {
        Some(format!(
            "Green identity residual {} exceeds tol {}",
            fmt_real(residual),
            fmt_real(rc.tol)
        ))
    };
    Ok(Outcome { text, violation })
}

fn cmd_lattes(rc: &RunConfig, a: &str, b: &str) -> Result<Outcome> {
    no_place(rc, "lattes")?;
    if rc.map.is_some() {
        return Err(Error::validation("lattes builds a map; --map is not accepted here"));
    }
    let ar = parse_rat(a)?;
    let br = parse_rat(b)?;
    let map = lattes_from_curve(&ar, &br)?;
    let fnorm = map.normalize_integer();
    let bad = bad_primes(&fnorm)?;
    let label = format!("lattes({ar},{br})");
    let meta = Meta { map: label.clone(), place: "-".into(), tol: rc.tol, seed: rc.seed };
    let f1: Vec<String> = map.f1().coeffs().iter().map(|c| c.to_string()).collect();
    let f2: Vec<String> = map.f2().coeffs().iter().map(|c| c.to_string()).collect();
    let text = match rc.format {
        Format::Tsv => {
            let mut s = tsv_preamble(&meta, &[]);
            s.push_str("field\tvalue\n");
            let _ = writeln!(s, "d\t{}", map.d());
            let _ = writeln!(s, "F1\t{}", f1.join(","));
            let _ = writeln!(s, "F2\t{}", f2.join(","));
            let _ = writeln!(s, "resultant\t{}", map.resultant());
            let _ = writeln!(
                s,
                "bad_primes\t{}",
                bad.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
            );
            s
        }
        Format::Json => {
            let join = |v: &[String]| {
                v.iter().map(|c| json_str(c)).collect::<Vec<_>>().join(",")
            };
            format!(
                "{{\"meta\":{},\"label\":{},\"d\":{},\"F1\":[{}],\"F2\":[{}],\"resultant\":{},\"bad_primes\":[{}]}}\n",
                json_meta(&meta),
                json_str(&label),
                map.d(),
                join(&f1),
                join(&f2),
                json_str(&map.resultant().to_string()),
                bad.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
            )
        }
    };
    Ok(Outcome::ok(text))
}

fn cmd_bound_report(rc: &RunConfig, t: u64, k: u32, points: &str) -> Result<Outcome> {
    let spec = load_map(rc)?;
    let v = local_place(rc)?;
    let idx = SigmaIndex::new(spec.map.d() as u64, t, k)?;
    let lifts = parse_lifts(points)?;
    let rep = bound_report(&spec.map, &v, &idx, &lifts, rc.tol)?;
    let meta = Meta { map: spec.label, place: v.to_string(), tol: rc.tol, seed: rc.seed };
    let text = match rc.format {
        Format::Tsv => format!(
            "{}n\tr_f\tr_up\talpha\tepsilon_k\trhs_technical\trhs_corollary\tc_effective\tobserved_sum\n{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            tsv_preamble(&meta, &[]),
            rep.n,
            fmt_real(rep.r_f),
            fmt_real(rep.r_up),
            rep.alpha,
            fmt_real(rep.epsilon_k),
            fmt_real(rep.rhs_technical),
            fmt_real(rep.rhs_corollary),
            fmt_real(rep.c_effective),
            fmt_real(rep.observed_sum)
        ),
        Format::Json => format!(
            "{{\"meta\":{},\"n\":{},\"r_f\":{},\"r_up\":{},\"alpha\":{},\"epsilon_k\":{},\"rhs_technical\":{},\"rhs_corollary\":{},\"c_effective\":{},\"observed_sum\":{}}}\n",
            json_meta(&meta),
            rep.n,
            json_real(rep.r_f),
            json_real(rep.r_up),
            rep.alpha,
            json_real(rep.epsilon_k),
            json_real(rep.rhs_technical),
            json_real(rep.rhs_corollary),
            json_real(rep.c_effective),
            json_real(rep.observed_sum)
        ),
    };
    let slack = rc.tol + 1e-9 * (1.0 + rep.rhs_technical.abs().max(rep.rhs_corollary.abs()));
    let floor = rep.rhs_technical.max(rep.rhs_corollary);
    let violation = if rep.observed_sum >= floor - slack {
        None
    } else {
        Some(format!(
            "observed sum {} sits below the certified lower bound {}",
            fmt_real(rep.observed_sum),
            fmt_real(floor)
        ))
    };
    Ok(Outcome { text, violation })
}

fn cmd_mahler_check(rc: &RunConfig, poly: &str) -> Result<Outcome> {
    no_place(rc, "mahler-check")?;
    if rc.map.is_some() {
        return Err(Error::validation(
            "mahler-check takes a univariate polynomial via --poly; --map is not accepted here",
        ));
    }
    let coeffs = parse_rat_list(poly)?;
    let f = UnivariatePoly::from_rat(coeffs)?;
    let n = f.degree();
    let m = mahler_measure(&f)?;
    let disc = discriminant(&f)?.abs_f64();
    let margin = mahler_inequality_check(&f)?;
    let lhs = margin + disc;
    let ok = margin >= -1e-6 * lhs.max(1.0);
    let meta = Meta { map: "-".into(), place: "-".into(), tol: rc.tol, seed: rc.seed };
    let text = match rc.format {
        Format::Tsv => format!(
            "{}degree\tmahler\tdisc_abs\tmargin\tok\n{n}\t{}\t{}\t{}\t{ok}\n",
            tsv_preamble(&meta, &[]),
            fmt_real(m),
            fmt_real(disc),
            fmt_real(margin)
        ),
        Format::Json => format!(
            "{{\"meta\":{},\"degree\":{n},\"mahler\":{},\"disc_abs\":{},\"margin\":{},\"ok\":{ok}}}\n",
            json_meta(&meta),
            json_real(m),
            json_real(disc),
            json_real(margin)
        ),
    };
    let violation = if ok {
        None
    } else {
        Some(format!(
            "margin {} is negative beyond numerical slack",
            fmt_real(margin)
        ))
    };
    Ok(Outcome { text, violation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn write_map(json: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::Builder::new()
            .prefix("map")
            .suffix(".json")
            .tempfile()
            .unwrap();
        f.write_all(json.as_bytes()).unwrap();
        f.flush().unwrap();
        f
    }

    fn parse_args(args: &[&str]) -> Cli {
        Cli::try_parse_from(args).unwrap()
    }

    #[test]
    fn map_spec_examples() {
        let sq = parse_map_spec(r#"{"d":2,"F1":[1,0,0],"F2":[0,0,1]}"#).unwrap();
        assert_eq!(sq.map.d(), 2);
        assert_eq!(sq.map.resultant(), &Rat::from_integer(1.into()));

        let newton = parse_map_spec(r#"{"d":2,"F1":[1,0,1],"F2":[0,2,0],"label":"newton"}"#)
            .unwrap();
        assert_eq!(newton.label, "newton");
        assert_eq!(newton.map.resultant(), &Rat::from_integer(4.into()));

        // Proportional forms share a linear factor: zero resultant.
        let err = parse_map_spec(r#"{"d":2,"F1":[1,0,0],"F2":[2,0,0]}"#).unwrap_err();
        assert_eq!(err.exit_code(), 1);

        // Rational coefficients ride in as strings.
        let half = parse_map_spec(r#"{"d":2,"F1":["1/2",0,0],"F2":[0,0,1]}"#).unwrap();
        assert_eq!(half.map.resultant(), &crate::forms::rat(1, 4));

        assert_eq!(
            parse_map_spec("not json").unwrap_err().exit_code(),
            1
        );
        assert_eq!(
            parse_map_spec(r#"{"d":2,"F1":[1,0],"F2":[0,0,1]}"#)
                .unwrap_err()
                .exit_code(),
            1
        );
        assert_eq!(
            parse_map_spec(r#"{"d":2,"F1":[1.5,0,0],"F2":[0,0,1]}"#)
                .unwrap_err()
                .exit_code(),
            1
        );
    }

    #[test]
    fn real_formatting() {
        assert_eq!(fmt_real(0.0), "0");
        assert_eq!(fmt_real(-0.0), "0");
        assert_eq!(fmt_real(1.0), "1");
        assert_eq!(fmt_real(-1.5), "-1.5");
        assert_eq!(fmt_real(4096.0), "4096");
        assert_eq!(fmt_real(2.0_f64.ln()), "0.693147180559945");
        assert_eq!(fmt_real(1e-10), "1e-10");
        assert_eq!(fmt_real(1e20), "1e20");
        assert_eq!(fmt_real(0.001), "0.001");
        assert_eq!(fmt_real(f64::INFINITY), "inf");
        assert_eq!(fmt_real(123456.789), "123456.789");
    }

    #[test]
    fn resultant_report_is_byte_stable() {
        let f = write_map(r#"{"d":2,"F1":[1,0,0],"F2":[0,0,1],"label":"tsq"}"#);
        let path = f.path().to_str().unwrap();
        let cli = parse_args(&["dyngreen", "resultant", "-m", path]);
        let a = execute(&cli).unwrap();
        let b = execute(&cli).unwrap();
        assert_eq!(a.text, b.text);
        assert!(a.violation.is_none());
        let expected = format!(
            "# dyngreen {VERSION}\n# map=tsq place=- tol=1e-10 seed=0\nresultant\n1\n"
        );
        assert_eq!(a.text, expected);

        let cli = parse_args(&["dyngreen", "resultant", "-m", path, "--format", "json"]);
        let out = execute(&cli).unwrap().text;
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["resultant"], "1");
        assert_eq!(v["d"], 2);
        assert_eq!(v["meta"]["map"], "tsq");
    }

    #[test]
    fn height_global_and_local() {
        let f = write_map(r#"{"d":2,"F1":[1,0,0],"F2":[0,0,1]}"#);
        let path = f.path().to_str().unwrap();

        let cli = parse_args(&["dyngreen", "height", "-m", path, "--point", "[2:1]"]);
        let out = execute(&cli).unwrap().text;
        let row = out.lines().last().unwrap();
        let cols: Vec<&str> = row.split('\t').collect();
        assert_eq!(cols[0], "[2:1]");
        let value: f64 = cols[1].parse().unwrap();
        assert!((value - 2.0_f64.ln()).abs() <= 1e-9);

        let cli = parse_args(&[
            "dyngreen", "height", "-m", path, "--point", "[2:1]", "--place", "p:2",
            "--format", "json",
        ]);
        let out = execute(&cli).unwrap().text;
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["meta"]["place"], "p:2");
        assert_eq!(v["value"].as_f64().unwrap(), 0.0);
        assert_eq!(v["err"].as_f64().unwrap(), 0.0);
    }

    #[test]
    fn dsum_duplicate_points_exit_one() {
        let f = write_map(r#"{"d":2,"F1":[1,0,0],"F2":[0,0,1]}"#);
        let path = f.path().to_str().unwrap();
        let cli = parse_args(&[
            "dyngreen", "dsum", "-m", path, "--points", "[1:1],[1:1]",
        ]);
        let err = execute(&cli).unwrap_err();
        assert_eq!(err.exit_code(), 1);

        let cli = parse_args(&[
            "dyngreen", "dsum", "-m", path, "--points", "[1:1],[-1:1]",
        ]);
        let out = execute(&cli).unwrap().text;
        let row = out.lines().last().unwrap();
        let cols: Vec<&str> = row.split('\t').collect();
        assert_eq!(cols[0], "2");
        // D(1, −1) for the squaring pair: wedge 2, both heights 0, r = 0.
        let value: f64 = cols[1].parse().unwrap();
        assert!((value - (-2.0 * 2.0_f64.ln())).abs() <= 1e-9);
    }

    #[test]
    fn basis_check_newton_map() {
        let f = write_map(r#"{"d":2,"F1":[1,0,1],"F2":[0,2,0],"label":"newton"}"#);
        let path = f.path().to_str().unwrap();
        let cli = parse_args(&[
            "dyngreen", "basis-check", "-m", path, "--t", "2", "--k", "1", "--format", "json",
        ]);
        let out = execute(&cli).unwrap();
        assert!(out.violation.is_none());
        let v: Value = serde_json::from_str(out.text.trim()).unwrap();
        assert_eq!(v["N"], 4);
        assert_eq!(v["verified"], true);
    }

    #[test]
    fn census_squaring_map() {
        let f = write_map(r#"{"d":2,"F1":[1,0,0],"F2":[0,0,1]}"#);
        let path = f.path().to_str().unwrap();
        let cli = parse_args(&[
            "dyngreen", "census", "-m", path, "--bound", "1.2", "--theta", "0.05",
            "--format", "json",
        ]);
        let out = execute(&cli).unwrap().text;
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["count"], 4);
        let min_pos = v["min_positive_height"].as_f64().unwrap();
        assert!((min_pos - 2.0_f64.ln()).abs() <= 1e-9);

        // census is global: an explicit place is a usage error.
        let cli = parse_args(&[
            "dyngreen", "census", "-m", path, "--bound", "1.2", "--theta", "0.05",
            "--place", "inf",
        ]);
        assert_eq!(execute(&cli).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn green_sum_reports_small_residual() {
        let f = write_map(r#"{"d":2,"F1":[1,0,1],"F2":[0,2,0]}"#);
        let path = f.path().to_str().unwrap();
        let cli = parse_args(&[
            "dyngreen", "green-sum", "-m", path, "--z", "[2:1]", "--w", "[0:1]",
            "--tol", "1e-8",
        ]);
        let out = execute(&cli).unwrap();
        assert!(out.violation.is_none());
        let row = out.text.lines().last().unwrap();
        assert!(row.ends_with("true"));
    }

    #[test]
    fn lattes_roundtrips_through_map_spec() {
        let cli = parse_args(&[
            "dyngreen", "lattes", "--a", "-1", "--b", "0", "--format", "json",
        ]);
        let out = execute(&cli).unwrap().text;
        let spec = parse_map_spec(out.trim()).unwrap();
        assert_eq!(spec.map.d(), 4);
        assert_eq!(spec.label, "lattes(-1,0)");
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["resultant"], "4096");
        assert_eq!(v["bad_primes"][0], 2);

        // Singular curve: 4a³ + 27b² = 0.
        let cli = parse_args(&["dyngreen", "lattes", "--a", "0", "--b", "0"]);
        assert_eq!(execute(&cli).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn mahler_check_equality_case() {
        let cli = parse_args(&["dyngreen", "mahler-check", "--poly", "1,0,-1"]);
        let out = execute(&cli).unwrap();
        assert!(out.violation.is_none());
        let row = out.text.lines().last().unwrap();
        let cols: Vec<&str> = row.split('\t').collect();
        assert_eq!(cols[0], "2");
        let margin: f64 = cols[3].parse().unwrap();
        assert!(margin.abs() <= 1e-9);
        assert_eq!(cols[4], "true");
    }

    #[test]
    fn tfd_report_shape() {
        let f = write_map(r#"{"d":2,"F1":[1,0,0],"F2":[0,0,1]}"#);
        let path = f.path().to_str().unwrap();
        let cli = parse_args(&[
            "dyngreen", "tfd", "-m", path, "--n-list", "2,3", "--place", "p:5",
        ]);
        let out = execute(&cli).unwrap();
        assert!(out.violation.is_none());
        let rows: Vec<&str> = out.text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(rows.len(), 3); // header + two data rows
        assert!(rows[1].starts_with("2\t1\t1\t"));

        let cli = parse_args(&["dyngreen", "tfd", "-m", path, "--n-list", "4,2"]);
        assert_eq!(execute(&cli).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn bound_report_roots_of_unity() {
        let f = write_map(r#"{"d":2,"F1":[1,0,0],"F2":[0,0,1]}"#);
        let path = f.path().to_str().unwrap();
        let cli = parse_args(&[
            "dyngreen", "bound-report", "-m", path, "--t", "2", "--k", "1",
            "--points", "[1:1],[-1:1],[0:1],[1:0]",
        ]);
        let out = execute(&cli).unwrap();
        assert!(out.violation.is_none(), "roots-of-unity style configuration must respect the bound");

        // Wrong point count for N = t·d^k.
        let cli = parse_args(&[
            "dyngreen", "bound-report", "-m", path, "--t", "2", "--k", "1",
            "--points", "[1:1],[-1:1]",
        ]);
        assert_eq!(execute(&cli).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn config_guards() {
        let f = write_map(r#"{"d":2,"F1":[1,0,0],"F2":[0,0,1]}"#);
        let path = f.path().to_str().unwrap();
        let cli = parse_args(&["dyngreen", "resultant", "-m", path, "--tol", "-1"]);
        assert_eq!(execute(&cli).unwrap_err().exit_code(), 1);
        let cli = parse_args(&["dyngreen", "resultant", "-m", path, "--workers", "0"]);
        assert_eq!(execute(&cli).unwrap_err().exit_code(), 1);
        let cli = parse_args(&["dyngreen", "resultant"]);
        assert_eq!(execute(&cli).unwrap_err().exit_code(), 1);
        let cli = parse_args(&["dyngreen", "height", "-m", path, "--point", "[1:1]", "--place", "p:4"]);
        assert_eq!(execute(&cli).unwrap_err().exit_code(), 1);
    }
}

use clap::{Args, Parser, Subcommand, ValueEnum};
use hbounds::coeff::{a_bound, b_bound};
use hbounds::numerics::SolverConfig;
use hbounds::oracle::OracleConfig;
use hbounds::plot::{bounds_svg, disk_image_svg, radius_curve_svg};
use hbounds::radii::{least_index_for_radius, n_threshold, radius_root, Family};
use hbounds::verify::{self, VerifyOptions, TABLE1, TABLE1_TOLERANCE};
use hbounds::Error;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_VERIFY: u8 = 1;
const EXIT_SOLVER: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(name = "hbounds", version, about = "Coefficient bounds and section radii for univalent harmonic maps")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// CSV of a_n and b_n bounds with their envelopes, one row per n.
    Bounds {
        n_min: u64,
        n_max: u64,
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Radius of guaranteed univalence of the (n, m) section.
    Radius {
        n: u64,
        m: u64,
        #[command(flatten)]
        family: FamilyArg,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        json: bool,
    },
    /// Least n whose section is univalent in |z| < r.
    Threshold {
        r: f64,
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        json: bool,
    },
    /// Recomputes the tabulated order-5/2 radii.
    Table1 {
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        json: bool,
    },
    /// Runs every claim check and writes the JSON report.
    Verify {
        /// Report path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        n_cap: u64,
        /// Angular samples of the univalence oracle.
        #[arg(long)]
        grid: Option<usize>,
        /// Tolerance override, `CLAIM_ID=VALUE`; repeatable.
        #[arg(long, value_parser = parse_override)]
        tol: Vec<(String, f64)>,
    },
    /// Writes an SVG figure.
    Plot {
        what: PlotKind,
        /// `N_MIN..N_MAX` for bounds and radius-curve, `N` for disk-image.
        range: String,
        #[command(flatten)]
        family: FamilyArg,
        /// Points per image circle (disk-image).
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotKind {
    Bounds,
    RadiusCurve,
    DiskImage,
}

#[derive(Args)]
struct FamilyArg {
    /// alpha17 or alpha52, as a trailing word or via --family.
    #[arg(value_name = "FAMILY")]
    positional: Option<String>,
    #[arg(long = "family")]
    flag: Option<String>,
}

impl FamilyArg {
    fn resolve(&self) -> Result<Family, Failure> {
        let pick = match (&self.positional, &self.flag) {
            (Some(a), Some(b)) if !a.eq_ignore_ascii_case(b) => {
                return Err(Failure::usage(format!("conflicting families '{a}' and '{b}'")))
            }
            (Some(a), _) => a.as_str(),
            (None, Some(b)) => b.as_str(),
            (None, None) => "alpha52",
        };
        pick.parse().map_err(|e: Error| Failure::usage(e.to_string()))
    }
}

#[derive(Args)]
struct SolverArgs {
    /// Bracket width at which bisection stops.
    #[arg(long)]
    tol: Option<f64>,
    /// Points of sign-change scans.
    #[arg(long)]
    grid: Option<usize>,
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig, Failure> {
        let mut cfg = SolverConfig::default();
        if let Some(t) = self.tol {
            cfg.abs_tol_x = t;
        }
        if let Some(g) = self.grid {
            cfg.grid_points = g;
        }
        cfg.validate().map_err(|e| Failure::usage(e.to_string()))?;
        Ok(cfg)
    }
}

fn parse_override(s: &str) -> Result<(String, f64), String> {
    let (id, v) = s.split_once('=').ok_or_else(|| format!("expected CLAIM_ID=VALUE, got '{s}'"))?;
    let v: f64 = v.trim().parse().map_err(|e| format!("bad tolerance '{v}': {e}"))?;
    if !(v >= 0.0) {
        return Err(format!("tolerance must be >= 0, got {v}"));
    }
    Ok((id.trim().to_string(), v))
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, msg: msg.into() }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure { code: EXIT_IO, msg: format!("{}: {e}", path.display()) }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) | Error::Precondition(_) | Error::Config(_) => EXIT_USAGE,
            _ => EXIT_SOLVER,
        };
        Failure { code, msg: e.to_string() }
    }
}

/// Nine significant digits.
fn sig9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..9).contains(&mag) {
        format!("{:.*}", (8 - mag).max(0) as usize, x)
    } else {
        format!("{x:.8e}")
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::io(p, e)),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes()).and_then(|_| so.flush()).map_err(|e| Failure::io(Path::new("<stdout>"), e))
        }
    }
}

fn json_line(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string(&v).expect("json value serializes");
    s.push('\n');
    s
}

fn cmd_bounds(n_min: u64, n_max: u64, family: Family, out: Option<&Path>) -> Result<(), Failure> {
    if n_min < 3 || n_max < n_min {
        return Err(Failure::usage(format!("need 3 <= n_min <= n_max, got {n_min} {n_max}")));
    }
    let order = family.coefficient_order();
    let mut csv = String::from("n,a_bound,a_envelope,b_bound,b_envelope,minimizer_a,minimizer_b\n");
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for n in n_min..=n_max {
        let a = a_bound(n, order)?;
        let b = b_bound(n, order)?;
        let _ = writeln!(
            csv,
            "{n},{},{},{},{},{},{}",
            a.bound,
            opt(a.envelope),
            b.bound,
            opt(b.envelope),
            a.minimizer,
            b.minimizer
        );
    }
    emit(out, &csv)
}

fn cmd_radius(n: u64, m: u64, family: Family, cfg: &SolverConfig, json: bool) -> Result<(), Failure> {
    if n < 1 || m < 1 {
        return Err(Failure::usage("n and m must be at least 1"));
    }
    match radius_root(n, m, family, cfg) {
        Ok(r) => {
            let text = if json {
                json_line(serde_json::to_value(r).expect("radius result serializes"))
            } else {
                format!(
                    "radius   {}\nresidual {}\nbracket  [{}, {}]\n",
                    sig9(r.radius),
                    sig9(r.residual),
                    sig9(r.bracket.0),
                    sig9(r.bracket.1)
                )
            };
            emit(None, &text)
        }
        Err(Error::NoRoot { saturated: Some(s), .. }) => Err(Failure {
            code: EXIT_SOLVER,
            msg: format!(
                "no root: the margin stays positive up to the disk edge (saturated, radius {})",
                sig9(s)
            ),
        }),
        Err(e) => Err(e.into()),
    }
}

fn cmd_threshold(r: f64, family: Family, json: bool) -> Result<(), Failure> {
    let n = match family {
        Family::Alpha17 => n_threshold(r)?,
        Family::Alpha52 => least_index_for_radius(r, family)?,
    };
    let text = if json {
        json_line(serde_json::json!({ "r": r, "family": family, "n": n }))
    } else {
        format!("{n}\n")
    };
    emit(None, &text)
}

fn cmd_table1(cfg: &SolverConfig, json: bool) -> Result<(), Failure> {
    let mut rows = Vec::new();
    for (n, tabulated) in TABLE1 {
        let r = radius_root(n, n, Family::Alpha52, cfg)?;
        rows.push((n, tabulated, r.radius));
    }
    let text = if json {
        let v: Vec<_> = rows
            .iter()
            .map(|&(n, t, c)| serde_json::json!({ "n": n, "tabulated": t, "computed": c, "difference": c - t }))
            .collect();
        json_line(serde_json::Value::Array(v))
    } else {
        let mut s = format!("{:>5} {:>12} {:>12} {:>13}\n", "n", "tabulated", "computed", "difference");
        for (n, t, c) in &rows {
            let _ = writeln!(s, "{n:>5} {t:>12} {:>12} {:>13}", sig9(*c), sig9(c - t));
        }
        s
    };
    emit(None, &text)?;
    if rows.iter().any(|(_, t, c)| (c - t).abs() > TABLE1_TOLERANCE) {
        return Err(Failure { code: EXIT_VERIFY, msg: "a radius differs from its tabulated value".into() });
    }
    Ok(())
}

fn cmd_verify(
    out: Option<&Path>,
    n_cap: u64,
    grid: Option<usize>,
    overrides: Vec<(String, f64)>,
) -> Result<(), Failure> {
    let mut opts = VerifyOptions { n_cap, ..VerifyOptions::default() };
    if let Some(g) = grid {
        opts.oracle = OracleConfig { angular_samples: g, ..opts.oracle };
    }
    opts.tolerance_overrides = overrides.into_iter().collect::<BTreeMap<_, _>>();
    let report = verify::run(&opts)?;
    for id in opts.tolerance_overrides.keys() {
        if report.get(id).is_none() {
            return Err(Failure::usage(format!("unknown claim id '{id}'")));
        }
    }
    emit(out, &report.to_json())?;
    let counts = report
        .counts()
        .iter()
        .map(|(k, v)| format!("{k} {v}"))
        .collect::<Vec<_>>()
        .join(", ");
    eprintln!("{} claims: {counts}", report.claims.len());
    if !report.passed() {
        for c in report.claims.iter().filter(|c| c.status == hbounds::report::Status::Fail) {
            eprintln!("FAIL {}", c.id);
        }
        return Err(Failure { code: EXIT_VERIFY, msg: "verification failed".into() });
    }
    Ok(())
}

fn parse_range(s: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::usage(format!("expected N_MIN..N_MAX, got '{s}'"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn cmd_plot(what: PlotKind, range: &str, family: Family, grid: usize, out: Option<&Path>) -> Result<(), Failure> {
    let cfg = SolverConfig::default();
    let svg = match what {
        PlotKind::Bounds => {
            let (lo, hi) = parse_range(range)?;
            bounds_svg(lo, hi, family)?
        }
        PlotKind::RadiusCurve => {
            let (lo, hi) = parse_range(range)?;
            radius_curve_svg(lo, hi, family, &cfg)?
        }
        PlotKind::DiskImage => {
            let n: u64 = range.trim().parse().map_err(|_| Failure::usage(format!("expected N, got '{range}'")))?;
            disk_image_svg(n, family, 8, grid, &cfg)?
        }
    };
    emit(out, &svg)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("HBOUNDS_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::usage(format!("HBOUNDS_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::usage(e.to_string()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    match cli.cmd {
        Cmd::Bounds { n_min, n_max, family, out } => cmd_bounds(n_min, n_max, family.resolve()?, out.as_deref()),
        Cmd::Radius { n, m, family, solver, json } => cmd_radius(n, m, family.resolve()?, &solver.config()?, json),
        Cmd::Threshold { r, family, json } => cmd_threshold(r, family.resolve()?, json),
        Cmd::Table1 { solver, json } => cmd_table1(&solver.config()?, json),
        Cmd::Verify { out, n_cap, grid, tol } => cmd_verify(out.as_deref(), n_cap, grid, tol),
        Cmd::Plot { what, range, family, grid, out } => cmd_plot(what, &range, family.resolve()?, grid, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("hbounds: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

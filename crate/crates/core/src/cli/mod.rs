//! Command-line front end: `hcr verify`, `hcr tensor` and `hcr solve`.
//!
//! Exit codes: 0 pass, 1 numeric failure, 2 usage error, 3 domain error.

pub mod suites;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::error::Error;
use crate::fields::{ExprField, Field};
use crate::grid::{dirichlet_solve, DomainMask, GridSpec, C0};
use crate::group::{homogeneous_dim, Point};
use crate::jets::sublaplacian;
use crate::schouten::{all_sigmas, schouten_tensor};

pub use suites::{run_suite, Suite};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_NUMERIC: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// What the check verifies, in words.
    pub anchor: String,
    pub points: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// A recorded quantity that is not itself asserted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
}

impl CheckRecord {
    pub fn new(id: &str, anchor: &str, points: usize, max_residual: f64, tolerance: f64) -> Self {
        Self {
            id: id.to_string(),
            anchor: anchor.to_string(),
            points,
            max_residual,
            tolerance,
            passed: max_residual <= tolerance,
            value: None,
        }
    }

    pub fn rescale(&mut self, s: f64) {
        self.tolerance *= s;
        self.passed = self.max_residual <= self.tolerance;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportConfig {
    pub n: usize,
    pub seed: u64,
    pub suites: Vec<String>,
    pub tol_scale: f64,
    /// `false` when tolerances were rescaled.
    pub canonical: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub version: String,
    pub config: ReportConfig,
    pub checks: Vec<CheckRecord>,
    pub verdict: String,
}

impl Report {
    pub fn new(config: ReportConfig, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let verdict = if checks.iter().all(|c| c.passed) { "pass" } else { "fail" };
        Self { version: env!("CARGO_PKG_VERSION").to_string(), config, checks, verdict: verdict.to_string() }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Parser)]
#[command(name = "hcr", version, about = "Heisenberg group CR calculus checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification suites and write a JSON report.
    Verify {
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// group, jets, transform, schouten, perturbation, grid-lite or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        tol_scale: f64,
    },
    /// Evaluate A^u, its spectrum and sigma_k at one point.
    Tensor {
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long)]
        field: String,
        /// "x1,..,xn;y1,..,yn;t"
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the barrier problem on an N^3 grid; writes CSV plus a JSON sidecar.
    Solve {
        #[arg(long)]
        grid: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        eps: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Verify { dim, seed, suite, out, tol_scale } => cmd_verify(dim, seed, &suite, out.as_deref(), tol_scale),
        Command::Tensor { dim, field, point, out } => cmd_tensor(dim, &field, &point, out.as_deref()),
        Command::Solve { grid, eps, out } => cmd_solve(grid, eps, &out),
    }
}

fn usage(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n")),
        None => writeln!(std::io::stdout().lock(), "{text}"),
    }
}

pub fn parse_suites(name: &str) -> Option<Vec<Suite>> {
    if name == "all" {
        return Some(Suite::ALL.to_vec());
    }
    Suite::from_name(name).map(|s| vec![s])
}

pub fn verify_report(n: usize, seed: u64, suites: &[Suite], tol_scale: f64) -> crate::Result<Report> {
    let mut checks = Vec::new();
    for &s in suites {
        checks.extend(run_suite(s, n, seed, tol_scale)?);
    }
    let config = ReportConfig {
        n,
        seed,
        suites: suites.iter().map(|s| s.name().to_string()).collect(),
        tol_scale,
        canonical: tol_scale == 1.0,
    };
    Ok(Report::new(config, checks))
}

pub fn cmd_verify(n: usize, seed: u64, suite: &str, out: Option<&Path>, tol_scale: f64) -> i32 {
    let Some(suites) = parse_suites(suite) else {
        let known: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
        return usage(format!("unknown suite `{suite}`; known suites: {}, all", known.join(", ")));
    };
    if !(1..=4).contains(&n) {
        return usage(format!("--dim must be between 1 and 4, got {n}"));
    }
    if !(tol_scale > 0.0 && tol_scale.is_finite()) {
        return usage(format!("--tol-scale must be positive, got {tol_scale}"));
    }
    let report = match verify_report(n, seed, &suites, tol_scale) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_NUMERIC;
        }
    };
    if let Err(e) = emit(&report.to_json(), out) {
        return usage(format!("cannot write report: {e}"));
    }
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("FAIL {}: residual {:e} > {:e}", c.id, c.max_residual, c.tolerance);
    }
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_NUMERIC
    }
}

/// Parses `"x1,..,xn;y1,..,yn;t"`.
pub fn parse_point(text: &str, n: usize) -> Result<Point, String> {
    let parts: Vec<&str> = text.split(';').collect();
    if parts.len() != 3 {
        return Err(format!("expected `x;y;t`, got `{text}`"));
    }
    let nums = |s: &str| -> Result<Vec<f64>, String> {
        s.split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|e| format!("bad number `{}`: {e}", v.trim())))
            .collect()
    };
    let (x, y, t) = (nums(parts[0])?, nums(parts[1])?, nums(parts[2])?);
    if x.len() != n || y.len() != n || t.len() != 1 {
        return Err(format!("point must have {n} x, {n} y and one t coordinate"));
    }
    if x.iter().chain(&y).chain(&t).any(|v| !v.is_finite()) {
        return Err("point coordinates must be finite".into());
    }
    Ok(Point::new(&x, &y, t[0]))
}

#[derive(Serialize)]
struct TensorOutput {
    field: String,
    n: usize,
    point: Vec<f64>,
    value: f64,
    matrix: Vec<Vec<f64>>,
    spectrum: Vec<f64>,
    sigma: Vec<f64>,
    trace_identity_residual: f64,
}

pub fn cmd_tensor(n: usize, field: &str, point: &str, out: Option<&Path>) -> i32 {
    if !(1..=4).contains(&n) {
        return usage(format!("--dim must be between 1 and 4, got {n}"));
    }
    let u = match ExprField::parse(field, n) {
        Ok(u) => u,
        Err(e) => return usage(e),
    };
    let p = match parse_point(point, n) {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    let eval = || -> crate::Result<TensorOutput> {
        let h = u.horizontal_at(&p)?;
        let a = schouten_tensor(&u, &p)?;
        let q = homogeneous_dim(n) as f64;
        let tr = -2.0 / (q - 2.0) * h.val.powf(-(q + 2.0) / (q - 2.0)) * sublaplacian(&h);
        Ok(TensorOutput {
            field: field.to_string(),
            n,
            point: p.coords(),
            value: h.val,
            matrix: (0..2 * n).map(|i| a.a.row(i).iter().copied().collect()).collect(),
            spectrum: a.spectrum.iter().copied().collect(),
            sigma: all_sigmas(a.spectrum.as_slice())[1..].to_vec(),
            trace_identity_residual: (a.trace() - tr).abs(),
        })
    };
    match eval() {
        Ok(o) => match emit(&serde_json::to_string_pretty(&o).expect("serializes"), out) {
            Ok(()) => EXIT_PASS,
            Err(e) => usage(format!("cannot write output: {e}")),
        },
        Err(e @ (Error::NoConvergence { .. } | Error::NotSymmetric(_))) => {
            eprintln!("error: {e}");
            EXIT_NUMERIC
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_DOMAIN
        }
    }
}

#[derive(Serialize)]
pub struct SolveSidecar {
    pub grid: usize,
    pub eps: f64,
    pub c0: f64,
    pub iterations: usize,
    pub residual: f64,
    pub sigma_origin: f64,
    pub interior_min: f64,
    pub interior_max: f64,
    pub interior_nodes: usize,
    pub flagged: usize,
}

/// The sidecar sits next to the CSV with extension `json`.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

pub fn cmd_solve(grid: usize, eps: f64, out: &Path) -> i32 {
    let spec = match GridSpec::cubic(grid) {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    if !(eps >= 0.0 && eps.is_finite()) {
        return usage(format!("--eps must be a finite number >= 0, got {eps}"));
    }
    let mask = DomainMask::barrier_domain(spec);
    let r = match dirichlet_solve(&mask, eps, C0) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_NUMERIC;
        }
    };
    let sidecar = SolveSidecar {
        grid,
        eps,
        c0: C0,
        iterations: r.iterations,
        residual: r.relative_residual,
        sigma_origin: r.origin_value,
        interior_min: r.interior_min,
        interior_max: r.interior_max,
        interior_nodes: r.interior_nodes,
        flagged: r.flagged.len(),
    };
    let write = || -> std::io::Result<()> {
        let mut w = BufWriter::new(File::create(out)?);
        r.field.write_csv(&mask, &mut w)?;
        w.flush()?;
        std::fs::write(sidecar_path(out), serde_json::to_string_pretty(&sidecar).expect("serializes") + "\n")
    };
    if let Err(e) = write() {
        return usage(format!("cannot write {}: {e}", out.display()));
    }
    EXIT_PASS
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_parsing() {
        let p = parse_point("0.1,0.2;-0.3,0.4;0.5", 2).unwrap();
        assert_eq!(p.coords(), vec![0.1, 0.2, -0.3, 0.4, 0.5]);
        assert!(parse_point("0.1;0.2", 1).is_err());
        assert!(parse_point("0.1;0.2;a", 1).is_err());
        assert!(parse_point("0.1,0.2;0.2;0", 1).is_err());
    }

    #[test]
    fn records_sorted_and_verdict() {
        let c = ReportConfig { n: 1, seed: 0, suites: vec![], tol_scale: 1.0, canonical: true };
        let r = Report::new(c, vec![CheckRecord::new("b", "", 1, 0.0, 1.0), CheckRecord::new("a", "", 1, 2.0, 1.0)]);
        assert_eq!(r.checks[0].id, "a");
        assert!(!r.passed());
        let mut rec = CheckRecord::new("a", "", 1, 2.0, 1.0);
        rec.rescale(3.0);
        assert!(rec.passed);
        assert!(!CheckRecord::new("a", "", 1, f64::NAN, 1.0).passed);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert!(parse_suites("foo").is_none());
        assert_eq!(parse_suites("all").unwrap().len(), 6);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_from(["hcr", "verify", "--suite", "foo"]), EXIT_USAGE);
        assert_eq!(run_from(["hcr", "bogus"]), EXIT_USAGE);
        assert_eq!(run_from(["hcr", "tensor", "--field", "1+", "--point", "0;0;0"]), EXIT_USAGE);
        assert_eq!(run_from(["hcr", "tensor", "--field", "x1", "--point", "-1;0;0"]), EXIT_DOMAIN);
    }
}

//! The `catvase` command line: `solve`, `verify`, `export` and `report`.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;
use crate::families::{
    catenoid_data, double_vase_data, double_vase_inventory, validate_double_vase, validate_vase,
    vase_data, vase_inventory, EndInventory, FamilyDescriptor, FamilyKind, FamilyParams,
};
use crate::period::{
    self, period_report, solve_double_vase_a, solve_vase_rho, DoubleVaseParams, PeriodReport,
    SolveOutcome, VaseParams,
};
use crate::quadrature;
use crate::sampler::export::{write_mesh, MeshFormat};
use crate::sampler::integrate::EXCLUSION_FRACTION;
use crate::sampler::{estimate_mean_curvature, median_abs, sample_mesh, DomainSpec};
use crate::weierstrass::{AuditReport, WeierstrassData};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "CATVASE_THREADS";

pub const EXIT_OK: u8 = 0;
pub const EXIT_RUNTIME: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    fn runtime(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_RUNTIME,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) | Error::UnsupportedOrder(_) => EXIT_INVALID,
            Error::PeriodViolation { .. } | Error::AuditFailure(_) => EXIT_VERIFY,
            _ => EXIT_RUNTIME,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::runtime(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "catvase",
    version,
    about = "Minimal surfaces with catenoid ends from Weierstrass data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the residue equation for the free parameter.
    Solve(RunArgs),
    /// Run the period, regularity, degree and end audits.
    Verify(RunArgs),
    /// Sample a mesh and write it with a metadata sidecar.
    Export(RunArgs),
    /// Solve and verify over a parameter grid, as CSV.
    Report(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum FormatArg {
    Obj,
    Ply,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// vase, double_vase or catenoid.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub k: Option<u32>,
    /// Neck parameter of the vase.
    #[arg(long)]
    pub a: Option<f64>,
    /// End-circle radius of the double vase.
    #[arg(long)]
    pub b: Option<f64>,
    /// Use this rho instead of solving for it.
    #[arg(long)]
    pub rho: Option<f64>,
    /// Period tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(short = 'o', long = "out")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// JSON file with the run configuration; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Export even when verification fails.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub re: f64,
    pub im: f64,
}

/// Partial [`DomainSpec`] applied over the family default.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_point: Option<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angular_resolution: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radial_resolution: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exclusion_radius: Option<f64>,
}

/// Run configuration as read from `--config`; every field is optional there.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub family: Option<FamilyKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(default)]
    pub domain: DomainOverrides,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<FormatArg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report_format: Option<ReportFormat>,
    #[serde(default)]
    pub force: bool,
}

fn parse_family(s: &str) -> CliResult<FamilyKind> {
    serde_json::from_value(Value::String(s.to_string())).map_err(|_| {
        CliError::invalid(format!(
            "unknown family {s:?}; expected vase, double_vase or catenoid"
        ))
    })
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
    }

    /// Config file (if any) with the flags laid over it.
    pub fn from_args(args: &RunArgs) -> CliResult<Self> {
        let mut c = match &args.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(f) = &args.family {
            c.family = Some(parse_family(f)?);
        }
        c.k = args.k.or(c.k);
        c.a = args.a.or(c.a);
        c.b = args.b.or(c.b);
        c.rho = args.rho.or(c.rho);
        c.tol = args.tol.or(c.tol);
        c.out = args.out.clone().or(c.out);
        c.format = args.format.or(c.format);
        c.force |= args.force;
        Ok(c)
    }

    /// Checks that exactly the chosen family's parameters are present.
    pub fn validate(&self) -> CliResult<FamilyKind> {
        let family = self
            .family
            .ok_or_else(|| CliError::invalid("--family is required"))?;
        let present = [
            ("k", self.k.is_some()),
            ("a", self.a.is_some()),
            ("b", self.b.is_some()),
        ];
        let (required, optional): (&[&str], &[&str]) = match family {
            FamilyKind::Vase => (&["k", "a"], &["rho"]),
            FamilyKind::DoubleVase => (&["k", "b"], &[]),
            FamilyKind::Catenoid => (&[], &[]),
        };
        for (name, is_set) in present {
            if required.contains(&name) && !is_set {
                return Err(CliError::invalid(format!("{family} requires --{name}")));
            }
            if !required.contains(&name) && is_set {
                return Err(CliError::invalid(format!(
                    "--{name} does not apply to {family}"
                )));
            }
        }
        if self.rho.is_some() && !optional.contains(&"rho") {
            return Err(CliError::invalid(format!(
                "--rho does not apply to {family}"
            )));
        }
        if let Some(r) = self.rho {
            if !(r > 0.0 && r.is_finite()) {
                return Err(CliError::invalid(format!("rho must be positive, got {r}")));
            }
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::invalid(format!("tol must be positive, got {t}")));
            }
        }
        match family {
            FamilyKind::Vase => validate_vase(self.k.unwrap(), self.a.unwrap())?,
            FamilyKind::DoubleVase => validate_double_vase(self.k.unwrap(), self.b.unwrap())?,
            FamilyKind::Catenoid => {}
        }
        Ok(family)
    }

    pub fn period_tol(&self, family: FamilyKind) -> f64 {
        self.tol.unwrap_or(match family {
            FamilyKind::DoubleVase => period::DOUBLE_VASE_PERIOD_TOL,
            _ => period::VASE_PERIOD_TOL,
        })
    }
}

fn tolerances(config: &RunConfig, family: FamilyKind) -> Value {
    json!({
        "period": config.period_tol(family),
        "vase_root_agreement": period::VASE_ROOT_AGREEMENT,
        "double_vase_root_agreement": period::DOUBLE_VASE_ROOT_AGREEMENT,
        "quadrature_abs": quadrature::ABS_TOL,
        "quadrature_rel": quadrature::REL_TOL,
        "quadrature_max_subdivisions": quadrature::MAX_SUBDIVISIONS,
        "exclusion_fraction": EXCLUSION_FRACTION,
    })
}

fn envelope(command: &str, config: &RunConfig, family: FamilyKind, result: Value) -> Value {
    json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": config,
        "tolerances": tolerances(config, family),
        "result": result,
    })
}

/// Parameters after solving (or taking the override for) the free parameter.
struct Resolved {
    params: FamilyParams,
    data: WeierstrassData,
    solve: Option<SolveOutcome>,
}

fn resolve(config: &RunConfig, family: FamilyKind) -> CliResult<Resolved> {
    Ok(match family {
        FamilyKind::Vase => {
            let (k, a) = (config.k.unwrap(), config.a.unwrap());
            let (rho, solve) = match config.rho {
                Some(rho) => (rho, None),
                None => {
                    let s = solve_vase_rho(k, a)?;
                    (s.value, Some(s))
                }
            };
            Resolved {
                params: FamilyParams::Vase(VaseParams { k, a, rho }),
                data: vase_data(k, a, rho)?,
                solve,
            }
        }
        FamilyKind::DoubleVase => {
            let (k, b) = (config.k.unwrap(), config.b.unwrap());
            let s = solve_double_vase_a(k, b)?;
            Resolved {
                params: FamilyParams::DoubleVase(DoubleVaseParams { k, b, a: s.value }),
                data: double_vase_data(k, b, s.value)?,
                solve: Some(s),
            }
        }
        FamilyKind::Catenoid => Resolved {
            params: FamilyParams::Catenoid,
            data: catenoid_data(),
            solve: None,
        },
    })
}

#[derive(Debug, Clone, Serialize)]
struct Verification {
    passed: bool,
    failures: Vec<String>,
    periods: PeriodReport,
    audit: AuditReport,
    expected_ends: EndInventory,
    found_ends: EndInventory,
}

fn expected_inventory(params: &FamilyParams) -> EndInventory {
    match params {
        FamilyParams::Vase(p) => vase_inventory(p.k),
        FamilyParams::DoubleVase(p) => double_vase_inventory(p.k),
        FamilyParams::Catenoid => EndInventory {
            vertical_up: 1,
            vertical_down: 1,
            ..Default::default()
        },
    }
}

fn verification(resolved: &Resolved, tol: f64) -> CliResult<Verification> {
    let audit = resolved.data.audit_report()?;
    let periods = period_report(&resolved.data, tol)?;
    let expected_ends = expected_inventory(&resolved.params);
    let found_ends = EndInventory::of(&audit);
    let mut failures = Vec::new();
    for v in &audit.regularity_violations {
        failures.push(format!(
            "regularity at {}: ord G = {}, ord dh = {}",
            v.point, v.g_order, v.dh_order
        ));
    }
    if !audit.degree_audit.passed() {
        failures.push(format!("degree audit {:?}", audit.degree_audit));
    }
    if found_ends != expected_ends {
        failures.push(format!(
            "end inventory {found_ends:?}, expected {expected_ends:?}"
        ));
    }
    const NAMES: [&str; 3] = ["Im Res((1/G-G)dh)", "Re Res((1/G+G)dh)", "Im Res(dh)"];
    for e in &periods.punctures {
        for (i, ok) in e.conditions.iter().enumerate() {
            if !ok {
                failures.push(format!(
                    "period at {}: {} = {:e} exceeds {:e}",
                    e.location, NAMES[i], e.defects[i], tol
                ));
            }
        }
    }
    Ok(Verification {
        passed: failures.is_empty(),
        failures,
        periods,
        audit,
        expected_ends,
        found_ends,
    })
}

fn domain_for(config: &RunConfig, params: &FamilyParams) -> CliResult<DomainSpec> {
    let mut d = DomainSpec::default_for(params);
    let o = &config.domain;
    if let Some(p) = o.base_point {
        d.base_point = Complex64::new(p.re, p.im);
    }
    d.r_min = o.r_min.unwrap_or(d.r_min);
    d.r_max = o.r_max.unwrap_or(d.r_max);
    d.angular_resolution = o.angular_resolution.unwrap_or(d.angular_resolution);
    d.radial_resolution = o.radial_resolution.unwrap_or(d.radial_resolution);
    d.exclusion_radius = o.exclusion_radius.or(d.exclusion_radius);
    d.validate()?;
    Ok(d)
}

fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    if let Some(path) = out {
        std::fs::write(path, text)
            .map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))?;
    }
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(text.as_bytes())?;
    Ok(())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("report serialises") + "\n"
}

fn cmd_solve(config: &RunConfig) -> CliResult<u8> {
    let family = config.validate()?;
    if config.rho.is_some() {
        return Err(CliError::invalid(
            "--rho is an override for verify and export, not solve",
        ));
    }
    let resolved = resolve(config, family)?;
    let Some(solve) = resolved.solve else {
        return Err(CliError::invalid(
            "the catenoid has no free parameter to solve",
        ));
    };
    let result = json!({
        "parameters": resolved.params,
        "parameter": solve.parameter,
        "value": solve.value,
        "closed_form": solve.closed_form,
        "numeric_root": solve.numeric_root,
        "residual": solve.residual,
        "mismatch": solve.mismatch,
        "sign_changes": solve.sign_changes,
    });
    emit(
        &pretty(&envelope("solve", config, family, result)),
        config.out.as_deref(),
    )?;
    Ok(EXIT_OK)
}

fn cmd_verify(config: &RunConfig) -> CliResult<u8> {
    let family = config.validate()?;
    let resolved = resolve(config, family)?;
    let v = verification(&resolved, config.period_tol(family))?;
    let result = json!({
        "parameters": resolved.params,
        "solve": resolved.solve,
        "verification": v,
    });
    emit(
        &pretty(&envelope("verify", config, family, result)),
        config.out.as_deref(),
    )?;
    if !v.passed {
        for f in &v.failures {
            eprintln!("verification failure: {f}");
        }
        return Ok(EXIT_VERIFY);
    }
    Ok(EXIT_OK)
}

fn mesh_format(config: &RunConfig, out: &Path) -> MeshFormat {
    match config.format {
        Some(FormatArg::Ply) => MeshFormat::Ply,
        Some(FormatArg::Obj) => MeshFormat::Obj,
        None if out
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("ply")) =>
        {
            MeshFormat::Ply
        }
        None => MeshFormat::Obj,
    }
}

fn cmd_export(config: &RunConfig) -> CliResult<u8> {
    let family = config.validate()?;
    let resolved = resolve(config, family)?;
    let v = verification(&resolved, config.period_tol(family))?;
    if !v.passed && !config.force {
        for f in &v.failures {
            eprintln!("verification failure: {f}");
        }
        eprintln!("refusing to export an unverified surface; pass --force to override");
        return Ok(EXIT_VERIFY);
    }
    let domain = domain_for(config, &resolved.params)?;
    let mut mesh = sample_mesh(&resolved.data, &domain)?;
    mesh.metadata.family = Some(FamilyDescriptor::new(&resolved.params, &resolved.data));
    let ext = match config.format {
        Some(FormatArg::Ply) => "ply",
        _ => "obj",
    };
    let out = config
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{family}.{ext}")));
    let format = mesh_format(config, &out);
    let sidecar = write_mesh(&mesh, &out, format)
        .map_err(|e| CliError::runtime(format!("{}: {e}", out.display())))?;
    let median_h = estimate_mean_curvature(&mesh)
        .ok()
        .and_then(|h| median_abs(&h));
    let result = json!({
        "parameters": resolved.params,
        "verified": v.passed,
        "output": out,
        "sidecar": sidecar,
        "format": match format {
            MeshFormat::Obj => FormatArg::Obj,
            MeshFormat::Ply => FormatArg::Ply,
        },
        "vertices": mesh.vertices.len(),
        "faces": mesh.faces.len(),
        "max_period_defect": v.periods.max_defect(),
        "median_abs_mean_curvature": median_h,
        "domain": domain,
    });
    emit(&pretty(&envelope("export", config, family, result)), None)?;
    Ok(EXIT_OK)
}

/// Default sweep grids for `report`.
pub const REPORT_VASE_K: [u32; 7] = [2, 3, 4, 5, 6, 7, 8];
pub const REPORT_VASE_A: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
pub const REPORT_DOUBLE_VASE_K: [u32; 5] = [2, 3, 4, 5, 6];
pub const REPORT_DOUBLE_VASE_B: [f64; 4] = [0.1, 0.25, 0.5, 0.75];

#[derive(Debug, Clone, Serialize)]
struct ReportRow {
    family: FamilyKind,
    k: Option<u32>,
    a: Option<f64>,
    b: Option<f64>,
    parameter: Option<String>,
    value: Option<f64>,
    closed_form: Option<f64>,
    numeric_root: Option<f64>,
    residual: Option<f64>,
    mismatch: Option<bool>,
    max_period_defect: Option<f64>,
    passed: bool,
    error: Option<String>,
}

fn report_row(family: FamilyKind, cell: &RunConfig, tol: f64) -> ReportRow {
    let mut row = ReportRow {
        family,
        k: cell.k,
        a: cell.a,
        b: cell.b,
        parameter: None,
        value: None,
        closed_form: None,
        numeric_root: None,
        residual: None,
        mismatch: None,
        max_period_defect: None,
        passed: false,
        error: None,
    };
    let outcome = cell
        .validate()
        .and_then(|_| resolve(cell, family))
        .and_then(|r| verification(&r, tol).map(|v| (r, v)));
    match outcome {
        Ok((r, v)) => {
            if let Some(s) = r.solve {
                row.parameter = Some(s.parameter);
                row.value = Some(s.value);
                row.closed_form = s.closed_form;
                row.numeric_root = Some(s.numeric_root);
                row.residual = Some(s.residual);
                row.mismatch = Some(s.mismatch);
            }
            row.max_period_defect = Some(v.periods.max_defect());
            row.passed = v.passed;
        }
        Err(e) => row.error = Some(e.message),
    }
    row
}

fn cmd_report(config: &RunConfig) -> CliResult<u8> {
    let family = config
        .family
        .ok_or_else(|| CliError::invalid("--family is required"))?;
    if config.rho.is_some() {
        return Err(CliError::invalid("--rho does not apply to report"));
    }
    let cells: Vec<RunConfig> = match family {
        FamilyKind::Vase => {
            let ks = config.k.map_or(REPORT_VASE_K.to_vec(), |k| vec![k]);
            let as_ = config.a.map_or(REPORT_VASE_A.to_vec(), |a| vec![a]);
            if config.b.is_some() {
                return Err(CliError::invalid("--b does not apply to vase"));
            }
            ks.iter()
                .flat_map(|&k| as_.iter().map(move |&a| (k, a)))
                .map(|(k, a)| RunConfig {
                    k: Some(k),
                    a: Some(a),
                    ..config.clone()
                })
                .collect()
        }
        FamilyKind::DoubleVase => {
            let ks = config.k.map_or(REPORT_DOUBLE_VASE_K.to_vec(), |k| vec![k]);
            let bs = config.b.map_or(REPORT_DOUBLE_VASE_B.to_vec(), |b| vec![b]);
            if config.a.is_some() {
                return Err(CliError::invalid("--a does not apply to double_vase"));
            }
            ks.iter()
                .flat_map(|&k| bs.iter().map(move |&b| (k, b)))
                .map(|(k, b)| RunConfig {
                    k: Some(k),
                    b: Some(b),
                    ..config.clone()
                })
                .collect()
        }
        FamilyKind::Catenoid => {
            config.validate()?;
            vec![config.clone()]
        }
    };
    let tol = config.period_tol(family);
    let rows: Vec<ReportRow> = cells
        .par_iter()
        .map(|c| report_row(family, c, tol))
        .collect();
    let text = match config.report_format.unwrap_or(ReportFormat::Csv) {
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(r)
                    .map_err(|e| CliError::runtime(e.to_string()))?;
            }
            String::from_utf8(
                w.into_inner()
                    .map_err(|e| CliError::runtime(e.to_string()))?,
            )
            .expect("csv output is utf-8")
        }
        ReportFormat::Json => pretty(&envelope("report", config, family, json!(rows))),
    };
    emit(&text, config.out.as_deref())?;
    Ok(if rows.iter().all(|r| r.passed) {
        EXIT_OK
    } else {
        EXIT_VERIFY
    })
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw.parse().map_err(|_| {
        CliError::invalid(format!(
            "{THREADS_ENV} must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::runtime(e.to_string()))
}

pub fn run(cli: &Cli) -> CliResult<u8> {
    configure_threads()?;
    match &cli.command {
        Command::Solve(a) => cmd_solve(&RunConfig::from_args(a)?),
        Command::Verify(a) => cmd_verify(&RunConfig::from_args(a)?),
        Command::Export(a) => cmd_export(&RunConfig::from_args(a)?),
        Command::Report(a) => cmd_report(&RunConfig::from_args(a)?),
    }
}

/// Parses `args`, runs the command and maps the outcome to an exit code.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

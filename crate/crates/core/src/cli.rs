//! Run configuration, command dispatch and curve-file output for the
//! `lambrecon` binary.
//!
//! Settings are merged in the order: family defaults, then the optional JSON
//! config file, then command-line flags. Exit statuses:
//!
//! | status | meaning |
//! |--------|---------|
//! | 0 | success, every configured check passed |
//! | 1 | invalid input (flags, config file, expression, nodal prefactor, I/O) |
//! | 2 | numerical failure (quadrature, non-finite values, propagation) |
//! | 3 | a verification threshold was not met |

use std::fmt;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::parse;
use crate::grid::Grid1D;
use crate::prefactor::{Domain, Geometry, Prefactor};
use crate::propagate::{cn_propagate, lamb_protocol, PropagationConfig, PropagationReport, ProtocolReport};
use crate::reconstruct::{reconstruct, ReconstructedState, ReconstructionConfig, DEFAULT_CLIP, DEFAULT_N, DEFAULT_QUAD_TOL};
use crate::verify::{verify, ResidualMode, Tolerances, VerificationReport};

pub const THREADS_ENV: &str = "LAMBRECON_THREADS";
pub const DEFAULT_DT: f64 = 1e-4;
pub const DEFAULT_STEPS: usize = 1000;
/// Largest allowed `|kick(R, S) - ψ|` in the protocol command.
pub const KICK_TOLERANCE: f64 = 1e-15;

macro_rules! string_enum {
    ($name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $text)] $variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self { $($name::$variant => $text),+ }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = String;
            fn from_str(s: &str) -> std::result::Result<Self, String> {
                match s {
                    $($text => Ok($name::$variant),)+
                    _ => Err(format!(
                        "unknown {} `{s}` (expected one of: {})",
                        stringify!($name).to_lowercase(),
                        [$($text),+].join(", ")
                    )),
                }
            }
        }
    };
}

string_enum!(Command {
    Reconstruct => "reconstruct",
    Verify => "verify",
    Propagate => "propagate",
    Protocol => "protocol",
    Sweep => "sweep",
    Families => "families",
});

string_enum!(Family {
    Free => "free",
    Gaussian => "gaussian",
    Well => "well",
    Hydrogen => "hydrogen",
    Expr => "expr",
});

string_enum!(Format {
    Csv => "csv",
    Json => "json",
});

impl Format {
    pub fn extension(self) -> &'static str {
        self.as_str()
    }
}

/// Everything a run can be told. Unset fields fall back to family defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expr_text: Option<String>,
    #[serde(rename = "C", skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(rename = "C_list", skip_serializing_if = "Option::is_none")]
    pub c_list: Option<Vec<f64>>,
    #[serde(rename = "E", skip_serializing_if = "Option::is_none")]
    pub e: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_lo: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_hi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clip: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quad_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    /// Geometry for expression prefactors (default line-1d).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometry: Option<Geometry>,
    /// Stationarity threshold for `propagate` and `protocol`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_fidelity: Option<f64>,
    /// Interior window `[lo, hi]` for restricted fidelity traces.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<[f64; 2]>,
}

impl RunConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
        serde_json::from_str(&text).map_err(|source| Error::Json { path: path.into(), source })
    }

    /// Fields set in `over` replace those in `self`.
    pub fn merged_with(self, over: RunConfig) -> RunConfig {
        RunConfig {
            command: over.command.or(self.command),
            family: over.family.or(self.family),
            expr_text: over.expr_text.or(self.expr_text),
            c: over.c.or(self.c),
            c_list: over.c_list.or(self.c_list),
            e: over.e.or(self.e),
            x_lo: over.x_lo.or(self.x_lo),
            x_hi: over.x_hi.or(self.x_hi),
            n: over.n.or(self.n),
            x0: over.x0.or(self.x0),
            clip: over.clip.or(self.clip),
            quad_tol: over.quad_tol.or(self.quad_tol),
            dt: over.dt.or(self.dt),
            steps: over.steps.or(self.steps),
            out_dir: over.out_dir.or(self.out_dir),
            format: over.format.or(self.format),
            geometry: over.geometry.or(self.geometry),
            min_fidelity: over.min_fidelity.or(self.min_fidelity),
            window: over.window.or(self.window),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExitStatus {
    Success = 0,
    Invalid = 1,
    Numeric = 2,
    CheckFailed = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

impl From<&Error> for ExitStatus {
    fn from(e: &Error) -> Self {
        if e.is_numeric() {
            ExitStatus::Numeric
        } else {
            ExitStatus::Invalid
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: ExitStatus,
    /// Files written, in order.
    pub files: Vec<PathBuf>,
    /// Human-readable summary (or error message) for stdout/stderr.
    pub message: String,
}

impl Outcome {
    fn failed(err: &Error) -> Self {
        Self { status: ExitStatus::from(err), files: Vec::new(), message: format!("error: {err}") }
    }
}

/// Resolved prefactor plus everything needed to build per-`C` configs.
struct Plan {
    family: Family,
    pref: Prefactor,
    config: RunConfig,
    clip: f64,
    n: usize,
    quad_tol: f64,
    format: Format,
    out_dir: PathBuf,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidConfig(msg.into())
}

impl Plan {
    fn new(config: &RunConfig) -> Result<Self> {
        let command = config.command.ok_or_else(|| invalid("no command given"))?;
        let family = config.family.ok_or_else(|| invalid("--family is required"))?;
        match (family, &config.expr_text) {
            (Family::Expr, None) => return Err(invalid("--expr is required with --family expr")),
            (f, Some(_)) if f != Family::Expr => {
                return Err(invalid("--expr is only accepted with --family expr"))
            }
            _ => {}
        }
        match (command, &config.c_list) {
            (Command::Sweep, None) => return Err(invalid("sweep needs --C-list")),
            (Command::Sweep, Some(list)) if list.is_empty() => return Err(invalid("--C-list is empty")),
            (c, Some(_)) if c != Command::Sweep => {
                return Err(invalid("--C-list is only accepted by sweep"))
            }
            _ => {}
        }
        if command == Command::Sweep && config.c.is_some() {
            return Err(invalid("sweep takes --C-list, not --C"));
        }
        let clip = config.clip.unwrap_or(DEFAULT_CLIP);
        let n = config.n.unwrap_or(DEFAULT_N);
        let quad_tol = config.quad_tol.unwrap_or(DEFAULT_QUAD_TOL);
        if n < 3 {
            return Err(invalid(format!("n must be at least 3, got {n}")));
        }
        for (name, v) in [("C", config.c), ("E", config.e), ("x0", config.x0), ("x_lo", config.x_lo), ("x_hi", config.x_hi)] {
            if let Some(v) = v {
                if !v.is_finite() {
                    return Err(invalid(format!("{name} must be finite, got {v}")));
                }
            }
        }
        if config.geometry.is_some() && family != Family::Expr {
            return Err(invalid("--geometry only applies to --family expr"));
        }
        let pref = match family {
            Family::Free => Prefactor::free(),
            Family::Gaussian => Prefactor::gaussian(),
            Family::Well => Prefactor::well(),
            Family::Hydrogen => Prefactor::hydrogen(),
            Family::Expr => {
                let text = config.expr_text.as_deref().unwrap_or_default();
                let expr = parse(text)?;
                let (Some(lo), Some(hi)) = (config.x_lo, config.x_hi) else {
                    return Err(invalid("--family expr needs --x-lo and --x-hi (the open domain)"));
                };
                let x0 = config.x0.unwrap_or(0.5 * (lo + hi));
                let geometry = config.geometry.unwrap_or(Geometry::Line1D);
                Prefactor::from_expression(expr, Domain::new(lo, hi), geometry, config.e.unwrap_or(0.0), x0)?
            }
        };
        Ok(Self {
            family,
            pref,
            config: config.clone(),
            clip,
            n,
            quad_tol,
            format: config.format.unwrap_or(Format::Csv),
            out_dir: config.out_dir.clone().unwrap_or_else(|| PathBuf::from(".")),
        })
    }

    fn grid(&self) -> Result<Grid1D> {
        match (self.family, self.config.x_lo, self.config.x_hi) {
            (Family::Expr, _, _) => self.pref.default_grid(self.clip, self.n),
            (_, Some(lo), Some(hi)) => Grid1D::new(lo, hi, self.n),
            (_, None, None) => self.pref.default_grid(self.clip, self.n),
            (_, lo, hi) => {
                let (dlo, dhi) = self.pref.default_grid(self.clip, self.n).map(|g| (g.x_lo(), g.x_hi()))?;
                Grid1D::new(lo.unwrap_or(dlo), hi.unwrap_or(dhi), self.n)
            }
        }
    }

    fn reconstruction(&self, c: f64) -> Result<ReconstructionConfig> {
        Ok(ReconstructionConfig {
            current: c,
            energy: self.config.e.unwrap_or_else(|| self.pref.default_energy().resolve(c)),
            x0: self.config.x0.unwrap_or(self.pref.default_x0()),
            clip: self.clip,
            grid: self.grid()?,
            quad_tol: self.quad_tol,
        })
    }

    fn propagation(&self, energy: f64) -> Result<PropagationConfig> {
        let dt = self.config.dt.unwrap_or(DEFAULT_DT);
        let steps = self.config.steps.unwrap_or(DEFAULT_STEPS);
        let mut p = PropagationConfig::new(dt, steps, energy);
        if let Some([lo, hi]) = self.config.window {
            p = p.with_window(lo, hi);
        }
        Ok(p)
    }

    /// The effective settings for one curve, echoed into JSON output.
    fn echo(&self, cfg: &ReconstructionConfig) -> RunConfig {
        let mut echo = self.config.clone();
        echo.c = Some(cfg.current);
        echo.e = Some(cfg.energy);
        echo.x_lo = Some(cfg.grid.x_lo());
        echo.x_hi = Some(cfg.grid.x_hi());
        echo.n = Some(cfg.grid.len());
        echo.x0 = Some(cfg.x0);
        echo.clip = Some(cfg.clip);
        echo.quad_tol = Some(cfg.quad_tol);
        echo.format = Some(self.format);
        echo.out_dir = Some(self.out_dir.clone());
        echo
    }

    fn stem(&self, c: f64) -> String {
        format!("{}_C{}", self.family, c)
    }

    fn path(&self, name: String) -> PathBuf {
        self.out_dir.join(name)
    }
}

/// Execute a fully merged configuration.
pub fn run(config: &RunConfig) -> Outcome {
    match config.command {
        Some(Command::Families) => families(config),
        _ => match execute(config) {
            Ok(out) => out,
            Err(e) => Outcome::failed(&e),
        },
    }
}

fn execute(config: &RunConfig) -> Result<Outcome> {
    let plan = Plan::new(config)?;
    fs::create_dir_all(&plan.out_dir).map_err(|source| Error::Io { path: plan.out_dir.clone(), source })?;
    match config.command.expect("checked in Plan::new") {
        Command::Reconstruct => cmd_reconstruct(&plan),
        Command::Verify => cmd_verify(&plan),
        Command::Propagate => cmd_propagate(&plan),
        Command::Protocol => cmd_protocol(&plan),
        Command::Sweep => cmd_sweep(&plan),
        Command::Families => unreachable!(),
    }
}

fn cmd_reconstruct(plan: &Plan) -> Result<Outcome> {
    let c = plan.config.c.unwrap_or(0.0);
    let cfg = plan.reconstruction(c)?;
    let state = reconstruct(&plan.pref, &cfg)?;
    let path = plan.path(format!("{}.{}", plan.stem(c), plan.format.extension()));
    emit_curve(&state, plan.format, &path, &plan.echo(&cfg))?;
    Ok(Outcome {
        status: ExitStatus::Success,
        message: format!("wrote {} ({} nodes)", path.display(), state.len()),
        files: vec![path],
    })
}

fn cmd_verify(plan: &Plan) -> Result<Outcome> {
    let c = plan.config.c.unwrap_or(0.0);
    let cfg = plan.reconstruction(c)?;
    let state = reconstruct(&plan.pref, &cfg)?;
    let report = verify(&state, ResidualMode::Analytic, Tolerances::default())?;
    let curve = plan.path(format!("{}.{}", plan.stem(c), plan.format.extension()));
    emit_curve(&state, plan.format, &curve, &plan.echo(&cfg))?;
    let rep_path = plan.path(format!("{}_verification.json", plan.stem(c)));
    write_json(&rep_path, &report)?;
    let status = if report.passed() { ExitStatus::Success } else { ExitStatus::CheckFailed };
    Ok(Outcome {
        status,
        message: describe_verification(c, &report),
        files: vec![curve, rep_path],
    })
}

fn describe_verification(c: f64, r: &VerificationReport) -> String {
    format!(
        "C = {c}: residual re {:.3e} im {:.3e}, recon {:.3e}, current {:.3e}, norm {:.6} -> {}",
        r.residual_real_max,
        r.residual_imag_max,
        r.recon_condition_max,
        r.current_dev_max,
        r.norm,
        if r.passed() { "pass" } else { "FAIL" }
    )
}

fn fidelity_ok(threshold: Option<f64>, value: f64) -> bool {
    threshold.map_or(true, |t| value >= t)
}

fn cmd_propagate(plan: &Plan) -> Result<Outcome> {
    if plan.pref.geometry() == Geometry::Radial3D {
        return Err(invalid("time propagation is only available for line-1d prefactors"));
    }
    let c = plan.config.c.unwrap_or(0.0);
    let cfg = plan.reconstruction(c)?;
    let state = reconstruct(&plan.pref, &cfg)?;
    let pcfg = plan.propagation(cfg.energy)?;
    let (_, report) = cn_propagate(&state.psi, &state.v, &state.grid, &pcfg)?;
    let path = plan.path(format!("{}_propagation.json", plan.stem(c)));
    write_json(&path, &report)?;
    let watched = report.min_window_fidelity().unwrap_or_else(|| report.min_fidelity());
    let ok = fidelity_ok(plan.config.min_fidelity, watched);
    Ok(Outcome {
        status: if ok { ExitStatus::Success } else { ExitStatus::CheckFailed },
        message: describe_propagation(&report),
        files: vec![path],
    })
}

fn describe_propagation(r: &PropagationReport) -> String {
    let mut s = format!(
        "steps {}: min fidelity {:.8}, norm drift {:.3e}, final phase error {:.3e}",
        r.times.len() - 1,
        r.min_fidelity(),
        r.norm_drift(),
        r.final_phase_error()
    );
    if let Some(w) = r.min_window_fidelity() {
        s.push_str(&format!(", window fidelity {w:.8}"));
    }
    s
}

fn cmd_protocol(plan: &Plan) -> Result<Outcome> {
    let c = plan.config.c.unwrap_or(0.0);
    let cfg = plan.reconstruction(c)?;
    let pcfg = plan.propagation(cfg.energy)?;
    let report: ProtocolReport = lamb_protocol(&plan.pref, &cfg, &pcfg)?;
    let path = plan.path(format!("{}_protocol.json", plan.stem(c)));
    write_json(&path, &report)?;
    let mut ok = report.kick_mismatch <= KICK_TOLERANCE;
    if let Some(p) = &report.prepared {
        ok &= fidelity_ok(plan.config.min_fidelity, p.min_fidelity());
    }
    if let (Some(k), Some(_)) = (&report.kicked, plan.config.window) {
        ok &= fidelity_ok(plan.config.min_fidelity, k.min_window_fidelity().unwrap_or(0.0));
    }
    let mut message = format!("kick mismatch {:.3e}", report.kick_mismatch);
    if let Some(p) = &report.prepared {
        message.push_str(&format!("; prepared R: {}", describe_propagation(p)));
    }
    if let Some(k) = &report.kicked {
        message.push_str(&format!("; kicked psi: {}", describe_propagation(k)));
    }
    for w in &report.warnings {
        message.push_str(&format!("\nwarning: {w}"));
    }
    Ok(Outcome {
        status: if ok { ExitStatus::Success } else { ExitStatus::CheckFailed },
        message,
        files: vec![path],
    })
}

#[derive(Debug, Serialize)]
struct SweepEntry {
    #[serde(rename = "C")]
    c: f64,
    #[serde(rename = "E")]
    e: f64,
    curve: String,
    verification: VerificationReport,
}

#[derive(Debug, Serialize)]
struct SweepSummary<'a> {
    family: Family,
    meta: &'a RunConfig,
    entries: Vec<SweepEntry>,
    all_passed: bool,
}

/// Worker count from [`THREADS_ENV`]; `None` means rayon's default.
pub fn thread_limit() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(invalid(format!("{THREADS_ENV}: {e}"))),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(Some(k)),
            _ => Err(invalid(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
        },
    }
}

fn cmd_sweep(plan: &Plan) -> Result<Outcome> {
    let list = plan.config.c_list.clone().expect("checked in Plan::new");
    let configs: Vec<ReconstructionConfig> = list.iter().map(|&c| plan.reconstruction(c)).collect::<Result<_>>()?;
    let work = || -> Result<Vec<(ReconstructedState, VerificationReport)>> {
        configs
            .par_iter()
            .map(|cfg| {
                let st = reconstruct(&plan.pref, cfg)?;
                let rep = verify(&st, ResidualMode::Analytic, Tolerances::default())?;
                Ok((st, rep))
            })
            .collect()
    };
    let results = match thread_limit()? {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| invalid(format!("thread pool: {e}")))?
            .install(work)?,
        None => work()?,
    };

    let mut files = Vec::new();
    let mut entries = Vec::new();
    let mut lines = Vec::new();
    for (cfg, (state, report)) in configs.iter().zip(results) {
        let name = format!("{}.{}", plan.stem(cfg.current), plan.format.extension());
        let path = plan.path(name.clone());
        emit_curve(&state, plan.format, &path, &plan.echo(cfg))?;
        files.push(path);
        lines.push(describe_verification(cfg.current, &report));
        entries.push(SweepEntry { c: cfg.current, e: cfg.energy, curve: name, verification: report });
    }
    let all_passed = entries.iter().all(|e| e.verification.passed());
    let mut meta = plan.config.clone();
    meta.format = Some(plan.format);
    meta.out_dir = Some(plan.out_dir.clone());
    let summary = SweepSummary { family: plan.family, meta: &meta, entries, all_passed };
    let path = plan.path(format!("{}_sweep_summary.json", plan.family));
    write_json(&path, &summary)?;
    files.push(path);
    Ok(Outcome {
        status: if all_passed { ExitStatus::Success } else { ExitStatus::CheckFailed },
        message: lines.join("\n"),
        files,
    })
}

#[derive(Debug, Serialize)]
pub struct FamilyInfo {
    pub name: String,
    pub geometry: Geometry,
    pub domain_lo: f64,
    pub domain_hi: f64,
    /// `"C^2/2"` for the plane wave, otherwise the fixed value.
    pub default_e: String,
    pub default_x0: f64,
}

pub fn family_table() -> Vec<FamilyInfo> {
    Prefactor::builtins()
        .iter()
        .map(|p| FamilyInfo {
            name: p.name().to_string(),
            geometry: p.geometry(),
            domain_lo: p.domain().lo,
            domain_hi: p.domain().hi,
            default_e: match p.default_energy() {
                crate::prefactor::DefaultEnergy::Fixed(e) => format!("{e:?}"),
                crate::prefactor::DefaultEnergy::HalfCurrentSquared => "C^2/2".into(),
            },
            default_x0: p.default_x0(),
        })
        .collect()
}

fn families(config: &RunConfig) -> Outcome {
    let table = family_table();
    let message = match config.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from("name,geometry,domain_lo,domain_hi,default_E,default_x0");
            for f in &table {
                s.push_str(&format!(
                    "\n{},{},{:?},{:?},{},{:?}",
                    f.name, f.geometry, f.domain_lo, f.domain_hi, f.default_e, f.default_x0
                ));
            }
            s
        }
        // infinite bounds are not valid JSON numbers; spell them out
        Format::Json => {
            let rows: Vec<serde_json::Value> = table
                .iter()
                .map(|f| {
                    serde_json::json!({
                        "name": f.name,
                        "geometry": f.geometry,
                        "domain": [bound(f.domain_lo), bound(f.domain_hi)],
                        "default_E": f.default_e,
                        "default_x0": f.default_x0,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&rows).expect("plain values serialise")
        }
    };
    Outcome { status: ExitStatus::Success, files: Vec::new(), message }
}

fn bound(v: f64) -> serde_json::Value {
    if v.is_finite() {
        serde_json::json!(v)
    } else if v > 0.0 {
        serde_json::json!("inf")
    } else {
        serde_json::json!("-inf")
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let file = fs::File::create(path).map_err(|source| Error::Io { path: path.into(), source })?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value).map_err(|source| Error::Json { path: path.into(), source })?;
    w.write_all(b"\n").and_then(|_| w.flush()).map_err(|source| Error::Io { path: path.into(), source })
}

/// Sampled curves of one state, column by column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveData {
    pub x: Vec<f64>,
    #[serde(rename = "R")]
    pub r: Vec<f64>,
    #[serde(rename = "S")]
    pub s: Vec<f64>,
    #[serde(rename = "V")]
    pub v: Vec<f64>,
    pub re_psi: Vec<f64>,
    pub im_psi: Vec<f64>,
    pub rho: Vec<f64>,
}

impl CurveData {
    pub fn from_state(state: &ReconstructedState) -> Self {
        Self {
            x: state.xs(),
            r: state.r.clone(),
            s: state.s.clone(),
            v: state.v.clone(),
            re_psi: state.real_part(),
            im_psi: state.imag_part(),
            rho: state.rho.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveFile {
    pub meta: RunConfig,
    #[serde(flatten)]
    pub data: CurveData,
}

pub const CSV_HEADER: &str = "x,R,S,V,re_psi,im_psi,rho";

/// Write one state as CSV (17 significant digits, LF endings) or JSON
/// (parallel arrays plus `meta`).
pub fn emit_curve(state: &ReconstructedState, format: Format, path: &Path, meta: &RunConfig) -> Result<()> {
    let data = CurveData::from_state(state);
    match format {
        Format::Json => write_json(path, &CurveFile { meta: meta.clone(), data }),
        Format::Csv => {
            let io = |source| Error::Io { path: path.into(), source };
            let file = fs::File::create(path).map_err(io)?;
            let mut w = BufWriter::new(file);
            writeln!(w, "{CSV_HEADER}").map_err(io)?;
            for i in 0..data.x.len() {
                writeln!(
                    w,
                    "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                    data.x[i], data.r[i], data.s[i], data.v[i], data.re_psi[i], data.im_psi[i], data.rho[i]
                )
                .map_err(io)?;
            }
            w.flush().map_err(io)
        }
    }
}

pub fn read_curve_json(path: &Path) -> Result<CurveFile> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| Error::Json { path: path.into(), source })
}

/// Parse a CSV curve file written by [`emit_curve`].
pub fn read_curve_csv(path: &Path) -> Result<CurveData> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(invalid(format!("{}: missing `{CSV_HEADER}` header", path.display())));
    }
    let mut cols: [Vec<f64>; 7] = Default::default();
    for (k, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(invalid(format!("{}: row {} has {} fields", path.display(), k + 1, fields.len())));
        }
        for (col, f) in cols.iter_mut().zip(fields) {
            col.push(f.parse().map_err(|_| invalid(format!("{}: bad number `{f}`", path.display())))?);
        }
    }
    let [x, r, s, v, re_psi, im_psi, rho] = cols;
    Ok(CurveData { x, r, s, v, re_psi, im_psi, rho })
}

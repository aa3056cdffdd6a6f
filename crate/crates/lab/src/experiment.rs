//! Single experiment: run, probes, audits, and persisted outputs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use sha2::{Digest, Sha256};

use nsk_core::degiorgi::lower_bound_certificate;
use nsk_core::estimates::{self, REVERSE_HOLDER_CONSTANT};
use nsk_core::littlewood_paley::{
    optimal_interpolation_audit, DyadicFamily, INTERPOLATION_CONSTANT,
};
use nsk_core::snapshot::Snapshot;
use nsk_core::solver::{run, FlowState, Formulation, TrajectoryRecord};
use nsk_core::{AuditReport, Error};

use crate::config::{AuditKind, ExperimentConfig};
use crate::error::LabError;
use crate::ini::{render, Document};

/// Frozen bound on [`energy_step_ratio`]; twice the maximum over the preset corpus (1.04).
pub const ENERGY_STEP_CONSTANT: f64 = 2.0 * 1.04;
/// Relative tolerance on conserved integrals.
pub const CONSERVATION_TOLERANCE: f64 = 1e-10;
/// Relative tolerance of the BD identity along runs.
pub const BD_TOLERANCE: f64 = 1e-6;
/// Exponents of the growth-law fit.
pub const GROWTH_EXPONENTS: [f64; 4] = [2.0, 6.0, 14.0, 30.0];
/// Allowed relative spread of the growth-law ratios.
pub const GROWTH_SPREAD: f64 = 0.2;

pub const SERIES_FILE: &str = "series.csv";
pub const AUDIT_FILE: &str = "audits.csv";
pub const MANIFEST_FILE: &str = "manifest.ini";

/// An audit outcome and whether its failure fails the run.
#[derive(Clone, Debug, PartialEq)]
pub struct AuditRow {
    pub report: AuditReport,
    pub hard: bool,
}

impl AuditRow {
    pub fn new(report: AuditReport, hard: bool) -> Self {
        Self { report, hard }
    }

    fn hard(report: AuditReport) -> Self {
        Self { report, hard: true }
    }

    fn soft(report: AuditReport) -> Self {
        Self {
            report,
            hard: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RunStatus {
    Completed,
    SolverAbort { t: f64, message: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunManifest {
    pub directory: PathBuf,
    pub config_hash: String,
    pub version: String,
    pub wall_time: f64,
    pub status: RunStatus,
    pub exit_code: i32,
    pub gamma: f64,
    pub dim: usize,
    pub n: usize,
    pub preset: String,
    pub q_admissible: Option<f64>,
    pub audits_passed: usize,
    pub audits_total: usize,
    pub hard_failures: usize,
    pub constants: BTreeMap<String, f64>,
    pub warnings: Vec<String>,
    /// File names relative to `directory`, with sizes in bytes.
    pub files: Vec<(String, u64)>,
}

pub fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_file(
    dir: &Path,
    name: &str,
    contents: &[u8],
    files: &mut Vec<(String, u64)>,
) -> Result<(), LabError> {
    let path = dir.join(name);
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| LabError::io(parent, e))?;
    }
    fs::write(&path, contents).map_err(|e| LabError::io(&path, e))?;
    files.push((name.to_string(), contents.len() as u64));
    Ok(())
}

fn series_csv(record: &TrajectoryRecord) -> String {
    let mut out = String::from("time,min_density");
    for name in record.probes.keys() {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (i, t) in record.times.iter().enumerate() {
        out.push_str(&num(*t));
        out.push(',');
        out.push_str(&num(record.min_density[i]));
        for values in record.probes.values() {
            out.push(',');
            out.push_str(&num(values[i]));
        }
        out.push('\n');
    }
    out
}

fn error_row(id: &str, e: &Error, hard: bool) -> AuditRow {
    AuditRow {
        report: AuditReport::new(
            id,
            f64::NAN,
            f64::NAN,
            0.0,
            format!("evaluation failed: {e}"),
        ),
        hard,
    }
}

/// Audit results together with derived constants and auxiliary files.
#[derive(Default)]
struct AuditOutput {
    rows: Vec<AuditRow>,
    constants: BTreeMap<String, f64>,
    files: Vec<(String, String)>,
}

/// The failing report with the largest ratio, or the largest ratio if all pass.
fn worst(reports: impl IntoIterator<Item = AuditReport>) -> Option<AuditReport> {
    reports
        .into_iter()
        .max_by(|a, b| (!a.pass).cmp(&!b.pass).then(a.ratio.total_cmp(&b.ratio)))
}

fn conserved(states: &[FlowState], out: &mut AuditOutput) -> nsk_core::Result<()> {
    let first = &states[0];
    let g = first.grid();
    let rho_bar = g.far_field_density();
    let scale = (rho_bar * g.volume()).max(1.0);
    let mass0 = first.rho.offset(-rho_bar).integral();
    let drift = states
        .iter()
        .map(|s| (s.rho.offset(-rho_bar).integral() - mass0).abs())
        .fold(0.0, f64::max);
    out.rows.push(AuditRow::hard(AuditReport::new(
        "conservation.mass",
        drift,
        CONSERVATION_TOLERANCE * scale,
        0.0,
        "conservation of ∫(ρ − ρ̄)",
    )));
    if first.formulation == Formulation::Primitive {
        let momentum = |s: &FlowState| -> nsk_core::Result<Vec<f64>> {
            Ok(s.vel
                .mul_scalar(&s.rho)?
                .components()
                .iter()
                .map(|c| c.integral())
                .collect())
        };
        let m0 = momentum(first)?;
        let mut worst_drift: f64 = 0.0;
        for s in states {
            for (a, b) in momentum(s)?.iter().zip(&m0) {
                worst_drift = worst_drift.max((a - b).abs());
            }
        }
        out.rows.push(AuditRow::hard(AuditReport::new(
            "conservation.momentum",
            worst_drift,
            CONSERVATION_TOLERANCE * scale,
            0.0,
            "conservation of ∫ρu",
        )));
    }
    Ok(())
}

/// Largest `ΔE_n / Q_n` over stored intervals, `Q_n` the energy norm of the step; increments
/// below `64ε·E₀` count as round-off.
pub fn energy_step_ratio(increments: &[f64], step_energies: &[f64], e0: f64) -> f64 {
    let floor = 64.0 * f64::EPSILON * e0;
    increments
        .iter()
        .zip(step_energies)
        .filter(|(d, _)| **d > floor)
        .map(|(d, q)| d / q)
        .fold(0.0, f64::max)
}

fn energy_decay(
    cfg: &ExperimentConfig,
    states: &[FlowState],
    out: &mut AuditOutput,
) -> nsk_core::Result<()> {
    let gamma = cfg.solver.gamma;
    let e0 = estimates::energy(&states[0], gamma)?.total;
    let inc = estimates::energy_increments(states, gamma)?;
    let steps = estimates::increment_energies(states, gamma)?;
    let ratio = energy_step_ratio(&inc, &steps, e0);
    out.constants.insert("energy_step_constant".into(), ratio);
    out.rows.push(AuditRow::hard(AuditReport::new(
        "energy.discrete_decay",
        ratio,
        ENERGY_STEP_CONSTANT,
        0.0,
        "energy inequality: E(t) nonincreasing up to the O(dt²) step energy",
    )));
    Ok(())
}

fn jungel(states: &[FlowState], out: &mut AuditOutput) -> nsk_core::Result<()> {
    let picks = [&states[0], states.last().expect("nonempty")];
    let mut max_ratio: f64 = 0.0;
    for (label, s) in ["initial", "final"].iter().zip(picks) {
        let a = estimates::jungel_audit(&s.rho)?;
        for mut r in [a.hessian, a.quartic] {
            max_ratio = max_ratio.max(r.ratio);
            r.inequality_id = format!("{}.{label}", r.inequality_id);
            out.rows.push(AuditRow {
                report: r,
                hard: a.asserted,
            });
        }
    }
    out.constants.insert("jungel_max_ratio".into(), max_ratio);
    Ok(())
}

fn pi_and_regions(
    cfg: &ExperimentConfig,
    states: &[FlowState],
    out: &mut AuditOutput,
    pi: bool,
    regions: bool,
) -> nsk_core::Result<()> {
    let gamma = cfg.solver.gamma;
    if !(gamma > 1.0) {
        return Ok(());
    }
    let rho_bar = cfg.far_field_density;
    let mut high = Vec::new();
    let mut low = Vec::new();
    let mut cheb = Vec::new();
    let mut measure_high: f64 = 0.0;
    for s in states {
        if pi {
            let p = estimates::pi_equivalence_audit(&s.rho, rho_bar, gamma)?;
            high.push(p.high);
            low.push(p.low);
        }
        if regions {
            let r = estimates::region_split(s, gamma)?;
            measure_high = measure_high.max(r.measure_high);
            cheb.push(r.chebyshev);
        }
    }
    if let Some(r) = worst(high) {
        out.rows.push(AuditRow::hard(r));
    }
    if let Some(r) = worst(low) {
        out.constants
            .insert("pi_bounded_range_constant".into(), r.lhs);
        out.rows.push(AuditRow::soft(r));
    }
    if let Some(r) = worst(cheb) {
        out.constants
            .insert("regions_max_high_measure".into(), measure_high);
        out.rows.push(AuditRow::hard(r));
    }
    Ok(())
}

fn velocity_laws(
    cfg: &ExperimentConfig,
    states: &[FlowState],
    out: &mut AuditOutput,
) -> nsk_core::Result<f64> {
    let law = estimates::log_law_audit(states)?;
    out.constants.insert("c_v".into(), law.c_v);
    out.constants.insert("v_t".into(), law.v_t);
    if cfg.audits.contains(&AuditKind::LogLaw) {
        out.rows.push(AuditRow::soft(law.report.clone()));
    }
    Ok(law.c_v)
}

fn reverse_holder(states: &[FlowState], out: &mut AuditOutput) -> nsk_core::Result<()> {
    let mut needed: f64 = 0.0;
    for p in [1.0, 2.0, 3.0] {
        let rh = estimates::reverse_holder_audit(states, p, REVERSE_HOLDER_CONSTANT)?;
        if rh.needed_constant.is_finite() {
            needed = needed.max(rh.needed_constant);
        }
        out.rows.push(AuditRow::soft(rh.report));
    }
    out.constants.insert("reverse_holder_c3".into(), needed);
    Ok(())
}

fn growth(states: &[FlowState], out: &mut AuditOutput) -> nsk_core::Result<()> {
    let ratios = estimates::growth_law(states, &GROWTH_EXPONENTS)?;
    let spread = estimates::relative_spread(&ratios);
    let mut csv = String::from("p,sup_weighted_norm,ratio\n");
    for (p, r) in GROWTH_EXPONENTS.iter().zip(&ratios) {
        csv.push_str(&format!(
            "{},{},{}\n",
            num(*p),
            num(r * (p + 2.0).sqrt()),
            num(*r)
        ));
        out.constants.insert(format!("growth.p{p}"), *r);
    }
    out.constants.insert("growth.spread".into(), spread);
    out.files.push(("growth_law.csv".into(), csv));
    out.rows.push(AuditRow::soft(AuditReport::new(
        "growth_law.spread",
        spread,
        GROWTH_SPREAD,
        0.0,
        "sup_t‖ρ^{1/(p+2)}v‖_{p+2} ≤ C√(p+2) with a p-independent C",
    )));
    Ok(())
}

fn certificate(states: &[FlowState], c_v: f64, out: &mut AuditOutput) -> nsk_core::Result<()> {
    let cert = lower_bound_certificate(states, c_v)?;
    out.files.push(("certificate.csv".into(), cert.csv()));
    out.files.push(("certificate.txt".into(), cert.to_string()));
    if !cert.produced() {
        out.rows.push(AuditRow::soft(AuditReport::new(
            "certificate.produced",
            1.0,
            0.0,
            0.0,
            format!(
                "no certificate: {}",
                cert.reason.clone().unwrap_or_default()
            ),
        )));
        return Ok(());
    }
    let observed = cert.windows.iter().map(|w| w.observed).fold(0.0, f64::max);
    out.constants
        .insert("certificate_bound".into(), cert.bound());
    out.constants
        .insert("certificate_tightness".into(), cert.bound() / observed);
    for w in &cert.windows {
        out.rows.push(AuditRow::hard(AuditReport::new(
            format!("certificate.window{}", w.index),
            w.observed,
            w.bound,
            0.0,
            "‖ρ⁻¹‖∞ ≤ M + k₀ under C‖v‖³∞U₀ ≤ M²",
        )));
    }
    Ok(())
}

fn sobolev(
    cfg: &ExperimentConfig,
    states: &[FlowState],
    out: &mut AuditOutput,
) -> nsk_core::Result<()> {
    let d = estimates::sobolev_diagnostics(states, cfg.solver.gamma)?;
    let mut csv = String::from(
        "time,rho_H0,rho_H1,rho_H2,rho_H3,rho_Hs0,rho_Hs1,rho_Hs2,rho_Hs3,v_H0,v_H1,v_H2,dt_rho_L2,dt_v_L2\n",
    );
    for i in 0..d.times.len() {
        let mut row = vec![d.times[i]];
        row.extend(d.density.iter().map(|s| s[i]));
        row.extend(d.density_spectral.iter().map(|s| s[i]));
        row.extend(d.velocity.iter().map(|s| s[i]));
        row.push(d.density_rate[i]);
        row.push(d.velocity_rate[i]);
        let cells: Vec<String> = row.into_iter().map(num).collect();
        csv.push_str(&cells.join(","));
        csv.push('\n');
    }
    out.files.push(("sobolev.csv".into(), csv));
    if let Some(r) = estimates::density_bound_ratio(states)? {
        out.constants.insert("density_bound_ratio".into(), r);
    }
    Ok(())
}

fn inverse_density(states: &[FlowState], out: &mut AuditOutput) -> nsk_core::Result<()> {
    let series = nsk_core::degiorgi::inverse_density_pde_residual(states)?;
    let mut csv = String::from("time,residual_L2\n");
    for (t, r) in &series {
        csv.push_str(&format!("{},{}\n", num(*t), num(*r)));
    }
    let max = series.iter().map(|x| x.1).fold(0.0, f64::max);
    out.constants.insert("inverse_density_residual".into(), max);
    out.files.push(("inverse_density.csv".into(), csv));
    Ok(())
}

fn interpolation(states: &[FlowState], out: &mut AuditOutput) -> nsk_core::Result<()> {
    let s = states.last().expect("nonempty");
    let family = DyadicFamily::new(s.grid())?;
    let dev = s.rho.offset(-s.grid().far_field_density());
    let theta = 0.5;
    let a = optimal_interpolation_audit(&family, &dev, 0.0, 2.0, theta, 2.0)?;
    if a.report.rhs > 0.0 {
        out.constants.insert(
            "interpolation_c".into(),
            a.report.lhs / (a.report.rhs / INTERPOLATION_CONSTANT),
        );
    }
    out.rows.push(AuditRow::soft(a.report));
    if let Some(split) = a.split {
        out.rows.push(AuditRow::hard(split));
    }
    Ok(())
}

fn evaluate_audits(cfg: &ExperimentConfig, states: &[FlowState]) -> AuditOutput {
    let mut out = AuditOutput::default();
    let mut c_v = None;
    for kind in &cfg.audits {
        let result = match kind {
            AuditKind::EnergyDecay => energy_decay(cfg, states, &mut out),
            AuditKind::Mass => conserved(states, &mut out),
            AuditKind::BdIdentity => estimates::bd_identity_audit(states, BD_TOLERANCE).map(|r| {
                out.rows.push(AuditRow::hard(r));
            }),
            AuditKind::Jungel => jungel(states, &mut out),
            AuditKind::PiEquivalence => pi_and_regions(cfg, states, &mut out, true, false),
            AuditKind::Regions => pi_and_regions(cfg, states, &mut out, false, true),
            AuditKind::LogLaw | AuditKind::Certificate => {
                let v = match c_v {
                    Some(v) => Ok(v),
                    None => velocity_laws(cfg, states, &mut out),
                };
                v.and_then(|v| {
                    c_v = Some(v);
                    if *kind == AuditKind::Certificate {
                        certificate(states, v, &mut out)
                    } else {
                        Ok(())
                    }
                })
            }
            AuditKind::ReverseHolder => reverse_holder(states, &mut out),
            AuditKind::GrowthLaw => growth(states, &mut out),
            AuditKind::Sobolev => sobolev(cfg, states, &mut out),
            AuditKind::InverseDensity => inverse_density(states, &mut out),
            AuditKind::Interpolation => interpolation(states, &mut out),
        };
        if let Err(e) = result {
            let hard = !matches!(
                kind,
                AuditKind::LogLaw
                    | AuditKind::ReverseHolder
                    | AuditKind::GrowthLaw
                    | AuditKind::Sobolev
            );
            out.rows.push(error_row(kind.name(), &e, hard));
        }
    }
    out
}

fn audit_csv(rows: &[AuditRow]) -> String {
    let mut out = format!("{},severity\n", AuditReport::CSV_HEADER);
    for r in rows {
        out.push_str(&r.report.csv_row());
        out.push_str(if r.hard { ",hard\n" } else { ",soft\n" });
    }
    out
}

fn snapshot_of(s: &FlowState) -> nsk_core::Result<Snapshot> {
    let p = s.in_formulation(Formulation::Primitive)?;
    let mut blocks = vec![p.rho.clone()];
    blocks.extend(p.vel.components().iter().cloned());
    Ok(Snapshot {
        grid: p.grid().clone(),
        t: p.t,
        blocks,
    })
}

/// Runs one experiment and writes its outputs under `cfg.output_dir()`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunManifest, LabError> {
    run_experiment_in(cfg, &cfg.output_dir())
}

/// Runs one experiment, writing into `dir`.
pub fn run_experiment_in(cfg: &ExperimentConfig, dir: &Path) -> Result<RunManifest, LabError> {
    let start = Instant::now();
    fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
    let grid = cfg.grid()?;
    let initial = cfg.preset.initial_state(&grid)?;
    let mut warnings = cfg.warnings.clone();
    let boundary = initial.boundary_deviation(2);
    if boundary > 1e-8 {
        warnings.push(format!(
            "initial data deviates from the far-field state by {boundary:.3e} near the box faces"
        ));
    }
    let record = run(&initial, &cfg.solver, &cfg.probes)?;
    let mut files = Vec::new();
    write_file(dir, "config.ini", cfg.source.as_bytes(), &mut files)?;
    write_file(dir, SERIES_FILE, series_csv(&record).as_bytes(), &mut files)?;

    let audits = evaluate_audits(cfg, &record.states);
    write_file(
        dir,
        AUDIT_FILE,
        audit_csv(&audits.rows).as_bytes(),
        &mut files,
    )?;
    for (name, contents) in &audits.files {
        write_file(dir, name, contents.as_bytes(), &mut files)?;
    }
    if cfg.snapshots {
        let first = snapshot_of(&record.states[0])?;
        write_file(dir, "snapshots/initial.nskf", &first.encode(), &mut files)?;
        let last = snapshot_of(record.last_state())?;
        write_file(dir, "snapshots/final.nskf", &last.encode(), &mut files)?;
    }

    let status = match &record.failure {
        None => RunStatus::Completed,
        Some(Error::StepFailed { t, source }) => RunStatus::SolverAbort {
            t: *t,
            message: source.to_string(),
        },
        Some(e) => RunStatus::SolverAbort {
            t: record.last_state().t,
            message: e.to_string(),
        },
    };
    let hard_failures = audits
        .rows
        .iter()
        .filter(|r| r.hard && !r.report.pass)
        .count();
    let exit_code = match status {
        RunStatus::SolverAbort { .. } => 3,
        RunStatus::Completed if hard_failures > 0 => 1,
        RunStatus::Completed => 0,
    };
    let q_admissible = if cfg.dim == 3 || cfg.solver.gamma > 1.0 {
        estimates::gamma_q_admissible(cfg.solver.gamma)
    } else {
        None
    };
    let manifest = RunManifest {
        directory: dir.to_path_buf(),
        config_hash: hex_digest(cfg.source.as_bytes()),
        version: env!("CARGO_PKG_VERSION").to_string(),
        wall_time: start.elapsed().as_secs_f64(),
        status,
        exit_code,
        gamma: cfg.solver.gamma,
        dim: cfg.dim,
        n: cfg.n,
        preset: cfg.preset.name().to_string(),
        q_admissible,
        audits_passed: audits.rows.iter().filter(|r| r.report.pass).count(),
        audits_total: audits.rows.len(),
        hard_failures,
        constants: audits.constants,
        warnings,
        files,
    };
    let path = dir.join(MANIFEST_FILE);
    fs::write(&path, manifest.render()).map_err(|e| LabError::io(&path, e))?;
    Ok(manifest)
}

impl RunManifest {
    pub fn render(&self) -> String {
        let (status, failure_t, failure) = match &self.status {
            RunStatus::Completed => ("completed", String::new(), String::new()),
            RunStatus::SolverAbort { t, message } => ("solver_abort", num(*t), message.clone()),
        };
        let mut run = vec![
            ("config_hash".to_string(), self.config_hash.clone()),
            ("version".into(), self.version.clone()),
            ("wall_time_seconds".into(), format!("{:.3}", self.wall_time)),
            ("status".into(), status.into()),
            ("exit_code".into(), self.exit_code.to_string()),
            ("gamma".into(), self.gamma.to_string()),
            ("dim".into(), self.dim.to_string()),
            ("n".into(), self.n.to_string()),
            ("preset".into(), self.preset.clone()),
            (
                "q_admissible".into(),
                self.q_admissible.map_or("none".into(), |q| q.to_string()),
            ),
        ];
        if !failure.is_empty() {
            run.push(("failure_time".into(), failure_t));
            run.push(("failure".into(), failure));
        }
        let audits = vec![
            ("passed".to_string(), self.audits_passed.to_string()),
            ("total".into(), self.audits_total.to_string()),
            ("hard_failures".into(), self.hard_failures.to_string()),
        ];
        let constants = self
            .constants
            .iter()
            .map(|(k, v)| (k.clone(), num(*v)))
            .collect();
        let warnings = self
            .warnings
            .iter()
            .enumerate()
            .map(|(i, w)| (format!("w{i}"), w.clone()))
            .collect();
        let files = self
            .files
            .iter()
            .map(|(f, s)| (f.clone(), s.to_string()))
            .collect();
        render(&[
            ("run", run),
            ("audits", audits),
            ("constants", constants),
            ("warnings", warnings),
            ("files", files),
        ])
    }

    /// Reads a manifest; `path` may be the file or its run directory.
    pub fn read(path: &Path) -> Result<Self, LabError> {
        let file = if path.is_dir() {
            path.join(MANIFEST_FILE)
        } else {
            path.to_path_buf()
        };
        let text = fs::read_to_string(&file).map_err(|e| LabError::io(&file, e))?;
        let doc = Document::parse(&text).map_err(|source| LabError::Config {
            path: file.clone(),
            source,
        })?;
        let bad = |what: &str| LabError::Io {
            path: file.clone(),
            message: format!("malformed manifest: {what}"),
        };
        let run = doc.section("run").ok_or_else(|| bad("missing [run]"))?;
        let get = |key: &str| {
            run.get(key)
                .map(|e| e.value.clone())
                .ok_or_else(|| bad(key))
        };
        let parse_f =
            |key: &str| -> Result<f64, LabError> { get(key)?.parse().map_err(|_| bad(key)) };
        let status = match get("status")?.as_str() {
            "completed" => RunStatus::Completed,
            _ => RunStatus::SolverAbort {
                t: parse_f("failure_time")?,
                message: get("failure")?,
            },
        };
        let audits = doc
            .section("audits")
            .ok_or_else(|| bad("missing [audits]"))?;
        let count = |key: &str| -> Result<usize, LabError> {
            audits
                .get(key)
                .and_then(|e| e.value.parse().ok())
                .ok_or_else(|| bad(key))
        };
        let constants = doc
            .section("constants")
            .map(|s| {
                s.entries
                    .iter()
                    .filter_map(|e| e.value.parse::<f64>().ok().map(|v| (e.key.clone(), v)))
                    .collect()
            })
            .unwrap_or_default();
        let warnings = doc
            .section("warnings")
            .map(|s| s.entries.iter().map(|e| e.value.clone()).collect())
            .unwrap_or_default();
        let files = doc
            .section("files")
            .map(|s| {
                s.entries
                    .iter()
                    .map(|e| (e.key.clone(), e.value.parse().unwrap_or(0)))
                    .collect()
            })
            .unwrap_or_default();
        let q = get("q_admissible")?;
        Ok(RunManifest {
            directory: file.parent().map(Path::to_path_buf).unwrap_or_default(),
            config_hash: get("config_hash")?,
            version: get("version")?,
            wall_time: parse_f("wall_time_seconds")?,
            status,
            exit_code: get("exit_code")?.parse().map_err(|_| bad("exit_code"))?,
            gamma: parse_f("gamma")?,
            dim: get("dim")?.parse().map_err(|_| bad("dim"))?,
            n: get("n")?.parse().map_err(|_| bad("n"))?,
            preset: get("preset")?,
            q_admissible: if q == "none" {
                None
            } else {
                Some(q.parse().map_err(|_| bad("q_admissible"))?)
            },
            audits_passed: count("passed")?,
            audits_total: count("total")?,
            hard_failures: count("hard_failures")?,
            constants,
            warnings,
            files,
        })
    }
}

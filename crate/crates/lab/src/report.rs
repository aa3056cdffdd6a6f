//! Aggregation of run manifests into summary tables.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::LabError;
use crate::experiment::{RunManifest, RunStatus, GROWTH_EXPONENTS};

const CONSTANT_COLUMNS: [&str; 6] = [
    "c_v",
    "reverse_holder_c3",
    "interpolation_c",
    "energy_step_constant",
    "density_bound_ratio",
    "certificate_tightness",
];

fn cell(v: Option<f64>) -> String {
    v.map_or_else(|| "nan".to_string(), |x| format!("{x:.16e}"))
}

/// One CSV row per run.
pub fn summary_csv(manifests: &[RunManifest]) -> String {
    let mut out = String::from("run,preset,dim,n,gamma,q_admissible,status,audits_passed,audits_total,pass_rate,hard_failures");
    for c in CONSTANT_COLUMNS {
        out.push(',');
        out.push_str(c);
    }
    for p in GROWTH_EXPONENTS {
        out.push_str(&format!(",growth_p{p}"));
    }
    out.push_str(",growth_spread\n");
    for m in manifests {
        let status = match m.status {
            RunStatus::Completed => "completed",
            RunStatus::SolverAbort { .. } => "solver_abort",
        };
        let rate = if m.audits_total > 0 {
            m.audits_passed as f64 / m.audits_total as f64
        } else {
            1.0
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            m.directory.display(),
            m.preset,
            m.dim,
            m.n,
            m.gamma,
            m.q_admissible.map_or("none".into(), |q| q.to_string()),
            status,
            m.audits_passed,
            m.audits_total,
            cell(Some(rate)),
            m.hard_failures
        ));
        for c in CONSTANT_COLUMNS {
            out.push(',');
            out.push_str(&cell(m.constants.get(c).copied()));
        }
        for p in GROWTH_EXPONENTS {
            out.push(',');
            out.push_str(&cell(m.constants.get(&format!("growth.p{p}")).copied()));
        }
        out.push(',');
        out.push_str(&cell(m.constants.get("growth.spread").copied()));
        out.push('\n');
    }
    out
}

/// Whitespace-separated growth-law table: one row per `p`, one column per run.
pub fn growth_table(manifests: &[RunManifest]) -> String {
    let mut out = String::from("# p");
    for (i, _) in manifests.iter().enumerate() {
        out.push_str(&format!(" run{i}"));
    }
    out.push('\n');
    for p in GROWTH_EXPONENTS {
        out.push_str(&p.to_string());
        for m in manifests {
            out.push(' ');
            out.push_str(&cell(m.constants.get(&format!("growth.p{p}")).copied()));
        }
        out.push('\n');
    }
    out
}

/// Human-readable one-line-per-run summary.
pub fn summary_text(manifests: &[RunManifest]) -> String {
    let mut out = String::new();
    let passed: usize = manifests.iter().map(|m| m.audits_passed).sum();
    let total: usize = manifests.iter().map(|m| m.audits_total).sum();
    out.push_str(&format!(
        "{} runs, {passed}/{total} audits passed\n",
        manifests.len()
    ));
    for m in manifests {
        let status = match &m.status {
            RunStatus::Completed => "completed".to_string(),
            RunStatus::SolverAbort { t, message } => format!("aborted at t = {t}: {message}"),
        };
        out.push_str(&format!(
            "  {} [{} {}D n={} γ={}] {}/{} audits, {}\n",
            m.directory.display(),
            m.preset,
            m.dim,
            m.n,
            m.gamma,
            m.audits_passed,
            m.audits_total,
            status
        ));
    }
    out
}

/// Reads manifests and writes `summary.csv` and `growth_law.dat` into `out_dir`.
pub fn report(paths: &[PathBuf], out_dir: &Path) -> Result<Vec<RunManifest>, LabError> {
    let manifests: Vec<RunManifest> = paths
        .iter()
        .map(|p| RunManifest::read(p))
        .collect::<Result<_, _>>()?;
    fs::create_dir_all(out_dir).map_err(|e| LabError::io(out_dir, e))?;
    for (name, text) in [
        ("summary.csv", summary_csv(&manifests)),
        ("growth_law.dat", growth_table(&manifests)),
    ] {
        let path = out_dir.join(name);
        fs::write(&path, text).map_err(|e| LabError::io(&path, e))?;
    }
    Ok(manifests)
}

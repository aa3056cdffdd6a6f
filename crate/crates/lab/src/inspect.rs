//! One-off audits of a stored snapshot.

use std::path::Path;

use nsk_core::estimates;
use nsk_core::field::VectorField;
use nsk_core::littlewood_paley::DyadicFamily;
use nsk_core::snapshot::Snapshot;
use nsk_core::solver::{FlowState, Formulation};
use nsk_core::AuditReport;

use crate::error::LabError;
use crate::experiment::AuditRow;

/// Audits of the density (and velocity, when stored) in a snapshot.
///
/// Snapshots hold `ρ` followed, optionally, by the fluid velocity components.
/// `gamma` enables the potential-energy audits.
pub fn audit_snapshot(path: &Path, gamma: Option<f64>) -> Result<Vec<AuditRow>, LabError> {
    let snap = Snapshot::read(path)?;
    let g = snap.grid.clone();
    let rho = snap
        .blocks
        .first()
        .cloned()
        .ok_or_else(|| LabError::Usage(format!("{} holds no fields", path.display())))?;
    let vel = if snap.blocks.len() == 1 + g.dim() {
        VectorField::new(snap.blocks[1..].to_vec())?
    } else {
        VectorField::zeros(&g)
    };
    let state = FlowState::new(snap.t, rho.clone(), vel, Formulation::Primitive)?;
    let mut rows = Vec::new();

    let j = estimates::jungel_audit(&rho)?;
    rows.push(AuditRow {
        report: j.hessian,
        hard: j.asserted,
    });
    rows.push(AuditRow {
        report: j.quartic,
        hard: j.asserted,
    });
    rows.push(AuditRow {
        report: estimates::bd_identity_audit(std::slice::from_ref(&state), 1e-8)?,
        hard: true,
    });

    let family = DyadicFamily::new(&g)?;
    let dev = rho.offset(-g.far_field_density());
    for s in [-1.0, 0.0, 1.0, 2.0] {
        let idx = nsk_core::littlewood_paley::BesovIndex::new(s, 2.0, 2.0)?;
        let b = family.besov_norm(&dev, idx)?;
        let h = dev.sobolev_norm(s);
        let (lo, hi) = family.sobolev_besov_bounds(s);
        rows.push(AuditRow {
            report: AuditReport::new(
                format!("sobolev_besov.s{s}"),
                h,
                b / lo,
                1e-10,
                "‖u‖_{H^s} ≤ C‖u‖_{B^s_{2,2}} with the lattice constant",
            ),
            hard: true,
        });
        rows.push(AuditRow {
            report: AuditReport::new(
                format!("besov_sobolev.s{s}"),
                b / hi,
                h,
                1e-10,
                "C⁻¹‖u‖_{B^s_{2,2}} ≤ ‖u‖_{H^s} with the lattice constant",
            ),
            hard: true,
        });
    }

    if let Some(gamma) = gamma {
        if gamma > 1.0 {
            let p = estimates::pi_equivalence_audit(&rho, g.far_field_density(), gamma)?;
            rows.push(AuditRow::new(p.high, true));
            rows.push(AuditRow::new(p.low, false));
            let r = estimates::region_split(&state, gamma)?;
            rows.push(AuditRow::new(r.chebyshev, true));
        }
    }
    Ok(rows)
}

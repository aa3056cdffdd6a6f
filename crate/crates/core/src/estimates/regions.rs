use crate::audit::AuditReport;
use crate::error::{Error, Result};
use crate::solver::FlowState;

use super::potential::{potential, potential_energy_density, DENSITY_SPLIT};

/// Measures and split integrals over `Ω₁ = {ρ ≤ 4ρ̄}` and `Ω₂ = {ρ > 4ρ̄}`.
#[derive(Clone, Debug)]
pub struct RegionSplit {
    pub measure_low: f64,
    pub measure_high: f64,
    pub potential_low: f64,
    pub potential_high: f64,
    pub mass_low: f64,
    pub mass_high: f64,
    /// `|Ω₂| ≤ ∫Π / Π(4ρ̄)`.
    pub chebyshev: AuditReport,
}

pub fn region_split(s: &FlowState, gamma: f64) -> Result<RegionSplit> {
    if !(gamma > 1.0) {
        return Err(Error::InvalidArgument(format!(
            "gamma = {gamma} must exceed 1"
        )));
    }
    let g = s.grid();
    let rho_bar = g.far_field_density();
    let dv = g.cell_volume();
    let pi = potential_energy_density(&s.rho, rho_bar, gamma)?;
    let split = DENSITY_SPLIT * rho_bar;
    let mut out = [[0.0f64; 3]; 2];
    for (&r, &p) in s.rho.values().iter().zip(pi.values()) {
        let slot = &mut out[usize::from(r > split)];
        slot[0] += dv;
        slot[1] += p * dv;
        slot[2] += r * dv;
    }
    let total_potential = out[0][1] + out[1][1];
    let threshold = potential(split, rho_bar, gamma);
    Ok(RegionSplit {
        measure_low: out[0][0],
        measure_high: out[1][0],
        potential_low: out[0][1],
        potential_high: out[1][1],
        mass_low: out[0][2],
        mass_high: out[1][2],
        chebyshev: AuditReport::new(
            "regions.chebyshev",
            out[1][0],
            total_potential / threshold,
            1e-12,
            "|{ρ > 4ρ̄}| ≤ ∫Π / Π(4ρ̄)",
        ),
    })
}

use crate::error::{Error, Result};
use crate::field::{ScalarField, VectorField};
use crate::solver::{effective_rhs, FlowState, Formulation};

/// Time series of high-order regularity quantities.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SobolevSeries {
    pub times: Vec<f64>,
    /// `‖ρ−ρ̄‖_{H^k}` with integer weights, `k = 0..=3`.
    pub density: [Vec<f64>; 4],
    /// `‖ρ−ρ̄‖_{H^k}` with Fourier weights `(1+|ξ|²)^k`, `k = 0..=3`.
    pub density_spectral: [Vec<f64>; 4],
    /// `‖v‖_{H^k}`, `k = 0..=2`.
    pub velocity: [Vec<f64>; 3],
    /// `‖∂_t ρ‖₂` from the right-hand side.
    pub density_rate: Vec<f64>,
    /// `‖∂_t v‖₂` from the right-hand side.
    pub velocity_rate: Vec<f64>,
}

fn vector_norm(v: &VectorField, k: u32) -> f64 {
    v.components()
        .iter()
        .map(|c| c.sobolev_norm_integer(k).powi(2))
        .sum::<f64>()
        .sqrt()
}

pub fn sobolev_diagnostics(states: &[FlowState], gamma: f64) -> Result<SobolevSeries> {
    let mut out = SobolevSeries::default();
    for s in states {
        let e = s.in_formulation(Formulation::Effective)?;
        let dev = e.rho.offset(-e.grid().far_field_density());
        out.times.push(s.t);
        for k in 0..4 {
            out.density[k].push(dev.sobolev_norm_integer(k as u32));
            out.density_spectral[k].push(dev.sobolev_norm(k as f64));
        }
        for k in 0..3 {
            out.velocity[k].push(vector_norm(&e.vel, k as u32));
        }
        let (dr, dv) = effective_rhs(&e, gamma)?;
        out.density_rate.push(dr.l2_norm());
        out.velocity_rate.push(vector_norm(&dv, 0));
    }
    Ok(out)
}

/// Observed `(sup_t‖ρ‖∞ − 2ρ̄)/‖ρ₀−ρ̄‖_{H³}`; `None` for a constant initial density.
pub fn density_bound_ratio(states: &[FlowState]) -> Result<Option<f64>> {
    let first = states
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty trajectory".into()))?;
    let rho_bar = first.grid().far_field_density();
    let h3 = first.rho.offset(-rho_bar).sobolev_norm_integer(3);
    let sup = states
        .iter()
        .map(|s| s.rho.max())
        .fold(f64::NEG_INFINITY, f64::max);
    Ok((h3 > 0.0).then(|| (sup - 2.0 * rho_bar) / h3))
}

/// `‖√ρ − √ρ̄‖_{H¹} + ‖ρ − ρ̄‖₂`.
pub fn density_energy_norm(rho: &ScalarField) -> Result<f64> {
    let rho_bar = rho.grid().far_field_density();
    let root = rho.sqrt()?.offset(-rho_bar.sqrt());
    Ok(root.sobolev_norm_integer(1) + rho.offset(-rho_bar).l2_norm())
}

use crate::audit::AuditReport;
use crate::error::Result;
use crate::field::{ScalarField, VectorField};
use crate::solver::{FlowState, Formulation};

use super::potential::potential_energy_density;

/// Energy functional split into its three nonnegative parts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyBreakdown {
    /// `∫½ρ|u|²`
    pub kinetic: f64,
    /// `(γ/(γ−1))∫Π(ρ)`, or `∫Π(ρ)` for `γ = 1`
    pub potential: f64,
    /// `2∫|∇√ρ|²`
    pub fisher: f64,
    pub total: f64,
}

/// Prefactor of `∫Π` in the energy.
pub fn potential_factor(gamma: f64) -> f64 {
    if gamma == 1.0 {
        1.0
    } else {
        gamma / (gamma - 1.0)
    }
}

fn sum_squares(fields: &[ScalarField]) -> ScalarField {
    let mut acc = fields[0].mul(&fields[0]).expect("same grid");
    for f in &fields[1..] {
        acc = acc.add(&f.mul(f).expect("same grid")).expect("same grid");
    }
    acc
}

/// `∫ρ|T|²` for a tensor or vector given as its components.
fn weighted_square_integral(rho: &ScalarField, comps: &[ScalarField]) -> Result<f64> {
    Ok(sum_squares(comps).mul(rho)?.integral())
}

/// Energy of a state; effective states are converted to the fluid velocity first.
pub fn energy(s: &FlowState, gamma: f64) -> Result<EnergyBreakdown> {
    let p = s.in_formulation(Formulation::Primitive)?;
    let rho = &p.rho;
    let rho_bar = rho.grid().far_field_density();
    let kinetic = 0.5 * weighted_square_integral(rho, p.vel.components())?;
    let potential =
        potential_factor(gamma) * potential_energy_density(rho, rho_bar, gamma)?.integral();
    let fisher = 2.0 * sum_squares(rho.sqrt()?.gradient().components()).integral();
    Ok(EnergyBreakdown {
        kinetic,
        potential,
        fisher,
        total: kinetic + potential + fisher,
    })
}

/// Viscous dissipation rate `2∫ρ|𝒟(u)|²`.
pub fn dissipation(s: &FlowState) -> Result<f64> {
    let p = s.in_formulation(Formulation::Primitive)?;
    Ok(2.0 * weighted_square_integral(&p.rho, &p.vel.deformation())?)
}

/// `∫ρ|v|²` of the effective velocity.
pub fn v_energy(s: &FlowState) -> Result<f64> {
    let e = s.in_formulation(Formulation::Effective)?;
    e.rho.require_positive()?;
    weighted_square_integral(&e.rho, e.vel.components())
}

/// `∫|∇ρ^{γ/2}|²`.
pub fn pressure_dissipation(rho: &ScalarField, gamma: f64) -> Result<f64> {
    Ok(sum_squares(rho.powf(gamma / 2.0)?.gradient().components()).integral())
}

/// `∫ρ|∇v|²`.
pub fn v_gradient_dissipation(s: &FlowState) -> Result<f64> {
    let e = s.in_formulation(Formulation::Effective)?;
    weighted_square_integral(&e.rho, &e.vel.jacobian())
}

/// Terms of the identity `∫ρ|∇v|² = ∫ρ|∇u|² + ∫ρ|∇²log ρ|² + 4 d/dt∫|∇√ρ|²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BdTerms {
    pub grad_v: f64,
    pub grad_u: f64,
    pub hessian_log: f64,
    pub fisher_rate: f64,
}

impl BdTerms {
    pub fn rhs(&self) -> f64 {
        self.grad_u + self.hessian_log + 4.0 * self.fisher_rate
    }

    pub fn residual(&self) -> f64 {
        (self.grad_v - self.rhs()).abs()
    }

    pub fn scale(&self) -> f64 {
        [
            self.grad_v,
            self.grad_u,
            self.hessian_log,
            4.0 * self.fisher_rate,
        ]
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()))
    }
}

/// `∫ρ|∇²log ρ|²`.
pub fn hessian_log_integral(rho: &ScalarField) -> Result<f64> {
    weighted_square_integral(rho, &rho.ln()?.hessian())
}

/// Evaluates every term of the identity at one instant.
pub fn bd_terms(s: &FlowState) -> Result<BdTerms> {
    let p = s.in_formulation(Formulation::Primitive)?;
    let e = s.in_formulation(Formulation::Effective)?;
    let rho = &p.rho;
    let grad_v = weighted_square_integral(rho, &e.vel.jacobian())?;
    let grad_u = weighted_square_integral(rho, &p.vel.jacobian())?;
    let hessian_log = hessian_log_integral(rho)?;
    let d_rho = p.vel.mul_scalar(rho)?.divergence()?.scale(-1.0);
    let sq = rho.sqrt()?;
    let quotient = sq.laplacian().zip_map(&sq, |a, b| a / b)?;
    let fisher_rate = -quotient.mul(&d_rho)?.integral();
    Ok(BdTerms {
        grad_v,
        grad_u,
        hessian_log,
        fisher_rate,
    })
}

/// Worst relative residual of the identity over the given states.
pub fn bd_identity_audit(states: &[FlowState], relative_tolerance: f64) -> Result<AuditReport> {
    let mut worst_residual = 0.0;
    let mut worst_scale = 0.0;
    let mut worst_ratio = -1.0;
    for s in states {
        let t = bd_terms(s)?;
        let (r, sc) = (t.residual(), t.scale());
        let ratio = if sc > 0.0 {
            r / sc
        } else if r > 0.0 {
            f64::INFINITY
        } else {
            0.0
        };
        if ratio > worst_ratio {
            worst_ratio = ratio;
            worst_residual = r;
            worst_scale = sc;
        }
    }
    Ok(AuditReport::new(
        "bd.identity",
        worst_residual,
        relative_tolerance * worst_scale,
        0.0,
        "∫ρ|∇v|² = ∫ρ|∇u|² + ∫ρ|∇²log ρ|² + 4 d/dt ∫|∇√ρ|²",
    ))
}

/// Energy differences `E(t_{n+1}) − E(t_n)` along stored states.
pub fn energy_increments(states: &[FlowState], gamma: f64) -> Result<Vec<f64>> {
    let e: Vec<f64> = states
        .iter()
        .map(|s| energy(s, gamma).map(|b| b.total))
        .collect::<Result<_>>()?;
    Ok(e.windows(2).map(|w| w[1] - w[0]).collect())
}

/// Second variation of the energy along a step,
/// `½∫ρ|Δu|² + (γ/2)∫ρ^{γ−2}|Δρ|² + 2∫|∇Δ√ρ|²`, weights taken at the earlier state.
pub fn increment_energy(before: &FlowState, after: &FlowState, gamma: f64) -> Result<f64> {
    let a = before.in_formulation(Formulation::Primitive)?;
    let b = after.in_formulation(Formulation::Primitive)?;
    let du = b.vel.sub(&a.vel)?;
    let kinetic = 0.5 * weighted_square_integral(&a.rho, du.components())?;
    let drho = b.rho.sub(&a.rho)?;
    let potential = 0.5 * gamma * a.rho.powf(gamma - 2.0)?.mul(&drho.mul(&drho)?)?.integral();
    let droot = b.rho.sqrt()?.sub(&a.rho.sqrt()?)?;
    let fisher = 2.0 * sum_squares(droot.gradient().components()).integral();
    Ok(kinetic + potential + fisher)
}

/// [`increment_energy`] along consecutive stored states.
pub fn increment_energies(states: &[FlowState], gamma: f64) -> Result<Vec<f64>> {
    states
        .windows(2)
        .map(|w| increment_energy(&w[0], &w[1], gamma))
        .collect()
}

/// The three Jüngel functionals of a density.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JungelValues {
    /// `∫ρ|∇²log ρ|²`
    pub d: f64,
    /// `∫|∇²√ρ|²`
    pub a: f64,
    /// `∫|∇ρ^{1/4}|⁴`
    pub b: f64,
}

pub fn jungel_values(rho: &ScalarField) -> Result<JungelValues> {
    rho.require_positive()?;
    let d = hessian_log_integral(rho)?;
    let a = sum_squares(&rho.sqrt()?.hessian()).integral();
    let g = sum_squares(rho.powf(0.25)?.gradient().components());
    let b = g.mul(&g)?.integral();
    Ok(JungelValues { d, a, b })
}

/// Outcome of the Jüngel check; `asserted` is true only in three dimensions.
#[derive(Clone, Debug)]
pub struct JungelAudit {
    pub values: JungelValues,
    pub hessian: AuditReport,
    pub quartic: AuditReport,
    pub asserted: bool,
}

impl JungelAudit {
    pub fn pass(&self) -> bool {
        !self.asserted || (self.hessian.pass && self.quartic.pass)
    }
}

/// Absolute slack granted to `D ≥ A/7` and `D ≥ B′/8`.
pub const JUNGEL_SLACK: f64 = 1e-10;

pub fn jungel_audit(rho: &ScalarField) -> Result<JungelAudit> {
    let v = jungel_values(rho)?;
    Ok(JungelAudit {
        values: v,
        hessian: AuditReport::new(
            "jungel.hessian",
            v.a / 7.0,
            v.d + JUNGEL_SLACK,
            0.0,
            "∫ρ|∇²log ρ|² ≥ (1/7)∫|∇²√ρ|²",
        ),
        quartic: AuditReport::new(
            "jungel.quartic",
            v.b / 8.0,
            v.d + JUNGEL_SLACK,
            0.0,
            "∫ρ|∇²log ρ|² ≥ (1/8)∫|∇ρ^{1/4}|⁴",
        ),
        asserted: rho.grid().dim() == 3,
    })
}

/// `∫ρ|v|²` together with its companion dissipation rates.
pub fn v_energy_terms(s: &FlowState, gamma: f64) -> Result<(f64, f64, f64)> {
    let e = s.in_formulation(Formulation::Effective)?;
    Ok((
        v_energy(&e)?,
        pressure_dissipation(&e.rho, gamma)?,
        v_gradient_dissipation(&e)?,
    ))
}

pub(crate) fn squared_magnitude(v: &VectorField) -> ScalarField {
    sum_squares(v.components())
}

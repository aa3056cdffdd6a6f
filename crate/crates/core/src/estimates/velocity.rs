use crate::audit::AuditReport;
use crate::error::{Error, Result};
use crate::field::lp_of;
use crate::solver::{FlowState, Formulation};

use super::energy::squared_magnitude;

/// Reverse-Hölder exponent.
pub const REVERSE_HOLDER_R: f64 = 5.0 / 3.0;
/// Frozen stand-in for the reverse-Hölder constant; the inequality needs it to be at least 1.
pub const REVERSE_HOLDER_CONSTANT: f64 = 1.0;
/// Frozen stand-in for the log-law constant `c_v`.
pub const LOG_LAW_CONSTANT: f64 = 2.0;

/// `e^{r²}`, the additive floor of `V_T`.
pub fn v_t_floor() -> f64 {
    (REVERSE_HOLDER_R * REVERSE_HOLDER_R).exp()
}

/// `∫ρ|v|^q` evaluated stably through the peak of `|v|`.
fn weighted_moment(s: &FlowState, q: f64) -> Result<f64> {
    let e = s.in_formulation(Formulation::Effective)?;
    let mag = squared_magnitude(&e.vel).map(f64::sqrt);
    if q == 0.0 {
        return Ok(e.rho.integral());
    }
    let peak = mag.max();
    if peak == 0.0 {
        return Ok(0.0);
    }
    let dv = e.rho.grid().cell_volume();
    let inner: f64 = e
        .rho
        .values()
        .iter()
        .zip(mag.values())
        .map(|(r, m)| r * (m / peak).powf(q))
        .sum::<f64>()
        * dv;
    Ok(inner * peak.powf(q))
}

/// `(∫ρ|v|^{p+2})^{1/(p+2)}`.
pub fn weighted_velocity_norm(s: &FlowState, p: f64) -> Result<f64> {
    if !(p >= 0.0) {
        return Err(Error::InvalidExponent(format!(
            "p = {p} must be nonnegative"
        )));
    }
    let e = s.in_formulation(Formulation::Effective)?;
    let mag = squared_magnitude(&e.vel).map(f64::sqrt);
    let q = p + 2.0;
    let peak = mag.max();
    if peak == 0.0 {
        return Ok(0.0);
    }
    let weighted: Vec<f64> = e
        .rho
        .values()
        .iter()
        .zip(mag.values())
        .map(|(r, m)| r.powf(1.0 / q) * m)
        .collect();
    Ok(lp_of(&weighted, q, e.rho.grid().cell_volume()))
}

/// Canonical `q` for which the higher-integrability estimate applies, if any.
///
/// For `γ ∈ (2, 8/3)` the smallest `q` on the grid `1.001, 1.002, …, 1.999` with
/// `γ ≤ (2q+6)/(q+2)`; for `γ ∈ (1, 2]` the smallest `q` on `2.000, …, 3.999` with
/// `γ ≤ (q+6)/(q+2)`. Near `8/3` where the grid has no admissible point the midpoint of
/// `(1, q*]` is returned, `q* = (6−2γ)/(γ−2)`.
pub fn gamma_q_admissible(gamma: f64) -> Option<f64> {
    if !(gamma > 1.0 && gamma < 8.0 / 3.0) {
        return None;
    }
    if gamma > 2.0 {
        for k in 1001..2000 {
            let q = k as f64 / 1000.0;
            if gamma <= (2.0 * q + 6.0) / (q + 2.0) {
                return Some(q);
            }
        }
        let q_star = (6.0 - 2.0 * gamma) / (gamma - 2.0);
        Some(0.5 * (1.0 + q_star.min(2.0)))
    } else {
        (2000..4000)
            .map(|k| k as f64 / 1000.0)
            .find(|&q| gamma <= (q + 6.0) / (q + 2.0))
    }
}

fn effective_states(states: &[FlowState]) -> Result<Vec<FlowState>> {
    states
        .iter()
        .map(|s| s.in_formulation(Formulation::Effective))
        .collect()
}

fn trapezoid(times: &[f64], values: &[f64]) -> f64 {
    times
        .windows(2)
        .zip(values.windows(2))
        .map(|(t, v)| 0.5 * (t[1] - t[0]) * (v[0] + v[1]))
        .sum()
}

/// `Ψ(p) = ∫₀ᵀ∫ρ|v|^p`, trapezoid in time over the stored states.
pub fn psi(states: &[FlowState], p: f64) -> Result<f64> {
    if !(p >= 0.0) {
        return Err(Error::InvalidExponent(format!(
            "p = {p} must be nonnegative"
        )));
    }
    let times: Vec<f64> = states.iter().map(|s| s.t).collect();
    let values: Vec<f64> = states
        .iter()
        .map(|s| weighted_moment(s, p))
        .collect::<Result<_>>()?;
    Ok(trapezoid(&times, &values))
}

/// Instantaneous integrand of `Ψ(p)`.
pub fn psi_integrand(s: &FlowState, p: f64) -> Result<f64> {
    weighted_moment(s, p)
}

/// `V_T = sup_t‖ρ⁻¹‖∞ + e^{r²}`.
pub fn v_t(states: &[FlowState]) -> f64 {
    let inv = states.iter().map(|s| 1.0 / s.rho.min()).fold(0.0, f64::max);
    inv + v_t_floor()
}

/// `C₄ = ‖√ρ₀v₀‖₂ + ‖v₀‖∞`.
pub fn initial_velocity_constant(initial: &FlowState) -> Result<f64> {
    let e = initial.in_formulation(Formulation::Effective)?;
    let w = squared_magnitude(&e.vel).mul(&e.rho)?.integral().sqrt();
    Ok(w + e.vel.sup_norm())
}

/// Reverse-Hölder terms at exponent `p`.
#[derive(Clone, Debug)]
pub struct ReverseHolder {
    pub p: f64,
    pub lhs: f64,
    /// Right side without the constant `C₃`.
    pub bound: f64,
    /// Smallest `C₃` that would make this instance hold.
    pub needed_constant: f64,
    pub report: AuditReport,
}

pub fn reverse_holder_audit(states: &[FlowState], p: f64, c3: f64) -> Result<ReverseHolder> {
    let first = states
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty trajectory".into()))?;
    let eff = effective_states(states)?;
    let r = REVERSE_HOLDER_R;
    let q = p + 2.0;
    let lhs = psi(&eff, r * q)?;
    let base = psi(&eff, q)?;
    let c4 = initial_velocity_constant(first)?;
    let qr = q.powf(2.0 * r);
    let bound = v_t(&eff) * (qr * base.powf(r) + qr + c4.powf(r * q));
    let needed_constant = if bound > 0.0 {
        lhs / bound
    } else {
        f64::INFINITY
    };
    Ok(ReverseHolder {
        p,
        lhs,
        bound,
        needed_constant,
        report: AuditReport::new(
            &format!("reverse_holder.p{p}"),
            lhs,
            c3 * bound,
            0.0,
            "Ψ(r(p+2)) ≤ C₃V_T((p+2)^{2r}Ψ(p+2)^r + (p+2)^{2r} + C₄^{r(p+2)}), r = 5/3",
        ),
    })
}

/// Empirical log-law constant.
#[derive(Clone, Debug)]
pub struct LogLaw {
    pub sup_velocity: f64,
    pub v_t: f64,
    pub c_v: f64,
    pub report: AuditReport,
}

pub fn log_law_audit(states: &[FlowState]) -> Result<LogLaw> {
    let eff = effective_states(states)?;
    let sup_velocity = eff.iter().map(|s| s.vel.sup_norm()).fold(0.0, f64::max);
    let vt = v_t(&eff);
    let root = vt.ln().sqrt();
    let c_v = sup_velocity / root;
    Ok(LogLaw {
        sup_velocity,
        v_t: vt,
        c_v,
        report: AuditReport::new(
            "log_law",
            sup_velocity,
            LOG_LAW_CONSTANT * root,
            0.0,
            "‖v‖∞ ≤ c_v (log V_T)^{1/2}, V_T = ‖ρ⁻¹‖∞ + e^{25/9}",
        ),
    })
}

/// `sup_t ‖ρ^{1/(p+2)}v‖_{p+2} / √(p+2)` for each `p`.
pub fn growth_law(states: &[FlowState], ps: &[f64]) -> Result<Vec<f64>> {
    let eff = effective_states(states)?;
    ps.iter()
        .map(|&p| {
            let mut sup: f64 = 0.0;
            for s in &eff {
                sup = sup.max(weighted_velocity_norm(s, p)?);
            }
            Ok(sup / (p + 2.0).sqrt())
        })
        .collect()
}

/// `(max − min)/max` of a positive series.
pub fn relative_spread(values: &[f64]) -> f64 {
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    if hi > 0.0 {
        (hi - lo) / hi
    } else {
        0.0
    }
}

//! Iteration lemma, level-set truncations of `ρ⁻¹`, and the density lower-bound
//! certificate built from them.

use std::fmt;

use crate::error::{Error, Result};
use crate::estimates::REVERSE_HOLDER_CONSTANT;
use crate::field::ScalarField;
use crate::solver::{FlowState, Formulation};

/// Parameters of `X_{k+1} ≤ K A^k X_k^{1+ν}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterationSpec {
    pub k: f64,
    pub a: f64,
    pub nu: f64,
    pub x0: f64,
}

impl IterationSpec {
    pub fn new(k: f64, a: f64, nu: f64, x0: f64) -> Result<Self> {
        let ok = k > 0.0
            && a >= 1.0
            && nu > 0.0
            && x0 >= 0.0
            && [k, a, nu, x0].iter().all(|v| v.is_finite());
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "iteration spec requires K > 0, A ≥ 1, ν > 0, X0 ≥ 0 (got K = {k}, A = {a}, ν = {nu}, X0 = {x0})"
            )));
        }
        Ok(Self { k, a, nu, x0 })
    }
}

/// `Θ = K^{−1/ν} A^{−1/ν²}`.
pub fn theta(spec: &IterationSpec) -> f64 {
    (-spec.k.ln() / spec.nu - spec.a.ln() / (spec.nu * spec.nu)).exp()
}

/// `log X_k` from the closed form; `−∞` when `X0 = 0` and `k ≥ 1`.
pub fn closed_form_log(spec: &IterationSpec, k: u32) -> f64 {
    if k == 0 {
        return spec.x0.ln();
    }
    if spec.x0 == 0.0 {
        return f64::NEG_INFINITY;
    }
    let nu = spec.nu;
    let growth = (1.0 + nu).powi(k as i32);
    let e_k = (growth - 1.0) / nu;
    let e_a = (growth - 1.0) / (nu * nu) - k as f64 / nu;
    e_k * spec.k.ln() + e_a * spec.a.ln() + growth * spec.x0.ln()
}

/// `K^{((1+ν)^k−1)/ν} A^{((1+ν)^k−1)/ν² − k/ν} X₀^{(1+ν)^k}`; underflow yields exact zero.
pub fn closed_form_bound(spec: &IterationSpec, k: u32) -> f64 {
    if k == 0 {
        return spec.x0;
    }
    closed_form_log(spec, k).exp()
}

/// `log X_j`, `j = 0..=k`, from `X_{j+1} = K A^j X_j^{1+ν}`.
pub fn recurrence_log(spec: &IterationSpec, k: u32) -> Vec<f64> {
    let mut out = Vec::with_capacity(k as usize + 1);
    let mut x = spec.x0.ln();
    out.push(x);
    for j in 0..k {
        x = spec.k.ln() + j as f64 * spec.a.ln() + (1.0 + spec.nu) * x;
        out.push(x);
    }
    out
}

/// `X_j`, `j = 0..=k`, from the recurrence taken with equality.
pub fn recurrence_equality(spec: &IterationSpec, k: u32) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(k as usize + 1);
    let mut x = spec.x0;
    out.push(x);
    for j in 0..k {
        x = spec.k * spec.a.powi(j as i32) * x.powf(1.0 + spec.nu);
        if !x.is_finite() {
            return Err(Error::NonFinite("iteration overflow"));
        }
        out.push(x);
    }
    Ok(out)
}

/// `max(f − k, 0)` pointwise.
pub fn truncate(f: &ScalarField, k: f64) -> ScalarField {
    f.map(|v| (v - k).max(0.0))
}

/// Measure of `{f > k}` by cell counting.
pub fn level_set_measure(f: &ScalarField, k: f64) -> f64 {
    f.values().iter().filter(|&&v| v > k).count() as f64 * f.grid().cell_volume()
}

/// Levels `k_n = M(1 − 2^{−n}) + base`.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelSetLadder {
    pub m: f64,
    pub base: f64,
    pub levels: Vec<f64>,
    pub warnings: Vec<String>,
}

pub fn ladder(m: f64, base: f64, n_max: usize) -> Result<LevelSetLadder> {
    if !(m > 0.0 && m.is_finite()) || !(base >= 0.0 && base.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "ladder needs M > 0 and base ≥ 0 (got {m}, {base})"
        )));
    }
    let levels = (0..=n_max)
        .map(|n| m * (1.0 - 0.5f64.powi(n as i32)) + base)
        .collect();
    let mut warnings = Vec::new();
    if m < base {
        warnings.push(format!(
            "M = {m} is below 2‖ρ₀⁻¹‖∞ = {base}; the top level may exceed 2M"
        ));
    }
    Ok(LevelSetLadder {
        m,
        base,
        levels,
        warnings,
    })
}

/// Squared `L²` norm of the weak gradient of a truncated field.
///
/// Centered differences, set to zero on cells whose two neighbours along an axis are
/// both in the flat region `{f = 0}`.
pub fn truncated_gradient_sq(f: &ScalarField) -> f64 {
    let g = f.grid();
    let h = g.spacing();
    let v = f.values();
    let mut total = 0.0;
    for i in 0..g.len() {
        for axis in 0..g.dim() {
            let a = v[g.neighbour(i, axis, 1)];
            let b = v[g.neighbour(i, axis, -1)];
            if a == 0.0 && b == 0.0 {
                continue;
            }
            let d = (a - b) / (2.0 * h);
            total += d * d;
        }
    }
    total * g.cell_volume()
}

fn inverse_density(s: &FlowState) -> Result<ScalarField> {
    s.rho.require_positive()?;
    Ok(s.rho.map(|r| 1.0 / r))
}

fn trapezoid(times: &[f64], values: &[f64]) -> f64 {
    times
        .windows(2)
        .zip(values.windows(2))
        .map(|(t, v)| 0.5 * (t[1] - t[0]) * (v[0] + v[1]))
        .sum()
}

/// `‖ρ⁻¹_{(k)}‖²_{L^∞_T L²} + ‖∇ρ⁻¹_{(k)}‖²_{L²_T L²}` over the given states.
pub fn truncation_energy(states: &[FlowState], k: f64) -> Result<f64> {
    let mut sup: f64 = 0.0;
    let mut grads = Vec::with_capacity(states.len());
    for s in states {
        let w = truncate(&inverse_density(s)?, k);
        let l2 = w.l2_norm();
        sup = sup.max(l2 * l2);
        grads.push(truncated_gradient_sq(&w));
    }
    let times: Vec<f64> = states.iter().map(|s| s.t).collect();
    Ok(sup + trapezoid(&times, &grads))
}

/// Stand-in for the constant of `C‖v‖³∞U₀ ≤ M²`, chained from the reverse-Hölder constant.
pub const CERTIFICATE_CONSTANT: f64 = REVERSE_HOLDER_CONSTANT;

/// One time window of the certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateWindow {
    pub index: usize,
    pub t_start: f64,
    pub t_end: f64,
    /// `k₀`: twice the sup of `ρ⁻¹` at the window start, or the previous bound.
    pub k0: f64,
    pub u0: f64,
    pub v_sup: f64,
    pub m: f64,
    /// Certified bound `M + k₀`.
    pub bound: f64,
    pub observed: f64,
    pub sound: bool,
}

/// Density lower-bound certificate over a trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub constant: f64,
    pub c_v: f64,
    pub window_length: f64,
    /// Empty when no certificate could be produced.
    pub windows: Vec<CertificateWindow>,
    pub reason: Option<String>,
}

impl Certificate {
    pub fn produced(&self) -> bool {
        self.reason.is_none() && !self.windows.is_empty()
    }

    pub fn sound(&self) -> bool {
        self.windows.iter().all(|w| w.sound)
    }

    /// Largest certified bound over all windows.
    pub fn bound(&self) -> f64 {
        self.windows.iter().map(|w| w.bound).fold(0.0, f64::max)
    }

    pub const CSV_HEADER: &'static str = "window,t_start,t_end,k0,U0,v_sup,M,B,observed,sound";

    pub fn csv(&self) -> String {
        let mut out = format!("{}\n", Self::CSV_HEADER);
        for w in &self.windows {
            out.push_str(&format!(
                "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}\n",
                w.index, w.t_start, w.t_end, w.k0, w.u0, w.v_sup, w.m, w.bound, w.observed, w.sound
            ));
        }
        out
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = &self.reason {
            return writeln!(f, "no certificate: {r}");
        }
        writeln!(
            f,
            "density lower-bound certificate (C = {}, c_v = {:.6e}, window = {:.6e})",
            self.constant, self.c_v, self.window_length
        )?;
        for w in &self.windows {
            writeln!(
                f,
                "  window {} [{:.4}, {:.4}]: k0 = {:.6e}, U0 = {:.6e}, |v| = {:.6e}, M = {:.6e}, B = {:.6e}, observed = {:.6e}, {}",
                w.index,
                w.t_start,
                w.t_end,
                w.k0,
                w.u0,
                w.v_sup,
                w.m,
                w.bound,
                w.observed,
                if w.sound { "sound" } else { "UNSOUND" }
            )?;
        }
        Ok(())
    }
}

/// Certificate over windows of length `min(T*/2, 1/(2c_v²))`, each window's base being
/// the previous window's bound.
pub fn lower_bound_certificate(states: &[FlowState], c_v_estimate: f64) -> Result<Certificate> {
    certificate_with_constant(states, c_v_estimate, CERTIFICATE_CONSTANT)
}

pub fn certificate_with_constant(
    states: &[FlowState],
    c_v: f64,
    constant: f64,
) -> Result<Certificate> {
    let first = states
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty trajectory".into()))?;
    let horizon = states.last().map(|s| s.t).unwrap_or(0.0) - first.t;
    let by_velocity = if c_v > 0.0 {
        1.0 / (2.0 * c_v * c_v)
    } else {
        f64::INFINITY
    };
    let window_length = (horizon / 2.0).min(by_velocity);
    let mut cert = Certificate {
        constant,
        c_v,
        window_length,
        windows: Vec::new(),
        reason: None,
    };
    let eff: Vec<FlowState> = states
        .iter()
        .map(|s| s.in_formulation(Formulation::Effective))
        .collect::<Result<_>>()?;
    let mut base = 2.0 / first.rho.min().max(0.0);
    if !base.is_finite() {
        cert.reason = Some("initial density is not positive".into());
        return Ok(cert);
    }
    let eps = 1e-12 * horizon.max(1.0);
    let mut t0 = first.t;
    let end = first.t + horizon;
    let mut index = 0;
    loop {
        let t1 = if window_length > 0.0 {
            (t0 + window_length).min(end)
        } else {
            end
        };
        let window: Vec<FlowState> = eff
            .iter()
            .filter(|s| s.t >= t0 - eps && s.t <= t1 + eps)
            .cloned()
            .collect();
        if window.is_empty() {
            cert.reason = Some(format!("no stored state in window [{t0}, {t1}]"));
            return Ok(cert);
        }
        let u0 = truncation_energy(&window, base)?;
        let v_sup = window.iter().map(|s| s.vel.sup_norm()).fold(0.0, f64::max);
        let need = constant * v_sup.powi(3) * u0;
        if !need.is_finite() {
            cert.reason = Some(format!(
                "convergence condition has no finite M in window {index}"
            ));
            cert.windows.clear();
            return Ok(cert);
        }
        let m = need.sqrt().max(base);
        let bound = m + base;
        let observed = window.iter().map(|s| 1.0 / s.rho.min()).fold(0.0, f64::max);
        cert.windows.push(CertificateWindow {
            index,
            t_start: t0,
            t_end: t1,
            k0: base,
            u0,
            v_sup,
            m,
            bound,
            observed,
            sound: observed <= bound,
        });
        if t1 >= end - eps {
            break;
        }
        base = bound;
        t0 = t1;
        index += 1;
    }
    Ok(cert)
}

/// Residual of `∂_t w − Δw + (2/w)|∇w|² + v·∇w − w∇·v = 0` for `w = ρ⁻¹`, one value
/// (the `L²` norm) per consecutive pair of stored states, with a forward time difference.
pub fn inverse_density_pde_residual(states: &[FlowState]) -> Result<Vec<(f64, f64)>> {
    let eff: Vec<FlowState> = states
        .iter()
        .map(|s| s.in_formulation(Formulation::Effective))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(eff.len().saturating_sub(1));
    for pair in eff.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let dt = b.t - a.t;
        if !(dt > 0.0) {
            return Err(Error::InvalidArgument("stored times must increase".into()));
        }
        let w = inverse_density(a)?;
        let w_next = inverse_density(b)?;
        let dw = w_next.sub(&w)?.scale(1.0 / dt);
        let grad = w.gradient();
        let grad_sq = grad.dot(&grad)?;
        let nonlinear = grad_sq.zip_map(&w, |g, w| 2.0 * g / w)?;
        let transport = a.vel.dot(&grad)?;
        let stretch = a.vel.divergence()?.mul(&w)?;
        let r = dw
            .sub(&w.laplacian())?
            .add(&nonlinear)?
            .add(&transport)?
            .sub(&stretch)?;
        out.push((a.t, r.l2_norm()));
    }
    Ok(out)
}

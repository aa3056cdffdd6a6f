use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{dealias_spectrum, tensor_divergence, ScalarField, VectorField};
use crate::grid::Grid;

use super::config::SolverConfig;
use super::state::{FlowState, Formulation};

/// Pressure term of the effective equation: `(γ/(γ−1))∇ρ^{γ−1}`, or `∇log ρ` for `γ = 1`.
pub fn pressure_gradient(rho: &ScalarField, gamma: f64) -> Result<VectorField> {
    rho.require_positive()?;
    if gamma == 1.0 {
        return Ok(rho.ln()?.gradient());
    }
    Ok(rho
        .powf(gamma - 1.0)?
        .gradient()
        .scale(gamma / (gamma - 1.0)))
}

/// Gradient of the pressure law `P(ρ) = ρ^γ`.
pub fn pressure_law_gradient(rho: &ScalarField, gamma: f64) -> Result<VectorField> {
    Ok(rho.powf(gamma)?.gradient())
}

/// Largest admissible step: `cfl·Δx / (‖vel‖∞ + 2‖∇log ρ‖∞ + max √(γρ^{γ−1}))`.
pub fn stable_dt(s: &FlowState, gamma: f64, cfl: f64) -> Result<f64> {
    let g = s.grid();
    let grad_log = s.rho.ln()?.gradient().sup_norm();
    let sound = (gamma * s.rho.max().powf(gamma - 1.0))
        .max(gamma * s.rho.min().powf(gamma - 1.0))
        .sqrt();
    let speed = s.vel.sup_norm() + 2.0 * grad_log + sound;
    Ok(if speed > 0.0 {
        cfl * g.spacing() / speed
    } else {
        f64::INFINITY
    })
}

fn guard(s: &FlowState, cfg: &SolverConfig, dt: f64) -> Result<()> {
    let limit = stable_dt(s, cfg.gamma, cfg.cfl)?;
    if dt > limit {
        return Err(Error::CflViolation { dt, limit });
    }
    Ok(())
}

/// Spectrum of an explicit term; divergence-form terms have their mean mode cleared.
fn explicit_spectrum(f: &ScalarField, dealias: bool, divergence_form: bool) -> Vec<Complex64> {
    if f.is_constant() && f.values()[0] == 0.0 {
        return vec![Complex64::new(0.0, 0.0); f.grid().len()];
    }
    let mut s = f.spectrum();
    if dealias {
        dealias_spectrum(f.grid(), &mut s);
    }
    if divergence_form {
        s[0] = Complex64::new(0.0, 0.0);
    }
    s
}

/// Backward Euler for `∂_t w = Δw + n` with `n` explicit.
fn implicit_heat(
    w: &ScalarField,
    n: &ScalarField,
    dt: f64,
    dealias: bool,
    divergence_form: bool,
) -> ScalarField {
    let g = w.grid();
    if n.is_constant() && n.values()[0] == 0.0 && w.is_constant() {
        return w.clone();
    }
    let ws = w.spectrum();
    let ns = explicit_spectrum(n, dealias, divergence_form);
    let out = ws
        .iter()
        .zip(&ns)
        .enumerate()
        .map(|(i, (&a, &b))| (a + b * dt) / (1.0 + dt * g.wave_norm_sq(i)))
        .collect();
    ScalarField::from_spectrum(g, out)
}

fn check_state(s: &FlowState, dt: f64) -> Result<()> {
    let min = s.rho.min();
    if !(min > 0.0) {
        return Err(Error::PositivityLoss {
            t: s.t,
            min_density: min,
            hint_dt: dt / 2.0,
        });
    }
    let finite = s.rho.values().iter().all(|v| v.is_finite())
        && s.vel
            .components()
            .iter()
            .all(|c| c.values().iter().all(|v| v.is_finite()));
    if !finite {
        return Err(Error::NonFinite("time step"));
    }
    Ok(())
}

/// Explicit parts of the effective system: `(−∇·(ρv), −(v−2∇log ρ)·∇v − pressure)`.
pub fn effective_nonlinear(s: &FlowState, gamma: f64) -> Result<(ScalarField, VectorField)> {
    let rho = &s.rho;
    let v = &s.vel;
    let n_rho = v.mul_scalar(rho)?.divergence()?.scale(-1.0);
    let grad_log = rho.ln()?.gradient();
    let drift = v.sub(&grad_log.scale(2.0))?;
    let adv = v.advected_by(&drift)?;
    let n_v = adv.add(&pressure_gradient(rho, gamma)?)?.scale(-1.0);
    Ok((n_rho, n_v))
}

/// Time derivatives `(∂_t ρ, ∂_t v)` of the effective system at `s`.
pub fn effective_rhs(s: &FlowState, gamma: f64) -> Result<(ScalarField, VectorField)> {
    if s.formulation != Formulation::Effective {
        return Err(Error::WrongFormulation {
            expected: "effective",
        });
    }
    let (n_rho, n_v) = effective_nonlinear(s, gamma)?;
    let d_rho = s.rho.laplacian().add(&n_rho)?;
    let d_v = s.vel.map_components(ScalarField::laplacian).add(&n_v)?;
    Ok((d_rho, d_v))
}

pub fn step_effective(s: &FlowState, cfg: &SolverConfig) -> Result<FlowState> {
    step_effective_dt(s, cfg, cfg.dt)
}

pub(crate) fn step_effective_dt(s: &FlowState, cfg: &SolverConfig, dt: f64) -> Result<FlowState> {
    if s.formulation != Formulation::Effective {
        return Err(Error::WrongFormulation {
            expected: "effective",
        });
    }
    guard(s, cfg, dt)?;
    let (n_rho, n_v) = effective_nonlinear(s, cfg.gamma)?;
    let rho = implicit_heat(&s.rho, &n_rho, dt, cfg.dealias, true);
    let comps = s
        .vel
        .components()
        .iter()
        .zip(n_v.components())
        .map(|(v, n)| implicit_heat(v, n, dt, cfg.dealias, false))
        .collect();
    let out = FlowState {
        t: s.t + dt,
        rho,
        vel: VectorField::new(comps)?,
        formulation: Formulation::Effective,
    };
    check_state(&out, dt)?;
    Ok(out)
}

/// Capillary force `∇·(ρ∇∇log ρ)`.
pub fn capillary_force(rho: &ScalarField) -> Result<VectorField> {
    let hess = rho.ln()?.hessian();
    let t: Vec<ScalarField> = hess.iter().map(|h| h.mul(rho)).collect::<Result<_>>()?;
    tensor_divergence(rho.grid(), &t)
}

/// Viscous force `∇·(2ρ𝒟(u))`.
pub fn viscous_force(rho: &ScalarField, u: &VectorField) -> Result<VectorField> {
    let t: Vec<ScalarField> = u
        .deformation()
        .iter()
        .map(|d| d.mul(rho).map(|x| x.scale(2.0)))
        .collect::<Result<_>>()?;
    tensor_divergence(rho.grid(), &t)
}

/// Time derivatives `(∂_t ρ, ∂_t(ρu))` of the primitive system at `s`.
pub fn primitive_rhs(s: &FlowState, gamma: f64) -> Result<(ScalarField, VectorField)> {
    if s.formulation != Formulation::Primitive {
        return Err(Error::WrongFormulation {
            expected: "primitive",
        });
    }
    let rho = &s.rho;
    let u = &s.vel;
    let m = u.mul_scalar(rho)?;
    let d_rho = m.divergence()?.scale(-1.0);
    let flux = momentum_flux(rho, u)?;
    let d_m = viscous_force(rho, u)?
        .add(&capillary_force(rho)?)?
        .sub(&flux)?
        .sub(&pressure_law_gradient(rho, gamma)?)?;
    Ok((d_rho, d_m))
}

fn momentum_flux(rho: &ScalarField, u: &VectorField) -> Result<VectorField> {
    let d = rho.grid().dim();
    let mut t = Vec::with_capacity(d * d);
    for a in 0..d {
        let ru = u.component(a).mul(rho)?;
        for b in 0..d {
            t.push(ru.mul(u.component(b))?);
        }
    }
    tensor_divergence(rho.grid(), &t)
}

fn linear_momentum_operator(rho: &ScalarField, m: &VectorField) -> Result<VectorField> {
    let lap = m.map_components(ScalarField::laplacian);
    let grad_div = m.divergence()?.gradient();
    let cap = rho.laplacian().gradient();
    lap.add(&grad_div)?.add(&cap)
}

pub fn step_primitive(s: &FlowState, cfg: &SolverConfig) -> Result<FlowState> {
    step_primitive_dt(s, cfg, cfg.dt)
}

pub(crate) fn step_primitive_dt(s: &FlowState, cfg: &SolverConfig, dt: f64) -> Result<FlowState> {
    if s.formulation != Formulation::Primitive {
        return Err(Error::WrongFormulation {
            expected: "primitive",
        });
    }
    guard(s, cfg, dt)?;
    let g = s.grid().clone();
    let d = g.dim();
    let rho = &s.rho;
    let m = s.vel.mul_scalar(rho)?;
    let (_, full) = primitive_rhs(s, cfg.gamma)?;
    let residual = full.sub(&linear_momentum_operator(rho, &m)?)?;

    let rho_hat = rho.spectrum();
    let mut m_hat: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    for a in 0..d {
        let base = m.component(a).spectrum();
        let n = explicit_spectrum(residual.component(a), cfg.dealias, true);
        m_hat.push(base.iter().zip(&n).map(|(&x, &y)| x + y * dt).collect());
    }
    let mut rho_new = rho_hat.clone();
    let i_unit = Complex64::new(0.0, 1.0);
    for idx in 0..g.len() {
        let k = reduced_wave_vector(&g, idx);
        let k2: f64 = k.iter().map(|x| x * x).sum();
        if k2 == 0.0 {
            continue;
        }
        let kn = k2.sqrt();
        let e: Vec<f64> = k.iter().take(d).map(|x| x / kn).collect();
        let a_star: Complex64 = (0..d).map(|a| m_hat[a][idx] * e[a]).sum();
        let damp = 1.0 + dt * k2;
        let a_new = (a_star - i_unit * (dt * kn * k2) * rho_hat[idx]) / (damp * damp);
        rho_new[idx] = rho_hat[idx] - i_unit * (dt * kn) * a_new;
        for a in 0..d {
            let transverse = m_hat[a][idx] - a_star * e[a];
            m_hat[a][idx] = transverse / damp + a_new * e[a];
        }
    }
    let rho_next = if rho.is_constant()
        && residual.components().iter().all(is_zero)
        && m.components().iter().all(is_zero)
    {
        rho.clone()
    } else {
        ScalarField::from_spectrum(&g, rho_new)
    };
    let m_next: Vec<ScalarField> = m_hat
        .into_iter()
        .map(|s| ScalarField::from_spectrum(&g, s))
        .collect();
    let u_next = if rho_next.min() > 0.0 {
        let inv = rho_next.map(|x| 1.0 / x);
        VectorField::new(m_next)?.mul_scalar(&inv)?
    } else {
        VectorField::zeros(&g)
    };
    let out = FlowState {
        t: s.t + dt,
        rho: rho_next,
        vel: u_next,
        formulation: Formulation::Primitive,
    };
    check_state(&out, dt)?;
    Ok(out)
}

fn is_zero(f: &ScalarField) -> bool {
    f.values().iter().all(|&v| v == 0.0)
}

/// Wave vector with Nyquist components dropped, matching first-derivative conventions.
fn reduced_wave_vector(g: &Grid, idx: usize) -> [f64; 3] {
    let mut k = g.wave_vector(idx);
    for (a, ka) in k.iter_mut().enumerate().take(g.dim()) {
        if g.is_nyquist(idx, a) {
            *ka = 0.0;
        }
    }
    k
}

/// One step of the stepper matching the state's formulation.
pub fn step(s: &FlowState, cfg: &SolverConfig, dt: f64) -> Result<FlowState> {
    match s.formulation {
        Formulation::Effective => step_effective_dt(s, cfg, dt),
        Formulation::Primitive => step_primitive_dt(s, cfg, dt),
    }
}

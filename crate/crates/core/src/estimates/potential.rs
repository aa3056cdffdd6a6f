use crate::audit::AuditReport;
use crate::error::{Error, Result};
use crate::field::ScalarField;

/// Upper end of the bounded-density range, as a multiple of `ρ̄`.
pub const DENSITY_SPLIT: f64 = 4.0;

/// `h(x) = Π(x ρ̄)/ρ̄^γ` for `x ≥ 0`.
fn reduced_potential(x: f64, gamma: f64) -> f64 {
    let d = x - 1.0;
    if d.abs() < 1e-2 {
        // Power series in d; the leading coefficient is positive, so the result is too.
        let mut sum = 0.0;
        let mut dk = d * d;
        if gamma == 1.0 {
            for k in 2..12 {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sum += sign * dk / (k * (k - 1)) as f64;
                dk *= d;
            }
        } else {
            let mut binom = gamma * (gamma - 1.0) / 2.0;
            for k in 2..12 {
                sum += binom / gamma * dk;
                binom *= (gamma - k as f64) / (k + 1) as f64;
                dk *= d;
            }
        }
        return sum;
    }
    let h = if gamma == 1.0 {
        if x == 0.0 {
            1.0
        } else {
            x * x.ln() + 1.0 - x
        }
    } else {
        (x.powf(gamma) - 1.0) / gamma - d
    };
    h.max(0.0)
}

/// `Π(ρ)` for one density value.
pub fn potential(rho: f64, rho_bar: f64, gamma: f64) -> f64 {
    rho_bar.powf(gamma) * reduced_potential(rho / rho_bar, gamma)
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma >= 1.0) || !gamma.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "gamma = {gamma} must be at least 1"
        )));
    }
    Ok(())
}

/// Pointwise potential energy density `Π(ρ)`.
pub fn potential_energy_density(
    rho: &ScalarField,
    rho_bar: f64,
    gamma: f64,
) -> Result<ScalarField> {
    check_gamma(gamma)?;
    if gamma == 1.0 {
        rho.require_positive()?;
    } else if rho.min() < 0.0 {
        let i = rho.argmin();
        return Err(Error::DensityNotPositive {
            index: i,
            position: rho.grid().position(i),
            value: rho.values()[i],
        });
    }
    Ok(rho.map(|r| potential(r, rho_bar, gamma)))
}

/// Lower constant of the large-density equivalence, `1/γ − (1/4)^{γ−1}`.
pub fn c1(gamma: f64) -> f64 {
    1.0 / gamma - 0.25f64.powf(gamma - 1.0)
}

/// Upper constant of the large-density equivalence, `(1/γ)(4/3)^γ`.
pub fn c2(gamma: f64) -> f64 {
    (4.0f64 / 3.0).powf(gamma) / gamma
}

/// `max(sup F, 1/inf F)` for `F = Π(ρ)/(ρ−ρ̄)²` on `[0, 4ρ̄]`, by a dense scan.
pub fn bounded_range_constant(rho_bar: f64, gamma: f64) -> f64 {
    let steps = 40_000;
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    let scale = rho_bar.powf(gamma - 2.0);
    for i in 0..=steps {
        let x = DENSITY_SPLIT * i as f64 / steps as f64;
        let d = x - 1.0;
        let f = if d.abs() < 1e-6 {
            if gamma == 1.0 {
                0.5
            } else {
                (gamma - 1.0) / 2.0
            }
        } else {
            reduced_potential(x, gamma) / (d * d)
        };
        lo = lo.min(f * scale);
        hi = hi.max(f * scale);
    }
    hi.max(1.0 / lo)
}

/// Outcome of the two-range equivalence check.
#[derive(Clone, Debug)]
pub struct PiEquivalence {
    /// `C₁(ρ−ρ̄)^γ ≤ Π ≤ C₂(ρ−ρ̄)^γ` on `{ρ ≥ 4ρ̄}`: worst normalised ratio against 1.
    pub high: AuditReport,
    /// `C⁻¹(ρ−ρ̄)² ≤ Π ≤ C(ρ−ρ̄)²` on `[0, 4ρ̄]`: measured constant against the scanned one.
    pub low: AuditReport,
    pub high_samples: usize,
    pub high_violations: usize,
    pub low_constant: f64,
}

pub fn pi_equivalence_audit(rho: &ScalarField, rho_bar: f64, gamma: f64) -> Result<PiEquivalence> {
    if !(gamma > 1.0) {
        return Err(Error::InvalidArgument(format!(
            "gamma = {gamma} must exceed 1"
        )));
    }
    let pi = potential_energy_density(rho, rho_bar, gamma)?;
    let (k1, k2) = (c1(gamma), c2(gamma));
    let mut worst_high: f64 = 0.0;
    let mut high_samples = 0;
    let mut high_violations = 0;
    let mut worst_low: f64 = 0.0;
    for (&r, &p) in rho.values().iter().zip(pi.values()) {
        let d = r - rho_bar;
        if r >= DENSITY_SPLIT * rho_bar {
            high_samples += 1;
            let dg = d.powf(gamma);
            let lower = k1 * dg / p;
            let upper = p / (k2 * dg);
            let w = lower.max(upper);
            if w > 1.0 + 1e-12 {
                high_violations += 1;
            }
            worst_high = worst_high.max(w);
        } else if d != 0.0 && p > 0.0 {
            let f = p / (d * d);
            worst_low = worst_low.max(f.max(1.0 / f));
        }
    }
    let low_constant = bounded_range_constant(rho_bar, gamma);
    Ok(PiEquivalence {
        high: AuditReport::new(
            "pi.large_density",
            worst_high,
            1.0,
            1e-12,
            "explicit two-sided bound of the potential energy by (ρ−ρ̄)^γ for large density",
        ),
        low: AuditReport::new(
            "pi.bounded_density",
            worst_low,
            low_constant,
            1e-12,
            "quadratic equivalence of the potential energy on the bounded-density range",
        ),
        high_samples,
        high_violations,
        low_constant,
    })
}

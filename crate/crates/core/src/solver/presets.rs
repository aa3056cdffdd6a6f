use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{ScalarField, VectorField};
use crate::grid::Grid;

use super::state::{FlowState, Formulation};

pub const PRESET_NAMES: [&str; 3] = ["constant", "gaussian-bump", "random-large"];

/// Named initial data. All presets start at rest, `u = 0`.
#[derive(Clone, Debug, PartialEq)]
pub enum Preset {
    Constant,
    /// `ρ = ρ̄ + a·e^{−|x−c|²/w²}`; amplitude `a` may be negative down to `−ρ̄`.
    GaussianBump {
        amplitude: f64,
        width: f64,
        center: Option<Vec<f64>>,
    },
    /// Seeded band-limited perturbation under a Gaussian envelope of width `L/10`,
    /// rescaled so `‖ρ0 − ρ̄‖∞ = amplitude·ρ̄`.
    RandomLarge {
        amplitude: f64,
        seed: u64,
        modes: usize,
    },
}

impl Preset {
    pub fn gaussian_bump(amplitude: f64, width: f64) -> Self {
        Preset::GaussianBump {
            amplitude,
            width,
            center: None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Constant => "constant",
            Preset::GaussianBump { .. } => "gaussian-bump",
            Preset::RandomLarge { .. } => "random-large",
        }
    }

    /// Primitive initial state at `t = 0`.
    pub fn initial_state(&self, grid: &Grid) -> Result<FlowState> {
        let rho_bar = grid.far_field_density();
        let rho = match self {
            Preset::Constant => ScalarField::constant(grid, rho_bar),
            Preset::GaussianBump {
                amplitude,
                width,
                center,
            } => {
                if !(*width > 0.0) {
                    return Err(Error::InvalidArgument(format!(
                        "bump width {width} must be positive"
                    )));
                }
                if !(*amplitude > -rho_bar) {
                    return Err(Error::InvalidArgument(format!(
                        "bump amplitude {amplitude} would make the density nonpositive"
                    )));
                }
                let c = match center {
                    Some(c) if c.len() == grid.dim() => c.clone(),
                    Some(c) => {
                        return Err(Error::InvalidArgument(format!(
                            "bump center has {} coordinates, grid has dimension {}",
                            c.len(),
                            grid.dim()
                        )))
                    }
                    None => vec![grid.box_length() / 2.0; grid.dim()],
                };
                let (a, w2) = (*amplitude, width * width);
                ScalarField::from_fn(grid, |x| {
                    let r2: f64 = x.iter().zip(&c).map(|(p, q)| (p - q) * (p - q)).sum();
                    rho_bar + a * (-r2 / w2).exp()
                })?
            }
            Preset::RandomLarge {
                amplitude,
                seed,
                modes,
            } => {
                if !(*amplitude > 0.0 && *amplitude <= 0.5) {
                    return Err(Error::InvalidArgument(format!(
                        "random-large amplitude {amplitude} must lie in (0, 0.5]"
                    )));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let raw = ScalarField::random_band_limited(grid, *modes, 1.0, &mut rng);
                let half = grid.box_length() / 2.0;
                let w = grid.box_length() / 10.0;
                let envelope = ScalarField::from_fn(grid, |x| {
                    let r2: f64 = x.iter().map(|p| (p - half) * (p - half)).sum();
                    (-r2 / (w * w)).exp()
                })?;
                let pert = raw.mul(&envelope)?;
                let peak = pert.sup_norm();
                let scale = if peak > 0.0 {
                    amplitude * rho_bar / peak
                } else {
                    0.0
                };
                pert.scale(scale).offset(rho_bar)
            }
        };
        FlowState::new(0.0, rho, VectorField::zeros(grid), Formulation::Primitive)
    }
}

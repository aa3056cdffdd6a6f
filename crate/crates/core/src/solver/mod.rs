//! Semi-implicit pseudo-spectral integrators in the fluid and effective velocity.

mod config;
mod presets;
mod run;
mod state;
mod step;

pub use config::{Scheme, SolverConfig};
pub use presets::{Preset, PRESET_NAMES};
pub use run::{run, TrajectoryRecord};
pub use state::{FlowState, Formulation};
pub use step::{
    capillary_force, effective_nonlinear, effective_rhs, pressure_gradient, pressure_law_gradient,
    primitive_rhs, stable_dt, step, step_effective, step_primitive, viscous_force,
};

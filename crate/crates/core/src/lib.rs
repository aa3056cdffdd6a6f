//! Spectral laboratory for the compressible Navier-Stokes–Korteweg system
//! with shallow-water viscosity `μ(ρ) = ρ` and capillarity `κ(ρ) = 1/ρ`.

pub mod audit;
pub mod degiorgi;
pub mod error;
pub mod estimates;
pub mod field;
pub mod grid;
pub mod littlewood_paley;
pub mod probes;
pub mod selftest;
pub mod snapshot;
pub mod solver;

pub use audit::AuditReport;
pub use error::{Error, Result};
pub use field::{CompositeMap, ScalarField, VectorField};
pub use grid::Grid;
pub use probes::Probe;
pub use solver::{FlowState, Formulation, SolverConfig, TrajectoryRecord};

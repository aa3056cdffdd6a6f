//! Energy functionals and inequality audits along solutions.

mod energy;
mod potential;
mod regions;
mod sobolev;
mod velocity;

pub use energy::{
    bd_identity_audit, bd_terms, dissipation, energy, energy_increments, hessian_log_integral,
    increment_energies, increment_energy, jungel_audit, jungel_values, potential_factor,
    pressure_dissipation, v_energy, v_energy_terms, v_gradient_dissipation, BdTerms,
    EnergyBreakdown, JungelAudit, JungelValues, JUNGEL_SLACK,
};
pub use potential::{
    bounded_range_constant, c1, c2, pi_equivalence_audit, potential, potential_energy_density,
    PiEquivalence, DENSITY_SPLIT,
};
pub use regions::{region_split, RegionSplit};
pub use sobolev::{density_bound_ratio, density_energy_norm, sobolev_diagnostics, SobolevSeries};
pub use velocity::{
    gamma_q_admissible, growth_law, initial_velocity_constant, log_law_audit, psi, psi_integrand,
    relative_spread, reverse_holder_audit, v_t, v_t_floor, weighted_velocity_norm, LogLaw,
    ReverseHolder, LOG_LAW_CONSTANT, REVERSE_HOLDER_CONSTANT, REVERSE_HOLDER_R,
};

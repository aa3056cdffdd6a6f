//! Named scalar diagnostics sampled along a run.

use std::fmt;

use crate::error::{Error, Result};
use crate::estimates;
use crate::littlewood_paley::{BesovIndex, DyadicFamily};
use crate::solver::FlowState;

/// Probe name patterns, with `{…}` marking numeric parameters.
pub const PROBE_PATTERNS: [&str; 15] = [
    "energy.total",
    "energy.kinetic",
    "energy.potential",
    "energy.fisher",
    "dissipation",
    "venergy",
    "jungel.D",
    "norm.weighted.p{P}",
    "density.min",
    "density.max",
    "mass",
    "velocity.sup",
    "besov.rho.{s}.{p}.{r}",
    "sobolev.rho.H{k}",
    "psi.p{P}",
];

/// Concrete probe names, used for misspelling hints.
pub const PROBE_EXAMPLES: [&str; 15] = [
    "energy.total",
    "energy.kinetic",
    "energy.potential",
    "energy.fisher",
    "dissipation",
    "venergy",
    "jungel.D",
    "norm.weighted.p2",
    "density.min",
    "density.max",
    "mass",
    "velocity.sup",
    "besov.rho.0.2.2",
    "sobolev.rho.H1",
    "psi.p2",
];

#[derive(Clone, Debug, PartialEq)]
pub enum ProbeKind {
    EnergyTotal,
    EnergyKinetic,
    EnergyPotential,
    EnergyFisher,
    Dissipation,
    VEnergy,
    JungelD,
    WeightedNorm(f64),
    DensityMin,
    DensityMax,
    /// `∫(ρ − ρ̄)`.
    Mass,
    /// `‖v‖∞` of the effective velocity.
    VelocitySup,
    Besov(BesovIndex),
    Sobolev(u32),
    /// Cumulative `∫₀ᵗ∫ρ|v|^p`.
    Psi(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Probe {
    name: String,
    kind: ProbeKind,
}

fn number(s: &str) -> Option<f64> {
    match s {
        "inf" => Some(f64::INFINITY),
        _ => s.parse::<f64>().ok().filter(|v| v.is_finite()),
    }
}

fn parse_besov(rest: &str) -> Option<BesovIndex> {
    let parts: Vec<&str> = rest.split('.').collect();
    let (s, p, r) = match parts.as_slice() {
        [s, p, r] => (number(s)?, number(p)?, number(r)?),
        [a, b, p, r] if !a.is_empty() && b.chars().all(|c| c.is_ascii_digit()) => {
            (number(&format!("{a}.{b}"))?, number(p)?, number(r)?)
        }
        _ => return None,
    };
    if !s.is_finite() {
        return None;
    }
    BesovIndex::new(s, p, r).ok()
}

impl Probe {
    pub fn parse(name: &str) -> Result<Self> {
        let kind = match name {
            "energy.total" => Some(ProbeKind::EnergyTotal),
            "energy.kinetic" => Some(ProbeKind::EnergyKinetic),
            "energy.potential" => Some(ProbeKind::EnergyPotential),
            "energy.fisher" => Some(ProbeKind::EnergyFisher),
            "dissipation" => Some(ProbeKind::Dissipation),
            "venergy" => Some(ProbeKind::VEnergy),
            "jungel.D" => Some(ProbeKind::JungelD),
            "density.min" => Some(ProbeKind::DensityMin),
            "density.max" => Some(ProbeKind::DensityMax),
            "mass" => Some(ProbeKind::Mass),
            "velocity.sup" => Some(ProbeKind::VelocitySup),
            _ => {
                if let Some(p) = name.strip_prefix("norm.weighted.p") {
                    number(p)
                        .filter(|p| *p >= 0.0 && p.is_finite())
                        .map(ProbeKind::WeightedNorm)
                } else if let Some(p) = name.strip_prefix("psi.p") {
                    number(p)
                        .filter(|p| *p >= 0.0 && p.is_finite())
                        .map(ProbeKind::Psi)
                } else if let Some(k) = name.strip_prefix("sobolev.rho.H") {
                    k.parse::<u32>()
                        .ok()
                        .filter(|k| *k <= 6)
                        .map(ProbeKind::Sobolev)
                } else if let Some(rest) = name.strip_prefix("besov.rho.") {
                    parse_besov(rest).map(ProbeKind::Besov)
                } else {
                    None
                }
            }
        };
        kind.map(|kind| Probe {
            name: name.to_string(),
            kind,
        })
        .ok_or_else(|| Error::UnknownProbe(name.to_string()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &ProbeKind {
        &self.kind
    }

    /// Whether the recorded value is a running time integral.
    pub fn is_cumulative(&self) -> bool {
        matches!(self.kind, ProbeKind::Psi(_))
    }

    fn needs_family(&self) -> bool {
        matches!(self.kind, ProbeKind::Besov(_))
    }

    /// Instantaneous value at `s`; for cumulative probes, the integrand.
    pub fn evaluate(
        &self,
        s: &FlowState,
        gamma: f64,
        family: Option<&DyadicFamily>,
    ) -> Result<f64> {
        match &self.kind {
            ProbeKind::EnergyTotal => Ok(estimates::energy(s, gamma)?.total),
            ProbeKind::EnergyKinetic => Ok(estimates::energy(s, gamma)?.kinetic),
            ProbeKind::EnergyPotential => Ok(estimates::energy(s, gamma)?.potential),
            ProbeKind::EnergyFisher => Ok(estimates::energy(s, gamma)?.fisher),
            ProbeKind::Dissipation => estimates::dissipation(s),
            ProbeKind::VEnergy => estimates::v_energy(s),
            ProbeKind::JungelD => estimates::hessian_log_integral(&s.rho),
            ProbeKind::WeightedNorm(p) => estimates::weighted_velocity_norm(s, *p),
            ProbeKind::DensityMin => Ok(s.rho.min()),
            ProbeKind::DensityMax => Ok(s.rho.max()),
            ProbeKind::Mass => Ok(s.rho.offset(-s.grid().far_field_density()).integral()),
            ProbeKind::VelocitySup => Ok(s
                .in_formulation(crate::solver::Formulation::Effective)?
                .vel
                .sup_norm()),
            ProbeKind::Besov(idx) => {
                let fam = match family {
                    Some(f) => f.clone(),
                    None => DyadicFamily::new(s.grid())?,
                };
                fam.besov_norm(&s.rho, *idx)
            }
            ProbeKind::Sobolev(k) => Ok(s
                .rho
                .offset(-s.grid().far_field_density())
                .sobolev_norm_integer(*k)),
            ProbeKind::Psi(p) => estimates::psi_integrand(s, *p),
        }
    }
}

impl fmt::Display for Probe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl std::str::FromStr for Probe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Probe::parse(s)
    }
}

/// Shared per-run evaluation context.
#[derive(Clone, Debug)]
pub struct ProbeSet {
    probes: Vec<Probe>,
    family: Option<DyadicFamily>,
}

impl ProbeSet {
    pub fn new(probes: Vec<Probe>, grid: &crate::grid::Grid) -> Result<Self> {
        let family = if probes.iter().any(Probe::needs_family) {
            Some(DyadicFamily::new(grid)?)
        } else {
            None
        };
        Ok(Self { probes, family })
    }

    pub fn probes(&self) -> &[Probe] {
        &self.probes
    }

    /// Instantaneous values of every probe at `s`.
    pub fn evaluate(&self, s: &FlowState, gamma: f64) -> Result<Vec<f64>> {
        self.probes
            .iter()
            .map(|p| p.evaluate(s, gamma, self.family.as_ref()))
            .collect()
    }
}

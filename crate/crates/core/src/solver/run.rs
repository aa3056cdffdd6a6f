use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::probes::{Probe, ProbeSet};

use super::config::SolverConfig;
use super::state::FlowState;
use super::step::step;

/// Everything recorded along one integration.
#[derive(Clone, Debug)]
pub struct TrajectoryRecord {
    pub gamma: f64,
    /// Time of every completed level, starting at 0.
    pub times: Vec<f64>,
    /// `min ρ` at every level.
    pub min_density: Vec<f64>,
    /// Probe series aligned with `times`.
    pub probes: BTreeMap<String, Vec<f64>>,
    /// States at the configured stride; the initial and final states are always kept.
    pub states: Vec<FlowState>,
    /// Error that stopped the run early, wrapped with its time.
    pub failure: Option<Error>,
}

impl TrajectoryRecord {
    pub fn last_state(&self) -> &FlowState {
        self.states.last().expect("record holds the initial state")
    }

    pub fn completed(&self) -> bool {
        self.failure.is_none()
    }
}

struct Sampler {
    set: ProbeSet,
    gamma: f64,
    series: Vec<Vec<f64>>,
    last: Vec<f64>,
    cumulative: Vec<bool>,
}

impl Sampler {
    fn sample(&mut self, s: &FlowState, dt: Option<f64>) -> Result<()> {
        let values = self.set.evaluate(s, self.gamma)?;
        for (i, v) in values.into_iter().enumerate() {
            let out = if self.cumulative[i] {
                let prev = self.series[i].last().copied().unwrap_or(0.0);
                prev + dt.map_or(0.0, |dt| 0.5 * dt * (self.last[i] + v))
            } else {
                v
            };
            self.last[i] = v;
            self.series[i].push(out);
        }
        Ok(())
    }
}

/// Integrates `initial` to `cfg.t_end`, sampling `probes` at every level.
///
/// Step failures end the run early and are stored in `failure`; probe failures and
/// invalid configurations are returned as errors.
pub fn run(initial: &FlowState, cfg: &SolverConfig, probes: &[Probe]) -> Result<TrajectoryRecord> {
    cfg.validate(initial.grid().dim())?;
    let mut state = initial.in_formulation(cfg.formulation)?;
    state.t = 0.0;
    let mut sampler = Sampler {
        set: ProbeSet::new(probes.to_vec(), initial.grid())?,
        gamma: cfg.gamma,
        series: vec![Vec::new(); probes.len()],
        last: vec![0.0; probes.len()],
        cumulative: probes.iter().map(Probe::is_cumulative).collect(),
    };
    sampler.sample(&state, None)?;
    let mut times = vec![0.0];
    let mut min_density = vec![state.rho.min()];
    let mut states = vec![state.clone()];
    let mut failure = None;
    let levels = cfg.time_levels();
    let last = levels.len() - 1;
    for (k, w) in levels.windows(2).enumerate() {
        let dt = w[1] - w[0];
        match step(&state, cfg, dt) {
            Ok(mut next) => {
                next.t = w[1];
                state = next;
            }
            Err(e) => {
                failure = Some(Error::StepFailed {
                    t: w[0],
                    source: Box::new(e),
                });
                break;
            }
        }
        sampler.sample(&state, Some(dt))?;
        times.push(state.t);
        min_density.push(state.rho.min());
        if (k + 1) % cfg.state_stride == 0 || k + 1 == last {
            states.push(state.clone());
        }
    }
    if failure.is_some() && states.last().map(|s| s.t) != Some(state.t) {
        states.push(state);
    }
    let probes = probes
        .iter()
        .zip(sampler.series)
        .map(|(p, s)| (p.name().to_string(), s))
        .collect();
    Ok(TrajectoryRecord {
        gamma: cfg.gamma,
        times,
        min_density,
        probes,
        states,
        failure,
    })
}

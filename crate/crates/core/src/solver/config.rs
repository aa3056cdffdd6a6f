use crate::error::{Error, Result};

use super::state::Formulation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// Implicit linear diffusion (and, in primitive form, the linear capillary
    /// coupling) per Fourier mode; explicit dealiased nonlinearity.
    SemiImplicitSpectral,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub gamma: f64,
    pub dt: f64,
    pub t_end: f64,
    pub scheme: Scheme,
    pub dealias: bool,
    pub formulation: Formulation,
    /// Store every `state_stride`-th state; the final state is always stored.
    pub state_stride: usize,
    /// Safety factor of the advective step guard.
    pub cfl: f64,
}

impl SolverConfig {
    pub fn new(gamma: f64, dt: f64, t_end: f64, formulation: Formulation) -> Self {
        Self {
            gamma,
            dt,
            t_end,
            scheme: Scheme::SemiImplicitSpectral,
            dealias: true,
            formulation,
            state_stride: 1,
            cfl: 0.5,
        }
    }

    /// Checks the hard constraints and returns soft warnings.
    pub fn validate(&self, dim: usize) -> Result<Vec<String>> {
        if !(self.gamma >= 1.0) || !self.gamma.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "gamma = {} must be at least 1",
                self.gamma
            )));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "dt = {} must be positive",
                self.dt
            )));
        }
        if !(self.t_end >= 0.0) || !self.t_end.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "t_end = {} must be nonnegative",
                self.t_end
            )));
        }
        if self.state_stride == 0 {
            return Err(Error::InvalidArgument(
                "state stride must be at least 1".into(),
            ));
        }
        if !(self.cfl > 0.0) {
            return Err(Error::InvalidArgument("cfl factor must be positive".into()));
        }
        let mut warnings = Vec::new();
        if dim == 3 && !(self.gamma < 8.0 / 3.0) {
            warnings.push(format!(
                "gamma = {} lies outside the global existence range [1, 8/3) for dim = 3",
                self.gamma
            ));
        }
        Ok(warnings)
    }

    /// Time levels `0 = t_0 < … < t_K = t_end`, the last step shortened if needed.
    pub fn time_levels(&self) -> Vec<f64> {
        let mut out = vec![0.0];
        if self.t_end == 0.0 {
            return out;
        }
        let steps = (self.t_end / self.dt - 1e-9).ceil().max(1.0) as usize;
        for k in 1..steps {
            out.push(k as f64 * self.dt);
        }
        out.push(self.t_end);
        out
    }
}

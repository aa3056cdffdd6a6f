use std::fmt;

use crate::error::{Error, Result};
use crate::field::{ScalarField, VectorField};
use crate::grid::Grid;

/// Which velocity a [`FlowState`] carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formulation {
    /// Fluid velocity `u`.
    Primitive,
    /// Effective velocity `v = u + ∇log ρ`.
    Effective,
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formulation::Primitive => "primitive",
            Formulation::Effective => "effective",
        })
    }
}

impl std::str::FromStr for Formulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "primitive" => Ok(Formulation::Primitive),
            "effective" => Ok(Formulation::Effective),
            other => Err(Error::InvalidArgument(format!(
                "unknown formulation {other:?} (expected primitive or effective)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowState {
    pub t: f64,
    pub rho: ScalarField,
    pub vel: VectorField,
    pub formulation: Formulation,
}

impl FlowState {
    pub fn new(
        t: f64,
        rho: ScalarField,
        vel: VectorField,
        formulation: Formulation,
    ) -> Result<Self> {
        if rho.grid() != vel.grid() {
            return Err(Error::GridMismatch);
        }
        rho.require_positive()?;
        Ok(Self {
            t,
            rho,
            vel,
            formulation,
        })
    }

    /// The rest state `(ρ̄, 0)`.
    pub fn rest(grid: &Grid, formulation: Formulation) -> Self {
        Self {
            t: 0.0,
            rho: ScalarField::constant(grid, grid.far_field_density()),
            vel: VectorField::zeros(grid),
            formulation,
        }
    }

    pub fn grid(&self) -> &Grid {
        self.rho.grid()
    }

    /// `v = u + ∇log ρ`.
    pub fn to_effective(&self) -> Result<Self> {
        if self.formulation != Formulation::Primitive {
            return Err(Error::WrongFormulation {
                expected: "primitive",
            });
        }
        let shift = self.rho.ln()?.gradient();
        Ok(Self {
            t: self.t,
            rho: self.rho.clone(),
            vel: self.vel.add(&shift)?,
            formulation: Formulation::Effective,
        })
    }

    /// `u = v − ∇log ρ`.
    pub fn from_effective(&self) -> Result<Self> {
        if self.formulation != Formulation::Effective {
            return Err(Error::WrongFormulation {
                expected: "effective",
            });
        }
        let shift = self.rho.ln()?.gradient();
        Ok(Self {
            t: self.t,
            rho: self.rho.clone(),
            vel: self.vel.sub(&shift)?,
            formulation: Formulation::Primitive,
        })
    }

    /// The same state in the requested formulation.
    pub fn in_formulation(&self, target: Formulation) -> Result<Self> {
        match (self.formulation, target) {
            (a, b) if a == b => Ok(self.clone()),
            (Formulation::Primitive, Formulation::Effective) => self.to_effective(),
            _ => self.from_effective(),
        }
    }

    /// Largest deviation of `(ρ − ρ̄, vel)` within `margin` cells of the box faces.
    pub fn boundary_deviation(&self, margin: usize) -> f64 {
        let g = self.grid();
        let n = g.n();
        let rho_bar = g.far_field_density();
        let mut worst: f64 = 0.0;
        for i in 0..g.len() {
            let idx = g.multi_index(i);
            let near = (0..g.dim()).any(|a| idx[a] < margin || idx[a] >= n - margin);
            if !near {
                continue;
            }
            worst = worst.max((self.rho.values()[i] - rho_bar).abs());
            for c in self.vel.components() {
                worst = worst.max(c.values()[i].abs());
            }
        }
        worst
    }
}

//! Real-space fields and spectral differential operators.

use rand::Rng;
use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::Grid;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField {
    grid: Grid,
    values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    grid: Grid,
    components: Vec<ScalarField>,
}

/// Pointwise nonlinear maps used for densities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CompositeMap {
    Log,
    Sqrt,
    Pow(f64),
}

impl ScalarField {
    pub fn new(grid: &Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("field construction"));
        }
        Ok(Self {
            grid: grid.clone(),
            values,
        })
    }

    pub(crate) fn from_raw(grid: &Grid, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self {
            grid: grid.clone(),
            values,
        }
    }

    pub fn zeros(grid: &Grid) -> Self {
        Self::constant(grid, 0.0)
    }

    pub fn constant(grid: &Grid, c: f64) -> Self {
        Self::from_raw(grid, vec![c; grid.len()])
    }

    /// Samples `f(x)` at every grid point.
    pub fn from_fn(grid: &Grid, f: impl Fn(&[f64]) -> f64) -> Result<Self> {
        let values = (0..grid.len()).map(|i| f(&grid.position(i))).collect();
        Self::new(grid, values)
    }

    /// Field built from a spectrum; the imaginary part of the inverse transform is discarded.
    pub fn from_spectrum(grid: &Grid, spectrum: Vec<Complex64>) -> Self {
        Self::from_raw(grid, grid.inverse(spectrum))
    }

    /// Random real field whose modes satisfy `|m_a| <= kmax` on every axis.
    pub fn random_band_limited<R: Rng>(
        grid: &Grid,
        kmax: usize,
        amplitude: f64,
        rng: &mut R,
    ) -> Self {
        let mut spec = vec![ZERO; grid.len()];
        let kmax = kmax.min(grid.n() / 2 - 1) as i64;
        for (i, c) in spec.iter_mut().enumerate() {
            let idx = grid.multi_index(i);
            if (0..grid.dim()).all(|a| grid.mode(idx[a]).abs() <= kmax) {
                *c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        let raw = Self::from_spectrum(grid, spec);
        let peak = raw.sup_norm();
        if peak == 0.0 {
            return raw;
        }
        raw.scale(amplitude / peak)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn spectrum(&self) -> Vec<Complex64> {
        self.grid.forward(&self.values)
    }

    pub fn is_constant(&self) -> bool {
        let first = self.values[0];
        self.values.iter().all(|&v| v == first)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_raw(&self.grid, self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.check_grid(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self::from_raw(&self.grid, values))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_map(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_map(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_map(other, |a, b| a * b)
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map(|v| v * c)
    }

    pub fn offset(&self, c: f64) -> Self {
        self.map(|v| v + c)
    }

    pub fn check_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn argmin(&self) -> usize {
        let mut best = 0;
        for (i, &v) in self.values.iter().enumerate() {
            if v < self.values[best] {
                best = i;
            }
        }
        best
    }

    /// Fails with the location of the minimum unless every sample is strictly positive.
    pub fn require_positive(&self) -> Result<()> {
        let i = self.argmin();
        let value = self.values[i];
        if value > 0.0 {
            Ok(())
        } else {
            Err(Error::DensityNotPositive {
                index: i,
                position: self.grid.position(i),
                value,
            })
        }
    }

    pub fn composite(&self, map: CompositeMap) -> Result<Self> {
        let needs_positive = match map {
            CompositeMap::Log | CompositeMap::Sqrt => true,
            CompositeMap::Pow(a) => a.fract() != 0.0 || a < 0.0,
        };
        if needs_positive {
            self.require_positive()?;
        }
        let out = match map {
            CompositeMap::Log => self.map(f64::ln),
            CompositeMap::Sqrt => self.map(f64::sqrt),
            CompositeMap::Pow(a) if a.fract() == 0.0 && a.abs() < i32::MAX as f64 => {
                self.map(|v| v.powi(a as i32))
            }
            CompositeMap::Pow(a) => self.map(|v| v.powf(a)),
        };
        out.ensure_finite("composite map")
    }

    pub fn ln(&self) -> Result<Self> {
        self.composite(CompositeMap::Log)
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.composite(CompositeMap::Sqrt)
    }

    pub fn powf(&self, alpha: f64) -> Result<Self> {
        self.composite(CompositeMap::Pow(alpha))
    }

    pub fn ensure_finite(self, what: &'static str) -> Result<Self> {
        if self.values.iter().all(|v| v.is_finite()) {
            Ok(self)
        } else {
            Err(Error::NonFinite(what))
        }
    }

    /// `∫ f dx` by the uniform-grid rule.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.cell_volume()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if p.is_infinite() && p > 0.0 {
            return Ok(self.sup_norm());
        }
        if !(p >= 1.0) {
            return Err(Error::InvalidExponent(format!(
                "p = {p} must be at least 1"
            )));
        }
        Ok(lp_of(&self.values, p, self.grid.cell_volume()))
    }

    pub fn l2_norm(&self) -> f64 {
        lp_of(&self.values, 2.0, self.grid.cell_volume())
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `‖f‖₂` evaluated on the spectral side via Parseval.
    pub fn l2_norm_spectral(&self) -> f64 {
        let s: f64 = self.spectrum().iter().map(|c| c.norm_sqr()).sum();
        (s * self.grid.cell_volume() / self.grid.len() as f64).sqrt()
    }

    /// Fractional Sobolev norm `(Σ (1+|ξ|²)^s |f̂|²)^{1/2}` with Parseval scaling.
    pub fn sobolev_norm(&self, s: f64) -> f64 {
        let g = &self.grid;
        let sum: f64 = self
            .spectrum()
            .iter()
            .enumerate()
            .map(|(i, c)| (1.0 + g.wave_norm_sq(i)).powf(s) * c.norm_sqr())
            .sum();
        (sum * g.cell_volume() / g.len() as f64).sqrt()
    }

    /// Integer-order norm `(Σ_{m≤k} ‖∇^m f‖₂²)^{1/2}`.
    pub fn sobolev_norm_integer(&self, k: u32) -> f64 {
        let g = &self.grid;
        let sum: f64 = self
            .spectrum()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let k2 = g.wave_norm_sq(i);
                let w: f64 = (0..=k).map(|m| k2.powi(m as i32)).sum();
                w * c.norm_sqr()
            })
            .sum();
        (sum * g.cell_volume() / g.len() as f64).sqrt()
    }

    pub fn derivative(&self, axis: usize) -> Self {
        if self.is_constant() {
            return Self::zeros(&self.grid);
        }
        let spec = self.spectrum();
        Self::from_spectrum(&self.grid, derivative_spectrum(&self.grid, &spec, axis))
    }

    pub fn gradient(&self) -> VectorField {
        let g = &self.grid;
        if self.is_constant() {
            return VectorField::zeros(g);
        }
        let spec = self.spectrum();
        let components = (0..g.dim())
            .map(|a| Self::from_spectrum(g, derivative_spectrum(g, &spec, a)))
            .collect();
        VectorField::from_raw(g, components)
    }

    pub fn laplacian(&self) -> Self {
        let g = &self.grid;
        if self.is_constant() {
            return Self::zeros(g);
        }
        let mut spec = self.spectrum();
        for (i, c) in spec.iter_mut().enumerate() {
            *c *= -g.wave_norm_sq(i);
        }
        Self::from_spectrum(g, spec)
    }

    /// Second derivatives `∂_a∂_b f`, row-major in `(a, b)`.
    pub fn hessian(&self) -> Vec<Self> {
        let g = &self.grid;
        let d = g.dim();
        if self.is_constant() {
            return vec![Self::zeros(g); d * d];
        }
        let spec = self.spectrum();
        let mut out = vec![Self::zeros(g); d * d];
        for a in 0..d {
            for b in a..d {
                let s = second_derivative_spectrum(g, &spec, a, b);
                let f = Self::from_spectrum(g, s);
                out[b * d + a] = f.clone();
                out[a * d + b] = f;
            }
        }
        out
    }

    /// Applies a radial multiplier `m(|ξ|)` on the spectral side.
    pub fn apply_multiplier(&self, m: &[f64]) -> Self {
        let mut spec = self.spectrum();
        for (c, &w) in spec.iter_mut().zip(m) {
            *c *= w;
        }
        Self::from_spectrum(&self.grid, spec)
    }

    /// Projects onto the modes kept by the two-thirds rule.
    pub fn dealiased(&self) -> Self {
        let mut spec = self.spectrum();
        dealias_spectrum(&self.grid, &mut spec);
        Self::from_spectrum(&self.grid, spec)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl VectorField {
    pub fn new(components: Vec<ScalarField>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::InvalidArgument(
                "vector field needs components".into(),
            ));
        };
        let grid = first.grid.clone();
        if components.len() != grid.dim() {
            return Err(Error::InvalidArgument(format!(
                "expected {} components, got {}",
                grid.dim(),
                components.len()
            )));
        }
        if components.iter().any(|c| c.grid != grid) {
            return Err(Error::GridMismatch);
        }
        Ok(Self { grid, components })
    }

    pub(crate) fn from_raw(grid: &Grid, components: Vec<ScalarField>) -> Self {
        Self {
            grid: grid.clone(),
            components,
        }
    }

    pub fn zeros(grid: &Grid) -> Self {
        Self::from_raw(grid, vec![ScalarField::zeros(grid); grid.dim()])
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn components(&self) -> &[ScalarField] {
        &self.components
    }

    pub fn component(&self, a: usize) -> &ScalarField {
        &self.components[a]
    }

    pub fn into_components(self) -> Vec<ScalarField> {
        self.components
    }

    pub fn map_components(&self, f: impl Fn(&ScalarField) -> ScalarField) -> Self {
        Self::from_raw(&self.grid, self.components.iter().map(f).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_components(other, ScalarField::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_components(other, ScalarField::sub)
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map_components(|f| f.scale(c))
    }

    /// Multiplies every component by the scalar field `s`.
    pub fn mul_scalar(&self, s: &ScalarField) -> Result<Self> {
        let comps = self
            .components
            .iter()
            .map(|c| c.mul(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_raw(&self.grid, comps))
    }

    fn zip_components(
        &self,
        other: &Self,
        f: impl Fn(&ScalarField, &ScalarField) -> Result<ScalarField>,
    ) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| f(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_raw(&self.grid, comps))
    }

    /// Pointwise Euclidean magnitude.
    pub fn magnitude(&self) -> ScalarField {
        let values = (0..self.grid.len())
            .map(|i| {
                self.components
                    .iter()
                    .map(|c| c.values[i] * c.values[i])
                    .sum::<f64>()
                    .sqrt()
            })
            .collect();
        ScalarField::from_raw(&self.grid, values)
    }

    pub fn dot(&self, other: &Self) -> Result<ScalarField> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let values = (0..self.grid.len())
            .map(|i| {
                self.components
                    .iter()
                    .zip(&other.components)
                    .map(|(a, b)| a.values[i] * b.values[i])
                    .sum()
            })
            .collect();
        Ok(ScalarField::from_raw(&self.grid, values))
    }

    pub fn sup_norm(&self) -> f64 {
        self.magnitude().sup_norm()
    }

    pub fn divergence(&self) -> Result<ScalarField> {
        if self.components.iter().any(|c| c.grid != self.grid) {
            return Err(Error::GridMismatch);
        }
        let g = &self.grid;
        if self.components.iter().all(ScalarField::is_constant) {
            return Ok(ScalarField::zeros(g));
        }
        let mut acc = vec![ZERO; g.len()];
        for (a, c) in self.components.iter().enumerate() {
            let d = derivative_spectrum(g, &c.spectrum(), a);
            for (x, y) in acc.iter_mut().zip(d) {
                *x += y;
            }
        }
        Ok(ScalarField::from_spectrum(g, acc))
    }

    /// Jacobian `∂_b F_a`, row-major in `(a, b)`.
    pub fn jacobian(&self) -> Vec<ScalarField> {
        let d = self.grid.dim();
        let mut out = Vec::with_capacity(d * d);
        for c in &self.components {
            out.extend(c.gradient().into_components());
        }
        out
    }

    /// Symmetric part `½(∇F + ∇Fᵀ)`, row-major.
    pub fn deformation(&self) -> Vec<ScalarField> {
        let d = self.grid.dim();
        let j = self.jacobian();
        let mut out = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                out.push(
                    j[a * d + b]
                        .add(&j[b * d + a])
                        .expect("same grid")
                        .scale(0.5),
                );
            }
        }
        out
    }

    /// `(a·∇)F` with `a` the advecting field: component `i` is `a_j ∂_j F_i`.
    pub fn advected_by(&self, a: &Self) -> Result<Self> {
        if self.grid != a.grid {
            return Err(Error::GridMismatch);
        }
        let d = self.grid.dim();
        let jac = self.jacobian();
        let comps = (0..d)
            .map(|i| {
                let values = (0..self.grid.len())
                    .map(|x| {
                        (0..d)
                            .map(|j| a.components[j].values[x] * jac[i * d + j].values[x])
                            .sum()
                    })
                    .collect();
                ScalarField::from_raw(&self.grid, values)
            })
            .collect();
        Ok(Self::from_raw(&self.grid, comps))
    }

    pub fn dealiased(&self) -> Self {
        self.map_components(ScalarField::dealiased)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.components
            .iter()
            .zip(&other.components)
            .fold(0.0, |m, (a, b)| m.max(a.max_abs_diff(b)))
    }
}

/// Divergence of a row-major `dim × dim` tensor field: `(∇·T)_i = ∂_j T_{ij}`.
pub fn tensor_divergence(grid: &Grid, t: &[ScalarField]) -> Result<VectorField> {
    let d = grid.dim();
    if t.len() != d * d {
        return Err(Error::InvalidArgument(
            "tensor must have dim² entries".into(),
        ));
    }
    let mut comps = Vec::with_capacity(d);
    for i in 0..d {
        let row = VectorField::new(t[i * d..(i + 1) * d].to_vec())?;
        comps.push(row.divergence()?);
    }
    Ok(VectorField::from_raw(grid, comps))
}

pub(crate) fn derivative_spectrum(g: &Grid, spec: &[Complex64], axis: usize) -> Vec<Complex64> {
    spec.iter()
        .enumerate()
        .map(|(i, &c)| {
            if g.is_nyquist(i, axis) {
                ZERO
            } else {
                c * Complex64::new(0.0, g.wave_vector(i)[axis])
            }
        })
        .collect()
}

pub(crate) fn second_derivative_spectrum(
    g: &Grid,
    spec: &[Complex64],
    a: usize,
    b: usize,
) -> Vec<Complex64> {
    spec.iter()
        .enumerate()
        .map(|(i, &c)| {
            if a != b && (g.is_nyquist(i, a) || g.is_nyquist(i, b)) {
                ZERO
            } else {
                let k = g.wave_vector(i);
                c * (-k[a] * k[b])
            }
        })
        .collect()
}

pub(crate) fn dealias_spectrum(g: &Grid, spec: &mut [Complex64]) {
    for (i, c) in spec.iter_mut().enumerate() {
        if !g.dealias_keep(i) {
            *c = ZERO;
        }
    }
}

pub(crate) fn lp_of(values: &[f64], p: f64, cell_volume: f64) -> f64 {
    if p == 2.0 {
        return (values.iter().map(|v| v * v).sum::<f64>() * cell_volume).sqrt();
    }
    if p == 1.0 {
        return values.iter().map(|v| v.abs()).sum::<f64>() * cell_volume;
    }
    let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return 0.0;
    }
    let s: f64 = values.iter().map(|v| (v.abs() / peak).powf(p)).sum();
    peak * (s * cell_volume).powf(1.0 / p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{E, PI};

    fn grid2(n: usize) -> Grid {
        Grid::new(2, n, 2.0 * PI, 1.0).unwrap()
    }

    #[test]
    fn derivative_of_sine() {
        let g = grid2(32);
        let f = ScalarField::from_fn(&g, |x| x[0].sin()).unwrap();
        let d = f.derivative(0);
        let exact = ScalarField::from_fn(&g, |x| x[0].cos()).unwrap();
        assert!(d.max_abs_diff(&exact) < 1e-12);
    }

    #[test]
    fn gradient_of_product_mode() {
        let g = grid2(32);
        let f = ScalarField::from_fn(&g, |x| (2.0 * x[0]).sin() * (3.0 * x[1]).cos()).unwrap();
        let grad = f.gradient();
        let gx =
            ScalarField::from_fn(&g, |x| 2.0 * (2.0 * x[0]).cos() * (3.0 * x[1]).cos()).unwrap();
        let gy =
            ScalarField::from_fn(&g, |x| -3.0 * (2.0 * x[0]).sin() * (3.0 * x[1]).sin()).unwrap();
        assert!(grad.component(0).max_abs_diff(&gx) < 1e-12);
        assert!(grad.component(1).max_abs_diff(&gy) < 1e-12);
    }

    #[test]
    fn constant_has_exactly_zero_derivatives() {
        let g = grid2(16);
        let f = ScalarField::constant(&g, 3.7);
        assert!(f
            .gradient()
            .components()
            .iter()
            .all(|c| c.values().iter().all(|&v| v == 0.0)));
        assert!(f.laplacian().values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn laplacian_of_sine() {
        let g = grid2(16);
        let f = ScalarField::from_fn(&g, |x| x[0].sin()).unwrap();
        assert!(f.laplacian().max_abs_diff(&f.scale(-1.0)) < 1e-12);
    }

    #[test]
    fn composite_maps() {
        let g = grid2(8);
        let e = ScalarField::constant(&g, E);
        assert!(e
            .ln()
            .unwrap()
            .values()
            .iter()
            .all(|v| (v - 1.0).abs() < 1e-15));
        let four = ScalarField::constant(&g, 4.0);
        assert!(four.powf(0.5).unwrap().values().iter().all(|&v| v == 2.0));
        let mut vals = vec![1.0; g.len()];
        vals[5] = 0.0;
        let f = ScalarField::new(&g, vals).unwrap();
        match f.ln() {
            Err(Error::DensityNotPositive { index, value, .. }) => {
                assert_eq!(index, 5);
                assert_eq!(value, 0.0);
            }
            other => panic!("unexpected {other:?}"),
        }
        let neg = ScalarField::constant(&g, -2.0);
        assert!(neg.powf(2.0).unwrap().values().iter().all(|&v| v == 4.0));
    }

    #[test]
    fn norms_of_constants() {
        let g = Grid::new(2, 16, 3.0, 1.0).unwrap();
        let f = ScalarField::constant(&g, -2.0);
        for p in [1.0, 2.0, 3.5] {
            let expect = 2.0 * g.volume().powf(1.0 / p);
            assert!((f.lp_norm(p).unwrap() - expect).abs() < 1e-12 * expect);
        }
        assert_eq!(ScalarField::zeros(&g).lp_norm(3.0).unwrap(), 0.0);
        assert!(f.lp_norm(0.5).is_err());
    }

    #[test]
    fn sine_l2_norm() {
        let g = grid2(64);
        let f = ScalarField::from_fn(&g, |x| x[0].sin()).unwrap();
        let expect = (2.0 * PI * PI).sqrt();
        assert!((f.l2_norm() - expect).abs() < 1e-12);
    }

    #[test]
    fn integer_sobolev_single_mode() {
        let g = grid2(32);
        let eps = 0.1;
        let f = ScalarField::from_fn(&g, |x| eps * x[0].sin()).unwrap();
        let expect = eps * (g.volume() / 2.0).sqrt() * 3f64.sqrt();
        assert!((f.sobolev_norm_integer(2) - expect).abs() < 1e-12);
    }

    #[test]
    fn advection_convention() {
        let g = grid2(16);
        let a =
            VectorField::new(vec![ScalarField::constant(&g, 2.0), ScalarField::zeros(&g)]).unwrap();
        let f = VectorField::new(vec![
            ScalarField::zeros(&g),
            ScalarField::from_fn(&g, |x| x[0].sin()).unwrap(),
        ])
        .unwrap();
        let adv = f.advected_by(&a).unwrap();
        let expect = ScalarField::from_fn(&g, |x| 2.0 * x[0].cos()).unwrap();
        assert!(adv.component(1).max_abs_diff(&expect) < 1e-12);
        assert!(adv.component(0).sup_norm() < 1e-14);
    }

    #[test]
    fn random_fields_are_band_limited() {
        let g = grid2(32);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = ScalarField::random_band_limited(&g, 4, 1.0, &mut rng);
        assert!((f.sup_norm() - 1.0).abs() < 1e-14);
        for (i, c) in f.spectrum().iter().enumerate() {
            let idx = g.multi_index(i);
            if g.mode(idx[0]).abs() > 4 || g.mode(idx[1]).abs() > 4 {
                assert!(c.norm() < 1e-10);
            }
        }
    }
}

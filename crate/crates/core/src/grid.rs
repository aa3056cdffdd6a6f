//! Periodic box descriptor and the FFT machinery attached to it.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

struct Plans {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

/// Uniform periodic grid on `[0, L)^dim` with `n` points per axis.
///
/// Storage order is row-major with axis 0 slowest: in 3D the sample at
/// `(ix, iy, iz)` lives at `(ix * n + iy) * n + iz`.
#[derive(Clone)]
pub struct Grid {
    dim: usize,
    n: usize,
    box_length: f64,
    far_field_density: f64,
    wavenumbers: Arc<Vec<f64>>,
    plans: Arc<Plans>,
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("dim", &self.dim)
            .field("n", &self.n)
            .field("box_length", &self.box_length)
            .field("far_field_density", &self.far_field_density)
            .finish()
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.n == other.n
            && self.box_length == other.box_length
            && self.far_field_density == other.far_field_density
    }
}

/// Accepts `2^k` and `3 * 2^k`, both at least 8.
pub fn is_valid_resolution(n: usize) -> bool {
    if n < 8 {
        return false;
    }
    let odd = n >> n.trailing_zeros();
    odd == 1 || odd == 3
}

impl Grid {
    pub fn new(dim: usize, n: usize, box_length: f64, far_field_density: f64) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::UnsupportedDimension(dim));
        }
        if !is_valid_resolution(n) {
            return Err(Error::InvalidResolution(n));
        }
        if !(box_length > 0.0) || !box_length.is_finite() {
            return Err(Error::NonPositiveBoxLength(box_length));
        }
        if !(far_field_density > 0.0) || !far_field_density.is_finite() {
            return Err(Error::NonPositiveFarField(far_field_density));
        }
        let unit = 2.0 * PI / box_length;
        let wavenumbers = (0..n).map(|i| unit * signed_mode(i, n) as f64).collect();
        let mut planner = FftPlanner::new();
        let plans = Plans {
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        };
        Ok(Self {
            dim,
            n,
            box_length,
            far_field_density,
            wavenumbers: Arc::new(wavenumbers),
            plans: Arc::new(plans),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    pub fn far_field_density(&self) -> f64 {
        self.far_field_density
    }

    /// Total number of samples, `n^dim`.
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.box_length / self.n as f64
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    pub fn volume(&self) -> f64 {
        self.box_length.powi(self.dim as i32)
    }

    /// Fundamental frequency `2π/L`.
    pub fn frequency_unit(&self) -> f64 {
        2.0 * PI / self.box_length
    }

    /// Magnitude of the most negative axis frequency, `(2π/L)·n/2`.
    pub fn nyquist(&self) -> f64 {
        self.frequency_unit() * (self.n / 2) as f64
    }

    /// Angular wavenumber of FFT index `i` along any axis.
    pub fn wavenumber(&self, i: usize) -> f64 {
        self.wavenumbers[i]
    }

    /// Integer mode number of FFT index `i`, in `-n/2 ..= n/2 - 1`.
    pub fn mode(&self, i: usize) -> i64 {
        signed_mode(i, self.n)
    }

    /// Axis frequencies in ascending order, `(2π/L)·{-n/2, …, n/2-1}`.
    pub fn frequencies(&self) -> Vec<f64> {
        let unit = self.frequency_unit();
        let half = (self.n / 2) as i64;
        (-half..half).map(|m| unit * m as f64).collect()
    }

    pub fn multi_index(&self, flat: usize) -> [usize; 3] {
        let n = self.n;
        if self.dim == 2 {
            [flat / n, flat % n, 0]
        } else {
            [flat / (n * n), (flat / n) % n, flat % n]
        }
    }

    pub fn position(&self, flat: usize) -> Vec<f64> {
        let idx = self.multi_index(flat);
        let h = self.spacing();
        (0..self.dim).map(|a| idx[a] as f64 * h).collect()
    }

    /// Stride between neighbours along `axis`.
    pub fn stride(&self, axis: usize) -> usize {
        self.n.pow((self.dim - 1 - axis) as u32)
    }

    /// Flat index of the neighbour of `flat` shifted by `shift` along `axis`, periodically.
    pub fn neighbour(&self, flat: usize, axis: usize, shift: isize) -> usize {
        let n = self.n as isize;
        let stride = self.stride(axis);
        let coord = ((flat / stride) % self.n) as isize;
        let moved = (coord + shift).rem_euclid(n) as usize;
        flat - coord as usize * stride + moved * stride
    }

    /// Wave vector of spectral index `flat`.
    pub fn wave_vector(&self, flat: usize) -> [f64; 3] {
        let idx = self.multi_index(flat);
        let mut k = [0.0; 3];
        for a in 0..self.dim {
            k[a] = self.wavenumbers[idx[a]];
        }
        k
    }

    pub fn wave_norm_sq(&self, flat: usize) -> f64 {
        let k = self.wave_vector(flat);
        k[0] * k[0] + k[1] * k[1] + k[2] * k[2]
    }

    /// `|ξ|²` over the whole spectral lattice.
    pub fn wave_norm_sq_table(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.wave_norm_sq(i)).collect()
    }

    /// True if spectral index `flat` sits on the Nyquist plane of `axis`.
    pub fn is_nyquist(&self, flat: usize, axis: usize) -> bool {
        let idx = self.multi_index(flat);
        idx[axis] == self.n / 2
    }

    /// Two-thirds rule: keep modes with every `|m_a| <= n/3`.
    pub fn dealias_keep(&self, flat: usize) -> bool {
        let idx = self.multi_index(flat);
        let cut = (self.n / 3) as i64;
        (0..self.dim).all(|a| signed_mode(idx[a], self.n).abs() <= cut)
    }

    pub fn forward(&self, values: &[f64]) -> Vec<Complex64> {
        let mut data: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.transform(&mut data, &*self.plans.forward);
        data
    }

    /// Inverse transform including the `1/N` normalisation; imaginary parts are dropped.
    pub fn inverse(&self, mut spectrum: Vec<Complex64>) -> Vec<f64> {
        self.transform(&mut spectrum, &*self.plans.inverse);
        let scale = 1.0 / self.len() as f64;
        spectrum.iter().map(|c| c.re * scale).collect()
    }

    fn transform(&self, data: &mut [Complex64], plan: &dyn Fft<f64>) {
        debug_assert_eq!(data.len(), self.len());
        let n = self.n;
        plan.process(data);
        let mut scratch = vec![Complex64::new(0.0, 0.0); 0];
        for axis in 0..self.dim - 1 {
            let stride = self.stride(axis);
            let block = stride * n;
            scratch.resize(block, Complex64::new(0.0, 0.0));
            for chunk in data.chunks_mut(block) {
                for s in 0..stride {
                    for i in 0..n {
                        scratch[s * n + i] = chunk[i * stride + s];
                    }
                }
                plan.process(&mut scratch);
                for s in 0..stride {
                    for i in 0..n {
                        chunk[i * stride + s] = scratch[s * n + i];
                    }
                }
            }
        }
    }
}

fn signed_mode(i: usize, n: usize) -> i64 {
    if i < n / 2 {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

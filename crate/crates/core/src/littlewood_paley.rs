//! Dyadic frequency decomposition, Besov and Chemin–Lerner norms, and the
//! harmonic-analysis audits built on them.

use rustfft::num_complex::Complex64;

use crate::audit::AuditReport;
use crate::error::{Error, Result};
use crate::field::{lp_of, ScalarField};
use crate::grid::Grid;

/// Inner radius of the low-frequency cutoff: `χ = 1` below it.
pub const CHI_INNER: f64 = 0.75;
/// Outer radius of the low-frequency cutoff: `χ = 0` above it.
pub const CHI_OUTER: f64 = 4.0 / 3.0;

/// Upper bound of `C` in `C^{-1} ≤ ‖u‖_{H^s}/‖u‖_{B^s_{2,2}} ≤ C` measured on the
/// seeded corpus (`examples/calibrate.rs`), doubled.
pub const SOBOLEV_BESOV_CONSTANT: f64 = 2.0 * 7.38;
/// Frozen Bernstein constant for derivative orders up to 3, doubled from the corpus.
pub const BERNSTEIN_CONSTANT: f64 = 2.0 * 1.92;
/// Frozen constant of the optimal interpolation inequality, doubled from the corpus.
pub const INTERPOLATION_CONSTANT: f64 = 2.0 * 1.37;
/// Frozen constant of the heat maximal-regularity estimate, doubled from the corpus.
pub const HEAT_CONSTANT: f64 = 2.0 * 1.24;

fn smooth_step(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

/// Smooth radial cutoff: 1 on `[0, 3/4]`, 0 on `[4/3, ∞)`, `C^∞` in between.
pub fn chi(r: f64) -> f64 {
    if r <= CHI_INNER {
        return 1.0;
    }
    if r >= CHI_OUTER {
        return 0.0;
    }
    let s = (r - CHI_INNER) / (CHI_OUTER - CHI_INNER);
    let a = smooth_step(1.0 - s);
    a / (a + smooth_step(s))
}

/// Annulus profile `φ(ξ) = χ(ξ/2) − χ(ξ)`, supported in `3/4 < |ξ| < 8/3`.
pub fn phi(r: f64) -> f64 {
    chi(r / 2.0) - chi(r)
}

/// Besov index `(s, p, r)`; `p` and `r` may be `f64::INFINITY`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesovIndex {
    pub s: f64,
    pub p: f64,
    pub r: f64,
}

impl BesovIndex {
    pub fn new(s: f64, p: f64, r: f64) -> Result<Self> {
        if !s.is_finite() {
            return Err(Error::InvalidExponent(format!(
                "regularity s = {s} must be finite"
            )));
        }
        for (name, v) in [("p", p), ("r", r)] {
            if !(v >= 1.0) {
                return Err(Error::InvalidExponent(format!(
                    "{name} = {v} must lie in [1, ∞]"
                )));
            }
        }
        Ok(Self { s, p, r })
    }
}

/// Time-indexed scalar snapshots on a common grid.
#[derive(Clone, Debug)]
pub struct TimeSeriesField {
    times: Vec<f64>,
    snapshots: Vec<ScalarField>,
}

impl TimeSeriesField {
    pub fn new(times: Vec<f64>, snapshots: Vec<ScalarField>) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::EmptySeries);
        }
        if times.len() != snapshots.len() {
            return Err(Error::InvalidArgument(format!(
                "{} times but {} snapshots",
                times.len(),
                snapshots.len()
            )));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument(
                "times must be strictly increasing".into(),
            ));
        }
        let g = snapshots[0].grid();
        if snapshots.iter().any(|s| s.grid() != g) {
            return Err(Error::GridMismatch);
        }
        Ok(Self { times, snapshots })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn snapshots(&self) -> &[ScalarField] {
        &self.snapshots
    }

    pub fn grid(&self) -> &Grid {
        self.snapshots[0].grid()
    }
}

/// `(∫ g(t)^q dt)^{1/q}` by the trapezoid rule, or `sup g` for `q = ∞`.
pub fn time_lq(times: &[f64], values: &[f64], q: f64) -> f64 {
    if q.is_infinite() {
        return values.iter().fold(0.0, |m, v| m.max(v.abs()));
    }
    let integral: f64 = times
        .windows(2)
        .zip(values.windows(2))
        .map(|(t, v)| 0.5 * (t[1] - t[0]) * (v[0].abs().powf(q) + v[1].abs().powf(q)))
        .sum();
    integral.powf(1.0 / q)
}

/// ℓ^r aggregation of `2^{js} a_j` over `j = -1, 0, …`.
pub fn weighted_lr(block_norms: &[f64], s: f64, r: f64) -> f64 {
    let terms = block_norms
        .iter()
        .enumerate()
        .map(|(i, &c)| 2f64.powf((i as f64 - 1.0) * s) * c);
    if r.is_infinite() {
        terms.fold(0.0, f64::max)
    } else if r == 1.0 {
        terms.sum()
    } else {
        terms.map(|t| t.powf(r)).sum::<f64>().powf(1.0 / r)
    }
}

/// Multipliers `χ, φ_0, …, φ_{j_max}` sampled on a grid's frequency lattice.
///
/// The last annulus absorbs every frequency above `3/4·2^{j_max}` so the family
/// sums to one exactly on the lattice.
#[derive(Clone, Debug)]
pub struct DyadicFamily {
    grid: Grid,
    j_max: i32,
    chi: Vec<f64>,
    phi: Vec<Vec<f64>>,
}

impl DyadicFamily {
    pub fn new(grid: &Grid) -> Result<Self> {
        let nyq = grid.nyquist();
        let mut j_max = -1;
        while CHI_INNER * 2f64.powi(j_max + 1) < nyq {
            j_max += 1;
        }
        if j_max < 1 {
            return Err(Error::GridTooCoarse(j_max));
        }
        let radii: Vec<f64> = (0..grid.len())
            .map(|i| grid.wave_norm_sq(i).sqrt())
            .collect();
        let chi_j = |j: i32| -> Vec<f64> { radii.iter().map(|&r| chi(r / 2f64.powi(j))).collect() };
        let mut lows: Vec<Vec<f64>> = (0..=j_max).map(chi_j).collect();
        let base = lows[0].clone();
        let mut phi = Vec::with_capacity(j_max as usize + 1);
        for j in 0..j_max {
            let (a, b) = (&lows[j as usize + 1], &lows[j as usize]);
            phi.push(a.iter().zip(b).map(|(x, y)| x - y).collect());
        }
        let top = lows.pop().expect("j_max >= 1");
        phi.push(top.iter().map(|x| 1.0 - x).collect());
        Ok(Self {
            grid: grid.clone(),
            j_max,
            chi: base,
            phi,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn j_max(&self) -> i32 {
        self.j_max
    }

    /// Multiplier of block `j`: `χ` for `j = -1`, `φ_j` otherwise.
    pub fn multiplier(&self, j: i32) -> Result<&[f64]> {
        if j > self.j_max {
            return Err(Error::BlockBeyondResolution {
                j,
                j_max: self.j_max,
            });
        }
        if j < -1 {
            return Err(Error::InvalidArgument(format!(
                "block {j} has no multiplier"
            )));
        }
        Ok(if j == -1 {
            &self.chi
        } else {
            &self.phi[j as usize]
        })
    }

    pub fn block_count(&self) -> usize {
        self.j_max as usize + 2
    }

    fn check(&self, u: &ScalarField) -> Result<()> {
        if u.grid() != &self.grid {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    /// `Δ_j u`; blocks below `-1` are identically zero.
    pub fn block(&self, u: &ScalarField, j: i32) -> Result<ScalarField> {
        self.check(u)?;
        if j < -1 {
            return Ok(ScalarField::zeros(&self.grid));
        }
        let m = self.multiplier(j)?;
        Ok(u.apply_multiplier(m))
    }

    /// All blocks `Δ_{-1}u, …, Δ_{j_max}u` from a single forward transform.
    pub fn blocks(&self, u: &ScalarField) -> Result<Vec<ScalarField>> {
        self.check(u)?;
        let spec = u.spectrum();
        Ok(self.blocks_from_spectrum(&spec))
    }

    fn blocks_from_spectrum(&self, spec: &[Complex64]) -> Vec<ScalarField> {
        (-1..=self.j_max)
            .map(|j| {
                let m = self.multiplier(j).expect("in range");
                let s = spec.iter().zip(m).map(|(c, &w)| c * w).collect();
                ScalarField::from_spectrum(&self.grid, s)
            })
            .collect()
    }

    /// `‖Δ_j u‖_p` for `j = -1 … j_max`.
    pub fn block_norms(&self, u: &ScalarField, p: f64) -> Result<Vec<f64>> {
        self.blocks(u)?.iter().map(|b| b.lp_norm(p)).collect()
    }

    pub fn besov_norm(&self, u: &ScalarField, idx: BesovIndex) -> Result<f64> {
        let norms = self.block_norms(u, idx.p)?;
        Ok(weighted_lr(&norms, idx.s, idx.r))
    }

    /// Chemin–Lerner norm `‖(2^{js}‖Δ_j u‖_{L^q_T L^p})_j‖_{ℓ^r}`.
    pub fn chemin_lerner_norm(
        &self,
        series: &TimeSeriesField,
        q: f64,
        idx: BesovIndex,
    ) -> Result<f64> {
        check_q(q)?;
        let per_time = self.series_block_norms(series, idx.p)?;
        let nb = self.block_count();
        let block_norms: Vec<f64> = (0..nb)
            .map(|b| {
                let vals: Vec<f64> = per_time.iter().map(|row| row[b]).collect();
                time_lq(series.times(), &vals, q)
            })
            .collect();
        Ok(weighted_lr(&block_norms, idx.s, idx.r))
    }

    /// `‖u‖_{L^q_T(B^s_{p,r})}`: the time norm taken outside the block sum.
    pub fn lq_besov_norm(&self, series: &TimeSeriesField, q: f64, idx: BesovIndex) -> Result<f64> {
        check_q(q)?;
        let per_time = self.series_block_norms(series, idx.p)?;
        let vals: Vec<f64> = per_time
            .iter()
            .map(|row| weighted_lr(row, idx.s, idx.r))
            .collect();
        Ok(time_lq(series.times(), &vals, q))
    }

    fn series_block_norms(&self, series: &TimeSeriesField, p: f64) -> Result<Vec<Vec<f64>>> {
        series
            .snapshots()
            .iter()
            .map(|u| self.block_norms(u, p))
            .collect()
    }

    /// Pointwise extrema over the lattice of `Σ_j 2^{2js}m_j² / (1+|ξ|²)^s`.
    ///
    /// Their square roots bound `‖u‖_{B^s_{2,2}} / ‖u‖_{H^s}` from below and above
    /// for every field on the grid.
    pub fn sobolev_besov_bounds(&self, s: f64) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        for i in 0..self.grid.len() {
            let mut acc = 0.0;
            for j in -1..=self.j_max {
                let m = self.multiplier(j).expect("in range")[i];
                acc += 4f64.powf(j as f64 * s) * m * m;
            }
            let w = acc / (1.0 + self.grid.wave_norm_sq(i)).powf(s);
            lo = lo.min(w);
            hi = hi.max(w);
        }
        (lo.sqrt(), hi.sqrt())
    }
}

fn check_q(q: f64) -> Result<()> {
    if !(q >= 1.0) {
        return Err(Error::InvalidExponent(format!(
            "time exponent q = {q} must lie in [1, ∞]"
        )));
    }
    Ok(())
}

fn lp_or_sup(values: &[f64], p: f64, cell: f64) -> f64 {
    if p.is_infinite() {
        values.iter().fold(0.0, |m, v| m.max(v.abs()))
    } else {
        lp_of(values, p, cell)
    }
}

/// Restricts `u` to the closed annulus `2^j·{3/4 ≤ |ξ| ≤ 8/3}`.
pub fn annulus_filter(u: &ScalarField, j: i32) -> ScalarField {
    let g = u.grid();
    let lambda = 2f64.powi(j);
    let mask: Vec<f64> = (0..g.len())
        .map(|i| {
            let r = g.wave_norm_sq(i).sqrt() / lambda;
            if (CHI_INNER..=2.0 * CHI_OUTER).contains(&r) {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    u.apply_multiplier(&mask)
}

/// Pointwise Frobenius magnitude of the order-`k` derivative tensor `∇^k u`.
pub fn derivative_tensor_magnitude(u: &ScalarField, k: u32) -> ScalarField {
    let g = u.grid();
    let d = g.dim();
    let spec = u.spectrum();
    let mut acc = vec![0.0; g.len()];
    let count = d.pow(k);
    for t in 0..count {
        let mut axes = Vec::with_capacity(k as usize);
        let mut rem = t;
        for _ in 0..k {
            axes.push(rem % d);
            rem /= d;
        }
        let s: Vec<Complex64> = spec
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let kv = g.wave_vector(i);
                let mut f = Complex64::new(1.0, 0.0);
                for &a in &axes {
                    f *= Complex64::new(0.0, kv[a]);
                }
                c * f
            })
            .collect();
        for (a, v) in acc.iter_mut().zip(g.inverse(s)) {
            *a += v * v;
        }
    }
    ScalarField::new(g, acc.into_iter().map(f64::sqrt).collect()).expect("finite")
}

/// Bernstein ratios for a field pre-filtered onto the block-`j` annulus with `λ = 2^j`.
///
/// Reports, in order: the ball estimate `‖∇^k u‖_b ≤ C λ^{k+N(1/a−1/b)} ‖u‖_a`, the
/// annulus lower bound `λ^k‖u‖_a ≤ C ‖∇^k u‖_a`, the annulus upper bound
/// `‖∇^k u‖_a ≤ C λ^k ‖u‖_a`, and the multiplier bound for `σ(ξ) = |ξ|^k`.
pub fn bernstein_audit(
    u: &ScalarField,
    j: i32,
    k: u32,
    a: f64,
    b: f64,
) -> Result<Vec<AuditReport>> {
    if !(a >= 1.0 && b >= a) {
        return Err(Error::InvalidExponent(format!(
            "need 1 ≤ a ≤ b, got a = {a}, b = {b}"
        )));
    }
    let g = u.grid();
    let filtered = annulus_filter(u, j);
    let total = u.l2_norm();
    let outside = u.sub(&filtered)?.l2_norm();
    if outside > 1e-10 * total.max(f64::MIN_POSITIVE) {
        return Err(Error::InvalidArgument(format!(
            "field is not band-limited to the block-{j} annulus (relative leakage {:.3e})",
            outside / total
        )));
    }
    let lambda = 2f64.powi(j);
    let n = g.dim() as f64;
    let inv = |x: f64| if x.is_infinite() { 0.0 } else { 1.0 / x };
    let shift = n * (inv(a) - inv(b));
    let cell = g.cell_volume();
    let u_a = lp_or_sup(u.values(), a, cell);
    let grad = derivative_tensor_magnitude(u, k);
    let grad_a = lp_or_sup(grad.values(), a, cell);
    let grad_b = lp_or_sup(grad.values(), b, cell);
    let radial: Vec<f64> = (0..g.len())
        .map(|i| g.wave_norm_sq(i).sqrt().powi(k as i32))
        .collect();
    let sigma_b = lp_or_sup(u.apply_multiplier(&radial).values(), b, cell);
    let c = BERNSTEIN_CONSTANT.powi(k as i32 + 1);
    let cite = "Bernstein inequalities on the ball and the annulus";
    Ok(vec![
        AuditReport::new(
            "bernstein.ball",
            grad_b,
            c * lambda.powf(k as f64 + shift) * u_a,
            0.0,
            cite,
        ),
        AuditReport::new(
            "bernstein.annulus.lower",
            lambda.powi(k as i32) * u_a,
            c * grad_a,
            0.0,
            cite,
        ),
        AuditReport::new(
            "bernstein.annulus.upper",
            grad_a,
            c * lambda.powi(k as i32) * u_a,
            0.0,
            cite,
        ),
        AuditReport::new(
            "bernstein.multiplier",
            sigma_b,
            c * lambda.powf(k as f64 + shift) * u_a,
            0.0,
            cite,
        ),
    ])
}

/// Unscaled annulus ratio `‖∇^k u‖_p / (λ^k ‖u‖_p)`, `λ = 2^j`; equal to 1 for a
/// single Fourier mode with `|ξ| = λ`.
pub fn bernstein_ratio(u: &ScalarField, j: i32, k: u32, p: f64) -> f64 {
    let cell = u.grid().cell_volume();
    let grad = derivative_tensor_magnitude(u, k);
    lp_or_sup(grad.values(), p, cell)
        / (2f64.powi(j).powi(k as i32) * lp_or_sup(u.values(), p, cell))
}

/// Integer `N` with `2^{N(s2−s1)} ≤ M2/M1 < 2^{(N+1)(s2−s1)}`.
pub fn frequency_cut(m1: f64, m2: f64, s1: f64, s2: f64) -> Result<i64> {
    if !(s2 > s1) {
        return Err(Error::InvalidArgument(format!(
            "need s1 < s2, got {s1} and {s2}"
        )));
    }
    if !(m1 > 0.0 && m2 > 0.0) {
        return Err(Error::InvalidArgument(
            "frequency cut needs positive norms".into(),
        ));
    }
    let ratio = m2 / m1;
    let ds = s2 - s1;
    let mut n = (ratio.log2() / ds).floor() as i64;
    while 2f64.powf(n as f64 * ds) > ratio {
        n -= 1;
    }
    while 2f64.powf((n + 1) as f64 * ds) <= ratio {
        n += 1;
    }
    Ok(n)
}

/// Result of the optimal interpolation audit.
#[derive(Clone, Debug)]
pub struct InterpolationAudit {
    pub report: AuditReport,
    pub m1: f64,
    pub m2: f64,
    /// Frequency cut selected from `M2/M1`; `None` when either norm vanishes.
    pub cut: Option<i64>,
    /// Low/high split `Σ_{j≤N} + Σ_{j>N}` evaluated against its two geometric bounds.
    pub split: Option<AuditReport>,
}

pub fn optimal_interpolation_audit(
    family: &DyadicFamily,
    u: &ScalarField,
    s1: f64,
    s2: f64,
    theta: f64,
    p: f64,
) -> Result<InterpolationAudit> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "θ = {theta} must lie strictly inside (0, 1)"
        )));
    }
    if !(s2 > s1) {
        return Err(Error::InvalidArgument(format!(
            "need s1 < s2, got {s1} and {s2}"
        )));
    }
    let norms = family.block_norms(u, p)?;
    let s = theta * s1 + (1.0 - theta) * s2;
    let lhs = weighted_lr(&norms, s, 1.0);
    let m1 = weighted_lr(&norms, s1, f64::INFINITY);
    let m2 = weighted_lr(&norms, s2, f64::INFINITY);
    let ds = s2 - s1;
    let factor = (1.0 / theta + 1.0 / (1.0 - theta)) / ds;
    let rhs = INTERPOLATION_CONSTANT * factor * m1.powf(theta) * m2.powf(1.0 - theta);
    let cite = "optimal interpolation inequality in Besov spaces";
    let report = AuditReport::new("interpolation.optimal", lhs, rhs, 1e-12, cite);
    let (cut, split) = if m1 > 0.0 && m2 > 0.0 {
        let n = frequency_cut(m1, m2, s1, s2)?;
        let mut low = 0.0;
        let mut high = 0.0;
        for (i, &c) in norms.iter().enumerate() {
            let j = i as i64 - 1;
            let t = 2f64.powf(j as f64 * s) * c;
            if j <= n {
                low += t;
            } else {
                high += t;
            }
        }
        // Geometric sums bounding the two parts, exact for j ≥ -1.
        let a = (1.0 - theta) * ds;
        let b = theta * ds;
        let low_bound = if n < -1 {
            0.0
        } else {
            m1 * (2f64.powf(a * (n + 1) as f64) - 2f64.powf(-a)) / (2f64.powf(a) - 1.0)
        };
        let first_high = (n + 1).max(-1);
        let high_bound = m2 * 2f64.powf(-b * first_high as f64) / (1.0 - 2f64.powf(-b));
        let split = AuditReport::new(
            "interpolation.frequency_split",
            low + high,
            low_bound + high_bound,
            1e-12,
            "constructive low/high frequency split of the optimal interpolation inequality",
        );
        (Some(n), Some(split))
    } else {
        (None, None)
    };
    Ok(InterpolationAudit {
        report,
        m1,
        m2,
        cut,
        split,
    })
}

/// Solution of `∂_t u − μΔu = f` on a time grid, with `f` held constant on each step.
pub fn solve_heat(u0: &ScalarField, f: &TimeSeriesField, mu: f64) -> Result<TimeSeriesField> {
    if !(mu > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "viscosity μ = {mu} must be positive"
        )));
    }
    let g = f.grid();
    if u0.grid() != g {
        return Err(Error::GridMismatch);
    }
    let k2 = g.wave_norm_sq_table();
    let times = f.times().to_vec();
    let mut spec = u0.spectrum();
    let mut out = vec![ScalarField::from_spectrum(g, spec.clone())];
    for n in 0..times.len() - 1 {
        let dt = times[n + 1] - times[n];
        let fs = f.snapshots()[n].spectrum();
        for ((c, fc), &w) in spec.iter_mut().zip(&fs).zip(&k2) {
            let a = mu * w;
            let decay = (-a * dt).exp();
            let gain = if a == 0.0 {
                dt
            } else {
                -(-a * dt).exp_m1() / a
            };
            *c = *c * decay + fc * gain;
        }
        out.push(ScalarField::from_spectrum(g, spec.clone()));
    }
    TimeSeriesField::new(times, out)
}

/// Heat maximal-regularity audit: `‖u‖_{𝓛^{q1}_T(B^{s+2/q1}_{p,r})}` against
/// `C(‖u0‖_{B^s_{p,r}} + ‖f‖_{𝓛^{q2}_T(B^{s−2+2/q2}_{p,r})})`.
pub fn heat_regularity_audit(
    family: &DyadicFamily,
    u0: &ScalarField,
    f: &TimeSeriesField,
    mu: f64,
    q1: f64,
    q2: f64,
    idx: BesovIndex,
) -> Result<AuditReport> {
    check_q(q1)?;
    check_q(q2)?;
    if q2 > q1 {
        return Err(Error::InvalidArgument(format!(
            "need q2 ≤ q1, got q1 = {q1}, q2 = {q2}"
        )));
    }
    let u = solve_heat(u0, f, mu)?;
    let inv = |q: f64| if q.is_infinite() { 0.0 } else { 1.0 / q };
    let lhs = family.chemin_lerner_norm(
        &u,
        q1,
        BesovIndex {
            s: idx.s + 2.0 * inv(q1),
            ..idx
        },
    )?;
    let data = family.besov_norm(u0, idx)?
        + family.chemin_lerner_norm(
            f,
            q2,
            BesovIndex {
                s: idx.s - 2.0 + 2.0 * inv(q2),
                ..idx
            },
        )?;
    Ok(AuditReport::new(
        "heat.maximal_regularity",
        lhs,
        HEAT_CONSTANT * data,
        1e-12,
        "maximal regularity estimate for the heat equation in Chemin–Lerner spaces",
    ))
}

//! Fast invariant suite: each check returns a named pass/fail line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use crate::degiorgi::{closed_form_log, recurrence_log, theta, truncate, IterationSpec};
use crate::error::Result;
use crate::estimates::{c1, c2, jungel_audit, potential, DENSITY_SPLIT};
use crate::field::ScalarField;
use crate::grid::Grid;
use crate::littlewood_paley::{bernstein_audit, bernstein_ratio, frequency_cut, DyadicFamily};
use crate::solver::{run, FlowState, Formulation, SolverConfig};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

type Check = fn() -> Result<(bool, String)>;

const CHECKS: [(&str, Check); 10] = [
    ("fft.round_trip", round_trip),
    ("spectral.derivative", derivative_identity),
    ("littlewood_paley.partition", partition),
    ("bernstein.single_mode", bernstein_single_mode),
    ("interpolation.frequency_cut", cut_brackets),
    ("iteration.closed_form", iteration_closed_form),
    ("potential.large_density", potential_bounds),
    ("jungel.constants", jungel_corpus),
    ("solver.steady_state", steady_state),
    ("degiorgi.truncation", truncation_monotone),
];

/// Runs every check; failures of the harness itself are reported as failed checks.
pub fn run_all() -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|(name, check)| match check() {
            Ok((pass, detail)) => CheckOutcome { name, pass, detail },
            Err(e) => CheckOutcome {
                name,
                pass: false,
                detail: format!("error: {e}"),
            },
        })
        .collect()
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(20_240_601)
}

fn round_trip() -> Result<(bool, String)> {
    let g = Grid::new(2, 32, 2.0 * PI, 1.0)?;
    let mut r = rng();
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let vals: Vec<f64> = (0..g.len()).map(|_| r.gen_range(-1.0..1.0)).collect();
        let back = g.inverse(g.forward(&vals));
        for (a, b) in vals.iter().zip(&back) {
            worst = worst.max((a - b).abs());
        }
    }
    Ok((worst <= 1e-12, format!("max error {worst:.3e}")))
}

fn derivative_identity() -> Result<(bool, String)> {
    let g = Grid::new(2, 32, 2.0 * PI, 1.0)?;
    let f = ScalarField::from_fn(&g, |x| (2.0 * x[0]).sin() * x[1].cos())?;
    let want = ScalarField::from_fn(&g, |x| 2.0 * (2.0 * x[0]).cos() * x[1].cos())?;
    let err = f.derivative(0).max_abs_diff(&want);
    let lap = f.laplacian().max_abs_diff(&f.scale(-5.0));
    let worst = err.max(lap);
    Ok((worst <= 1e-12, format!("max error {worst:.3e}")))
}

fn partition() -> Result<(bool, String)> {
    let g = Grid::new(2, 64, 2.0 * PI, 1.0)?;
    let fam = DyadicFamily::new(&g)?;
    let u = ScalarField::random_band_limited(&g, 30, 1.0, &mut rng());
    let blocks = fam.blocks(&u)?;
    let mut sum = ScalarField::zeros(&g);
    for b in &blocks {
        sum = sum.add(b)?;
    }
    let err = sum.max_abs_diff(&u);
    Ok((err <= 1e-12, format!("reconstruction error {err:.3e}")))
}

fn bernstein_single_mode() -> Result<(bool, String)> {
    let g = Grid::new(2, 64, 2.0 * PI, 1.0)?;
    let u = ScalarField::from_fn(&g, |x| (8.0 * x[0]).cos())?;
    let mut worst: f64 = 0.0;
    for k in 1..=3 {
        bernstein_audit(&u, 3, k, 2.0, 2.0)?;
        worst = worst.max((bernstein_ratio(&u, 3, k, 2.0) - 1.0).abs());
    }
    Ok((worst <= 1e-10, format!("|ratio − 1| ≤ {worst:.3e}")))
}

fn cut_brackets() -> Result<(bool, String)> {
    let mut r = rng();
    let mut bad = 0;
    for _ in 0..200 {
        let m1: f64 = r.gen_range(0.01..10.0);
        let m2 = m1 * r.gen_range(1.0..1e6);
        let (s1, s2) = (r.gen_range(-2.0..1.0), r.gen_range(1.5..4.0));
        let n = frequency_cut(m1, m2, s1, s2)?;
        let e = s2 - s1;
        let ok = 2f64.powf(n as f64 * e) <= m2 / m1 && m2 / m1 < 2f64.powf((n + 1) as f64 * e);
        bad += usize::from(!ok);
    }
    Ok((bad == 0, format!("{bad} violations in 200 draws")))
}

fn iteration_closed_form() -> Result<(bool, String)> {
    let mut r = rng();
    let mut worst: f64 = 0.0;
    let mut violations = 0;
    for _ in 0..200 {
        let spec = IterationSpec::new(
            r.gen_range(0.1..10.0),
            r.gen_range(1.0..4.0),
            r.gen_range(0.1..2.0),
            0.0,
        )?;
        let th = theta(&spec);
        let spec = IterationSpec {
            x0: th * r.gen_range(0.01..1.0),
            ..spec
        };
        let rec = recurrence_log(&spec, 60);
        for (k, &x) in rec.iter().enumerate() {
            let c = closed_form_log(&spec, k as u32);
            worst = worst.max((x - c).abs() / c.abs().max(1.0));
            if spec.a > 1.0 && x > th.ln() - k as f64 * spec.a.ln() / spec.nu + 1e-9 {
                violations += 1;
            }
        }
    }
    Ok((
        worst <= 1e-12 && violations == 0,
        format!("log mismatch {worst:.3e}, {violations} decay violations"),
    ))
}

fn potential_bounds() -> Result<(bool, String)> {
    let mut violations = 0;
    for gamma in [1.1, 1.5, 2.0, 2.5] {
        for i in 0..2000 {
            let rho = DENSITY_SPLIT + i as f64 * 0.05;
            let p = potential(rho, 1.0, gamma);
            let d = (rho - 1.0).powf(gamma);
            if c1(gamma) * d > p * (1.0 + 1e-12) || p > c2(gamma) * d * (1.0 + 1e-12) {
                violations += 1;
            }
        }
    }
    let positive = (1..=100).all(|i| c1(1.0 + 2.0 * i as f64 / 100.0) > 0.0);
    Ok((
        violations == 0 && positive,
        format!("{violations} violations, C₁ > 0 on grid: {positive}"),
    ))
}

fn jungel_corpus() -> Result<(bool, String)> {
    let g = Grid::new(3, 16, 2.0 * PI, 1.0)?;
    let mut r = rng();
    let mut failed = 0;
    for _ in 0..5 {
        let pert = ScalarField::random_band_limited(&g, 3, 1.0, &mut r);
        let rho = pert.scale(0.5).offset(1.0);
        failed += usize::from(!jungel_audit(&rho)?.pass());
    }
    Ok((failed == 0, format!("{failed} of 5 densities violate")))
}

fn steady_state() -> Result<(bool, String)> {
    let g = Grid::new(2, 16, 8.0, 1.3)?;
    let mut worst: f64 = 0.0;
    for f in [Formulation::Effective, Formulation::Primitive] {
        let cfg = SolverConfig::new(2.0, 0.01, 0.1, f);
        let rec = run(&FlowState::rest(&g, f), &cfg, &[])?;
        let s = rec.last_state();
        worst = worst
            .max(s.rho.offset(-1.3).sup_norm())
            .max(s.vel.sup_norm());
    }
    Ok((worst <= 1e-14, format!("max deviation {worst:.3e}")))
}

fn truncation_monotone() -> Result<(bool, String)> {
    let g = Grid::new(2, 16, 1.0, 1.0)?;
    let f = ScalarField::random_band_limited(&g, 4, 3.0, &mut rng());
    let mut ok = true;
    for (k, k2) in [(-1.0, 0.0), (0.0, 0.5), (0.5, 2.0)] {
        let a = truncate(&f, k);
        let b = truncate(&f, k2);
        ok &= a.values().iter().zip(b.values()).all(|(x, y)| x >= y);
        ok &= a
            .values()
            .iter()
            .zip(f.values())
            .all(|(t, v)| *t == (v - k).max(0.0));
    }
    Ok((ok, "pointwise oracle and monotonicity".into()))
}

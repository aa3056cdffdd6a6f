//! Measures the constants of the harmonic-analysis audits on the seeded corpus.
//!
//! The frozen constants in `littlewood_paley` are twice the maxima printed here.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nsk_core::littlewood_paley::{
    annulus_filter, bernstein_audit, heat_regularity_audit, optimal_interpolation_audit,
    BesovIndex, DyadicFamily, TimeSeriesField, BERNSTEIN_CONSTANT, HEAT_CONSTANT,
    INTERPOLATION_CONSTANT,
};
use nsk_core::{Grid, ScalarField};

const SEEDS: u64 = 40;

fn sobolev_besov() -> f64 {
    let mut worst: f64 = 1.0;
    for n in [32, 64, 128] {
        for l in [2.0 * PI, 20.0] {
            let g = Grid::new(2, n, l, 1.0).unwrap();
            let fam = DyadicFamily::new(&g).unwrap();
            for s in [-1.0, 0.0, 1.0, 2.0] {
                let (lo, hi) = fam.sobolev_besov_bounds(s);
                worst = worst.max(hi).max(1.0 / lo);
            }
        }
    }
    worst
}

fn bernstein() -> f64 {
    let g = Grid::new(2, 64, 2.0 * PI, 1.0).unwrap();
    let mut worst: f64 = 0.0;
    for seed in 0..SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let raw = ScalarField::random_band_limited(&g, 31, 1.0, &mut rng);
        for j in 1..=4 {
            let u = annulus_filter(&raw, j);
            for k in 1..=3 {
                for (a, b) in [
                    (1.0, 2.0),
                    (2.0, 2.0),
                    (2.0, f64::INFINITY),
                    (1.0, f64::INFINITY),
                ] {
                    for r in bernstein_audit(&u, j, k, a, b).unwrap() {
                        let needed =
                            BERNSTEIN_CONSTANT * (r.lhs / r.rhs).powf(1.0 / (k as f64 + 1.0));
                        worst = worst.max(needed);
                    }
                }
            }
        }
    }
    worst
}

fn interpolation() -> f64 {
    let g = Grid::new(2, 64, 20.0, 1.0).unwrap();
    let fam = DyadicFamily::new(&g).unwrap();
    let mut worst: f64 = 0.0;
    for seed in 0..SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = ScalarField::random_band_limited(&g, 4 + seed as usize % 28, 1.0, &mut rng);
        for (s1, s2) in [(-1.0, 1.0), (0.0, 1.0), (0.0, 2.0), (-1.0, 2.0)] {
            for theta in [0.1, 0.25, 0.5, 0.75, 0.9] {
                for p in [1.0, 2.0, f64::INFINITY] {
                    let a = optimal_interpolation_audit(&fam, &u, s1, s2, theta, p).unwrap();
                    worst = worst.max(INTERPOLATION_CONSTANT * a.report.lhs / a.report.rhs);
                }
            }
        }
    }
    worst
}

fn heat() -> f64 {
    let g = Grid::new(2, 32, 2.0 * PI, 1.0).unwrap();
    let fam = DyadicFamily::new(&g).unwrap();
    let times: Vec<f64> = (0..=40).map(|i| i as f64 * 0.025).collect();
    let mut worst: f64 = 0.0;
    for seed in 0..SEEDS / 4 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u0 = ScalarField::random_band_limited(&g, 15, 1.0, &mut rng);
        let snaps = times
            .iter()
            .map(|_| ScalarField::random_band_limited(&g, 15, 1.0, &mut rng))
            .collect();
        let f = TimeSeriesField::new(times.clone(), snaps).unwrap();
        for (q1, q2) in [
            (f64::INFINITY, 1.0),
            (2.0, 2.0),
            (2.0, 1.0),
            (f64::INFINITY, 2.0),
        ] {
            for s in [-1.0, 0.0, 1.0] {
                let idx = BesovIndex::new(s, 2.0, 2.0).unwrap();
                let r = heat_regularity_audit(&fam, &u0, &f, 1.0, q1, q2, idx).unwrap();
                worst = worst.max(HEAT_CONSTANT * r.lhs / r.rhs);
            }
        }
    }
    worst
}

fn main() {
    println!("sobolev_besov  {:.6}", sobolev_besov());
    println!("bernstein      {:.6}", bernstein());
    println!("interpolation  {:.6}", interpolation());
    println!("heat           {:.6}", heat());
}

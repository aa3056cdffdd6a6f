use std::f64::consts::PI;

use approx::assert_relative_eq;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nsk_core::littlewood_paley::*;
use nsk_core::{Error, Grid, ScalarField};

fn torus(n: usize) -> Grid {
    Grid::new(2, n, 2.0 * PI, 1.0).unwrap()
}

fn random_field(g: &Grid, seed: u64, kmax: usize) -> ScalarField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ScalarField::random_band_limited(g, kmax, 1.0, &mut rng)
}

#[test]
fn profiles_telescope() {
    for i in 0..400 {
        let r = i as f64 * 0.05;
        let sum: f64 = chi(r) + (0..6).map(|j| phi(r / 2f64.powi(j))).sum::<f64>();
        assert!((sum - chi(r / 64.0)).abs() < 1e-15, "r = {r}");
    }
}

#[test]
fn plateau_mode_lives_in_one_block() {
    // |ξ| = 6 lies where φ(ξ/4) = 1.
    let g = torus(64);
    let fam = DyadicFamily::new(&g).unwrap();
    let u = ScalarField::from_fn(&g, |x| (6.0 * x[1]).cos()).unwrap();
    let blocks = fam.blocks(&u).unwrap();
    for (i, b) in blocks.iter().enumerate() {
        let j = i as i32 - 1;
        if j == 2 {
            assert!(b.max_abs_diff(&u) < 1e-13);
        } else {
            assert!(b.sup_norm() < 1e-13, "block {j}");
        }
    }
    for (s, p, r) in [
        (0.5, 2.0, 2.0),
        (-1.0, 1.0, f64::INFINITY),
        (2.0, f64::INFINITY, 1.0),
    ] {
        let b = fam
            .besov_norm(&u, BesovIndex::new(s, p, r).unwrap())
            .unwrap();
        assert_relative_eq!(
            b,
            4f64.powf(s) * u.lp_norm(p).unwrap(),
            max_relative = 1e-12
        );
    }
}

#[test]
fn invalid_indices() {
    assert!(matches!(
        BesovIndex::new(f64::NAN, 2.0, 2.0),
        Err(Error::InvalidExponent(_))
    ));
    assert!(BesovIndex::new(0.0, 0.5, 2.0).is_err());
    assert!(BesovIndex::new(0.0, 2.0, 0.0).is_err());
    assert!(BesovIndex::new(0.0, f64::INFINITY, f64::INFINITY).is_ok());
    let fam = DyadicFamily::new(&torus(32)).unwrap();
    assert!(matches!(
        fam.multiplier(fam.j_max() + 1),
        Err(Error::BlockBeyondResolution { .. })
    ));
    assert!(matches!(
        DyadicFamily::new(&Grid::new(2, 8, 100.0, 1.0).unwrap()),
        Err(Error::GridTooCoarse(_))
    ));
    let u = ScalarField::zeros(&torus(32));
    assert_eq!(fam.block(&u, -5).unwrap().sup_norm(), 0.0);
    assert_eq!(
        fam.blocks(&ScalarField::zeros(&torus(64))),
        Err(Error::GridMismatch)
    );
}

#[test]
fn bernstein_is_exact_on_a_single_mode() {
    let g = torus(64);
    let u = ScalarField::from_fn(&g, |x| (8.0 * x[0]).cos()).unwrap();
    for k in 1..=3 {
        for p in [1.0, 2.0, f64::INFINITY] {
            assert!((bernstein_ratio(&u, 3, k, p) - 1.0).abs() <= 1e-10);
        }
    }
}

#[test]
fn bernstein_rejects_leaky_fields() {
    let g = torus(64);
    let u = random_field(&g, 1, 20);
    assert!(matches!(
        bernstein_audit(&u, 2, 1, 2.0, 2.0),
        Err(Error::InvalidArgument(_))
    ));
    assert!(bernstein_audit(&annulus_filter(&u, 2), 2, 1, 2.0, 1.0).is_err());
}

#[test]
fn heat_solution_of_single_mode() {
    let g = torus(32);
    let u0 = ScalarField::from_fn(&g, |x| (2.0 * x[0]).sin()).unwrap();
    let times: Vec<f64> = (0..=10).map(|i| i as f64 * 0.1).collect();
    let f = TimeSeriesField::new(times.clone(), vec![ScalarField::zeros(&g); 11]).unwrap();
    let u = solve_heat(&u0, &f, 0.5).unwrap();
    let last = u.snapshots().last().unwrap();
    assert!(last.max_abs_diff(&u0.scale((-2.0f64).exp())) < 1e-13);
    assert!(solve_heat(&u0, &f, 0.0).is_err());
}

#[test]
fn time_series_validation() {
    let g = torus(16);
    let z = ScalarField::zeros(&g);
    assert_eq!(
        TimeSeriesField::new(vec![], vec![]).unwrap_err(),
        Error::EmptySeries
    );
    assert!(TimeSeriesField::new(vec![0.0, 0.0], vec![z.clone(), z.clone()]).is_err());
    assert!(TimeSeriesField::new(vec![0.0], vec![z.clone(), z]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn partition_of_unity(seed in any::<u64>(), kmax in 1usize..32, l in 1.0f64..30.0) {
        let g = Grid::new(2, 64, l, 1.0).unwrap();
        let fam = DyadicFamily::new(&g).unwrap();
        let u = random_field(&g, seed, kmax);
        let blocks = fam.blocks(&u).unwrap();
        let mut sum = ScalarField::zeros(&g);
        for b in &blocks {
            sum = sum.add(b).unwrap();
        }
        prop_assert!(sum.max_abs_diff(&u) <= 1e-12 * u.sup_norm());
        for i in 0..g.len() {
            let total: f64 = (-1..=fam.j_max()).map(|j| fam.multiplier(j).unwrap()[i]).sum();
            prop_assert!((total - 1.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn distant_blocks_do_not_interact(seed in any::<u64>()) {
        let g = torus(64);
        let fam = DyadicFamily::new(&g).unwrap();
        let u = random_field(&g, seed, 31);
        let blocks = fam.blocks(&u).unwrap();
        for a in 0..blocks.len() {
            for b in a + 2..blocks.len() {
                let inner = blocks[a].mul(&blocks[b]).unwrap().integral();
                prop_assert!(inner.abs() <= 1e-12 * u.l2_norm().powi(2));
            }
        }
    }

    #[test]
    fn sobolev_besov_lattice_bounds_hold(seed in any::<u64>(), s in -1.5f64..2.5) {
        let g = Grid::new(2, 32, 9.0, 1.0).unwrap();
        let fam = DyadicFamily::new(&g).unwrap();
        let u = random_field(&g, seed, 15);
        let b = fam.besov_norm(&u, BesovIndex::new(s, 2.0, 2.0).unwrap()).unwrap();
        let h = u.sobolev_norm(s);
        let (lo, hi) = fam.sobolev_besov_bounds(s);
        prop_assert!(lo * h <= b * (1.0 + 1e-12));
        prop_assert!(b <= hi * h * (1.0 + 1e-12));
        prop_assert!(hi <= SOBOLEV_BESOV_CONSTANT && 1.0 / lo <= SOBOLEV_BESOV_CONSTANT);
    }

    #[test]
    fn frequency_cut_brackets_the_ratio(m1 in 1e-6f64..1e6, m2 in 1e-6f64..1e6, s1 in -3.0f64..2.0, ds in 0.1f64..4.0) {
        let s2 = s1 + ds;
        let n = frequency_cut(m1, m2, s1, s2).unwrap();
        let ratio = m2 / m1;
        prop_assert!(2f64.powf(n as f64 * ds) <= ratio);
        prop_assert!(ratio < 2f64.powf((n + 1) as f64 * ds));
    }

    #[test]
    fn interpolation_holds_with_frozen_constant(seed in any::<u64>(), theta in 0.05f64..0.95, kmax in 2usize..32) {
        let g = Grid::new(2, 64, 20.0, 1.0).unwrap();
        let fam = DyadicFamily::new(&g).unwrap();
        let u = random_field(&g, seed, kmax);
        let a = optimal_interpolation_audit(&fam, &u, -1.0, 1.5, theta, 2.0).unwrap();
        prop_assert!(a.report.pass, "{}", a.report);
        prop_assert!(a.split.unwrap().pass);
    }

    #[test]
    fn bernstein_holds_on_annuli(seed in any::<u64>(), j in 1i32..5, k in 1u32..4) {
        let g = torus(64);
        let u = annulus_filter(&random_field(&g, seed, 31), j);
        for r in bernstein_audit(&u, j, k, 2.0, f64::INFINITY).unwrap() {
            prop_assert!(r.pass, "{}", r);
        }
    }

    #[test]
    fn minkowski_orders_time_and_frequency_norms(seed in any::<u64>()) {
        let g = torus(32);
        let fam = DyadicFamily::new(&g).unwrap();
        let times: Vec<f64> = (0..6).map(|i| i as f64 * 0.2).collect();
        let snaps = (0..6).map(|i| random_field(&g, seed.wrapping_add(i), 12)).collect();
        let series = TimeSeriesField::new(times, snaps).unwrap();
        let idx = BesovIndex::new(0.5, 2.0, 2.0).unwrap();
        let tol = 1.0 + 1e-12;
        // q ≤ r: the Chemin–Lerner norm is the smaller one; q ≥ r: the larger.
        prop_assert!(fam.chemin_lerner_norm(&series, 1.0, idx).unwrap() <= fam.lq_besov_norm(&series, 1.0, idx).unwrap() * tol);
        prop_assert!(fam.lq_besov_norm(&series, 4.0, idx).unwrap() <= fam.chemin_lerner_norm(&series, 4.0, idx).unwrap() * tol);
        let a = fam.chemin_lerner_norm(&series, 2.0, idx).unwrap();
        let b = fam.lq_besov_norm(&series, 2.0, idx).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a);
    }
}

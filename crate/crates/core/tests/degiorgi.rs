use proptest::prelude::*;

use nsk_core::degiorgi::*;
use nsk_core::solver::{run, FlowState, Formulation, Preset, SolverConfig};
use nsk_core::{Grid, ScalarField};

fn bump_run(n: usize, dt: f64, t_end: f64) -> Vec<FlowState> {
    let g = Grid::new(2, n, 20.0, 1.0).unwrap();
    let s0 = Preset::gaussian_bump(-0.5, 1.5).initial_state(&g).unwrap();
    let rec = run(
        &s0,
        &SolverConfig::new(2.0, dt, t_end, Formulation::Effective),
        &[],
    )
    .unwrap();
    assert!(rec.completed());
    rec.states
}

#[test]
fn truncation_matches_pointwise_definition() {
    let g = Grid::new(2, 8, 1.0, 1.0).unwrap();
    let f = ScalarField::from_fn(&g, |x| 10.0 * x[0] + x[1]).unwrap();
    for k in [-1.0, 0.0, 2.5, 5.0, 100.0] {
        let t = truncate(&f, k);
        for (a, b) in t.values().iter().zip(f.values()) {
            assert_eq!(*a, if *b > k { b - k } else { 0.0 });
        }
        let count = f.values().iter().filter(|&&v| v > k).count();
        assert_eq!(level_set_measure(&f, k), count as f64 / 64.0);
    }
    assert_eq!(level_set_measure(&f, 100.0), 0.0);
}

#[test]
fn flat_truncation_has_no_gradient() {
    let g = Grid::new(2, 16, 4.0, 1.0).unwrap();
    let f = ScalarField::from_fn(&g, |x| (x[0] - 2.0).abs()).unwrap();
    assert_eq!(truncated_gradient_sq(&truncate(&f, 5.0)), 0.0);
    assert!(truncated_gradient_sq(&truncate(&f, 1.0)) > 0.0);
}

#[test]
fn iteration_spec_validation() {
    assert!(IterationSpec::new(0.0, 2.0, 1.0, 0.1).is_err());
    assert!(IterationSpec::new(1.0, 0.5, 1.0, 0.1).is_err());
    assert!(IterationSpec::new(1.0, 2.0, 0.0, 0.1).is_err());
    assert!(IterationSpec::new(1.0, 2.0, 1.0, -0.1).is_err());
    assert!(IterationSpec::new(1.0, f64::INFINITY, 1.0, 0.1).is_err());
    let big = IterationSpec::new(10.0, 10.0, 2.0, 10.0).unwrap();
    assert!(recurrence_equality(&big, 60).is_err());
}

#[test]
fn ladder_reports_small_m() {
    let l = ladder(8.0, 2.0, 30).unwrap();
    assert_eq!(l.levels[0], 2.0);
    assert!(l.levels.windows(2).all(|w| w[1] > w[0]));
    assert!(*l.levels.last().unwrap() < 10.0);
    assert!(ladder(0.0, 1.0, 3).is_err());
    assert!(ladder(1.0, -1.0, 3).is_err());
}

#[test]
fn truncation_energy_decreases_with_level() {
    let states = bump_run(32, 0.01, 0.2);
    let levels = [1.0, 1.5, 2.0, 4.0];
    let e: Vec<f64> = levels
        .iter()
        .map(|&k| truncation_energy(&states, k).unwrap())
        .collect();
    assert!(e.windows(2).all(|w| w[1] <= w[0]));
    assert!(e[0] > 0.0);
    assert_eq!(*e.last().unwrap(), 0.0);
}

#[test]
fn certificate_windows_chain() {
    let states = bump_run(32, 0.01, 1.0);
    let cert = lower_bound_certificate(&states, 0.2).unwrap();
    assert!(cert.produced() && cert.sound(), "{cert}");
    assert!((cert.window_length - 0.5).abs() < 1e-12);
    assert_eq!(cert.windows.len(), 2);
    let (a, b) = (&cert.windows[0], &cert.windows[1]);
    assert!((a.k0 - 2.0 / states[0].rho.min()).abs() < 1e-12);
    assert_eq!(b.k0, a.bound);
    assert!(b.bound >= a.bound);
    assert!(a.m >= a.k0);
    assert_eq!(cert.bound(), b.bound);
    assert!(cert.csv().lines().count() == 3 && cert.csv().starts_with(Certificate::CSV_HEADER));

    let fast = lower_bound_certificate(&states, 2.0).unwrap();
    assert!((fast.window_length - 0.125).abs() < 1e-12);
    assert_eq!(fast.windows.len(), 8);
}

#[test]
fn certificate_reports_missing_data() {
    assert!(lower_bound_certificate(&[], 1.0).is_err());
    let states = bump_run(16, 0.05, 0.1);
    let huge = certificate_with_constant(&states, 0.1, f64::INFINITY).unwrap();
    assert!(!huge.produced());
    assert!(huge.reason.is_some());
    assert!(huge.to_string().starts_with("no certificate"));
}

#[test]
fn inverse_density_residual_is_first_order() {
    let worst = |dt: f64| {
        let states = bump_run(64, dt, 0.2);
        inverse_density_pde_residual(&states)
            .unwrap()
            .iter()
            .map(|r| r.1)
            .fold(0.0, f64::max)
    };
    let (a, b) = (worst(0.01), worst(0.005));
    let order = (a / b).log2();
    assert!(order > 0.8, "residuals {a:e} -> {b:e}, order {order}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_form_matches_recurrence(k in 0.1f64..10.0, a in 1.0f64..8.0, nu in 0.05f64..2.0, x0 in 1e-6f64..2.0, steps in 0u32..61) {
        let spec = IterationSpec::new(k, a, nu, x0).unwrap();
        let rec = recurrence_log(&spec, steps);
        let closed = closed_form_log(&spec, steps);
        let scale = rec[steps as usize].abs().max(1.0);
        prop_assert!((closed - rec[steps as usize]).abs() <= 1e-12 * scale);
    }

    #[test]
    fn small_start_decays_geometrically(k in 0.1f64..10.0, a in 1.01f64..8.0, nu in 0.1f64..2.0, frac in 0.0f64..1.0) {
        let mut spec = IterationSpec::new(k, a, nu, 1.0).unwrap();
        spec.x0 = frac * theta(&spec);
        let th = theta(&spec);
        for (j, x) in recurrence_log(&spec, 60).iter().enumerate() {
            let bound = th.ln() - j as f64 / nu * a.ln();
            prop_assert!(*x <= bound + 1e-12 * bound.abs().max(1.0));
        }
    }
}

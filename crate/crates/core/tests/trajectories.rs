//! Integrator behaviour on trajectories with known answers.

use dynprod_core::integrate::Diagnostics;
use dynprod_core::oracle::reference_schrodinger;
use dynprod_core::sampling::{
    generic_params, random_cvector, random_hermitian, random_positive_definite, random_state, StateScales,
};
use dynprod_core::special::{preset, pure_g_closed_form, Preset, PresetExtras};
use dynprod_core::{integrate, step_rk4, CMatrix, Error, FullState, IntegratorConfig, Method, Mode, ModelParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn generic(seed: u64) -> (FullState, ModelParams) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = generic_params(&mut rng, 2).with_alpha(2, 0.5).with_kappa(1.0);
    let s = random_state(&mut rng, 2, StateScales { g_dot: 0.1, psi: 1.0, psi_dot: 1.0, ..Default::default() });
    (s, p)
}

fn run(s: &FullState, p: &ModelParams, mode: Mode, dt: f64, t: f64) -> FullState {
    let steps = (t / dt).round() as usize;
    let mut s = s.clone();
    for _ in 0..steps {
        s = step_rk4(&s, p, mode, dt).unwrap();
    }
    s
}

fn distance(a: &FullState, b: &FullState) -> f64 {
    (&a.psi - &b.psi)
        .max_abs()
        .max((&a.psi_dot - &b.psi_dot).max_abs())
        .max((&a.g - &b.g).max_abs())
        .max((&a.g_dot - &b.g_dot).max_abs())
}

#[test]
fn observed_order_is_four() {
    for seed in 0..3 {
        let (s, p) = generic(seed);
        let dt = 0.04;
        let a = run(&s, &p, Mode::FullSecondOrder, dt, 2.0);
        let b = run(&s, &p, Mode::FullSecondOrder, dt / 2.0, 2.0);
        let c = run(&s, &p, Mode::FullSecondOrder, dt / 4.0, 2.0);
        let order = (distance(&a, &b) / distance(&b, &c)).log2();
        assert!((3.7..=4.3).contains(&order), "seed {seed}: order {order}");
    }
}

#[test]
fn pure_g_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in [2, 3] {
        for _ in 0..3 {
            let g0 = random_positive_definite(&mut rng, n, 0.5);
            let gd0 = random_hermitian(&mut rng, n, 0.5);
            let p = ModelParams::zero(n).with_alpha(6, 1.0).with_alpha(7, 0.2).with_alpha(3, 0.4);
            let s0 = FullState::new(
                random_cvector(&mut rng, n, 1.0),
                random_cvector(&mut rng, n, 1.0),
                g0.clone(),
                gd0.clone(),
            );
            let end = run(&s0, &p, Mode::PureG, 1e-3, 1.0);
            let exact = pure_g_closed_form(&g0, &gd0, 1.0).unwrap();
            assert!((&end.g - &exact.g).max_abs() <= 1e-6);
            assert!(exact.mismatch <= 1e-10);
            assert!((&(&exact.e * &g0) - &gd0).max_abs() < 1e-12);
            assert!((&(&g0 * &exact.e_prime) - &gd0).max_abs() < 1e-12);
        }
    }
}

#[test]
fn closed_form_solves_geodesic_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let g0 = random_positive_definite(&mut rng, 3, 0.5);
    let gd0 = random_hermitian(&mut rng, 3, 0.5);
    let h = 1e-2;
    let g = |t: f64| pure_g_closed_form(&g0, &gd0, t).unwrap().g;
    for t in [0.3, 1.0, 1.7] {
        let (m2, m1, c, p1, p2) = (g(t - 2.0 * h), g(t - h), g(t), g(t + h), g(t + 2.0 * h));
        let gdot = (&(&m2 - &p2) + &(&p1 - &m1).scale_re(8.0)).scale_re(1.0 / (12.0 * h));
        let gddot = (&(&(&p1 + &m1).scale_re(16.0) - &(&p2 + &m2)) - &c.scale_re(30.0)).scale_re(1.0 / (12.0 * h * h));
        let residual = &gddot - &(&(&gdot * &c.inverse().unwrap()) * &gdot);
        assert!(residual.max_abs() <= 1e-9, "t {t}: {:e}", residual.max_abs());
    }
}

#[test]
fn schrodinger_limit() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let h = random_hermitian(&mut rng, 3, 1.0);
    let ex = PresetExtras { hbar: Some(1.0), h: Some(h.clone()), ..Default::default() };
    let (p, mode) = preset(Preset::UsualSchrodinger, &ex).unwrap();
    let mut s0 = FullState::at_rest(3);
    s0.psi = random_cvector(&mut rng, 3, 1.0);
    let tr = integrate(&s0, &p, mode, &IntegratorConfig::default()).unwrap();
    let expected = reference_schrodinger(&s0.psi, &h, &CMatrix::identity(3), 1.0, 10.0).unwrap();
    assert!((&tr.last().state.psi - &expected).max_abs() <= 1e-8);
    assert!(tr.theta1_drift() <= 1e-10);
}

#[test]
fn hermitization_changes_less_than_the_step_error() {
    let (s, p) = generic(2);
    let base = IntegratorConfig { dt: 0.02, t_final: 2.0, ..Default::default() };
    let on = integrate(&s, &p, Mode::FullSecondOrder, &base).unwrap();
    let off =
        integrate(&s, &p, Mode::FullSecondOrder, &IntegratorConfig { hermitize_each_step: false, ..base.clone() })
            .unwrap();
    let fine = integrate(&s, &p, Mode::FullSecondOrder, &IntegratorConfig { dt: 0.01, ..base }).unwrap();
    let toggle = distance(&on.last().state, &off.last().state);
    let step_error = distance(&on.last().state, &fine.last().state);
    assert!(toggle < step_error, "{toggle:e} vs {step_error:e}");
}

#[test]
fn adaptive_agrees_with_fixed_step() {
    let (s, p) = generic(1);
    let fixed =
        integrate(&s, &p, Mode::FullSecondOrder, &IntegratorConfig { t_final: 2.0, ..Default::default() }).unwrap();
    let cfg = IntegratorConfig {
        t_final: 2.0,
        dt: 0.05,
        method: Method::Rk4Adaptive,
        rel_tol: 1e-10,
        record_every: 1,
        ..Default::default()
    };
    let adaptive = integrate(&s, &p, Mode::FullSecondOrder, &cfg).unwrap();
    assert_eq!(adaptive.last().state.t, 2.0);
    assert!(distance(&fixed.last().state, &adaptive.last().state) <= 1e-7);
    assert!(adaptive.samples.windows(2).all(|w| w[0].state.t < w[1].state.t));
}

#[test]
fn energy_is_conserved_on_a_short_run() {
    let (s, p) = generic(0);
    let tr =
        integrate(&s, &p, Mode::FullSecondOrder, &IntegratorConfig { t_final: 2.0, ..Default::default() }).unwrap();
    assert!(tr.energy_drift() <= 1e-6);
}

#[test]
fn charges_are_conserved_without_hamiltonian() {
    let (s, p) = generic(3);
    let p = p.with_alpha(5, 0.0);
    let tr =
        integrate(&s, &p, Mode::FullSecondOrder, &IntegratorConfig { t_final: 2.0, ..Default::default() }).unwrap();
    assert!(tr.v_drift() <= 1e-6 && tr.w_drift() <= 1e-6);
}

#[test]
fn first_order_modified_runs_and_conserves_energy() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let h = random_hermitian(&mut rng, 2, 1.0);
    let ex = PresetExtras { hbar: Some(1.0), h: Some(h), kappa: Some(0.3), ..Default::default() }
        .with_alpha(6, 1.0)
        .with_alpha(7, 0.2)
        .with_alpha(8, 0.1)
        .with_alpha(9, 0.1)
        .with_alpha(3, 0.3);
    let (p, mode) = preset(Preset::FirstOrderModified, &ex).unwrap();
    let s = random_state(&mut rng, 2, StateScales { g_dot: 0.1, ..Default::default() });
    let tr = integrate(&s, &p, mode, &IntegratorConfig { t_final: 2.0, ..Default::default() }).unwrap();
    assert!(tr.energy_drift() <= 1e-8);
}

#[test]
fn singular_parameters_stop_the_run() {
    let p = ModelParams::zero(2).with_alpha(2, 1.0);
    let err = integrate(&FullState::at_rest(2), &p, Mode::FullSecondOrder, &IntegratorConfig::default()).unwrap_err();
    match err {
        Error::StepFailure { t, reason } => {
            assert_eq!(t, 0.0);
            assert!(reason.contains("SingularParams: alpha6"), "{reason}");
        }
        e => panic!("unexpected {e}"),
    }
}

#[test]
fn diagnostics_track_g() {
    let (s, p) = generic(0);
    let tr =
        integrate(&s, &p, Mode::FullSecondOrder, &IntegratorConfig { t_final: 0.5, ..Default::default() }).unwrap();
    let Diagnostics { herm_defect, g_min_eig, g_condition } = tr.last().diagnostics;
    assert!(herm_defect < 1e-12);
    assert!(g_min_eig > 0.0 && g_condition >= 1.0);
}

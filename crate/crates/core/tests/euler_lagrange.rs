//! The analytic equations of motion against finite differences of `L`.

use dynprod_core::oracle::{euler_lagrange_residual, euler_lagrange_residual_with, Held, ResidualOptions};
use dynprod_core::sampling::{generic_params, random_state, StateScales};
use dynprod_core::{accelerations, Mode, ModelParams, PsiRate};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn held(mode: Mode) -> Held {
    match mode {
        Mode::FixedG => Held::G,
        Mode::PureG => Held::Psi,
        _ => Held::Nothing,
    }
}

fn params_for(mode: Mode, base: ModelParams) -> ModelParams {
    match mode {
        Mode::FirstOrderPsi => base.with_alpha(2, 0.0),
        _ => base,
    }
}

fn residual(mode: Mode, seed: u64, h: f64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = params_for(mode, generic_params(&mut rng, 2));
    let s = random_state(&mut rng, 2, StateScales::default());
    let a = accelerations(&s, &p, mode).unwrap();
    let opt = ResidualOptions { h, held: held(mode), ..Default::default() };
    euler_lagrange_residual_with(&s, &a, &p, opt).unwrap()
}

#[test]
fn every_mode_satisfies_the_variational_equations() {
    for mode in Mode::ALL {
        for seed in 0..10 {
            for h in [1e-5, 2e-5] {
                let r = residual(mode, seed, h);
                assert!(r <= 1e-6, "{} seed {seed} h {h}: residual {r:e}", mode.name());
            }
        }
    }
}

#[test]
fn first_order_mode_also_fixed_g_with_zero_alpha2() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let p = generic_params(&mut rng, 3).with_alpha(2, 0.0);
    let s = random_state(&mut rng, 3, StateScales::default());
    let a = accelerations(&s, &p, Mode::FixedG).unwrap();
    assert!(matches!(a.psi, PsiRate::Velocity(_)));
    let opt = ResidualOptions { held: Held::G, ..Default::default() };
    assert!(euler_lagrange_residual_with(&s, &a, &p, opt).unwrap() <= 1e-6);
}

#[test]
fn perturbation_is_detected() {
    for mode in Mode::ALL {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = params_for(mode, generic_params(&mut rng, 2));
        let s = random_state(&mut rng, 2, StateScales::default());
        let mut a = accelerations(&s, &p, mode).unwrap();
        match &mut a.psi {
            PsiRate::Acceleration(v) | PsiRate::Velocity(v) => v[0].re += 0.1,
            PsiRate::Frozen => a.g_ddot[(0, 0)].re += 0.1,
        }
        let opt = ResidualOptions { held: held(mode), ..Default::default() };
        let r = euler_lagrange_residual_with(&s, &a, &p, opt).unwrap();
        assert!(r >= 1e-2, "{}: residual {r:e}", mode.name());
    }
}

#[test]
fn default_entry_point_checks_everything() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let p = generic_params(&mut rng, 2);
    let s = random_state(&mut rng, 2, StateScales::default());
    let a = accelerations(&s, &p, Mode::FullSecondOrder).unwrap();
    assert!(euler_lagrange_residual(&s, &a, &p).unwrap() <= 1e-6);
}

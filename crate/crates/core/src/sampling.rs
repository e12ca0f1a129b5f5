//! Random instances for property checks and verification runs.
//!
//! Generic parameters are drawn from ranges that keep every denominator of
//! the analytic inverse away from zero (`α₆ > 0`, `α₇, α₈, α₉ ≥ 0`, `G`
//! positive definite), so the instances are well conditioned by construction.

use rand::Rng;

use crate::algebra::{CMatrix, CVector};
use crate::model::{FullState, ModelParams};
use crate::C64;

pub fn random_cvector<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> CVector {
    CVector::from_vec((0..n).map(|_| C64::new(rng.gen_range(-scale..=scale), rng.gen_range(-scale..=scale))).collect())
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> CMatrix {
    CMatrix::from_fn(n, |_, _| C64::new(rng.gen_range(-scale..=scale), rng.gen_range(-scale..=scale)))
}

/// Hermitian matrix with entries of size about `scale`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> CMatrix {
    let a = random_matrix(rng, n, scale);
    crate::hermitize(&a).0
}

/// `BB†/n + min_eig·I` with `B` uniform in the unit box.
pub fn random_positive_definite<R: Rng + ?Sized>(rng: &mut R, n: usize, min_eig: f64) -> CMatrix {
    let b = random_matrix(rng, n, 1.0);
    let mut g = (&b * &b.adjoint()).scale_re(1.0 / n as f64);
    g += &CMatrix::identity(n).scale_re(min_eig);
    crate::hermitize(&g).0
}

/// Magnitudes used by [`random_state`].
#[derive(Debug, Clone, Copy)]
pub struct StateScales {
    pub psi: f64,
    pub psi_dot: f64,
    pub g_min_eig: f64,
    pub g_dot: f64,
}

impl Default for StateScales {
    fn default() -> Self {
        Self { psi: 0.6, psi_dot: 0.5, g_min_eig: 0.5, g_dot: 0.4 }
    }
}

pub fn random_state<R: Rng + ?Sized>(rng: &mut R, n: usize, sc: StateScales) -> FullState {
    FullState::new(
        random_cvector(rng, n, sc.psi),
        random_cvector(rng, n, sc.psi_dot),
        random_positive_definite(rng, n, sc.g_min_eig),
        random_hermitian(rng, n, sc.g_dot),
    )
}

/// Generic constants with `α₂ ≠ 0` and a positive definite `Ω`.
pub fn generic_params<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ModelParams {
    let alpha = [
        rng.gen_range(0.2..1.0),
        rng.gen_range(0.5..1.5),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..0.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(0.5..1.5),
        rng.gen_range(0.0..0.5),
        rng.gen_range(0.0..0.5),
        rng.gen_range(0.0..0.5),
    ];
    let kappa = rng.gen_range(0.0..0.5);
    let h = random_hermitian(rng, n, 1.0);
    ModelParams::new(alpha, kappa, 1.0, h).expect("hermitian H by construction")
}

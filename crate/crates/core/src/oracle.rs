//! Brute-force reference computations.
//!
//! Nothing here calls into the equations of motion or the analytic inverse:
//! the only model entry points used are [`build_omega`] and the scalar
//! [`lagrangian`]. Agreement between these routines and the analytic paths
//! is what the test suites check.

use alloc::vec::Vec;

use crate::algebra::{flatten4, mat_exp, unflatten4, CMatrix, CVector, Rank4};
use crate::dynamics::{Accelerations, PsiRate};
use crate::model::{build_omega, lagrangian, FullState, ModelParams};
use crate::{Error, Result, C64};

/// Largest condition number accepted by [`brute_force_omega_inverse`].
pub const MAX_CONDITION: f64 = 1e10;

/// Dense inverse of the `n² × n²` flattening of `Ω`.
pub fn brute_force_omega_inverse(s: &FullState, p: &ModelParams) -> Result<Rank4> {
    let flat = flatten4(&build_omega(s, p)?);
    let inv = flat.inverse()?;
    let cond = flat.norm1() * inv.norm1();
    if !(cond <= MAX_CONDITION) {
        return Err(Error::IllConditioned { what: "flattened omega", value: cond });
    }
    unflatten4(&inv)
}

/// `exp(−i G⁻¹H t/ħ) ψ₀`.
pub fn reference_schrodinger(psi0: &CVector, h: &CMatrix, g: &CMatrix, hbar: f64, t: f64) -> Result<CVector> {
    let gen = (&g.inverse()? * h).scale(C64::new(0.0, -1.0 / hbar));
    Ok(mat_exp(&gen, t).mul_vec(psi0))
}

/// Which variables are held fixed when forming the residual.
///
/// A held variable has zero velocity and acceleration and its own
/// Euler–Lagrange equations are not checked (they are constraint forces).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Held {
    #[default]
    Nothing,
    Psi,
    G,
}

#[derive(Debug, Clone, Copy)]
pub struct ResidualOptions {
    /// Step of the inner central differences in `q` and `q̇`.
    pub h: f64,
    /// Step of the outer time derivative along the trajectory.
    pub dt: f64,
    pub held: Held,
}

impl Default for ResidualOptions {
    fn default() -> Self {
        Self { h: 1e-5, dt: 2e-3, held: Held::Nothing }
    }
}

/// Max-norm Euler–Lagrange residual with nothing held fixed.
///
/// `ψ̇` is taken from `a` when it carries a first-order velocity and is set
/// to zero when `ψ` is frozen; otherwise it comes from `s`.
pub fn euler_lagrange_residual(s: &FullState, a: &Accelerations, p: &ModelParams) -> Result<f64> {
    let held = if matches!(a.psi, PsiRate::Frozen) { Held::Psi } else { Held::Nothing };
    euler_lagrange_residual_with(s, a, p, ResidualOptions { held, ..Default::default() })
}

/// `max_k |d/dt ∂L/∂q̇_k − ∂L/∂q_k|` over the real coordinates `q` of the
/// free variables, every derivative taken by finite differences of `L`.
///
/// Coordinates are `(Re ψ_a, Im ψ_a)` and, for `G`, the diagonal entries
/// followed by `(Re G_ab, Im G_ab)` for `a < b`.
pub fn euler_lagrange_residual_with(
    s: &FullState,
    a: &Accelerations,
    p: &ModelParams,
    opt: ResidualOptions,
) -> Result<f64> {
    let n = p.n();
    s.validate(n)?;
    let zero_v = CVector::zeros(n);
    let zero_m = CMatrix::zeros(n);
    let (psi_dot, psi_ddot) = match (&a.psi, opt.held) {
        (_, Held::Psi) | (PsiRate::Frozen, _) => (zero_v.clone(), zero_v.clone()),
        (PsiRate::Velocity(v), _) => (v.clone(), zero_v.clone()),
        (PsiRate::Acceleration(acc), _) => (s.psi_dot.clone(), acc.clone()),
    };
    let (g_dot, g_ddot) =
        if opt.held == Held::G { (zero_m.clone(), zero_m.clone()) } else { (s.g_dot.clone(), a.g_ddot.clone()) };

    let q = pack(&s.psi, &s.g);
    let v = pack(&psi_dot, &g_dot);
    let acc = pack(&psi_ddot, &g_ddot);
    let psi_len = 2 * n;
    let free: Vec<usize> = match opt.held {
        Held::Nothing => (0..q.len()).collect(),
        Held::Psi => (psi_len..q.len()).collect(),
        Held::G => (0..psi_len).collect(),
    };

    let lag = |x: &[f64], xd: &[f64]| -> Result<f64> {
        let (psi, g) = unpack(x, n);
        let (pd, gd) = unpack(xd, n);
        lagrangian(&FullState::new(psi, pd, g, gd), p)
    };
    let shifted =
        |base: &[f64], dir: &[f64], eps: f64| -> Vec<f64> { base.iter().zip(dir).map(|(b, d)| b + eps * d).collect() };
    // ∂L/∂q̇_k at the point reached after time `eps` along (q̇, q̈).
    let momentum = |k: usize, eps: f64| -> Result<f64> {
        let x = shifted(&q, &v, eps);
        let mut xd = shifted(&v, &acc, eps);
        let base = xd[k];
        xd[k] = base + opt.h;
        let plus = lag(&x, &xd)?;
        xd[k] = base - opt.h;
        let minus = lag(&x, &xd)?;
        Ok((plus - minus) / (2.0 * opt.h))
    };

    let mut worst = 0.0f64;
    for &k in &free {
        let d = opt.dt;
        let dmom = (momentum(k, -2.0 * d)? - 8.0 * momentum(k, -d)? + 8.0 * momentum(k, d)? - momentum(k, 2.0 * d)?)
            / (12.0 * d);
        let mut x = q.clone();
        x[k] = q[k] + opt.h;
        let plus = lag(&x, &v)?;
        x[k] = q[k] - opt.h;
        let minus = lag(&x, &v)?;
        let force = (plus - minus) / (2.0 * opt.h);
        worst = worst.max((dmom - force).abs());
    }
    Ok(worst)
}

fn pack(psi: &CVector, g: &CMatrix) -> Vec<f64> {
    let n = psi.len();
    let mut out = Vec::with_capacity(2 * n + n * n);
    for z in psi.iter() {
        out.push(z.re);
        out.push(z.im);
    }
    for a in 0..n {
        out.push(g[(a, a)].re);
        for b in a + 1..n {
            out.push(g[(a, b)].re);
            out.push(g[(a, b)].im);
        }
    }
    out
}

fn unpack(x: &[f64], n: usize) -> (CVector, CMatrix) {
    let psi = CVector::from_vec((0..n).map(|a| C64::new(x[2 * a], x[2 * a + 1])).collect());
    let mut g = CMatrix::zeros(n);
    let mut i = 2 * n;
    for a in 0..n {
        g[(a, a)] = C64::new(x[i], 0.0);
        i += 1;
        for b in a + 1..n {
            let z = C64::new(x[i], x[i + 1]);
            g[(a, b)] = z;
            g[(b, a)] = z.conj();
            i += 2;
        }
    }
    (psi, g)
}

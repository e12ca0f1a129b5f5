//! Equations of motion, the canonical picture, energy and `GL(n, ℂ)` charges.
//!
//! Writing `K = G⁻¹ + α₉ψψ†`, `ω = Ω(Ġ)` (contravariant) and
//!
//! ```text
//! S = (2κθ₁ − α₄) G − α₅ H − (α₃α₉ + iα₁) Ġ − 2α₈ (ψ†Ġψ) Ġ − 2α₉ (α₆ ĠKĠ + α₇ tr(KĠ) Ġ),
//! ```
//!
//! the `ψ̄` equation reads `α₂ Gψ̈ + (α₂Ġ − 2iα₁G) ψ̇ + Sψ = 0` and the `G`
//! equation reads
//!
//! ```text
//! 2 Ω(G̈) = −2 Ω̇(Ġ) − α₃α₉ (ψ̇ψ† + ψψ̇†) + iα₁ (ψ̇ψ† − ψψ̇†) + α₂ ψ̇ψ̇†
//!          + (α₄ − 2κθ₁) ψψ† − 2 G⁻¹ (α₆ ĠKĠ + α₇ tr(KĠ) Ġ) G⁻¹,
//! ```
//!
//! both sides contravariant. The `α₃ G⁻¹ĠG⁻¹` pieces of `d/dt ∂L/∂Ġ` and
//! `∂L/∂G` cancel, which is why `α₃` only survives through `α₃α₉`.

use crate::algebra::{apply4, hermitize, CMatrix, CVector, Rank4};
use crate::model::{self, check_denominator, real_part, FullState, Geometry, ModelParams, DENOMINATOR_TOL};
use crate::{Error, Result, C64};

/// Largest hermiticity defect tolerated on a freshly solved `G̈` (relative to
/// its size) before the step is aborted.
pub const ACCELERATION_HERMITIAN_TOL: f64 = 1e-8;

/// Which system of equations is being solved.
///
/// The mode is never inferred from the parameters: `α₂ = 0` changes the
/// phase-space structure, so using the wrong mode is an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Both equations, second order in `ψ` and `G`. Needs `α₂ ≠ 0`.
    FullSecondOrder,
    /// `α₂ = 0`: `ψ` is first order (the modified Schrödinger equation),
    /// `G` is second order.
    FirstOrderPsi,
    /// `G` held fixed (`Ġ = 0`); only the `ψ` equation is solved. First order
    /// in `ψ` when `α₂ = 0`.
    FixedG,
    /// `ψ` held fixed (`ψ̇ = 0`); only the `G` equation is solved.
    PureG,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::FullSecondOrder, Mode::FirstOrderPsi, Mode::FixedG, Mode::PureG];

    pub fn name(self) -> &'static str {
        match self {
            Mode::FullSecondOrder => "FullSecondOrder",
            Mode::FirstOrderPsi => "FirstOrderPsi",
            Mode::FixedG => "FixedG",
            Mode::PureG => "PureG",
        }
    }

    pub fn evolves_g(self) -> bool {
        matches!(self, Mode::FullSecondOrder | Mode::FirstOrderPsi | Mode::PureG)
    }

    pub fn evolves_psi(self) -> bool {
        !matches!(self, Mode::PureG)
    }
}

/// Rate of change of `ψ` produced by [`accelerations`].
#[derive(Debug, Clone, PartialEq)]
pub enum PsiRate {
    /// `ψ̈` of a second-order equation.
    Acceleration(CVector),
    /// `ψ̇` of a first-order equation (`α₂ = 0`).
    Velocity(CVector),
    /// `ψ` does not evolve in this mode.
    Frozen,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Accelerations {
    pub psi: PsiRate,
    /// `G̈_{āb}`; zero when `G` is held fixed.
    pub g_ddot: CMatrix,
}

impl Accelerations {
    /// `ψ̈`, or zero for first-order and frozen `ψ`.
    pub fn psi_ddot(&self) -> CVector {
        match &self.psi {
            PsiRate::Acceleration(a) => a.clone(),
            _ => CVector::zeros(self.g_ddot.dim()),
        }
    }
}

/// Solves the equations of motion selected by `mode` at `s`.
///
/// Modes that hold a variable fixed ignore the corresponding velocity in `s`
/// (`Ġ` for [`Mode::FixedG`], `ψ̇` for [`Mode::PureG`]) and treat it as zero.
/// In [`Mode::FirstOrderPsi`] the `ψ̇` stored in `s` is ignored too: it is
/// recomputed from the first-order equation and fed into the `G` equation.
pub fn accelerations(s: &FullState, p: &ModelParams, mode: Mode) -> Result<Accelerations> {
    let n = p.n();
    match mode {
        Mode::FullSecondOrder => {
            if p.psi_kinetic_degenerate() {
                return Err(Error::ModeParamMismatch("FullSecondOrder requires alpha2 != 0"));
            }
            let geo = Geometry::new(s, p)?;
            let psi_ddot = psi_second_order(&geo, s, p)?;
            let g_ddot = g_acceleration(&geo, s, p)?;
            Ok(Accelerations { psi: PsiRate::Acceleration(psi_ddot), g_ddot })
        }
        Mode::FirstOrderPsi => {
            if !p.psi_kinetic_degenerate() {
                return Err(Error::ModeParamMismatch("FirstOrderPsi requires alpha2 = 0"));
            }
            let geo = Geometry::new(s, p)?;
            let psi_dot = psi_first_order(&geo, s, p)?;
            let mut s1 = s.clone();
            s1.psi_dot = psi_dot.clone();
            let g_ddot = g_acceleration(&geo, &s1, p)?;
            Ok(Accelerations { psi: PsiRate::Velocity(psi_dot), g_ddot })
        }
        Mode::FixedG => {
            let mut s1 = s.clone();
            s1.g_dot = CMatrix::zeros(n);
            let geo = Geometry::new(&s1, p)?;
            let psi = if p.psi_kinetic_degenerate() {
                PsiRate::Velocity(psi_first_order(&geo, &s1, p)?)
            } else {
                PsiRate::Acceleration(psi_second_order(&geo, &s1, p)?)
            };
            Ok(Accelerations { psi, g_ddot: CMatrix::zeros(n) })
        }
        Mode::PureG => {
            let mut s1 = s.clone();
            s1.psi_dot = CVector::zeros(n);
            let geo = Geometry::new(&s1, p)?;
            let g_ddot = g_acceleration(&geo, &s1, p)?;
            Ok(Accelerations { psi: PsiRate::Frozen, g_ddot })
        }
    }
}

/// The matrix `S` of the module docs: `Sψ` collects every non-derivative term
/// of the `ψ̄` equation.
pub(crate) fn psi_force_matrix(geo: &Geometry, s: &FullState, p: &ModelParams) -> CMatrix {
    let i = C64::new(0.0, 1.0);
    let (a1, a3, a4, a5) = (p.alpha(1), p.alpha(3), p.alpha(4), p.alpha(5));
    let (a6, a7, a8, a9) = (p.alpha(6), p.alpha(7), p.alpha(8), p.alpha(9));
    let gd = &s.g_dot;
    let kgd = &geo.k * gd;
    let gdkgd = gd * &kgd;
    let quartic = s.psi.dot(&gd.mul_vec(&s.psi));

    let mut m = s.g.scale_re(2.0 * p.kappa * geo.theta1 - a4);
    m -= &p.h().scale_re(a5);
    m -= &gd.scale(C64::new(a3 * a9, 0.0) + i * a1);
    m -= &gd.scale(quartic * (2.0 * a8));
    m -= &(&gdkgd.scale_re(a6) + &gd.scale(kgd.trace() * a7)).scale_re(2.0 * a9);
    m
}

fn psi_second_order(geo: &Geometry, s: &FullState, p: &ModelParams) -> Result<CVector> {
    let i = C64::new(0.0, 1.0);
    let a2 = p.alpha(2);
    let damping = &s.g_dot.scale_re(a2) - &s.g.scale(i * (2.0 * p.alpha(1)));
    let force = psi_force_matrix(geo, s, p).mul_vec(&s.psi);
    let rhs = &damping.mul_vec(&s.psi_dot) + &force;
    Ok(geo.ginv.mul_vec(&rhs).scale(C64::new(-1.0 / a2, 0.0)))
}

/// `2iα₁ G ψ̇ = S ψ`.
fn psi_first_order(geo: &Geometry, s: &FullState, p: &ModelParams) -> Result<CVector> {
    let a1 = check_denominator(p.alpha(1), "alpha1")?;
    let force = psi_force_matrix(geo, s, p).mul_vec(&s.psi);
    Ok(geo.ginv.mul_vec(&force).scale(C64::new(0.0, -1.0 / (2.0 * a1))))
}

/// Contravariant right-hand side of the `G` equation, divided by two, in pair layout.
fn g_source(geo: &Geometry, s: &FullState, p: &ModelParams) -> Result<CMatrix> {
    let i = C64::new(0.0, 1.0);
    let (a1, a2, a3, a4) = (p.alpha(1), p.alpha(2), p.alpha(3), p.alpha(4));
    let (a6, a7, a9) = (p.alpha(6), p.alpha(7), p.alpha(9));
    let (psi, psid, gd) = (&s.psi, &s.psi_dot, &s.g_dot);

    let omega_dot = model::omega_dot_from(geo, s, p);
    let wdot = apply4(&omega_dot, gd)?.transpose();

    let dp = psid.outer(psi);
    let pd = psi.outer(psid);
    let kgd = &geo.k * gd;
    let inner = &(gd * &kgd).scale_re(a6) + &gd.scale(kgd.trace() * a7);
    let curvature = &(&geo.ginv * &inner) * &geo.ginv;

    let mut r = wdot.scale_re(-2.0);
    r -= &(&dp + &pd).scale_re(a3 * a9);
    r += &(&dp - &pd).scale(i * a1);
    r += &psid.outer(psid).scale_re(a2);
    r += &psi.outer(psi).scale_re(a4 - 2.0 * p.kappa * geo.theta1);
    r -= &curvature.scale_re(2.0);
    Ok(r.scale_re(0.5).transpose())
}

fn g_acceleration(geo: &Geometry, s: &FullState, p: &ModelParams) -> Result<CMatrix> {
    let inv = omega_inverse(geo, s, p)?;
    let raw = apply4(&inv, &g_source(geo, s, p)?)?;
    let (g_ddot, defect) = hermitize(&raw);
    let tol = ACCELERATION_HERMITIAN_TOL * model::conditioning_slack(geo, s);
    if !(defect <= tol * (1.0 + raw.max_abs())) {
        return Err(Error::NotHermitian { what: "Gddot", defect });
    }
    Ok(g_ddot)
}

fn omega_inverse(geo: &Geometry, s: &FullState, p: &ModelParams) -> Result<Rank4> {
    model::omega_inverse_checked(geo, s, p)
}

/// Canonical variables `(π_b, π̄_ā, π^{āb})` conjugate to `(ψ, ψ̄, G)`.
///
/// `pi_g` is in pair layout: `pi_g[a][b] = π^{āb}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalState {
    pub t: f64,
    pub psi: CVector,
    pub pi: CVector,
    pub pi_bar: CVector,
    pub g: CMatrix,
    pub pi_g: CMatrix,
}

/// `K` in pair layout (`K^{bā}` at `[a][b]`).
fn k_pair(geo: &Geometry) -> CMatrix {
    geo.k.transpose()
}

/// `π_b = α₂ G_{āb} ψ̄̇ᵃ + iα₁ G_{āb} ψ̄ᵃ`, `π̄_ā = α₂ G_{āb} ψ̇ᵇ − iα₁ G_{āb} ψᵇ`,
/// `π^{āb} = α₃ K^{bā} + 2 Ω^{bādc̄} Ġ_{c̄d}`.
pub fn legendre(s: &FullState, p: &ModelParams) -> Result<CanonicalState> {
    let geo = Geometry::new(s, p)?;
    let i = C64::new(0.0, 1.0);
    let (a1, a2) = (p.alpha(1), p.alpha(2));
    let row = &s.psi_dot.conj().scale(C64::new(a2, 0.0)) + &s.psi.conj().scale(i * a1);
    let pi = s.g.vec_mul(&row);
    let col = &s.psi_dot.scale(C64::new(a2, 0.0)) - &s.psi.scale(i * a1);
    let pi_bar = s.g.mul_vec(&col);
    let omega = model::omega_from(&geo, s, p);
    let pi_g = &k_pair(&geo).scale_re(p.alpha(3)) + &apply4(&omega, &s.g_dot)?.scale_re(2.0);
    Ok(CanonicalState { t: s.t, psi: s.psi.clone(), pi, pi_bar, g: s.g.clone(), pi_g })
}

fn configuration(c: &CanonicalState) -> FullState {
    let n = c.psi.len();
    FullState { t: c.t, psi: c.psi.clone(), psi_dot: CVector::zeros(n), g: c.g.clone(), g_dot: CMatrix::zeros(n) }
}

/// Inverse Legendre map; needs `α₂ ≠ 0` and an invertible `Ω`.
pub fn legendre_inverse(c: &CanonicalState, p: &ModelParams) -> Result<FullState> {
    if p.alpha(2).abs() <= DENOMINATOR_TOL {
        return Err(Error::DegenerateLegendre);
    }
    let mut s = configuration(c);
    let geo = Geometry::new(&s, p)?;
    let (a1, a2) = (p.alpha(1), p.alpha(2));
    let i = C64::new(0.0, 1.0);
    s.psi_dot = (&geo.ginv.mul_vec(&c.pi_bar) + &c.psi.scale(i * a1)).scale(C64::new(1.0 / a2, 0.0));
    let inv = omega_inverse(&geo, &s, p)?;
    let shifted = &c.pi_g - &k_pair(&geo).scale_re(p.alpha(3));
    let (g_dot, _) = hermitize(&apply4(&inv, &shifted)?.scale_re(0.5));
    s.g_dot = g_dot;
    Ok(s)
}

/// `E = α₂ ψ̇†Gψ̇ − (α₄G + α₅H)_{āb} ψ̄ᵃψᵇ + Ω(Ġ, Ġ) + κθ₁²`.
pub fn energy(s: &FullState, p: &ModelParams) -> Result<f64> {
    let geo = Geometry::new(s, p)?;
    let omega = model::omega_from(&geo, s, p);
    energy_with(&geo, &omega, s, p)
}

fn energy_with(geo: &Geometry, omega: &Rank4, s: &FullState, p: &ModelParams) -> Result<f64> {
    let kinetic_psi = s.psi_dot.dot(&s.g.mul_vec(&s.psi_dot)) * p.alpha(2);
    let linear = s.psi.dot(&s.g.mul_vec(&s.psi)) * p.alpha(4) + s.psi.dot(&p.h().mul_vec(&s.psi)) * p.alpha(5);
    let image = apply4(omega, &s.g_dot)?;
    let kinetic_g = s.g_dot.contract(&image);
    let potential = p.kappa * geo.theta1 * geo.theta1;
    let scale = kinetic_psi.norm()
        + linear.norm()
        + s.g_dot.as_slice().iter().zip(image.as_slice()).map(|(a, b)| a.norm() * b.norm()).sum::<f64>()
        + potential.abs();
    let scale = scale * model::conditioning_slack(geo, s);
    real_part(kinetic_psi - linear + kinetic_g + potential, scale, "energy")
}

/// Hamiltonian on the canonical variables; equals [`energy`] composed with
/// [`legendre_inverse`]. The `α₁` cross term is read with `π_b` as the momentum
/// conjugate to `ψᵇ`.
pub fn hamiltonian(c: &CanonicalState, p: &ModelParams) -> Result<f64> {
    if p.alpha(2).abs() <= DENOMINATOR_TOL {
        return Err(Error::DegenerateLegendre);
    }
    let s = configuration(c);
    let geo = Geometry::new(&s, p)?;
    let inv = omega_inverse(&geo, &s, p)?;
    let i = C64::new(0.0, 1.0);
    let (a1, a2, a3, a4, a5) = (p.alpha(1), p.alpha(2), p.alpha(3), p.alpha(4), p.alpha(5));
    let pi_ginv_pibar: C64 = c.pi.iter().zip(geo.ginv.mul_vec(&c.pi_bar).iter()).map(|(a, b)| a * b).sum();
    let psi_pi: C64 = c.psi.iter().zip(c.pi.iter()).map(|(a, b)| a * b).sum();
    let psibar_pibar: C64 = c.psi.iter().zip(c.pi_bar.iter()).map(|(a, b)| a.conj() * b).sum();
    let h_psi = c.psi.dot(&p.h().mul_vec(&c.psi));
    let kp = k_pair(&geo);
    let inv_pi = apply4(&inv, &c.pi_g)?;
    let inv_k = apply4(&inv, &kp)?;

    let terms = [
        pi_ginv_pibar / a2,
        (psi_pi - psibar_pibar) * i * (a1 / a2),
        -(C64::new((a4 - a1 * a1 / a2) * geo.theta1, 0.0) + h_psi * a5),
        c.pi_g.contract(&inv_pi) * 0.25,
        -kp.contract(&inv_pi) * (a3 / 2.0),
        kp.contract(&inv_k) * (a3 * a3 / 4.0),
        C64::new(p.kappa * geo.theta1 * geo.theta1, 0.0),
    ];
    let total: C64 = terms.iter().sum();
    let scale = terms.iter().map(|z| z.norm()).sum::<f64>();
    real_part(total, scale, "hamiltonian")
}

/// Energy and the charge tensors `V`, `W` relative to a reference product `G₀`.
///
/// For a `G₀`-hermitian generator `A = G₀⁻¹Ã` the Noether charge is `Tr(VÃ)`;
/// for a `G₀`-antihermitian one it is `Tr(iWÃ)`. Both are conserved when
/// `α₅ = 0`. The stored `v` and `w` are hermitized; the defects removed by
/// that step are reported alongside.
#[derive(Debug, Clone, PartialEq)]
pub struct NoetherCharges {
    pub energy: f64,
    pub v: CMatrix,
    pub w: CMatrix,
    pub g0: CMatrix,
    pub v_defect: f64,
    pub w_defect: f64,
}

pub fn noether_charges(s: &FullState, p: &ModelParams, g0: &CMatrix) -> Result<NoetherCharges> {
    let defect = g0.hermiticity_defect();
    if defect > model::HERMITIAN_TOL * (1.0 + g0.max_abs()) {
        return Err(Error::NotHermitian { what: "G0", defect });
    }
    let g0inv = g0.inverse().map_err(|_| Error::Singular("G0"))?;
    let geo = Geometry::new(s, p)?;
    let omega = model::omega_from(&geo, s, p);
    let energy = energy_with(&geo, &omega, s, p)?;
    let w_contra = apply4(&omega, &s.g_dot)?.transpose();

    let i = C64::new(0.0, 1.0);
    let (a1, a2, a3, a9) = (p.alpha(1), p.alpha(2), p.alpha(3), p.alpha(9));
    let (psi, psid) = (&s.psi, &s.psi_dot);
    let g_g0inv = &s.g * &g0inv;
    let g0inv_g = &g0inv * &s.g;

    let left = &psi.outer(psid) * &g_g0inv; // ψψ̇†GG₀⁻¹
    let right = &g0inv_g * &psid.outer(psi); // G₀⁻¹Gψ̇ψ†
    let pp_left = &psi.outer(psi) * &g_g0inv; // ψψ†GG₀⁻¹
    let pp_right = &g0inv_g * &psi.outer(psi); // G₀⁻¹Gψψ†
    let om_left = &g0inv_g * &w_contra; // G₀⁻¹Gω
    let om_right = &w_contra * &g_g0inv; // ωGG₀⁻¹
    let c_plus = i * a1 - a3 * a9;
    let c_minus = i * a1 + a3 * a9;

    let mut v = (&left + &right).scale_re(a2);
    v += &pp_left.scale(c_plus);
    v -= &pp_right.scale(c_minus);
    v -= &g0inv.scale_re(2.0 * a3);
    v -= &(&om_left + &om_right).scale_re(2.0);

    let mut iw = (&left - &right).scale_re(a2);
    iw += &pp_left.scale(c_plus);
    iw += &pp_right.scale(c_minus);
    iw += &(&om_left - &om_right).scale_re(2.0);
    let w_raw = iw.scale(-i);

    let (v, v_defect) = hermitize(&v);
    let (w, w_defect) = hermitize(&w_raw);
    Ok(NoetherCharges { energy, v, w, g0: g0.clone(), v_defect, w_defect })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn diag_state(psi: &[f64], g: &[f64]) -> FullState {
        let n = psi.len();
        FullState::new(CVector::from_real(psi), CVector::zeros(n), CMatrix::from_real_diag(g), CMatrix::zeros(n))
    }

    #[test]
    fn pure_g_geodesic_example() {
        let p = ModelParams::zero(2).with_alpha(6, 1.0);
        let mut s = diag_state(&[0.0, 0.0], &[1.0, 1.0]);
        s.g_dot = CMatrix::from_real_diag(&[1.0, 2.0]);
        let acc = accelerations(&s, &p, Mode::PureG).unwrap();
        assert!((&acc.g_ddot - &CMatrix::from_real_diag(&[1.0, 4.0])).max_abs() < 1e-14);
        assert_eq!(acc.psi, PsiRate::Frozen);
    }

    #[test]
    fn fixed_g_usual_schrodinger() {
        let p = ModelParams::zero(2)
            .with_alpha(1, 0.5)
            .with_alpha(5, -1.0)
            .with_h(CMatrix::from_real_diag(&[1.0, 2.0]))
            .unwrap();
        let s = diag_state(&[1.0, 0.0], &[1.0, 1.0]);
        let acc = accelerations(&s, &p, Mode::FixedG).unwrap();
        let PsiRate::Velocity(v) = acc.psi else { panic!("expected first-order rate") };
        assert!((v[0] - C64::new(0.0, -1.0)).norm() < 1e-15 && v[1].norm() < 1e-15);
    }

    #[test]
    fn mode_mismatch_is_an_error() {
        let p = ModelParams::zero(2).with_alpha(6, 1.0);
        let s = diag_state(&[0.1, 0.2], &[1.0, 1.0]);
        assert!(matches!(accelerations(&s, &p, Mode::FullSecondOrder), Err(Error::ModeParamMismatch(_))));
        let p = p.with_alpha(2, 1.0);
        assert!(matches!(accelerations(&s, &p, Mode::FirstOrderPsi), Err(Error::ModeParamMismatch(_))));
    }

    #[test]
    fn missing_omega_inverse_names_alpha6() {
        let p = ModelParams::zero(2).with_alpha(2, 1.0);
        let s = diag_state(&[0.1, 0.2], &[1.0, 1.0]);
        assert_eq!(accelerations(&s, &p, Mode::FullSecondOrder), Err(Error::SingularParams("alpha6")));
    }

    #[test]
    fn legendre_scalar_first_order() {
        let p = ModelParams::zero(1).with_alpha(1, 0.5).with_alpha(6, 1.0);
        let c = legendre(&diag_state(&[1.0], &[1.0]), &p).unwrap();
        assert!((c.pi[0] - C64::new(0.0, 0.5)).norm() < 1e-15);
        assert!((c.pi_bar[0] - C64::new(0.0, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn legendre_momentum_of_g_at_rest() {
        let p = ModelParams::zero(2).with_alpha(3, 1.0).with_alpha(6, 1.0);
        let g = CMatrix::from_rows(&[
            vec![C64::new(2.0, 0.0), C64::new(0.3, 0.4)],
            vec![C64::new(0.3, -0.4), C64::new(1.0, 0.0)],
        ])
        .unwrap();
        let s = FullState::new(CVector::zeros(2), CVector::zeros(2), g.clone(), CMatrix::zeros(2));
        let c = legendre(&s, &p).unwrap();
        assert!((&c.pi_g - &g.inverse().unwrap().transpose()).max_abs() < 1e-15);
    }

    #[test]
    fn legendre_inverse_scalar() {
        let p = ModelParams::zero(1).with_alpha(2, 1.0).with_alpha(6, 1.0);
        let one = CVector::from_real(&[1.0]);
        let c = CanonicalState {
            t: 0.0,
            psi: CVector::zeros(1),
            pi: one.clone(),
            pi_bar: one,
            g: CMatrix::identity(1),
            pi_g: CMatrix::zeros(1),
        };
        let s = legendre_inverse(&c, &p).unwrap();
        assert!((s.psi_dot[0].conj() - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(s.g_dot, CMatrix::zeros(1));
    }

    #[test]
    fn degenerate_legendre() {
        let p = ModelParams::zero(1).with_alpha(6, 1.0);
        let c = legendre(&diag_state(&[1.0], &[1.0]), &p).unwrap();
        assert_eq!(legendre_inverse(&c, &p), Err(Error::DegenerateLegendre));
        assert_eq!(hamiltonian(&c, &p), Err(Error::DegenerateLegendre));
    }

    #[test]
    fn energy_examples() {
        let p = ModelParams::zero(2)
            .with_alpha(5, -1.0)
            .with_alpha(2, 1.0)
            .with_alpha(6, 1.0)
            .with_h(CMatrix::from_real_diag(&[1.0, 2.0]))
            .unwrap();
        let s = diag_state(&[1.0, 0.0], &[1.0, 1.0]);
        assert_eq!(energy(&s, &p).unwrap(), 1.0);
        let h = hamiltonian(&legendre(&s, &p).unwrap(), &p).unwrap();
        assert!((h - 1.0).abs() < 1e-14);
        assert_eq!(energy(&diag_state(&[0.0, 0.0], &[1.0, 1.0]), &p).unwrap(), 0.0);
    }

    #[test]
    fn charges_at_rest() {
        let p = ModelParams::zero(2).with_alpha(3, 0.7).with_alpha(1, 0.4).with_alpha(6, 1.0);
        let g0 = CMatrix::from_real_diag(&[2.0, 4.0]);
        let s = FullState::new(
            CVector::zeros(2),
            CVector::zeros(2),
            CMatrix::from_real_diag(&[1.0, 3.0]),
            CMatrix::zeros(2),
        );
        let q = noether_charges(&s, &p, &g0).unwrap();
        assert!((&q.v - &g0.inverse().unwrap().scale_re(-1.4)).max_abs() < 1e-15);
        assert_eq!(q.w.max_abs(), 0.0);
    }
}

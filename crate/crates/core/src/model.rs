//! Model constants, state, and everything the Lagrangian is built from.
//!
//! The Lagrangian is
//!
//! ```text
//! L = α₁ i G_{āb}(ψ̄ᵃψ̇ᵇ − ψ̄̇ᵃψᵇ) + α₂ G_{āb} ψ̄̇ᵃψ̇ᵇ + (α₄ G_{āb} + α₅ H_{āb}) ψ̄ᵃψᵇ
//!   + α₃ K^{bā} Ġ_{āb} + Ω^{dc̄bā} Ġ_{āb} Ġ_{c̄d} − κ θ₁²
//! ```
//!
//! with `K^{bā} = G^{bā} + α₉ ψ̄ᵃψᵇ` (as a matrix, `K = G⁻¹ + α₉ ψψ†`) and
//!
//! ```text
//! Ω^{dc̄bā} = α₆ K^{dā} K^{bc̄} + α₇ K^{bā} K^{dc̄} + α₈ ψ̄ᵃψᵇψ̄ᶜψᵈ.
//! ```
//!
//! Acting on a covariant `X`, `Ω` produces the contravariant matrix
//! `α₆ KXK + α₇ tr(KX) K + α₈ (ψ†Xψ) ψψ†`; [`build_omega`] stores the same map
//! in [`Rank4`] pair layout.

use alloc::vec::Vec;

use crate::algebra::{symmetric_eigenvalues, CMatrix, CVector, Rank4};
use crate::{apply4, Error, Result, C64};

/// Denominators with modulus at or below this are treated as zero.
pub const DENOMINATOR_TOL: f64 = 1e-12;
/// Largest imaginary residue accepted on scalars that must be real.
pub const REALITY_TOL: f64 = 1e-10;
/// Largest hermiticity defect accepted on `G`, `Ġ` and `H`.
pub const HERMITIAN_TOL: f64 = 1e-8;
/// Relative defect of the `Ω⁻¹ ∘ Ω` probe beyond which the inverse is rejected.
pub const INVERSE_PROBE_TOL: f64 = 1e-7;

/// Real constants `α₁ … α₉`, `κ`, `ħ` and the fixed hermitian matrix `H_{āb}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    alpha: [f64; 9],
    pub kappa: f64,
    pub hbar: f64,
    h: CMatrix,
}

impl ModelParams {
    pub fn new(alpha: [f64; 9], kappa: f64, hbar: f64, h: CMatrix) -> Result<Self> {
        if h.dim() == 0 {
            return Err(Error::InvalidArgument("level count must be at least 1"));
        }
        let defect = h.hermiticity_defect();
        if defect > HERMITIAN_TOL * (1.0 + h.max_abs()) {
            return Err(Error::NotHermitian { what: "H", defect });
        }
        if !(alpha.iter().all(|a| a.is_finite()) && kappa.is_finite() && hbar.is_finite()) {
            return Err(Error::InvalidArgument("non-finite model constant"));
        }
        Ok(Self { alpha, kappa, hbar, h })
    }

    /// All constants zero, `ħ = 1`, `H = 0`.
    pub fn zero(n: usize) -> Self {
        Self { alpha: [0.0; 9], kappa: 0.0, hbar: 1.0, h: CMatrix::zeros(n) }
    }

    /// `α_k` for `k = 1 … 9`.
    #[inline]
    pub fn alpha(&self, k: usize) -> f64 {
        self.alpha[k - 1]
    }

    pub fn alphas(&self) -> &[f64; 9] {
        &self.alpha
    }

    pub fn with_alpha(mut self, k: usize, value: f64) -> Self {
        self.alpha[k - 1] = value;
        self
    }

    pub fn with_kappa(mut self, kappa: f64) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn with_hbar(mut self, hbar: f64) -> Self {
        self.hbar = hbar;
        self
    }

    pub fn with_h(mut self, h: CMatrix) -> Result<Self> {
        let defect = h.hermiticity_defect();
        if defect > HERMITIAN_TOL * (1.0 + h.max_abs()) {
            return Err(Error::NotHermitian { what: "H", defect });
        }
        self.h = h;
        Ok(self)
    }

    pub fn h(&self) -> &CMatrix {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.h.dim()
    }

    /// `α₂ = 0`: the Legendre map in the ψ sector is degenerate.
    pub fn psi_kinetic_degenerate(&self) -> bool {
        self.alpha(2).abs() <= DENOMINATOR_TOL
    }

    /// `α₆ = α₇ = α₈ = 0`: no kinetic term for `G` at all.
    pub fn g_kinetic_vanishes(&self) -> bool {
        (6..=8).all(|k| self.alpha(k).abs() <= DENOMINATOR_TOL)
    }
}

/// Configuration-velocity snapshot `(t, ψ, ψ̇, G, Ġ)`; `G` and `Ġ` covariant.
#[derive(Debug, Clone, PartialEq)]
pub struct FullState {
    pub t: f64,
    pub psi: CVector,
    pub psi_dot: CVector,
    pub g: CMatrix,
    pub g_dot: CMatrix,
}

impl FullState {
    pub fn new(psi: CVector, psi_dot: CVector, g: CMatrix, g_dot: CMatrix) -> Self {
        Self { t: 0.0, psi, psi_dot, g, g_dot }
    }

    /// `ψ = ψ̇ = 0`, `G = I`, `Ġ = 0`.
    pub fn at_rest(n: usize) -> Self {
        Self::new(CVector::zeros(n), CVector::zeros(n), CMatrix::identity(n), CMatrix::zeros(n))
    }

    pub fn n(&self) -> usize {
        self.psi.len()
    }

    /// Checks sizes against `n`, finiteness, and hermiticity of `G` and `Ġ`.
    pub fn validate(&self, n: usize) -> Result<()> {
        for found in [self.psi.len(), self.psi_dot.len(), self.g.dim(), self.g_dot.dim()] {
            if found != n {
                return Err(Error::Shape { expected: n, found });
            }
        }
        if !(self.psi.is_finite() && self.psi_dot.is_finite() && self.g.is_finite() && self.g_dot.is_finite()) {
            return Err(Error::NonFiniteState { t: self.t });
        }
        let defect = self.g.hermiticity_defect();
        if defect > HERMITIAN_TOL * (1.0 + self.g.max_abs()) {
            return Err(Error::NotHermitian { what: "G", defect });
        }
        let defect = self.g_dot.hermiticity_defect();
        if defect > HERMITIAN_TOL * (1.0 + self.g_dot.max_abs()) {
            return Err(Error::NotHermitian { what: "Gdot", defect });
        }
        Ok(())
    }
}

/// Quantities shared by most evaluations at one state.
#[derive(Debug, Clone)]
pub(crate) struct Geometry {
    /// `G⁻¹`, i.e. `G^{xȳ} = ginv[x][y]`.
    pub ginv: CMatrix,
    /// `K = G⁻¹ + α₉ ψψ†`.
    pub k: CMatrix,
    pub theta1: f64,
}

impl Geometry {
    pub fn new(s: &FullState, p: &ModelParams) -> Result<Self> {
        s.validate(p.n())?;
        let ginv = s.g.inverse().map_err(|_| Error::Singular("G"))?;
        let mut k = ginv.clone();
        k += &s.psi.outer(&s.psi).scale_re(p.alpha(9));
        let theta1 = theta1(s)?;
        Ok(Self { ginv, k, theta1 })
    }
}

pub(crate) fn check_denominator(value: f64, name: &'static str) -> Result<f64> {
    if value.abs() <= DENOMINATOR_TOL || !value.is_finite() {
        Err(Error::SingularParams(name))
    } else {
        Ok(value)
    }
}

/// Real part of `z`, whose terms had total magnitude `scale`.
pub(crate) fn real_part(z: C64, scale: f64, what: &'static str) -> Result<f64> {
    if !(z.im.abs() <= REALITY_TOL * (1.0 + scale.max(z.re.abs()))) {
        Err(Error::NonReal { what, imag: z.im })
    } else {
        Ok(z.re)
    }
}

/// `θ₁ = G_{āb} ψ̄ᵃψᵇ = ψ†Gψ`.
pub fn theta1(s: &FullState) -> Result<f64> {
    let defect = s.g.hermiticity_defect();
    if defect > HERMITIAN_TOL * (1.0 + s.g.max_abs()) {
        return Err(Error::NotHermitian { what: "G", defect });
    }
    let n = s.g.dim() as f64;
    let scale = s.psi.iter().map(|z| z.norm_sqr()).sum::<f64>() * s.g.max_abs() * n;
    real_part(s.psi.dot(&s.g.mul_vec(&s.psi)), scale, "theta1")
}

/// `θ₂ = Λ⁻¹_{āb c̄d} ψ̄ᵃψᵇψ̄ᶜψᵈ` in closed form:
/// `(α₆ + (n−1)α₇) / (α₆(α₆ + nα₇)) · (θ₁ / (1 + α₉θ₁))²`.
pub fn theta2(s: &FullState, p: &ModelParams) -> Result<f64> {
    let n = p.n() as f64;
    let a6 = check_denominator(p.alpha(6), "alpha6")?;
    let a6n7 = check_denominator(p.alpha(6) + n * p.alpha(7), "alpha6 + n*alpha7")?;
    let t1 = theta1(s)?;
    let d9 = check_denominator(1.0 + p.alpha(9) * t1, "1 + alpha9*theta1")?;
    let r = t1 / d9;
    Ok((p.alpha(6) + (n - 1.0) * p.alpha(7)) / (a6 * a6n7) * r * r)
}

/// `θ₃ = G^{dē}G^{fc̄} Ġ_{c̄d} Ġ_{ēf} = tr(G⁻¹ Ġ G⁻¹ Ġ)`.
pub fn theta3(s: &FullState) -> Result<f64> {
    let ginv = s.g.inverse().map_err(|_| Error::Singular("G"))?;
    let x = &ginv * &s.g_dot;
    let n = x.dim() as f64;
    real_part((&x * &x).trace(), n * n * x.max_abs() * x.max_abs(), "theta3")
}

/// `λ⁻¹_{āb} = G_{āb} − α₉/(1 + α₉θ₁) G_{ād} G_{c̄b} ψ̄ᶜψᵈ`, which is `K⁻¹`.
pub fn lambda_inverse(s: &FullState, p: &ModelParams) -> Result<CMatrix> {
    let t1 = theta1(s)?;
    let d9 = check_denominator(1.0 + p.alpha(9) * t1, "1 + alpha9*theta1")?;
    let gpsi = s.g.mul_vec(&s.psi);
    let mut l = s.g.clone();
    l -= &gpsi.outer(&gpsi).scale_re(p.alpha(9) / d9);
    Ok(l)
}

/// `Λ⁻¹_{āb c̄d} = λ⁻¹_{ād} λ⁻¹_{c̄b} / α₆ − α₇/(α₆(α₆ + nα₇)) λ⁻¹_{āb} λ⁻¹_{c̄d}`,
/// the inverse of the `α₆`/`α₇` part of `Ω`.
pub fn build_lambda_inverse(s: &FullState, p: &ModelParams) -> Result<Rank4> {
    let n = p.n();
    let a6 = check_denominator(p.alpha(6), "alpha6")?;
    let a6n7 = check_denominator(p.alpha(6) + n as f64 * p.alpha(7), "alpha6 + n*alpha7")?;
    let l = lambda_inverse(s, p)?;
    let beta = p.alpha(7) / (a6 * a6n7);
    Ok(Rank4::from_fn(n, |a, b, c, d| l[(a, d)] * l[(c, b)] / a6 - l[(a, b)] * l[(c, d)] * beta))
}

/// `Ω[ψ, G]` in pair layout: `T[a][b][c][d] = Ω^{bādc̄}`.
pub fn build_omega(s: &FullState, p: &ModelParams) -> Result<Rank4> {
    let geo = Geometry::new(s, p)?;
    Ok(omega_from(&geo, s, p))
}

pub(crate) fn omega_from(geo: &Geometry, s: &FullState, p: &ModelParams) -> Rank4 {
    let (a6, a7, a8) = (p.alpha(6), p.alpha(7), p.alpha(8));
    let k = &geo.k;
    // Products of pair factors keep the pair-exchange symmetry exact.
    let q = CMatrix::from_fn(p.n(), |a, b| s.psi[a].conj() * s.psi[b]);
    Rank4::from_fn(p.n(), |a, b, c, d| {
        k[(d, a)] * k[(b, c)] * a6 + k[(b, a)] * k[(d, c)] * a7 + q[(a, b)] * q[(c, d)] * a8
    })
}

/// Analytic `Ω⁻¹_{āb c̄d}` (covariant output pair, contravariant input pair):
///
/// ```text
/// Ω⁻¹ = Λ⁻¹ − α₈/(1 + α₈θ₂) (Λ⁻¹ψ̄ψ)_{āb} (Λ⁻¹ψ̄ψ)_{c̄d}
/// ```
///
/// The result is checked on two probe matrices; a composition defect above
/// [`INVERSE_PROBE_TOL`] is reported as `IllConditioned`.
pub fn build_omega_inverse(s: &FullState, p: &ModelParams) -> Result<Rank4> {
    let geo = Geometry::new(s, p)?;
    omega_inverse_checked(&geo, s, p)
}

/// Round-off growth factor for solves involving `Ω`, whose condition number
/// is of order `cond(G)²`.
pub(crate) fn conditioning_slack(geo: &Geometry, s: &FullState) -> f64 {
    let cond = s.g.norm1() * geo.ginv.norm1();
    1.0 + 1e10 * f64::EPSILON * cond * cond
}

pub(crate) fn omega_inverse_checked(geo: &Geometry, s: &FullState, p: &ModelParams) -> Result<Rank4> {
    let inv = omega_inverse_unchecked(s, p)?;
    let omega = omega_from(geo, s, p);
    let tol = INVERSE_PROBE_TOL * conditioning_slack(geo, s);
    for probe in [CMatrix::identity(p.n()), s.g.clone()] {
        let back = apply4(&inv, &apply4(&omega, &probe)?)?;
        let defect = (&back - &probe).max_abs() / probe.max_abs();
        if !(defect <= tol) {
            return Err(Error::IllConditioned { what: "Omega inverse composition", value: defect });
        }
    }
    Ok(inv)
}

pub(crate) fn omega_inverse_unchecked(s: &FullState, p: &ModelParams) -> Result<Rank4> {
    let n = p.n();
    let big = build_lambda_inverse(s, p)?;
    let t2 = theta2(s, p)?;
    let a8 = p.alpha(8);
    let d8 = check_denominator(1.0 + a8 * t2, "1 + alpha8*theta2")?;
    // u_{āb} = Λ⁻¹_{āb ēf} ψ̄ᵉψᶠ
    let q = CMatrix::from_fn(n, |e, f| s.psi[e].conj() * s.psi[f]);
    let u = apply4(&big, &q)?;
    let w = a8 / d8;
    Ok(Rank4::from_fn(n, |a, b, c, d| big[(a, b, c, d)] - u[(a, b)] * u[(c, d)] * w))
}

/// Time derivative of `Ω[ψ, G]` along `(ψ̇, Ġ)`, in pair layout.
///
/// `K̇ = −G⁻¹ĠG⁻¹ + α₉(ψ̇ψ† + ψψ̇†)` enters through the product rule on each
/// of the `α₆` and `α₇` factors; the `α₈` term differentiates `ψ̄ψψ̄ψ` directly.
pub fn build_omega_dot(s: &FullState, p: &ModelParams) -> Result<Rank4> {
    let geo = Geometry::new(s, p)?;
    Ok(omega_dot_from(&geo, s, p))
}

pub(crate) fn omega_dot_from(geo: &Geometry, s: &FullState, p: &ModelParams) -> Rank4 {
    let (a6, a7, a8, a9) = (p.alpha(6), p.alpha(7), p.alpha(8), p.alpha(9));
    let k = &geo.k;
    let mut kd = -(&(&geo.ginv * &s.g_dot) * &geo.ginv);
    kd += &(&s.psi_dot.outer(&s.psi) + &s.psi.outer(&s.psi_dot)).scale_re(a9);
    let (psi, psid) = (&s.psi, &s.psi_dot);
    let q = |a: usize, b: usize| psi[a].conj() * psi[b];
    let qd = |a: usize, b: usize| psid[a].conj() * psi[b] + psi[a].conj() * psid[b];
    Rank4::from_fn(p.n(), |a, b, c, d| {
        (kd[(d, a)] * k[(b, c)] + k[(d, a)] * kd[(b, c)]) * a6
            + (kd[(b, a)] * k[(d, c)] + k[(b, a)] * kd[(d, c)]) * a7
            + (qd(a, b) * q(c, d) + q(a, b) * qd(c, d)) * a8
    })
}

/// `L(ψ, ψ̇, G, Ġ)` evaluated from the matrix form of each term.
///
/// The sum is formed over complex values and its imaginary residue is
/// checked; a non-real Lagrangian means an index-convention error upstream.
pub fn lagrangian(s: &FullState, p: &ModelParams) -> Result<f64> {
    let geo = Geometry::new(s, p)?;
    let i = C64::new(0.0, 1.0);
    let (psi, psid) = (&s.psi, &s.psi_dot);
    let gpsi = s.g.mul_vec(psi);
    let gpsid = s.g.mul_vec(psid);

    let symplectic = (psi.dot(&gpsid) - psid.dot(&gpsi)) * i * p.alpha(1);
    let kinetic_psi = psid.dot(&gpsid) * p.alpha(2);
    let linear = psi.dot(&gpsi) * p.alpha(4) + psi.dot(&p.h().mul_vec(psi)) * p.alpha(5);
    let kgd = &geo.k * &s.g_dot;
    let tr_kgd = kgd.trace();
    let drift = tr_kgd * p.alpha(3);
    let kinetic_g = (&kgd * &kgd).trace() * p.alpha(6) + tr_kgd * tr_kgd * p.alpha(7) + {
        let x = psi.dot(&s.g_dot.mul_vec(psi));
        x * x * p.alpha(8)
    };
    let potential = p.kappa * geo.theta1 * geo.theta1;
    let n = s.g.dim() as f64;
    let bound = n * kgd.max_abs();
    let scale = [symplectic, kinetic_psi, linear, drift, kinetic_g].iter().map(|z| z.norm()).sum::<f64>()
        + (p.alpha(6).abs() + p.alpha(7).abs()) * bound * bound
        + potential.abs();
    real_part(symplectic + kinetic_psi + linear + drift + kinetic_g - potential, scale, "lagrangian")
}

/// Spectrum of `X ↦ Ω(X, X)` on hermitian `X`, in an orthonormal real basis
/// of hermitian matrices. Diagnostic only; nothing requires `Ω` to be definite.
pub fn omega_spectrum(s: &FullState, p: &ModelParams) -> Result<Vec<f64>> {
    let n = p.n();
    let omega = build_omega(s, p)?;
    let basis = hermitian_basis(n);
    let m = basis.len();
    let images: Vec<CMatrix> = basis.iter().map(|x| apply4(&omega, x)).collect::<Result<_>>()?;
    let mut form = alloc::vec![0.0; m * m];
    for (r, x) in basis.iter().enumerate() {
        for (c, y) in images.iter().enumerate() {
            form[r * m + c] = x.contract(y).re;
        }
    }
    Ok(symmetric_eigenvalues(m, &form))
}

/// Orthonormal (Frobenius) basis of `n × n` hermitian matrices.
pub(crate) fn hermitian_basis(n: usize) -> Vec<CMatrix> {
    let r = core::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(n * n);
    for k in 0..n {
        let mut e = CMatrix::zeros(n);
        e[(k, k)] = C64::new(1.0, 0.0);
        out.push(e);
    }
    for k in 0..n {
        for l in k + 1..n {
            let mut e = CMatrix::zeros(n);
            e[(k, l)] = C64::new(r, 0.0);
            e[(l, k)] = C64::new(r, 0.0);
            out.push(e);
            let mut e = CMatrix::zeros(n);
            e[(k, l)] = C64::new(0.0, r);
            e[(l, k)] = C64::new(0.0, -r);
            out.push(e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(psi: &[f64], g: &[f64]) -> FullState {
        let n = psi.len();
        FullState::new(CVector::from_real(psi), CVector::zeros(n), CMatrix::from_real_diag(g), CMatrix::zeros(n))
    }

    #[test]
    fn theta1_examples() {
        assert_eq!(theta1(&state(&[1.0, 0.0], &[1.0, 1.0])).unwrap(), 1.0);
        assert_eq!(theta1(&state(&[0.0, 0.0], &[1.0, 1.0])).unwrap(), 0.0);
        assert_eq!(theta1(&state(&[1.0, 1.0], &[2.0, 3.0])).unwrap(), 5.0);
    }

    #[test]
    fn theta1_rejects_non_hermitian_g() {
        let mut s = state(&[1.0, 0.0], &[1.0, 1.0]);
        s.g[(0, 1)] = C64::new(1e-3, 0.0);
        assert!(matches!(theta1(&s), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn theta2_scalar_case() {
        let p = ModelParams::zero(1).with_alpha(6, 1.0);
        let s = state(&[1.0], &[1.0]);
        assert_eq!(theta1(&s).unwrap(), 1.0);
        assert!((theta2(&s, &p).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(theta2(&state(&[0.0], &[1.0]), &p).unwrap(), 0.0);
    }

    #[test]
    fn theta2_singular_params_are_named() {
        let s = state(&[1.0, 0.0], &[1.0, 1.0]);
        let p = ModelParams::zero(2);
        assert_eq!(theta2(&s, &p), Err(Error::SingularParams("alpha6")));
        let p = p.with_alpha(6, 1.0).with_alpha(7, -0.5);
        assert_eq!(theta2(&s, &p), Err(Error::SingularParams("alpha6 + n*alpha7")));
        let p = p.with_alpha(7, 0.0).with_alpha(9, -1.0);
        assert_eq!(theta2(&s, &p), Err(Error::SingularParams("1 + alpha9*theta1")));
    }

    #[test]
    fn theta3_examples() {
        let mut s = state(&[0.0, 0.0], &[1.0, 1.0]);
        assert_eq!(theta3(&s).unwrap(), 0.0);
        s.g_dot = CMatrix::from_real_diag(&[1.0, 2.0]);
        assert!((theta3(&s).unwrap() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn omega_scalar_reduction() {
        let p = ModelParams::zero(1).with_alpha(6, 1.0).with_alpha(7, 2.0);
        let s = state(&[0.0], &[1.0]);
        let om = build_omega(&s, &p).unwrap();
        assert_eq!(om[(0, 0, 0, 0)], C64::new(3.0, 0.0));
        let inv = build_omega_inverse(&s, &p).unwrap();
        assert!((inv[(0, 0, 0, 0)] - C64::new(1.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn lambda_inverse_is_g_at_zero_psi() {
        let p = ModelParams::zero(2).with_alpha(9, 0.7);
        let s = state(&[0.0, 0.0], &[2.0, 3.0]);
        assert_eq!(lambda_inverse(&s, &p).unwrap(), s.g);
    }

    #[test]
    fn omega_inverse_names_alpha8_denominator() {
        // n = 1, α₆ = 1, α₇ = 0, α₉ = 0, ψ = 1 gives θ₂ = 1, so α₈ = −1 is singular
        let p = ModelParams::zero(1).with_alpha(6, 1.0).with_alpha(8, -1.0);
        let s = state(&[1.0], &[1.0]);
        assert_eq!(build_omega_inverse(&s, &p), Err(Error::SingularParams("1 + alpha8*theta2")));
    }

    #[test]
    fn omega_dot_vanishes_without_velocity() {
        let p = ModelParams::zero(2).with_alpha(6, 1.0).with_alpha(7, 0.3).with_alpha(8, 0.2).with_alpha(9, 0.4);
        let s = state(&[0.3, -0.2], &[1.0, 2.0]);
        assert_eq!(build_omega_dot(&s, &p).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn lagrangian_examples() {
        let p = ModelParams::zero(2).with_alpha(5, -1.0).with_h(CMatrix::from_real_diag(&[1.0, 2.0])).unwrap();
        assert_eq!(lagrangian(&state(&[0.0, 0.0], &[1.0, 1.0]), &p).unwrap(), 0.0);
        assert_eq!(lagrangian(&state(&[1.0, 0.0], &[1.0, 1.0]), &p).unwrap(), -1.0);
    }

    #[test]
    fn omega_spectrum_of_identity_metric() {
        // α₆ = 1, G = I, ψ = 0: Ω(X, X) = tr(X²), every eigenvalue is 1
        let p = ModelParams::zero(2).with_alpha(6, 1.0);
        let ev = omega_spectrum(&state(&[0.0, 0.0], &[1.0, 1.0]), &p).unwrap();
        assert_eq!(ev.len(), 4);
        assert!(ev.iter().all(|e| (e - 1.0).abs() < 1e-14), "{ev:?}");
    }

    #[test]
    fn singular_g_is_reported() {
        let p = ModelParams::zero(2).with_alpha(6, 1.0);
        let s = FullState::new(CVector::zeros(2), CVector::zeros(2), CMatrix::zeros(2), CMatrix::zeros(2));
        assert_eq!(build_omega(&s, &p), Err(Error::Singular("G")));
    }
}

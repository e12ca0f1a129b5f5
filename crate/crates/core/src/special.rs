//! Named parameter regimes and their closed forms.

use crate::algebra::{mat_exp, CMatrix};
use crate::dynamics::{psi_force_matrix, Mode};
use crate::model::{FullState, Geometry, ModelParams, DENOMINATOR_TOL};
use crate::{Error, Result, C64};

/// Largest relative disagreement accepted between the two pure-`G` closed forms.
pub const CLOSED_FORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// `α₁ = ħ/2`, `α₅ = −1`, everything else zero, `G` fixed.
    UsualSchrodinger,
    /// `α₁ = ħ/2`, `α₂ = 0`, `α₅ = −1` with a dynamical `G`.
    FirstOrderModified,
    /// `α₁ = ħ/2`, `α₂ = −2τħ`, `α₄ = 0`, `α₅ = −1`, `κ = 0`, `G` fixed.
    SecondOrderModified,
    /// Only the `G` kinetic terms; `ψ` frozen.
    PureG,
    /// `α₁ = ħ/2` with no Hamiltonian, `G` fixed. `α₂` may be supplied.
    FreePsi,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::UsualSchrodinger,
        Preset::FirstOrderModified,
        Preset::SecondOrderModified,
        Preset::PureG,
        Preset::FreePsi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::UsualSchrodinger => "UsualSchrodinger",
            Preset::FirstOrderModified => "FirstOrderModified",
            Preset::SecondOrderModified => "SecondOrderModified",
            Preset::PureG => "PureG",
            Preset::FreePsi => "FreePsi",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }
}

/// Values a preset does not fix by itself.
///
/// `alpha[k - 1]` supplies `α_k` where the preset leaves it free; entries the
/// preset fixes are ignored. Either `h` or `n` must be given.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PresetExtras {
    pub hbar: Option<f64>,
    pub tau: Option<f64>,
    pub h: Option<CMatrix>,
    pub n: Option<usize>,
    pub alpha: [Option<f64>; 9],
    pub kappa: Option<f64>,
}

impl PresetExtras {
    pub fn with_alpha(mut self, k: usize, value: f64) -> Self {
        self.alpha[k - 1] = Some(value);
        self
    }
}

/// Populated constants and the integration mode for `preset`.
pub fn preset(which: Preset, extras: &PresetExtras) -> Result<(ModelParams, Mode)> {
    let h = match (&extras.h, extras.n) {
        (Some(h), _) => h.clone(),
        (None, Some(n)) => CMatrix::zeros(n),
        (None, None) => return Err(Error::MissingExtra("H")),
    };
    let hbar = || extras.hbar.ok_or(Error::MissingExtra("hbar"));
    let free = |k: usize| extras.alpha[k - 1].unwrap_or(0.0);
    let required = |k: usize, name: &'static str| extras.alpha[k - 1].ok_or(Error::MissingExtra(name));
    let kappa = extras.kappa.unwrap_or(0.0);

    let (alpha, kappa, hbar, mode) = match which {
        Preset::UsualSchrodinger => {
            let hb = hbar()?;
            ([hb / 2.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0], 0.0, hb, Mode::FixedG)
        }
        Preset::FirstOrderModified => {
            let hb = hbar()?;
            let a6 = required(6, "alpha6")?;
            ([hb / 2.0, 0.0, free(3), free(4), -1.0, a6, free(7), free(8), free(9)], kappa, hb, Mode::FirstOrderPsi)
        }
        Preset::SecondOrderModified => {
            let hb = hbar()?;
            let tau = extras.tau.ok_or(Error::MissingExtra("tau"))?;
            ([hb / 2.0, -2.0 * tau * hb, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0], 0.0, hb, Mode::FixedG)
        }
        Preset::PureG => {
            let a6 = required(6, "alpha6")?;
            (
                [0.0, 0.0, free(3), free(4), 0.0, a6, free(7), free(8), free(9)],
                kappa,
                extras.hbar.unwrap_or(1.0),
                Mode::PureG,
            )
        }
        Preset::FreePsi => {
            let hb = hbar()?;
            ([hb / 2.0, free(2), 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], 0.0, hb, Mode::FixedG)
        }
    };
    Ok((ModelParams::new(alpha, kappa, hbar, h)?, mode))
}

/// `G(t) = exp(Et) G₀` together with both generators.
#[derive(Debug, Clone, PartialEq)]
pub struct PureGSolution {
    pub g: CMatrix,
    /// `E = Ġ₀G₀⁻¹`, acting from the left.
    pub e: CMatrix,
    /// `E′ = G₀⁻¹Ġ₀`, acting from the right.
    pub e_prime: CMatrix,
    /// `‖exp(Et)G₀ − G₀exp(E′t)‖_∞ / ‖G(t)‖_∞`.
    pub mismatch: f64,
}

/// Closed-form solution of `G̈ = ĠG⁻¹Ġ` through `(G₀, Ġ₀)`.
pub fn pure_g_closed_form(g0: &CMatrix, gdot0: &CMatrix, t: f64) -> Result<PureGSolution> {
    let g0inv = g0.inverse().map_err(|_| Error::Singular("G0"))?;
    let e = gdot0 * &g0inv;
    let e_prime = &g0inv * gdot0;
    let g = &mat_exp(&e, t) * g0;
    let right = g0 * &mat_exp(&e_prime, t);
    let mismatch = (&g - &right).max_abs() / g.max_abs();
    if !(mismatch <= CLOSED_FORM_TOL) {
        return Err(Error::IllConditioned { what: "pure-G closed forms", value: mismatch });
    }
    Ok(PureGSolution { g, e, e_prime, mismatch })
}

/// `H_eff` with `iħψ̇ = H_eff ψ` in the `α₂ = 0` regime; equal to
/// `(ħ/2α₁) G⁻¹S` where `Sψ` collects the non-derivative terms of the `ψ̄`
/// equation. With `α₁ = ħ/2` and `α₅ = −1` this is
///
/// ```text
/// G⁻¹H + (2κθ₁ − α₄) − (iħ/2 + α₃α₉) G⁻¹Ġ − 2α₈(ψ†Ġψ) G⁻¹Ġ
///   − 2α₉ G⁻¹(α₆ ĠKĠ + α₇ tr(KĠ) Ġ).
/// ```
pub fn effective_hamiltonian(s: &FullState, p: &ModelParams) -> Result<CMatrix> {
    if !p.psi_kinetic_degenerate() {
        return Err(Error::ModeParamMismatch("effective Hamiltonian requires alpha2 = 0"));
    }
    if p.alpha(1).abs() <= DENOMINATOR_TOL {
        return Err(Error::SingularParams("alpha1"));
    }
    let geo = Geometry::new(s, p)?;
    let force = psi_force_matrix(&geo, s, p);
    Ok((&geo.ginv * &force).scale_re(p.hbar / (2.0 * p.alpha(1))))
}

/// `−ħ²/2m ∂ₓ² + V` on `grid_points` interior points with Dirichlet ends.
pub fn laplacian_hamiltonian(grid_points: usize, dx: f64, mass: f64, potential: &[f64], hbar: f64) -> Result<CMatrix> {
    if grid_points < 3 {
        return Err(Error::InvalidArgument("grid_points must be at least 3"));
    }
    if !(dx > 0.0) || !(mass > 0.0) {
        return Err(Error::InvalidArgument("dx and mass must be positive"));
    }
    if potential.len() != grid_points {
        return Err(Error::Shape { expected: grid_points, found: potential.len() });
    }
    let c = hbar * hbar / (2.0 * mass * dx * dx);
    Ok(CMatrix::from_fn(grid_points, |i, j| {
        if i == j {
            C64::new(2.0 * c + potential[i], 0.0)
        } else if i.abs_diff(j) == 1 {
            C64::new(-c, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

//! Time stepping and trajectory recording.
//!
//! The evolving fields of a mode are packed into one real vector with
//! interleaved real and imaginary parts (`G` and `Ġ` as full matrices) and
//! advanced with the classical fourth-order Runge–Kutta scheme. Fields the
//! mode holds fixed are carried along unchanged, with their velocity zeroed.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{hermitian_eigenvalues, hermitize, CMatrix, CVector};
use crate::dynamics::{accelerations, noether_charges, Mode, NoetherCharges, PsiRate};
use crate::model::{FullState, ModelParams};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Rk4,
    /// RK4 with step doubling: each step is compared with two half steps.
    Rk4Adaptive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub t_final: f64,
    pub method: Method,
    /// Per-component tolerance of the adaptive method.
    pub rel_tol: f64,
    pub hermitize_each_step: bool,
    /// Record every `record_every`-th step; the last state is always recorded.
    pub record_every: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            t_final: 10.0,
            method: Method::Rk4,
            rel_tol: 1e-9,
            hermitize_each_step: true,
            record_every: 10,
        }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidArgument("dt must be positive"));
        }
        if !(self.t_final >= 0.0 && self.t_final.is_finite()) {
            return Err(Error::InvalidArgument("t_final must be non-negative"));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidArgument("rel_tol must be positive"));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidArgument("record_every must be at least 1"));
        }
        Ok(())
    }
}

/// Health of `G` at a recorded sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    /// Largest hermiticity defect of `G` or `Ġ` seen since the previous
    /// sample, before any re-hermitization.
    pub herm_defect: f64,
    pub g_min_eig: f64,
    /// 1-norm condition number of `G`.
    pub g_condition: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub state: FullState,
    pub charges: NoetherCharges,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub mode: Mode,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn initial(&self) -> &Sample {
        &self.samples[0]
    }

    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectory has at least one sample")
    }

    /// `max_t |E(t) − E(0)| / |E(0)|`, or the absolute drift when `E(0) = 0`.
    pub fn energy_drift(&self) -> f64 {
        let e0 = self.initial().charges.energy;
        let scale = if e0 == 0.0 { 1.0 } else { e0.abs() };
        self.samples.iter().map(|s| (s.charges.energy - e0).abs() / scale).fold(0.0, f64::max)
    }

    /// `max_t ‖V(t) − V(0)‖_∞`.
    pub fn v_drift(&self) -> f64 {
        let v0 = &self.initial().charges.v;
        self.samples.iter().map(|s| (&s.charges.v - v0).max_abs()).fold(0.0, f64::max)
    }

    /// `max_t ‖W(t) − W(0)‖_∞`.
    pub fn w_drift(&self) -> f64 {
        let w0 = &self.initial().charges.w;
        self.samples.iter().map(|s| (&s.charges.w - w0).max_abs()).fold(0.0, f64::max)
    }

    /// `max_t |θ₁(t) − θ₁(0)|`.
    pub fn theta1_drift(&self) -> f64 {
        let th = |s: &FullState| s.psi.dot(&s.g.mul_vec(&s.psi)).re;
        let t0 = th(&self.initial().state);
        self.samples.iter().map(|s| (th(&s.state) - t0).abs()).fold(0.0, f64::max)
    }
}

/// Which fields a mode advances.
#[derive(Debug, Clone, Copy)]
struct Layout {
    n: usize,
    mode: Mode,
    psi: bool,
    psi_dot: bool,
    g: bool,
}

impl Layout {
    fn new(mode: Mode, p: &ModelParams) -> Self {
        let second_order_psi = !p.psi_kinetic_degenerate();
        let (psi, psi_dot, g) = match mode {
            Mode::FullSecondOrder => (true, true, true),
            Mode::FirstOrderPsi => (true, false, true),
            Mode::FixedG => (true, second_order_psi, false),
            Mode::PureG => (false, false, true),
        };
        Self { n: p.n(), mode, psi, psi_dot, g }
    }

    /// Zeroes the velocities of held fields.
    fn normalize(&self, s: &mut FullState) {
        match self.mode {
            Mode::FixedG => s.g_dot = CMatrix::zeros(self.n),
            Mode::PureG => s.psi_dot = CVector::zeros(self.n),
            _ => {}
        }
    }

    fn pack(&self, s: &FullState) -> Vec<f64> {
        let mut y = Vec::new();
        if self.psi {
            push(&mut y, s.psi.as_slice());
        }
        if self.psi_dot {
            push(&mut y, s.psi_dot.as_slice());
        }
        if self.g {
            push(&mut y, s.g.as_slice());
            push(&mut y, s.g_dot.as_slice());
        }
        y
    }

    fn unpack(&self, y: &[f64], base: &FullState) -> FullState {
        let mut s = base.clone();
        let mut i = 0;
        if self.psi {
            pull(y, &mut i, s.psi.as_mut_slice());
        }
        if self.psi_dot {
            pull(y, &mut i, s.psi_dot.as_mut_slice());
        }
        if self.g {
            pull(y, &mut i, s.g.as_mut_slice());
            pull(y, &mut i, s.g_dot.as_mut_slice());
        }
        s
    }

    fn rhs(&self, y: &[f64], base: &FullState, p: &ModelParams) -> Result<Vec<f64>> {
        let s = self.unpack(y, base);
        let acc = accelerations(&s, p, self.mode)?;
        let mut dy = Vec::with_capacity(y.len());
        if self.psi {
            match &acc.psi {
                PsiRate::Velocity(v) => push(&mut dy, v.as_slice()),
                _ => push(&mut dy, s.psi_dot.as_slice()),
            }
        }
        if self.psi_dot {
            push(&mut dy, acc.psi_ddot().as_slice());
        }
        if self.g {
            push(&mut dy, s.g_dot.as_slice());
            push(&mut dy, acc.g_ddot.as_slice());
        }
        Ok(dy)
    }

    /// Re-hermitizes, stores a first-order `ψ̇`, and returns the defect removed.
    fn finish(&self, s: &mut FullState, p: &ModelParams, hermitize_fields: bool) -> Result<f64> {
        let defect = s.g.hermiticity_defect().max(s.g_dot.hermiticity_defect());
        if hermitize_fields && self.g {
            s.g = hermitize(&s.g).0;
            s.g_dot = hermitize(&s.g_dot).0;
        }
        if !(s.psi.is_finite() && s.psi_dot.is_finite() && s.g.is_finite() && s.g_dot.is_finite()) {
            return Err(Error::NonFiniteState { t: s.t });
        }
        if self.psi && !self.psi_dot {
            if let PsiRate::Velocity(v) = accelerations(s, p, self.mode)?.psi {
                s.psi_dot = v;
            }
        }
        Ok(defect)
    }
}

fn push(y: &mut Vec<f64>, z: &[C64]) {
    for c in z {
        y.push(c.re);
        y.push(c.im);
    }
}

fn pull(y: &[f64], i: &mut usize, out: &mut [C64]) {
    for c in out {
        *c = C64::new(y[*i], y[*i + 1]);
        *i += 2;
    }
}

fn axpy(y: &[f64], k: &[f64], h: f64) -> Vec<f64> {
    y.iter().zip(k).map(|(a, b)| a + h * b).collect()
}

fn rk4_increment(layout: &Layout, y: &[f64], base: &FullState, p: &ModelParams, dt: f64) -> Result<Vec<f64>> {
    let k1 = layout.rhs(y, base, p)?;
    let k2 = layout.rhs(&axpy(y, &k1, dt / 2.0), base, p)?;
    let k3 = layout.rhs(&axpy(y, &k2, dt / 2.0), base, p)?;
    let k4 = layout.rhs(&axpy(y, &k3, dt), base, p)?;
    Ok((0..y.len()).map(|i| dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])).collect())
}

fn rk4_raw(layout: &Layout, y: &[f64], base: &FullState, p: &ModelParams, dt: f64) -> Result<Vec<f64>> {
    let inc = rk4_increment(layout, y, base, p, dt)?;
    Ok(y.iter().zip(&inc).map(|(a, b)| a + b).collect())
}

/// One RK4 step of length `dt`; `G` and `Ġ` are re-hermitized afterwards.
pub fn step_rk4(s: &FullState, p: &ModelParams, mode: Mode, dt: f64) -> Result<FullState> {
    let layout = Layout::new(mode, p);
    let mut base = s.clone();
    layout.normalize(&mut base);
    let mut out = step_with(&layout, &base, p, dt)?;
    layout.finish(&mut out, p, true)?;
    Ok(out)
}

fn step_with(layout: &Layout, s: &FullState, p: &ModelParams, dt: f64) -> Result<FullState> {
    let y = layout.pack(s);
    let y1 = rk4_raw(layout, &y, s, p, dt)?;
    let mut out = layout.unpack(&y1, s);
    out.t = s.t + dt;
    Ok(out)
}

fn diagnostics(s: &FullState, herm_defect: f64) -> Result<Diagnostics> {
    let g_min_eig = hermitian_eigenvalues(&s.g).into_iter().fold(f64::INFINITY, f64::min);
    let g_condition = s.g.condition_number().unwrap_or(f64::INFINITY);
    Ok(Diagnostics { herm_defect, g_min_eig, g_condition })
}

fn failure(t: f64, last: &FullState, e: Error) -> Error {
    match e {
        Error::NonFiniteState { .. } => Error::NonFiniteState { t },
        e => {
            let d = diagnostics(last, 0.0).ok();
            let reason = match d {
                Some(d) => format!("{e} (last G: min eigenvalue {:e}, condition {:e})", d.g_min_eig, d.g_condition),
                None => format!("{e}"),
            };
            Error::StepFailure { t, reason }
        }
    }
}

/// Integrates from `s0` to `cfg.t_final`. Noether charges use the initial
/// `G` as reference product.
pub fn integrate(s0: &FullState, p: &ModelParams, mode: Mode, cfg: &IntegratorConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let layout = Layout::new(mode, p);
    let mut s = s0.clone();
    s.t = 0.0;
    layout.normalize(&mut s);
    s.validate(p.n())?;
    let defect0 = layout.finish(&mut s, p, cfg.hermitize_each_step).map_err(|e| failure(0.0, s0, e))?;
    let g0 = s.g.clone();
    let record = |s: &FullState, defect: f64| -> Result<Sample> {
        let charges = noether_charges(s, p, &g0).map_err(|e| failure(s.t, s, e))?;
        Ok(Sample { state: s.clone(), charges, diagnostics: diagnostics(s, defect)? })
    };
    let mut samples = alloc::vec![record(&s, defect0)?];
    if cfg.t_final == 0.0 {
        return Ok(Trajectory { mode, samples });
    }

    let mut since_record = 0usize;
    let mut defect = 0.0f64;
    let mut recorded_last = true;
    match cfg.method {
        Method::Rk4 => {
            let steps = libm::ceil(cfg.t_final / cfg.dt - 1e-9).max(1.0) as usize;
            let dt = cfg.t_final / steps as f64;
            // Compensated summation keeps the rounding of many small
            // increments from accumulating linearly in the step count.
            let mut y = layout.pack(&s);
            let mut carry = alloc::vec![0.0; y.len()];
            for k in 1..=steps {
                let inc = rk4_increment(&layout, &y, &s, p, dt).map_err(|e| failure(s.t, &s, e))?;
                for ((yi, ci), di) in y.iter_mut().zip(carry.iter_mut()).zip(&inc) {
                    let d = di - *ci;
                    let sum = *yi + d;
                    *ci = (sum - *yi) - d;
                    *yi = sum;
                }
                let mut next = layout.unpack(&y, &s);
                next.t = k as f64 * dt;
                defect = defect
                    .max(layout.finish(&mut next, p, cfg.hermitize_each_step).map_err(|e| failure(next.t, &s, e))?);
                if cfg.hermitize_each_step && layout.g {
                    y = layout.pack(&next);
                }
                s = next;
                since_record += 1;
                recorded_last = false;
                if since_record == cfg.record_every {
                    samples.push(record(&s, defect)?);
                    since_record = 0;
                    defect = 0.0;
                    recorded_last = true;
                }
            }
        }
        Method::Rk4Adaptive => {
            let mut dt = cfg.dt;
            let min_dt = cfg.t_final * 1e-14;
            while s.t < cfg.t_final {
                let h = dt.min(cfg.t_final - s.t);
                let y = layout.pack(&s);
                let err_step = || -> Result<(Vec<f64>, f64)> {
                    let full = rk4_raw(&layout, &y, &s, p, h)?;
                    let mid = rk4_raw(&layout, &y, &s, p, h / 2.0)?;
                    let mid_state = layout.unpack(&mid, &s);
                    let two = rk4_raw(&layout, &mid, &mid_state, p, h / 2.0)?;
                    let err = full.iter().zip(&two).map(|(a, b)| (a - b).abs() / b.abs().max(1.0)).fold(0.0, f64::max);
                    let refined = two.iter().zip(&full).map(|(b, a)| b + (b - a) / 15.0).collect();
                    Ok((refined, err))
                };
                let (y1, err) = err_step().map_err(|e| failure(s.t, &s, e))?;
                if !err.is_finite() {
                    return Err(Error::NonFiniteState { t: s.t + h });
                }
                let factor = if err == 0.0 { 2.0 } else { (0.9 * libm::pow(cfg.rel_tol / err, 0.2)).clamp(0.2, 2.0) };
                if err > cfg.rel_tol {
                    dt = h * factor;
                    if dt < min_dt {
                        return Err(failure(s.t, &s, Error::InvalidArgument("adaptive step size underflow")));
                    }
                    continue;
                }
                let mut next = layout.unpack(&y1, &s);
                next.t = if cfg.t_final - (s.t + h) <= min_dt { cfg.t_final } else { s.t + h };
                defect = defect
                    .max(layout.finish(&mut next, p, cfg.hermitize_each_step).map_err(|e| failure(next.t, &s, e))?);
                s = next;
                dt = h * factor;
                since_record += 1;
                recorded_last = false;
                if since_record == cfg.record_every {
                    samples.push(record(&s, defect)?);
                    since_record = 0;
                    defect = 0.0;
                    recorded_last = true;
                }
            }
        }
    }
    if !recorded_last {
        samples.push(record(&s, defect)?);
    }
    Ok(Trajectory { mode, samples })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equilibrium_is_fixed() {
        let p = ModelParams::zero(2).with_alpha(2, 1.0).with_alpha(6, 1.0);
        let s = FullState::at_rest(2);
        let out = step_rk4(&s, &p, Mode::FullSecondOrder, 0.1).unwrap();
        assert_eq!(out.psi, s.psi);
        assert_eq!(out.g, s.g);
        assert_eq!(out.g_dot, s.g_dot);
    }

    #[test]
    fn zero_duration_gives_one_sample() {
        let p = ModelParams::zero(2).with_alpha(1, 0.5).with_alpha(5, -1.0);
        let cfg = IntegratorConfig { t_final: 0.0, ..Default::default() };
        let tr = integrate(&FullState::at_rest(2), &p, Mode::FixedG, &cfg).unwrap();
        assert_eq!(tr.samples.len(), 1);
        assert_eq!(tr.initial().state.t, 0.0);
    }

    #[test]
    fn pure_g_exponential() {
        let p = ModelParams::zero(2).with_alpha(6, 1.0);
        let mut s = FullState::at_rest(2);
        s.g_dot = CMatrix::from_real_diag(&[1.0, -1.0]);
        for _ in 0..1000 {
            s = step_rk4(&s, &p, Mode::PureG, 1e-3).unwrap();
        }
        let e = core::f64::consts::E;
        assert!((&s.g - &CMatrix::from_real_diag(&[e, 1.0 / e])).max_abs() <= 1e-10);
    }

    #[test]
    fn bad_config_is_rejected() {
        let cfg = IntegratorConfig { dt: 0.0, ..Default::default() };
        assert!(cfg.validate().is_err());
        let cfg = IntegratorConfig { record_every: 0, ..Default::default() };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn samples_are_increasing_and_end_at_final_time() {
        let p = ModelParams::zero(1).with_alpha(1, 0.5).with_alpha(5, -1.0);
        let cfg = IntegratorConfig { dt: 0.03, t_final: 1.0, record_every: 7, ..Default::default() };
        let mut s = FullState::at_rest(1);
        s.psi = CVector::from_real(&[1.0]);
        let tr = integrate(&s, &p, Mode::FixedG, &cfg).unwrap();
        assert!(tr.samples.windows(2).all(|w| w[0].state.t < w[1].state.t));
        assert!((tr.last().state.t - 1.0).abs() < 1e-12);
    }
}

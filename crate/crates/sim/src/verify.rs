//! Oracle-equivalence and conservation suites behind `dynprod verify`.
//!
//! Every suite draws its random instances from its own ChaCha stream of the
//! run seed, so suites can run in any order (or in parallel) and a single
//! suite can be rerun in isolation with identical instances.

use std::fmt;
use std::str::FromStr;
use std::thread;
use std::time::{Duration, Instant};

use dynprod_core::model::build_omega;
use dynprod_core::oracle::{brute_force_omega_inverse, euler_lagrange_residual_with, Held, ResidualOptions};
use dynprod_core::sampling::{
    generic_params, random_cvector, random_hermitian, random_positive_definite, random_state, StateScales,
};
use dynprod_core::special::{effective_hamiltonian, preset, pure_g_closed_form, Preset, PresetExtras};
use dynprod_core::{
    accelerations, apply4, hamiltonian, integrate, legendre, legendre_inverse, mat_exp, Accelerations, CMatrix, Error,
    FullState, IntegratorConfig, Mode, ModelParams, PsiRate, Rank4, Trajectory, C64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Level {
    /// `n ≤ 2`, ten random instances per suite.
    #[default]
    Quick,
    /// `n ≤ 4` and the full instance counts.
    Full,
}

impl Level {
    fn max_n(self) -> usize {
        match self {
            Level::Quick => 2,
            Level::Full => 4,
        }
    }

    fn states(self, full: usize) -> usize {
        match self {
            Level::Quick => 10,
            Level::Full => full,
        }
    }

    /// Number of long trajectories in the conservation suites.
    fn trajectories(self) -> usize {
        match self {
            Level::Quick => 3,
            Level::Full => 10,
        }
    }
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(format!("unknown level {s:?} (quick, full)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} [{}] {}: {} ({:.1} s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "omega inverse equivalence"),
    (2, "Euler-Lagrange consistency"),
    (3, "energy conservation"),
    (4, "Noether conservation"),
    (5, "pure-G closed form"),
    (6, "Schrodinger limit"),
    (7, "Legendre round trip"),
    (8, "tau limit"),
    (9, "effective Hamiltonian"),
];

/// Candidate implementation of `Ω⁻¹` checked by [`omega_inverse_suite`].
pub type OmegaInverse = dyn Fn(&FullState, &ModelParams) -> dynprod_core::Result<Rank4> + Sync;

/// Largest `cond(G)` along a trajectory for it to count as well conditioned
/// in the conservation suites. Beyond this the generic class starts running
/// into finite-time blow-up of `G` and `ψ`.
pub const TRAJECTORY_CONDITION_BOUND: f64 = 50.0;

/// Runs every suite, in parallel, and returns the reports in criterion order.
pub fn run_verify(level: Level, seed: u64) -> Vec<CriterionReport> {
    thread::scope(|scope| {
        let handles: Vec<_> =
            CRITERIA.iter().map(|&(id, _)| scope.spawn(move || run_criterion(id, level, seed))).collect();
        handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
    })
}

pub fn run_criterion(id: u8, level: Level, seed: u64) -> CriterionReport {
    match id {
        1 => omega_inverse_suite(level, seed, &dynprod_core::model::build_omega_inverse),
        2 => euler_lagrange_suite(level, seed),
        3 => energy_suite(level, seed),
        4 => noether_suite(level, seed),
        5 => pure_g_suite(level, seed),
        6 => schrodinger_suite(level, seed),
        7 => legendre_suite(level, seed),
        8 => tau_limit_suite(level, seed),
        9 => effective_hamiltonian_suite(level, seed),
        _ => panic!("no criterion {id}"),
    }
}

/// Failed checks of one suite.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
}

impl Checks {
    fn at_most(&mut self, what: impl fmt::Display, value: f64, limit: f64) {
        if !(value <= limit) {
            self.failures.push(format!("{what}: {value:.3e} > {limit:e}"));
        }
    }

    fn at_least(&mut self, what: impl fmt::Display, value: f64, limit: f64) {
        if !(value >= limit) {
            self.failures.push(format!("{what}: {value:.3e} < {limit:e}"));
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }

    fn report(self, id: u8, start: Instant, summary: String) -> CriterionReport {
        let name = CRITERIA[usize::from(id) - 1].1;
        let passed = self.failures.is_empty();
        let detail = match self.failures.first() {
            None => summary,
            Some(first) => format!("{summary}; {} failure(s), first: {first}", self.failures.len()),
        };
        CriterionReport { id, name, passed, detail, elapsed: start.elapsed() }
    }
}

fn stream(seed: u64, id: u8) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(id));
    rng
}

fn rank4_max_diff(a: &Rank4, b: &Rank4) -> f64 {
    a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Analytic (or injected) `Ω⁻¹` against the dense inverse of the flattened
/// `Ω`, plus composition with `Ω` on random hermitian matrices.
pub fn omega_inverse_suite(level: Level, seed: u64, inverse: &OmegaInverse) -> CriterionReport {
    let start = Instant::now();
    let mut rng = stream(seed, 1);
    let mut checks = Checks::default();
    let (mut dev, mut comp, mut tested, mut rejected) = (0.0f64, 0.0f64, 0, 0);
    for n in 1..=level.max_n() {
        for i in 0..level.states(100) {
            let p = generic_params(&mut rng, n);
            let s = random_state(&mut rng, n, StateScales::default());
            let probes: Vec<CMatrix> = (0..3).map(|_| random_hermitian(&mut rng, n, 1.0)).collect();
            let brute = match brute_force_omega_inverse(&s, &p) {
                Ok(b) => b,
                Err(Error::IllConditioned { .. }) => {
                    rejected += 1;
                    continue;
                }
                Err(e) => {
                    checks.fail(format!("n={n} #{i}: brute force: {e}"));
                    continue;
                }
            };
            let analytic = match inverse(&s, &p) {
                Ok(a) => a,
                Err(e) => {
                    checks.fail(format!("n={n} #{i}: analytic: {e}"));
                    continue;
                }
            };
            tested += 1;
            let d = rank4_max_diff(&analytic, &brute) / brute.max_abs();
            checks.at_most(format_args!("n={n} #{i} relative deviation"), d, 1e-8);
            dev = dev.max(d);
            let omega = build_omega(&s, &p).expect("omega of a valid state");
            for x in &probes {
                let there = apply4(&analytic, &apply4(&omega, x).unwrap()).unwrap();
                let back = apply4(&omega, &apply4(&analytic, x).unwrap()).unwrap();
                let c = (&there - x).max_abs().max((&back - x).max_abs()) / x.max_abs();
                checks.at_most(format_args!("n={n} #{i} composition"), c, 1e-10);
                comp = comp.max(c);
            }
        }
    }
    let summary = format!(
        "max relative deviation {dev:.2e}, max composition defect {comp:.2e} ({tested} states, {rejected} ill-conditioned skipped)"
    );
    checks.report(1, start, summary)
}

fn held(mode: Mode) -> Held {
    match mode {
        Mode::FixedG => Held::G,
        Mode::PureG => Held::Psi,
        _ => Held::Nothing,
    }
}

pub fn euler_lagrange_suite(level: Level, seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rng = stream(seed, 2);
    let mut checks = Checks::default();
    // FixedG appears twice: second order (α₂ ≠ 0) and first order (α₂ = 0).
    let variants = [
        (Mode::FullSecondOrder, false),
        (Mode::FirstOrderPsi, true),
        (Mode::FixedG, false),
        (Mode::FixedG, true),
        (Mode::PureG, false),
    ];
    let (mut worst, mut weakest) = (0.0f64, f64::INFINITY);
    let count = level.states(50);
    for (mode, first_order) in variants {
        for i in 0..count {
            let mut p = generic_params(&mut rng, 2);
            if first_order {
                p = p.with_alpha(2, 0.0);
            }
            let s = random_state(&mut rng, 2, StateScales::default());
            let label = format!("{}{} #{i}", mode.name(), if first_order { " (alpha2 = 0)" } else { "" });
            let opt = ResidualOptions { h: 1e-5, held: held(mode), ..Default::default() };
            let result = accelerations(&s, &p, mode).and_then(|a| {
                let r = euler_lagrange_residual_with(&s, &a, &p, opt)?;
                let mut bad = a;
                match &mut bad.psi {
                    PsiRate::Acceleration(v) | PsiRate::Velocity(v) => v[0].re += 0.1,
                    PsiRate::Frozen => bad.g_ddot[(0, 0)].re += 0.1,
                }
                Ok((r, euler_lagrange_residual_with(&s, &bad, &p, opt)?))
            });
            match result {
                Ok((r, perturbed)) => {
                    checks.at_most(format_args!("{label} residual"), r, 1e-6);
                    checks.at_least(format_args!("{label} perturbed residual"), perturbed, 1e-2);
                    worst = worst.max(r);
                    weakest = weakest.min(perturbed);
                }
                Err(e) => checks.fail(format!("{label}: {e}")),
            }
        }
    }
    let summary = format!(
        "max residual {worst:.2e}, min perturbed residual {weakest:.2e} ({count} states x {} mode variants)",
        variants.len()
    );
    checks.report(2, start, summary)
}

fn max_condition(tr: &Trajectory) -> f64 {
    tr.samples.iter().map(|s| s.diagnostics.g_condition).fold(0.0, f64::max)
}

fn conservation_config(dt: f64) -> IntegratorConfig {
    IntegratorConfig { dt, t_final: 10.0, record_every: (1e-2 / dt).round() as usize, ..Default::default() }
}

/// Generic `n = 2` second-order instances (`α₂ = 0.5`, `κ = 1`, slow `Ġ`)
/// whose `dt = 1e-3` trajectory over `T = 10` stays well conditioned.
/// Returns the accepted instances with their trajectories and the number
/// of rejected draws.
fn conservation_instances(
    rng: &mut ChaCha8Rng,
    count: usize,
    charge_free: bool,
) -> (Vec<(FullState, ModelParams, Trajectory)>, usize) {
    let scales = StateScales { psi: 1.0, psi_dot: 1.0, g_min_eig: 0.5, g_dot: 0.1 };
    let mut accepted = Vec::with_capacity(count);
    let mut rejected = 0;
    while accepted.len() < count && rejected < 20 * count {
        let mut p = generic_params(rng, 2).with_alpha(2, 0.5).with_kappa(1.0);
        if charge_free {
            p = p.with_alpha(5, 0.0);
        }
        let s = random_state(rng, 2, scales);
        match integrate(&s, &p, Mode::FullSecondOrder, &conservation_config(1e-3)) {
            Ok(tr) if max_condition(&tr) <= TRAJECTORY_CONDITION_BOUND => accepted.push((s, p, tr)),
            _ => rejected += 1,
        }
    }
    (accepted, rejected)
}

pub fn energy_suite(level: Level, seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rng = stream(seed, 3);
    let mut checks = Checks::default();
    let count = level.trajectories();
    let (instances, rejected) = conservation_instances(&mut rng, count, false);
    if instances.len() < count {
        checks.fail(format!("only {} of {count} well-conditioned instances found", instances.len()));
    }
    let (mut worst, mut lo, mut hi) = (0.0f64, f64::INFINITY, 0.0f64);
    for (i, (s, p, coarse)) in instances.iter().enumerate() {
        let drift = coarse.energy_drift();
        checks.at_most(format_args!("#{i} energy drift"), drift, 1e-6);
        worst = worst.max(drift);
        match integrate(s, p, Mode::FullSecondOrder, &conservation_config(5e-4)) {
            Ok(fine) => {
                let ratio = drift / fine.energy_drift();
                if !(12.0..=20.0).contains(&ratio) {
                    checks.fail(format!("#{i} drift ratio {ratio:.2} outside [12, 20]"));
                }
                lo = lo.min(ratio);
                hi = hi.max(ratio);
            }
            Err(e) => checks.fail(format!("#{i} at dt/2: {e}")),
        }
    }
    let summary = format!(
        "max relative drift {worst:.2e}, halving ratio in [{lo:.2}, {hi:.2}] ({} trajectories, {rejected} ill-conditioned draws skipped)",
        instances.len()
    );
    checks.report(3, start, summary)
}

pub fn noether_suite(level: Level, seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rng = stream(seed, 4);
    let mut checks = Checks::default();
    let count = level.trajectories();
    let (instances, rejected) = conservation_instances(&mut rng, count, true);
    if instances.len() < count {
        checks.fail(format!("only {} of {count} well-conditioned instances found", instances.len()));
    }
    let (mut vd, mut wd, mut defect) = (0.0f64, 0.0f64, 0.0f64);
    for (i, (_, _, tr)) in instances.iter().enumerate() {
        checks.at_most(format_args!("#{i} V drift"), tr.v_drift(), 1e-6);
        checks.at_most(format_args!("#{i} W drift"), tr.w_drift(), 1e-6);
        vd = vd.max(tr.v_drift());
        wd = wd.max(tr.w_drift());
        let d = tr.samples.iter().map(|x| x.charges.v_defect.max(x.charges.w_defect)).fold(0.0, f64::max);
        checks.at_most(format_args!("#{i} charge hermiticity defect"), d, 1e-10);
        defect = defect.max(d);
    }
    let summary = format!(
        "max V drift {vd:.2e}, max W drift {wd:.2e}, max hermiticity defect {defect:.2e} ({} trajectories, {rejected} ill-conditioned draws skipped)",
        instances.len()
    );
    checks.report(4, start, summary)
}

pub fn pure_g_suite(level: Level, seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rng = stream(seed, 5);
    let mut checks = Checks::default();
    let sizes: &[usize] = match level {
        Level::Quick => &[2],
        Level::Full => &[2, 3],
    };
    let per_size = 10;
    let (mut err, mut mismatch, mut total) = (0.0f64, 0.0f64, 0);
    for &n in sizes {
        for i in 0..per_size {
            let p = generic_params(&mut rng, n);
            let g0 = random_positive_definite(&mut rng, n, 0.5);
            let gdot0 = random_hermitian(&mut rng, n, 0.5);
            let mut s = FullState::at_rest(n);
            s.g = g0.clone();
            s.g_dot = gdot0.clone();
            total += 1;
            let cfg = IntegratorConfig { dt: 1e-3, t_final: 1.0, record_every: 1000, ..Default::default() };
            let run = integrate(&s, &p, Mode::PureG, &cfg);
            let closed = pure_g_closed_form(&g0, &gdot0, 1.0);
            match (run, closed) {
                (Ok(tr), Ok(sol)) => {
                    let e = (&tr.last().state.g - &sol.g).max_abs();
                    checks.at_most(format_args!("n={n} #{i} error at T = 1"), e, 1e-6);
                    checks.at_most(format_args!("n={n} #{i} left/right mismatch"), sol.mismatch, 1e-10);
                    err = err.max(e);
                    mismatch = mismatch.max(sol.mismatch);
                }
                (Err(e), _) | (_, Err(e)) => checks.fail(format!("n={n} #{i}: {e}")),
            }
        }
    }
    let summary = format!("max error {err:.2e}, max left/right mismatch {mismatch:.2e} ({total} instances)");
    checks.report(5, start, summary)
}

pub fn schrodinger_suite(level: Level, seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rng = stream(seed, 6);
    let mut checks = Checks::default();
    let n = level.max_n().min(3);
    let count = level.trajectories();
    let (mut err, mut drift) = (0.0f64, 0.0f64);
    for i in 0..count {
        let h = random_hermitian(&mut rng, n, 1.0);
        let mut s = FullState::at_rest(n);
        s.psi = random_cvector(&mut rng, n, 1.0);
        let extras = PresetExtras { hbar: Some(1.0), h: Some(h.clone()), ..Default::default() };
        let result = preset(Preset::UsualSchrodinger, &extras)
            .and_then(|(p, mode)| integrate(&s, &p, mode, &IntegratorConfig::default()));
        match result {
            Ok(tr) => {
                let expected = mat_exp(&h.scale(C64::new(0.0, -1.0)), 10.0).mul_vec(&s.psi);
                let e = (&tr.last().state.psi - &expected).max_abs();
                checks.at_most(format_args!("#{i} error at T = 10"), e, 1e-8);
                checks.at_most(format_args!("#{i} theta1 drift"), tr.theta1_drift(), 1e-10);
                err = err.max(e);
                drift = drift.max(tr.theta1_drift());
            }
            Err(e) => checks.fail(format!("#{i}: {e}")),
        }
    }
    let summary = format!("max error {err:.2e}, max theta1 drift {drift:.2e} ({count} runs, n = {n})");
    checks.report(6, start, summary)
}

pub fn legendre_suite(level: Level, seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rng = stream(seed, 7);
    let mut checks = Checks::default();
    let count = level.states(100);
    let (mut round, mut gap) = (0.0f64, 0.0f64);
    for i in 0..count {
        let n = rng.gen_range(1..=level.max_n());
        let p = generic_params(&mut rng, n);
        let s = random_state(&mut rng, n, StateScales::default());
        let result = legendre(&s, &p).and_then(|c| {
            let back = legendre_inverse(&c, &p)?;
            let e = dynprod_core::energy(&s, &p)?;
            Ok((back, e, hamiltonian(&c, &p)?))
        });
        match result {
            Ok((back, e, h)) => {
                let r = (&back.psi_dot - &s.psi_dot).max_abs().max((&back.g_dot - &s.g_dot).max_abs());
                let g = (h - e).abs() / (1.0 + e.abs());
                checks.at_most(format_args!("n={n} #{i} round trip"), r, 1e-12);
                checks.at_most(format_args!("n={n} #{i} H - E"), g, 1e-10);
                round = round.max(r);
                gap = gap.max(g);
            }
            Err(e) => checks.fail(format!("n={n} #{i}: {e}")),
        }
    }
    let summary = format!("max round-trip error {round:.2e}, max |H - E|/(1 + |E|) {gap:.2e} ({count} states)");
    checks.report(7, start, summary)
}

pub fn tau_limit_suite(level: Level, seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rng = stream(seed, 8);
    let mut checks = Checks::default();
    let n = level.max_n().min(3);
    let count = level.trajectories();
    let taus = [1e-1, 1e-2, 1e-3];
    let mut gaps_seen = Vec::new();
    for i in 0..count {
        let h = random_hermitian(&mut rng, n, 1.0);
        let psi0 = random_cvector(&mut rng, n, 1.0);
        let base = PresetExtras { hbar: Some(1.0), h: Some(h.clone()), ..Default::default() };
        let mut s0 = FullState::at_rest(n);
        s0.psi = psi0.clone();
        let result = (|| {
            let (usual, mode) = preset(Preset::UsualSchrodinger, &base)?;
            let cfg = IntegratorConfig { t_final: 1.0, record_every: 1000, ..Default::default() };
            let reference = integrate(&s0, &usual, mode, &cfg)?.last().state.psi.clone();
            let mut s = s0.clone();
            s.psi_dot = h.mul_vec(&psi0).scale(C64::new(0.0, -1.0));
            let mut gaps = Vec::new();
            for tau in taus {
                let (p, mode) = preset(Preset::SecondOrderModified, &PresetExtras { tau: Some(tau), ..base.clone() })?;
                let dt = (tau / 20.0).min(1e-3);
                let cfg = IntegratorConfig { dt, t_final: 1.0, record_every: usize::MAX, ..Default::default() };
                gaps.push((&integrate(&s, &p, mode, &cfg)?.last().state.psi - &reference).max_abs());
            }
            Ok::<_, Error>(gaps)
        })();
        match result {
            Ok(gaps) => {
                if !gaps.windows(2).all(|w| w[1] < w[0]) {
                    checks.fail(format!(
                        "#{i} discrepancies not decreasing: {:.3e}, {:.3e}, {:.3e}",
                        gaps[0], gaps[1], gaps[2]
                    ));
                }
                gaps_seen.push(gaps);
            }
            Err(e) => checks.fail(format!("#{i}: {e}")),
        }
    }
    let column_max = |k: usize| gaps_seen.iter().map(|g| g[k]).fold(0.0, f64::max);
    let summary = format!(
        "max discrepancy at tau = 1e-1, 1e-2, 1e-3: {:.2e}, {:.2e}, {:.2e} ({} runs, n = {n})",
        column_max(0),
        column_max(1),
        column_max(2),
        gaps_seen.len()
    );
    checks.report(8, start, summary)
}

pub fn effective_hamiltonian_suite(level: Level, seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rng = stream(seed, 9);
    let mut checks = Checks::default();
    let count = level.states(50);
    let mut worst = 0.0f64;
    for i in 0..count {
        let n = rng.gen_range(1..=level.max_n());
        let p = generic_params(&mut rng, n).with_alpha(2, 0.0);
        let s = random_state(&mut rng, n, StateScales::default());
        let result =
            effective_hamiltonian(&s, &p).and_then(|heff| Ok((heff, accelerations(&s, &p, Mode::FirstOrderPsi)?)));
        match result {
            Ok((heff, Accelerations { psi: PsiRate::Velocity(v), .. })) => {
                let lhs = v.scale(C64::new(0.0, p.hbar));
                let d = (&lhs - &heff.mul_vec(&s.psi)).max_abs();
                checks.at_most(format_args!("n={n} #{i}"), d, 1e-12);
                worst = worst.max(d);
            }
            Ok(_) => checks.fail(format!("n={n} #{i}: first-order mode did not return a velocity")),
            Err(e) => checks.fail(format!("n={n} #{i}: {e}")),
        }
    }
    checks.report(9, start, format!("max |i hbar psi_dot - H_eff psi| {worst:.2e} ({count} states)"))
}

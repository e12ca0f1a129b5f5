//! JSON run configuration.
//!
//! ```json
//! {
//!   "n": 2,
//!   "preset": { "name": "UsualSchrodinger" },
//!   "hbar": 1.0,
//!   "H": [[1.0, [0.0, -0.5]], [[0.0, 0.5], 2.0]],
//!   "psi0": [1.0, 0.0],
//!   "G0": "identity",
//!   "integrator": { "dt": 1e-3, "t_final": 10.0 }
//! }
//! ```
//!
//! A complex number is either a plain real or an `[re, im]` pair; vectors
//! and matrices are (row-major, nested) arrays of those. `H`, `psi0`,
//! `psi_dot0`, `G0` and `G_dot0` may instead be the string `"random"`, in
//! which case they are drawn from the run seed (`G0` positive definite,
//! `H` and `G_dot0` hermitian). `"zero"` and `"identity"` are also accepted
//! for matrices.
//!
//! Without a preset, `alpha` (nine numbers) and `mode` are required. With a
//! preset, the preset fixes the constants it defines and the mode; `alpha`
//! then only supplies the ones it leaves free, and `null` entries mean
//! "not given".

use std::fs;
use std::path::Path;

use dynprod_core::algebra::hermitian_eigenvalues;
use dynprod_core::model::HERMITIAN_TOL;
use dynprod_core::sampling::{random_cvector, random_hermitian, random_positive_definite};
use dynprod_core::special::{preset, Preset, PresetExtras};
use dynprod_core::{hermitize, CMatrix, CVector, FullState, IntegratorConfig, Method, Mode, ModelParams, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

/// Seed used when neither the config nor the command line gives one.
pub const DEFAULT_SEED: u64 = 20_241_016;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error("field `{field}` is not hermitian (defect {defect:e})")]
    NotHermitian { field: String, defect: f64 },
    #[error(transparent)]
    Model(#[from] dynprod_core::Error),
}

type Result<T> = std::result::Result<T, ConfigError>;

fn schema(field: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Schema { field: field.into(), message: message.into() }
}

/// A validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub params: ModelParams,
    pub state: FullState,
    pub integrator: IntegratorConfig,
    pub mode: Mode,
    pub seed: u64,
}

impl Config {
    /// Fully explicit JSON form (no preset, no random fields) that
    /// [`parse_config`] maps back to the same `Config`.
    pub fn to_json(&self) -> Value {
        let p = &self.params;
        let alpha: Vec<Value> = p.alphas().iter().map(|&a| json!(a)).collect();
        let ic = &self.integrator;
        json!({
            "n": p.n(),
            "seed": self.seed,
            "mode": self.mode.name(),
            "alpha": alpha,
            "kappa": p.kappa,
            "hbar": p.hbar,
            "H": matrix_json(p.h()),
            "psi0": vector_json(&self.state.psi),
            "psi_dot0": vector_json(&self.state.psi_dot),
            "G0": matrix_json(&self.state.g),
            "G_dot0": matrix_json(&self.state.g_dot),
            "integrator": {
                "dt": ic.dt,
                "t_final": ic.t_final,
                "method": method_name(ic.method),
                "rel_tol": ic.rel_tol,
                "record_every": ic.record_every,
                "hermitize_each_step": ic.hermitize_each_step,
            },
        })
    }
}

/// Reads and validates a config file. `seed` overrides the file's seed.
pub fn load_config(path: &Path, seed: Option<u64>) -> Result<Config> {
    let text =
        fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
    parse_config(&text, seed)
}

pub fn parse_config(text: &str, seed: Option<u64>) -> Result<Config> {
    let root: Value = serde_json::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let Value::Object(obj) = root else {
        return Err(schema("<root>", "expected an object"));
    };
    let mut f = Fields::new(obj, "");
    let n = f.required("n", as_usize)?;
    if n == 0 {
        return Err(schema("n", "must be at least 1"));
    }
    let seed = match seed {
        Some(s) => s,
        None => f.optional("seed", as_u64)?.unwrap_or(DEFAULT_SEED),
    };
    let draw = Draw { seed, n };

    let kappa = f.optional("kappa", as_f64)?;
    let hbar = f.optional("hbar", as_f64)?;
    let alpha = f.optional("alpha", as_alpha)?;
    let mode = f.optional("mode", as_mode)?;
    let preset_spec = f.optional("preset", as_preset)?;

    let h = match f.take("H") {
        None => CMatrix::zeros(n),
        Some(v) => hermitian_field(&v, "H", n, |rng| random_hermitian(rng, n, 1.0), &draw, 0)?,
    };
    let psi = match f.take("psi0") {
        None => return Err(schema("psi0", "missing field")),
        Some(v) => vector_field(&v, "psi0", &draw, 1, 1.0)?,
    };
    let psi_dot = match f.take("psi_dot0") {
        None => CVector::zeros(n),
        Some(v) => vector_field(&v, "psi_dot0", &draw, 2, 0.5)?,
    };
    let g = match f.take("G0") {
        None => return Err(schema("G0", "missing field")),
        Some(v) => hermitian_field(&v, "G0", n, |rng| random_positive_definite(rng, n, 0.5), &draw, 3)?,
    };
    if !hermitian_eigenvalues(&g).iter().all(|&e| e > 0.0) {
        return Err(schema("G0", "must be positive definite"));
    }
    let g_dot = match f.take("G_dot0") {
        None => CMatrix::zeros(n),
        Some(v) => hermitian_field(&v, "G_dot0", n, |rng| random_hermitian(rng, n, 0.1), &draw, 4)?,
    };
    let integrator = match f.take("integrator") {
        None => IntegratorConfig::default(),
        Some(v) => integrator_field(v)?,
    };
    f.finish()?;

    let (params, mode) = match preset_spec {
        Some((which, tau)) => {
            let extras = PresetExtras {
                hbar: Some(hbar.unwrap_or(1.0)),
                tau,
                h: Some(h),
                n: Some(n),
                alpha: alpha.unwrap_or([None; 9]),
                kappa,
            };
            let (params, preset_mode) = preset(which, &extras).map_err(|e| match e {
                dynprod_core::Error::MissingExtra(what) => {
                    schema(extra_field(what), format!("required by preset {}", which.name()))
                }
                other => other.into(),
            })?;
            if let Some(m) = mode {
                if m != preset_mode {
                    return Err(schema(
                        "mode",
                        format!("preset {} runs in mode {}, not {}", which.name(), preset_mode.name(), m.name()),
                    ));
                }
            }
            (params, preset_mode)
        }
        None => {
            let alpha = alpha.ok_or_else(|| schema("alpha", "missing field (required without a preset)"))?;
            let mut values = [0.0; 9];
            for (k, a) in alpha.iter().enumerate() {
                values[k] = a.ok_or_else(|| schema(format!("alpha[{k}]"), "null is only allowed with a preset"))?;
            }
            let mode = mode.ok_or_else(|| schema("mode", "missing field (required without a preset)"))?;
            (ModelParams::new(values, kappa.unwrap_or(0.0), hbar.unwrap_or(1.0), h)?, mode)
        }
    };
    if !(params.hbar > 0.0) {
        return Err(schema("hbar", "must be positive"));
    }

    let state = FullState::new(psi, psi_dot, g, g_dot);
    state.validate(n)?;
    Ok(Config { params, state, integrator, mode, seed })
}

fn extra_field(what: &str) -> &str {
    match what {
        "alpha6" => "alpha[5]",
        "tau" => "preset.tau",
        other => other,
    }
}

/// Object fields, consumed one by one so leftovers can be reported.
struct Fields {
    map: Map<String, Value>,
    prefix: &'static str,
}

impl Fields {
    fn new(map: Map<String, Value>, prefix: &'static str) -> Self {
        Self { map, prefix }
    }

    fn name(&self, key: &str) -> String {
        format!("{}{}", self.prefix, key)
    }

    fn take(&mut self, key: &str) -> Option<Value> {
        self.map.remove(key)
    }

    fn optional<T>(&mut self, key: &str, parse: impl Fn(&Value) -> Option<T>) -> Result<Option<T>> {
        match self.map.remove(key) {
            None => Ok(None),
            Some(v) => parse(&v).map(Some).ok_or_else(|| schema(self.name(key), format!("unexpected value {v}"))),
        }
    }

    fn required<T>(&mut self, key: &str, parse: impl Fn(&Value) -> Option<T>) -> Result<T> {
        self.optional(key, parse)?.ok_or_else(|| schema(self.name(key), "missing field"))
    }

    fn finish(self) -> Result<()> {
        match self.map.keys().next() {
            None => Ok(()),
            Some(k) => Err(schema(format!("{}{}", self.prefix, k), "unknown field")),
        }
    }
}

fn as_f64(v: &Value) -> Option<f64> {
    v.as_f64().filter(|x| x.is_finite())
}

fn as_u64(v: &Value) -> Option<u64> {
    v.as_u64()
}

fn as_usize(v: &Value) -> Option<usize> {
    v.as_u64().and_then(|x| usize::try_from(x).ok())
}

fn as_alpha(v: &Value) -> Option<[Option<f64>; 9]> {
    let items = v.as_array().filter(|a| a.len() == 9)?;
    let mut out = [None; 9];
    for (slot, item) in out.iter_mut().zip(items) {
        *slot = match item {
            Value::Null => None,
            x => Some(as_f64(x)?),
        };
    }
    Some(out)
}

fn as_mode(v: &Value) -> Option<Mode> {
    let name = v.as_str()?;
    Mode::ALL.into_iter().find(|m| m.name() == name)
}

/// `"Name"` or `{"name": "Name", "tau": 0.01}`.
fn as_preset(v: &Value) -> Option<(Preset, Option<f64>)> {
    match v {
        Value::String(s) => Some((Preset::from_name(s)?, None)),
        Value::Object(m) => {
            let which = Preset::from_name(m.get("name")?.as_str()?)?;
            let tau = match m.get("tau") {
                None => None,
                Some(t) => Some(as_f64(t)?),
            };
            if m.keys().any(|k| k != "name" && k != "tau") {
                return None;
            }
            Some((which, tau))
        }
        _ => None,
    }
}

fn as_complex(v: &Value) -> Option<C64> {
    match v {
        Value::Number(_) => Some(C64::new(as_f64(v)?, 0.0)),
        Value::Array(pair) if pair.len() == 2 => Some(C64::new(as_f64(&pair[0])?, as_f64(&pair[1])?)),
        _ => None,
    }
}

fn complex_json(z: C64) -> Value {
    json!([z.re, z.im])
}

fn vector_json(v: &CVector) -> Value {
    Value::Array(v.iter().map(|&z| complex_json(z)).collect())
}

fn matrix_json(m: &CMatrix) -> Value {
    Value::Array((0..m.dim()).map(|r| Value::Array(m.row(r).iter().map(|&z| complex_json(z)).collect())).collect())
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Rk4 => "rk4",
        Method::Rk4Adaptive => "rk4_adaptive",
    }
}

/// Random fields each get their own ChaCha stream, so one field being
/// random or explicit does not change the draws of another.
struct Draw {
    seed: u64,
    n: usize,
}

impl Draw {
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

fn vector_field(v: &Value, field: &str, draw: &Draw, stream: u64, scale: f64) -> Result<CVector> {
    let n = draw.n;
    match v {
        Value::String(s) if s == "random" => Ok(random_cvector(&mut draw.rng(stream), n, scale)),
        Value::String(s) if s == "zero" => Ok(CVector::zeros(n)),
        Value::Array(items) => {
            if items.len() != n {
                return Err(schema(field, format!("expected {n} entries, found {}", items.len())));
            }
            let mut out = Vec::with_capacity(n);
            for (i, item) in items.iter().enumerate() {
                out.push(
                    as_complex(item).ok_or_else(|| schema(format!("{field}[{i}]"), "expected a number or [re, im]"))?,
                );
            }
            Ok(CVector::from_vec(out))
        }
        _ => Err(schema(field, "expected an array or \"random\"")),
    }
}

fn hermitian_field(
    v: &Value,
    field: &str,
    n: usize,
    random: impl FnOnce(&mut ChaCha8Rng) -> CMatrix,
    draw: &Draw,
    stream: u64,
) -> Result<CMatrix> {
    let m = match v {
        Value::String(s) if s == "random" => random(&mut draw.rng(stream)),
        Value::String(s) if s == "zero" => CMatrix::zeros(n),
        Value::String(s) if s == "identity" => CMatrix::identity(n),
        Value::Array(rows) => {
            if rows.len() != n {
                return Err(schema(field, format!("expected {n} rows, found {}", rows.len())));
            }
            let mut out = CMatrix::zeros(n);
            for (r, row) in rows.iter().enumerate() {
                let row = row
                    .as_array()
                    .filter(|x| x.len() == n)
                    .ok_or_else(|| schema(format!("{field}[{r}]"), format!("expected a row of {n} entries")))?;
                for (c, item) in row.iter().enumerate() {
                    out[(r, c)] = as_complex(item)
                        .ok_or_else(|| schema(format!("{field}[{r}][{c}]"), "expected a number or [re, im]"))?;
                }
            }
            out
        }
        _ => return Err(schema(field, "expected a nested array, \"random\", \"zero\" or \"identity\"")),
    };
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL * (1.0 + m.max_abs()) {
        return Err(ConfigError::NotHermitian { field: field.to_string(), defect });
    }
    Ok(hermitize(&m).0)
}

fn integrator_field(v: Value) -> Result<IntegratorConfig> {
    let Value::Object(map) = v else {
        return Err(schema("integrator", "expected an object"));
    };
    let mut f = Fields::new(map, "integrator.");
    let d = IntegratorConfig::default();
    let method = match f.optional("method", |v| v.as_str().map(str::to_owned))? {
        None => d.method,
        Some(name) => match name.as_str() {
            "rk4" => Method::Rk4,
            "rk4_adaptive" => Method::Rk4Adaptive,
            _ => return Err(schema("integrator.method", format!("unknown method {name:?} (rk4, rk4_adaptive)"))),
        },
    };
    let cfg = IntegratorConfig {
        dt: f.optional("dt", as_f64)?.unwrap_or(d.dt),
        t_final: f.optional("t_final", as_f64)?.unwrap_or(d.t_final),
        method,
        rel_tol: f.optional("rel_tol", as_f64)?.unwrap_or(d.rel_tol),
        hermitize_each_step: f.optional("hermitize_each_step", Value::as_bool)?.unwrap_or(d.hermitize_each_step),
        record_every: f.optional("record_every", as_usize)?.unwrap_or(d.record_every),
    };
    f.finish()?;
    cfg.validate().map_err(|e| schema("integrator", e.to_string()))?;
    Ok(cfg)
}

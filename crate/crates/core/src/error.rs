use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },

    #[error("matrix is not square: {rows} rows, {cols} columns")]
    NotSquare { rows: usize, cols: usize },

    #[error("size {0} is not a perfect square")]
    NotPerfectSquare(usize),

    #[error("{what} is not hermitian (defect {defect:e})")]
    NotHermitian { what: &'static str, defect: f64 },

    #[error("{0} is singular")]
    Singular(&'static str),

    /// A model denominator vanished; the payload names it (`alpha6`,
    /// `alpha6 + n*alpha7`, `1 + alpha9*theta1`, `1 + alpha8*theta2`, ...).
    #[error("SingularParams: {0}")]
    SingularParams(&'static str),

    #[error("IllConditioned: {what} (measure {value:e})")]
    IllConditioned { what: &'static str, value: f64 },

    #[error("DegenerateLegendre: alpha2 = 0 has no velocity-space inverse for psi")]
    DegenerateLegendre,

    #[error("ModeParamMismatch: {0}")]
    ModeParamMismatch(&'static str),

    #[error("{what} is not real (imaginary part {imag:e})")]
    NonReal { what: &'static str, imag: f64 },

    #[error("missing preset parameter `{0}`")]
    MissingExtra(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("StepFailure at t = {t}: {reason}")]
    StepFailure { t: f64, reason: String },

    #[error("NonFiniteState at t = {t}")]
    NonFiniteState { t: f64 },
}

//! Configuration files, trajectory CSV output, the verification suites and
//! the `dynprod` command line, on top of `dynprod-core`.

// `!(x <= tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod output;
pub mod run;
pub mod verify;

pub use config::{load_config, parse_config, Config, ConfigError, DEFAULT_SEED};
pub use run::{run_simulate, simulate, RunError, Summary};
pub use verify::{run_verify, CriterionReport, Level};

//! Finite-level quantum dynamics with a dynamical scalar product.
//!
//! The configuration of the system is a wave function `ψ ∈ ℂⁿ` together with
//! a hermitian form `G` on `ℂⁿ`; both evolve under a single Lagrangian that
//! couples them through a rank-4 kinetic tensor `Ω[ψ, G]`. This crate
//! evaluates that Lagrangian, solves the coupled Euler–Lagrange equations,
//! maps to and from the canonical picture, computes the energy and the
//! `GL(n, ℂ)` charges, and integrates trajectories.
//!
//! The crate is `no_std` and only needs `alloc`. IO, configuration files and
//! the command line live in the companion `dynprod-sim` crate.
//!
//! # Index conventions
//!
//! * A covariant hermitian tensor `T_{āb}` is stored as the matrix `M[a][b]`,
//!   so the scalar product itself is the plain matrix `G`.
//! * The contravariant inverse `G^{bā}` is `G⁻¹[b][a]`, which makes
//!   `Σ_a G^{bā} G_{āc} = δᵇ_c` a literal matrix inverse.
//! * Rank-4 tensors use [`Rank4`] with `T[a][b][c][d] = T^{b ā d c̄}`:
//!   output pair `(ā, b)`, input pair `(c̄, d)`, both flattened row-major.
//!   Any two-index object passed through [`apply4`] uses the same "pair
//!   layout": entry `[a][b]` holds the component whose conjugated index is
//!   `a`. For a covariant tensor that is the ordinary matrix; for a
//!   contravariant one it is the transpose of the ordinary matrix
//!   (see [`CMatrix::transpose`]).

#![no_std]
// `!(x <= tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod dynamics;
mod error;
pub mod integrate;
pub mod model;
pub mod oracle;
pub mod sampling;
pub mod special;

pub use algebra::{apply4, flatten4, hermitize, mat_exp, unflatten4, CMatrix, CVector, Rank4};
pub use dynamics::{
    accelerations, energy, hamiltonian, legendre, legendre_inverse, noether_charges, Accelerations, CanonicalState,
    Mode, NoetherCharges, PsiRate,
};
pub use error::{Error, Result};
pub use integrate::{integrate, step_rk4, IntegratorConfig, Method, Trajectory};
pub use model::{FullState, ModelParams};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

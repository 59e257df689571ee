//! Stationary linear response of a coherently driven four-level atom.
//!
//! The crate assembles the Lindblad generator of the scheme (two resonant
//! drives, three decay channels into the ground state), solves for the
//! probe-free steady state, extracts the four constitutive coefficients
//! (electric and magnetic susceptibilities plus the two chirality
//! cross-couplings) from a first-order sideband solve, and maps them to the
//! chiral refractive index and its refraction-to-absorption figure of merit.
//! Detuning sweeps are emitted as CSV or JSON; independent time-domain and
//! finite-difference oracles back the fast linear-algebra path.

// Numerical guards are written `!(x <= tol)` instead of `x > tol` so that a
// NaN coming out of a singular solve trips the guard rather than passing it.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod liouvillian;
pub mod optics;
pub mod oracle;
pub mod params;
pub mod reproduce;
pub mod response;
pub mod steady;
pub mod sweep;

pub use num_complex::Complex64 as C64;

/// 4×4 complex matrix (operators on the four-level Hilbert space).
pub type M4 = nalgebra::SMatrix<C64, 4, 4>;
/// 16×16 complex matrix (superoperators on vectorized density matrices).
pub type M16 = nalgebra::SMatrix<C64, 16, 16>;
/// Vectorized 4×4 matrix, column-major.
pub type V16 = nalgebra::SVector<C64, 16>;

/// Column-major slot of element (i, j) in a vectorized 4×4 matrix (0-based).
pub const fn slot(i: usize, j: usize) -> usize {
    i + 4 * j
}

/// Column-major vectorization.
pub fn vec4(m: &M4) -> V16 {
    V16::from_column_slice(m.as_slice())
}

/// Inverse of [`vec4`].
pub fn unvec4(v: &V16) -> M4 {
    M4::from_column_slice(v.as_slice())
}

/// Largest entry magnitude of a vectorized operator.
pub(crate) fn max_abs(v: &V16) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("config error at line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("steady-state solve failed: {0}")]
    SteadyState(String),
    #[error("steady state is not unique: {0}")]
    DegenerateSteadyState(String),
    #[error("sideband system is singular at delta = {delta}")]
    SingularSideband { delta: f64 },
    #[error("coherence-restricted system is singular at delta = {delta}")]
    SingularCoherenceSystem { delta: f64 },
    #[error("time integration failed: {0}")]
    Integration(String),
    #[error("invalid sweep: {0}")]
    SweepSpec(String),
    #[error("summary unavailable: {0}")]
    Summary(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

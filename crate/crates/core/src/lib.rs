//! Hadamard walk on Z with a single reflection-coin defect at the origin.
//!
//! The crate covers the full chain of results for this model:
//!
//! * [`walk`]: exact time evolution on a finite window, position measures and
//!   Cesàro time averages, for any site-dependent coin field.
//! * [`stationary`]: closed-form eigenvectors of the evolution with
//!   unimodular eigenvalue and the stationary measures they induce.
//! * [`series`]: truncated formal power series with exact rational
//!   coefficients, and the first-return generating functions of the
//!   Hadamard half-line walk.
//! * [`pathsum`]: the return amplitude at the origin by renewal convolution,
//!   by generating-function coefficient extraction and by its asymptotic form,
//!   plus the return-probability limit and its spectral (CGMV) cross-check.
//! * [`genfun`]: the space-time generating function, its poles on the unit
//!   circle, and the residue formula for the time-averaged limit measure.
//! * [`verify`]: every cross-route invariant as a runnable report.

pub mod angle;
pub mod error;
pub mod genfun;
pub mod linalg;
pub mod oracle;
pub mod pathsum;
pub mod series;
pub mod stationary;
pub mod verify;
pub mod walk;

pub use angle::DefectAngle;
pub use error::{Error, Result};
pub use linalg::Mat2;
pub use num_complex::Complex64 as C64;
pub use walk::{Amplitude2, CoinField, CoinMatrix, MeasureProfile, WalkState};

/// Sum of a geometric tail `Σ_{j ≥ 1} first · ratio^{j−1}` for `|ratio| < 1`.
pub(crate) fn geometric_tail(first: f64, ratio: f64) -> f64 {
    debug_assert!(ratio.abs() < 1.0);
    first / (1.0 - ratio)
}

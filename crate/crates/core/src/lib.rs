//! Bannai-Ito polynomials, the osp(1|2) Racah coefficients built from them,
//! Dunkl-oscillator spherical wavefunctions, and a verifier for the
//! generating function that ties the three together.
//!
//! Exact quantities live in [`numcore::Rational`]; anything involving square
//! roots or Gamma functions is carried in [`numcore::Hp`] / [`numcore::Hpc`]
//! at a configurable decimal precision.

pub mod bannai;
pub mod genfun;
pub mod numcore;
pub mod racah;
pub mod report;
pub mod spherewave;
pub mod verify;

pub use bannai::{BiError, BiParams, ShiftOrder};
pub use genfun::{GenfunForm, PolyZ};
pub use numcore::{Hp, Hpc, NumError, Precision, Rational};
pub use racah::{RacahMatrix, UCandidate};
pub use report::{CheckResult, VerifyReport};
pub use spherewave::RacahContext;

use thiserror::Error;

/// Any failure surfaced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Params(#[from] BiError),
    #[error(transparent)]
    Numeric(#[from] NumError),
    #[error("negative radicand {value} in {what}")]
    NegativeRadicand { what: String, value: String },
    #[error("vanishing normalization in {0}")]
    ZeroNorm(String),
    #[error("pole at {0}")]
    Pole(String),
    #[error("interpolation residual {0} exceeds tolerance")]
    IllConditioned(String),
}

impl Error {
    /// True for errors that come from the numerical domain of a formula
    /// rather than from malformed input.
    pub fn is_numeric_domain(&self) -> bool {
        !matches!(self, Error::Params(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

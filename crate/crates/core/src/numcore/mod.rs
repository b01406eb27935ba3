//! Numeric kernel: exact rationals, configurable-precision real and complex
//! floats, elementary functions and Gamma.

mod elementary;
mod gamma;
mod hp;
mod hpc;
pub mod rational;
mod scalar;

pub use elementary::{acos, atan, atan2, cos, exp, ln, ln2, pi, sin, sin_cos};
pub use gamma::gamma_hp;
pub use hp::{Hp, Precision};
pub use hpc::Hpc;
pub use rational::{binom_general, pochhammer, Rational};
pub use scalar::{Field, HpField};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumError {
    #[error("Gamma pole at non-positive integer {0}")]
    GammaPole(String),
    #[error("square root of negative value {0}")]
    NegativeSqrt(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("argument {0} outside the domain of {1}")]
    Domain(String, &'static str),
    #[error("malformed number `{0}`")]
    Parse(String),
}

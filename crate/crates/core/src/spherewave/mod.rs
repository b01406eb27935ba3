//! Jacobi polynomials and the angular Dunkl wavefunctions `Y_K^N(theta, phi)`
//! and `Z_S^N(alpha, beta)` on the two-sphere.

mod context;
mod jacobi;
mod quadrature;
mod wave;

pub use context::{ContextEcho, RacahContext};
pub use jacobi::{jacobi, jacobi_derivative};
pub use quadrature::{gauss_jacobi, wave_gram_matrix, GaussRule};
pub use wave::{coord_map, fk, fk_trig, reflect, y_eval, y_trig, z_eval, z_trig, Sign, WaveBasis, WaveNorms};

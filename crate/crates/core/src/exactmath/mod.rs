//! Exact scalar and dense-matrix arithmetic over the Gaussian rationals.

mod matrix;
mod modular;
mod rational;
mod scalar;
pub mod subspace;

pub use matrix::{ExactMatrix, Rref, Solution};
pub use rational::Rational;
pub use scalar::{rational_sqrt, GaussianRational};

/// Shorthand for the integer `n` as a Gaussian rational.
pub fn gq(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

/// Shorthand for `num/den` as a Gaussian rational.
pub fn gq_ratio(num: i64, den: i64) -> GaussianRational {
    GaussianRational::from_ratio(num, den)
}

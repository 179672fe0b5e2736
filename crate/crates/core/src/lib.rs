//! Numerics for symmetric homogeneous bivariate means.
//!
//! The crate is organised around the correspondence between a mean `M` and
//! its Seiffert function `f(z) = z / M(1 - z, 1 + z)`:
//!
//! - [`means`]: positive pairs, the catalog of named means, the mean/Seiffert
//!   correspondence and the t-deformation.
//! - [`elliptic`]: AGM iteration, complete elliptic integrals `K` and `E`,
//!   the Seiffert function of the AGM and the mean `V`.
//! - [`calculus`]: adaptive Gauss-Kronrod quadrature, the integral operator
//!   `I(f)(z) = ∫₀^z f(u)/u du`, finite differences and shape probing.
//! - [`harmonic`]: harmonic representations `1/M = ∫₀¹ dt / N^{t}`.
//! - [`inequality`]: Hermite-Hadamard sandwiches and inequality chains.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the
//! `*64` aliases below are what most callers want.

pub mod calculus;
pub mod elliptic;
pub mod error;
pub mod grid;
pub mod harmonic;
pub mod inequality;
pub mod means;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub use calculus::{GridSpec, QuadratureConfig, ShapeVerdict, Spacing};
pub use means::{Deform, Mean, MeanId, PositivePair, SeiffertFunction};

pub type Pair64 = means::PositivePair<f64>;
pub type Mean64 = means::Mean<f64>;
pub type Seiffert64 = means::SeiffertFunction<f64>;
pub type Deform64 = means::Deform<f64>;
pub type Quadrature64 = calculus::QuadratureConfig<f64>;
pub type Grid64 = calculus::GridSpec<f64>;
pub type Chain64 = inequality::ChainSpec<f64>;

pub type Pair32 = means::PositivePair<f32>;
pub type Mean32 = means::Mean<f32>;
pub type Seiffert32 = means::SeiffertFunction<f32>;

//! Max-Cut through the rank-2 rotor relaxation.
//!
//! Two solvers share the relaxed objective `Σ w_ij cos(θ_i - θ_j)`:
//!
//! * [`bmz`]: trust-region Newton descent from random starts, rounded to a
//!   cut by half-circle sweeps ([`bmz::procedure_cut`]).
//! * [`vmc`]: variational Monte Carlo over the Born density of a rotor
//!   restricted Boltzmann machine ([`nqs`]), trained by stochastic
//!   reconfiguration with a matrix-free MINRES solve.
//!
//! All numerics are generic over [`Scalar`] (`f32`/`f64`); the `*64`
//! aliases below fix the double-precision instantiation used by the CLI.

// `!(x > 0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bmz;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod nqs;
pub mod objective;
pub mod rng;
pub mod scalar;
pub mod vmc;

pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use scalar::Scalar;

pub type Graph64 = graph::Graph<f64>;
pub type Graph32 = graph::Graph<f32>;
pub type RotorConfig64 = objective::RotorConfig<f64>;
pub type RotorConfig32 = objective::RotorConfig<f32>;
pub type BmzConfig64 = bmz::BmzConfig<f64>;
pub type BmzConfig32 = bmz::BmzConfig<f32>;
pub type RbmParams64 = nqs::RbmParams<f64>;
pub type RbmParams32 = nqs::RbmParams<f32>;
pub type VmcConfig64 = vmc::VmcConfig<f64>;
pub type VmcConfig32 = vmc::VmcConfig<f32>;
pub type RunTrace64 = vmc::RunTrace<f64>;
pub type RunTrace32 = vmc::RunTrace<f32>;

//! Continuous-variable neural quantum state: a restricted Boltzmann machine
//! over visible and hidden planar rotors, with the hidden rotors integrated
//! out in closed form.

pub mod bessel;
pub mod checkpoint;
mod rbm;

pub use bessel::{bessel_ratio, log_bessel_i0};
pub use rbm::{hidden_count, num_params, HiddenFields, RbmParams};

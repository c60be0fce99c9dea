//! `ln I₀(x)` and `I₁(x)/I₀(x)` for `x ≥ 0` without overflow.
//!
//! Two regimes:
//! * `x < SERIES_CUTOFF`: the ascending power series of `I₀` and `I₁`. All
//!   terms are positive, so the sums carry full relative precision; `ln I₀`
//!   is taken as `ln_1p` of the tail so tiny arguments keep their accuracy.
//! * otherwise the Hankel asymptotic expansion of the scaled functions
//!   `e^{-x} √(2πx) I_ν(x)`, summed until the terms fall below machine
//!   precision. At the cutoff the smallest term is about `e^{-2x}`, far
//!   below `f64` resolution.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const SERIES_CUTOFF: f64 = 30.0;
const MAX_TERMS: usize = 200;

fn check_arg<T: Scalar>(x: T) -> Result<()> {
    if x.is_finite() && x >= T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "Bessel argument must be finite and ≥ 0, got {x}"
        )))
    }
}

/// `ln I₀(x)`.
pub fn log_bessel_i0<T: Scalar>(x: T) -> Result<T> {
    check_arg(x)?;
    Ok(log_i0_and_ratio(x).0)
}

/// `I₁(x)/I₀(x) = d/dx ln I₀(x)`, in `[0, 1)`.
pub fn bessel_ratio<T: Scalar>(x: T) -> Result<T> {
    check_arg(x)?;
    Ok(log_i0_and_ratio(x).1)
}

/// `(ln I₀(x), I₁(x)/I₀(x))` for a finite `x ≥ 0`; unchecked.
pub(crate) fn log_i0_and_ratio<T: Scalar>(x: T) -> (T, T) {
    if x < T::lit(SERIES_CUTOFF) {
        series(x)
    } else {
        asymptotic(x)
    }
}

fn series<T: Scalar>(x: T) -> (T, T) {
    if x == T::zero() {
        return (T::zero(), T::zero());
    }
    let half = x * T::lit(0.5);
    let q = half * half;
    let eps = T::epsilon() * T::lit(0.5);
    // I0 - 1 and I1 / (x/2)
    let mut tail0 = T::zero();
    let mut t0 = T::one();
    let mut s1 = T::one();
    let mut t1 = T::one();
    for k in 1..MAX_TERMS {
        let kf = T::from_count(k);
        t0 = t0 * q / (kf * kf);
        t1 = t1 * q / (kf * (kf + T::one()));
        tail0 += t0;
        s1 += t1;
        if t0 <= eps * tail0 && t1 <= eps * s1 {
            break;
        }
    }
    (tail0.ln_1p(), half * s1 / (T::one() + tail0))
}

fn asymptotic<T: Scalar>(x: T) -> (T, T) {
    let eps = T::epsilon() * T::lit(0.5);
    let eight_x = T::lit(8.0) * x;
    let four = T::lit(4.0);
    let mut s0 = T::one();
    let mut s1 = T::one();
    let mut t0 = T::one();
    let mut t1 = T::one();
    for k in 1..MAX_TERMS {
        let kf = T::from_count(k);
        let odd = T::lit(2.0) * kf - T::one();
        let next0 = t0 * odd * odd / (kf * eight_x);
        let next1 = t1 * (odd * odd - four) / (kf * eight_x);
        // stop before the divergent part of the expansion
        if next0.abs() > t0.abs() {
            break;
        }
        t0 = next0;
        t1 = next1;
        s0 += t0;
        s1 += t1;
        if t0.abs() <= eps * s0 && t1.abs() <= eps * s1.abs() {
            break;
        }
    }
    let log_i0 = x - T::lit(0.5) * (T::TAU() * x).ln() + s0.ln();
    (log_i0, s1 / s0)
}

//! MINRES (Paige & Saunders) for symmetric, possibly singular systems,
//! matrix-free.

use crate::error::{check_len, Error, Result};
use crate::scalar::{dot, norm2, Scalar};

/// A symmetric linear map applied without materializing its matrix.
pub trait LinearOperator<T> {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[T], out: &mut [T]);
}

/// Adapts a closure `x -> A x` of known dimension.
pub struct FnOperator<F> {
    dim: usize,
    f: F,
}

impl<F> FnOperator<F> {
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<T, F: Fn(&[T], &mut [T])> LinearOperator<T> for FnOperator<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &[T], out: &mut [T]) {
        (self.f)(x, out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinresOutcome<T> {
    pub x: Vec<T>,
    /// True residual `‖A x - b‖`, recomputed explicitly.
    pub residual: T,
    pub iters: usize,
    pub converged: bool,
}

/// Solves `A x = b` to `‖A x - b‖ ≤ tol ‖b‖` or until `max_iter` operator
/// applications are spent.
///
/// When the recurrence residual claims convergence but the explicitly
/// recomputed residual does not meet the tolerance, the solve restarts on the
/// remaining residual with the leftover iteration budget.
pub fn minres_solve<T: Scalar, A: LinearOperator<T> + ?Sized>(
    op: &A,
    b: &[T],
    tol: T,
    max_iter: usize,
) -> Result<MinresOutcome<T>> {
    let n = op.dim();
    check_len(n, b.len())?;
    if !(tol > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "MINRES tolerance must be positive, got {tol}"
        )));
    }
    let bnorm = norm2(b);
    if !bnorm.is_finite() {
        return Err(Error::NonFinite("MINRES right-hand side"));
    }
    let mut x = vec![T::zero(); n];
    if bnorm == T::zero() {
        return Ok(MinresOutcome {
            x,
            residual: T::zero(),
            iters: 0,
            converged: true,
        });
    }
    let target = tol * bnorm;
    let mut r = b.to_vec();
    let mut ax = vec![T::zero(); n];
    let mut iters = 0;
    let mut residual = bnorm;
    while iters < max_iter {
        let (dx, used) = minres_cycle(op, &r, target, max_iter - iters)?;
        iters += used;
        for (xi, d) in x.iter_mut().zip(dx) {
            *xi += d;
        }
        op.apply(&x, &mut ax);
        for ((ri, &bi), &axi) in r.iter_mut().zip(b).zip(&ax) {
            *ri = bi - axi;
        }
        let previous = residual;
        residual = norm2(&r);
        if !residual.is_finite() {
            return Err(Error::NonFinite("MINRES residual"));
        }
        if residual <= target {
            return Ok(MinresOutcome {
                x,
                residual,
                iters,
                converged: true,
            });
        }
        if used == 0 || residual >= previous {
            // attainable accuracy reached
            break;
        }
    }
    Ok(MinresOutcome {
        x,
        residual,
        iters,
        converged: false,
    })
}

/// One unpreconditioned MINRES run from a zero start. Returns the update and
/// the number of operator applications.
fn minres_cycle<T: Scalar, A: LinearOperator<T> + ?Sized>(
    op: &A,
    b: &[T],
    target: T,
    budget: usize,
) -> Result<(Vec<T>, usize)> {
    let n = b.len();
    let mut x = vec![T::zero(); n];
    let beta1 = norm2(b);
    let mut r1 = b.to_vec();
    let mut r2 = b.to_vec();
    let mut y = vec![T::zero(); n];
    let mut v = vec![T::zero(); n];
    let mut w = vec![T::zero(); n];
    let mut w1 = vec![T::zero(); n];
    let mut w2 = vec![T::zero(); n];

    let (mut oldb, mut beta) = (T::zero(), beta1);
    let (mut dbar, mut epsln) = (T::zero(), T::zero());
    let mut phibar = beta1;
    let (mut cs, mut sn) = (-T::one(), T::zero());

    let mut itn = 0;
    while itn < budget {
        itn += 1;
        let s = T::one() / beta;
        for (vi, &ri) in v.iter_mut().zip(&r2) {
            *vi = s * ri;
        }
        op.apply(&v, &mut y);
        if itn >= 2 {
            let f = beta / oldb;
            for (yi, &ri) in y.iter_mut().zip(&r1) {
                *yi -= f * ri;
            }
        }
        let alfa = dot(&v, &y);
        let f = alfa / beta;
        for (yi, &ri) in y.iter_mut().zip(&r2) {
            *yi -= f * ri;
        }
        std::mem::swap(&mut r1, &mut r2);
        r2.copy_from_slice(&y);
        oldb = beta;
        beta = norm2(&r2);
        if !(alfa.is_finite() && beta.is_finite()) {
            return Err(Error::NonFinite("MINRES Lanczos step"));
        }

        let oldeps = epsln;
        let delta = cs * dbar + sn * alfa;
        let gbar = sn * dbar - cs * alfa;
        epsln = sn * beta;
        dbar = -cs * beta;
        let gamma = gbar.hypot(beta).max(T::epsilon());
        cs = gbar / gamma;
        sn = beta / gamma;
        let phi = cs * phibar;
        phibar = sn * phibar;

        let denom = T::one() / gamma;
        std::mem::swap(&mut w1, &mut w2);
        std::mem::swap(&mut w2, &mut w);
        for i in 0..n {
            w[i] = (v[i] - oldeps * w1[i] - delta * w2[i]) * denom;
            x[i] += phi * w[i];
        }

        if phibar <= target || beta <= T::epsilon() * beta1 {
            break;
        }
    }
    Ok((x, itn))
}

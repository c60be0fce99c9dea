//! Deterministic baseline: trust-region Newton descent on the rotor cost,
//! followed by half-circle rounding of the angles to a cut.

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::graph::{cut_value, CutAssignment, Graph};
use crate::objective::{
    cost, cost_change, cost_gradient, cost_hessian, RotorConfig, SparseSymmetric,
};
use crate::rng::{seeded, STREAM_START};
use crate::scalar::{dot, norm2, norm_inf, wrap_angle, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct BmzConfig<T> {
    pub max_iters: usize,
    /// Stop once `‖∇cost‖∞` drops to this value.
    pub grad_tol: T,
    pub tr_radius_init: T,
    pub tr_radius_max: T,
    /// Shrink the radius when the model agreement ratio falls below this.
    pub accept_ratio_lo: T,
    /// Grow the radius when the ratio exceeds this and the step hit the boundary.
    pub accept_ratio_hi: T,
}

impl<T: Scalar> Default for BmzConfig<T> {
    fn default() -> Self {
        Self {
            max_iters: 500,
            grad_tol: T::lit(1e-8),
            tr_radius_init: T::one(),
            tr_radius_max: T::lit(10.0),
            accept_ratio_lo: T::lit(0.25),
            accept_ratio_hi: T::lit(0.75),
        }
    }
}

impl<T: Scalar> BmzConfig<T> {
    pub fn validate(&self) -> Result<()> {
        let ok = self.grad_tol > T::zero()
            && self.tr_radius_init > T::zero()
            && self.tr_radius_max >= self.tr_radius_init
            && T::zero() < self.accept_ratio_lo
            && self.accept_ratio_lo < self.accept_ratio_hi
            && self.accept_ratio_hi < T::one();
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "invalid trust-region config {self:?}"
            )))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BmzOutcome<T> {
    pub theta: RotorConfig<T>,
    pub energy: T,
    pub iters: usize,
    pub grad_inf: T,
    /// Cost after every accepted step, starting with the initial cost.
    pub energy_history: Vec<T>,
}

/// Trust-region Newton minimization of the rotor cost with a Steihaug-Toint
/// truncated-CG subproblem solve on the sparse Hessian.
pub fn bmz_minimize<T: Scalar>(
    g: &Graph<T>,
    theta0: &RotorConfig<T>,
    cfg: &BmzConfig<T>,
) -> Result<BmzOutcome<T>> {
    check_len(g.n(), theta0.len())?;
    cfg.validate()?;
    let half = T::lit(0.5);
    let mut theta = theta0.clone();
    let mut energy = cost(g, &theta)?;
    let mut history = vec![energy];
    let mut radius = cfg.tr_radius_init;
    let mut grad = cost_gradient(g, &theta)?;
    let mut iters = 0;

    while iters < cfg.max_iters && norm_inf(&grad) > cfg.grad_tol {
        iters += 1;
        let hess = cost_hessian(g, &theta)?;
        let step = steihaug_cg(&hess, &grad, radius);
        let hs = hess.mul_vec(&step);
        let predicted = -(dot(&grad, &step) + half * dot(&step, &hs));
        if !(predicted > T::zero()) {
            // model cannot improve at this radius: gradient is at roundoff level
            break;
        }
        let actual = -cost_change(g, &theta, &step)?;
        let ratio = actual / predicted;
        let step_norm = norm2(&step);
        if ratio < cfg.accept_ratio_lo {
            radius *= T::lit(0.25);
        } else if ratio > cfg.accept_ratio_hi && step_norm >= radius * T::lit(0.99) {
            radius = (radius + radius).min(cfg.tr_radius_max);
        }
        if actual > T::zero() {
            theta = theta.shifted(&step);
            energy = cost(g, &theta)?;
            history.push(energy);
            grad = cost_gradient(g, &theta)?;
        }
        if radius < T::epsilon() {
            break;
        }
    }

    Ok(BmzOutcome {
        grad_inf: norm_inf(&grad),
        energy,
        iters,
        theta,
        energy_history: history,
    })
}

/// Approximately minimizes `gᵀs + ½ sᵀHs` subject to `‖s‖ ≤ radius`.
fn steihaug_cg<T: Scalar>(hess: &SparseSymmetric<T>, grad: &[T], radius: T) -> Vec<T> {
    let n = grad.len();
    let gnorm = norm2(grad);
    let tol = gnorm * gnorm.sqrt().min(T::lit(0.5));
    let mut z = vec![T::zero(); n];
    let mut r = grad.to_vec();
    let mut d: Vec<T> = r.iter().map(|&x| -x).collect();
    let mut hd = vec![T::zero(); n];
    let mut rr = dot(&r, &r);

    for _ in 0..2 * n.max(1) {
        hess.mul_vec_into(&d, &mut hd);
        let curvature = dot(&d, &hd);
        if curvature <= T::zero() {
            let tau = to_boundary(&z, &d, radius);
            return axpy(&z, tau, &d);
        }
        let alpha = rr / curvature;
        let next = axpy(&z, alpha, &d);
        if norm2(&next) >= radius {
            let tau = to_boundary(&z, &d, radius);
            return axpy(&z, tau, &d);
        }
        z = next;
        for (ri, &h) in r.iter_mut().zip(&hd) {
            *ri += alpha * h;
        }
        let rr_next = dot(&r, &r);
        if rr_next.sqrt() <= tol {
            break;
        }
        let beta = rr_next / rr;
        rr = rr_next;
        for (di, &ri) in d.iter_mut().zip(&r) {
            *di = -ri + beta * *di;
        }
    }
    z
}

fn axpy<T: Scalar>(z: &[T], a: T, d: &[T]) -> Vec<T> {
    z.iter().zip(d).map(|(&zi, &di)| zi + a * di).collect()
}

/// Positive `τ` with `‖z + τ d‖ = radius`.
fn to_boundary<T: Scalar>(z: &[T], d: &[T], radius: T) -> T {
    let a = dot(d, d);
    let b = T::lit(2.0) * dot(z, d);
    let c = dot(z, z) - radius * radius;
    let disc = (b * b - T::lit(4.0) * a * c).max(T::zero()).sqrt();
    (-b + disc) / (a + a)
}

/// Half-circle rounding.
///
/// For each anchor `Γ ∈ {θ_1, …, θ_n}` vertex `i` goes to the `+1` side iff
/// `(θ_i - Γ) mod 2π < π`; the anchor with the largest cut wins (first one on
/// ties).
pub fn procedure_cut<T: Scalar>(
    g: &Graph<T>,
    theta: &RotorConfig<T>,
) -> Result<(T, CutAssignment)> {
    check_len(g.n(), theta.len())?;
    let t = theta.angles();
    let pi = T::PI();
    let mut best: Option<(T, CutAssignment)> = None;
    for &anchor in t {
        let x = CutAssignment::from_sides(t.iter().map(|&ti| wrap_angle(ti - anchor) < pi));
        let value = cut_value(g, &x)?;
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, x));
        }
    }
    Ok(best.expect("graph has at least two vertices"))
}

/// One seeded BMZ run: uniform random start, descent, rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct BmzRun<T> {
    pub seed: u64,
    pub outcome: BmzOutcome<T>,
    pub cut_value: T,
    pub cut: CutAssignment,
}

pub fn bmz_run<T: Scalar>(g: &Graph<T>, cfg: &BmzConfig<T>, seed: u64) -> Result<BmzRun<T>> {
    let theta0 = RotorConfig::random(g.n(), &mut seeded(seed, STREAM_START));
    let outcome = bmz_minimize(g, &theta0, cfg)?;
    let (cut_value, cut) = procedure_cut(g, &outcome.theta)?;
    Ok(BmzRun {
        seed,
        outcome,
        cut_value,
        cut,
    })
}

//! The rank-2 rotor relaxation `Σ w_ij cos(θ_i - θ_j)` with its gradient and
//! Hessian.

mod heisenberg;

pub use heisenberg::{heisenberg_expectation, HEISENBERG_LIMIT};

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Result};
use crate::graph::Graph;
use crate::scalar::{wrap_angle, Scalar};

/// Rotor angles, one per vertex, kept in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct RotorConfig<T>(Vec<T>);

impl<T: Scalar> RotorConfig<T> {
    /// Wraps every angle into `[0, 2π)`.
    pub fn new(theta: Vec<T>) -> Self {
        Self(theta.into_iter().map(wrap_angle).collect())
    }

    pub fn from_f64(theta: &[f64]) -> Self {
        Self::new(theta.iter().map(|&t| T::lit(t)).collect())
    }

    /// I.i.d. uniform angles.
    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let tau = std::f64::consts::TAU;
        Self::new((0..n).map(|_| T::lit(rng.random_range(0.0..tau))).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn angles(&self) -> &[T] {
        &self.0
    }

    /// Returns `θ + step`, wrapped.
    pub fn shifted(&self, step: &[T]) -> Self {
        Self(
            self.0
                .iter()
                .zip(step)
                .map(|(&t, &s)| wrap_angle(t + s))
                .collect(),
        )
    }

    /// Unit vectors `(cos θ_j, sin θ_j)`.
    pub fn unit_vectors(&self) -> Vec<[T; 2]> {
        self.0.iter().map(|t| [t.cos(), t.sin()]).collect()
    }
}

/// `Σ_{edges} w_ij cos(θ_i - θ_j)`.
pub fn cost<T: Scalar>(g: &Graph<T>, theta: &RotorConfig<T>) -> Result<T> {
    check_len(g.n(), theta.len())?;
    let t = theta.angles();
    Ok(g.edges()
        .iter()
        .map(|e| e.w * (t[e.i] - t[e.j]).cos())
        .sum())
}

/// Same as [`cost`] with `cos(θ_i - θ_j)` taken as `⟨v_i, v_j⟩`.
pub(crate) fn cost_from_unit_vectors<T: Scalar>(g: &Graph<T>, v: &[[T; 2]]) -> T {
    g.edges()
        .iter()
        .map(|e| e.w * (v[e.i][0] * v[e.j][0] + v[e.i][1] * v[e.j][1]))
        .sum()
}

/// `cost(θ + step) - cost(θ)` without cancellation, using
/// `cos(d + s) - cos(d) = -2 sin(d + s/2) sin(s/2)` per edge.
pub fn cost_change<T: Scalar>(g: &Graph<T>, theta: &RotorConfig<T>, step: &[T]) -> Result<T> {
    check_len(g.n(), theta.len())?;
    check_len(g.n(), step.len())?;
    let t = theta.angles();
    let two = T::lit(2.0);
    Ok(g.edges()
        .iter()
        .map(|e| {
            let d = t[e.i] - t[e.j];
            let half = (step[e.i] - step[e.j]) / two;
            -two * e.w * (d + half).sin() * half.sin()
        })
        .sum())
}

/// `∂/∂θ_i = -Σ_j w_ij sin(θ_i - θ_j)`.
pub fn cost_gradient<T: Scalar>(g: &Graph<T>, theta: &RotorConfig<T>) -> Result<Vec<T>> {
    check_len(g.n(), theta.len())?;
    let t = theta.angles();
    let mut grad = vec![T::zero(); g.n()];
    for e in g.edges() {
        let s = e.w * (t[e.i] - t[e.j]).sin();
        grad[e.i] -= s;
        grad[e.j] += s;
    }
    Ok(grad)
}

/// Symmetric sparse matrix as coordinate triplets. Both triangles are stored
/// and the diagonal is always explicit.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSymmetric<T> {
    n: usize,
    entries: Vec<(usize, usize, T)>,
}

impl<T: Scalar> SparseSymmetric<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn triplets(&self) -> &[(usize, usize, T)] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries
            .iter()
            .filter(|&&(r, c, _)| r == i && c == j)
            .map(|&(_, _, v)| v)
            .sum()
    }

    /// `out = H x`.
    pub fn mul_vec_into(&self, x: &[T], out: &mut [T]) {
        out.iter_mut().for_each(|o| *o = T::zero());
        for &(r, c, v) in &self.entries {
            out[r] += v * x[c];
        }
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.n];
        self.mul_vec_into(x, &mut out);
        out
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut d = vec![vec![T::zero(); self.n]; self.n];
        for &(r, c, v) in &self.entries {
            d[r][c] += v;
        }
        d
    }
}

/// `H_ii = -Σ_j w_ij cos(θ_i - θ_j)`, `H_ij = w_ij cos(θ_i - θ_j)` on edges.
pub fn cost_hessian<T: Scalar>(g: &Graph<T>, theta: &RotorConfig<T>) -> Result<SparseSymmetric<T>> {
    check_len(g.n(), theta.len())?;
    let t = theta.angles();
    let n = g.n();
    let mut diag = vec![T::zero(); n];
    let mut entries = Vec::with_capacity(n + 2 * g.num_edges());
    for e in g.edges() {
        let c = e.w * (t[e.i] - t[e.j]).cos();
        diag[e.i] -= c;
        diag[e.j] -= c;
        entries.push((e.i, e.j, c));
        entries.push((e.j, e.i, c));
    }
    entries.extend(diag.into_iter().enumerate().map(|(i, d)| (i, i, d)));
    Ok(SparseSymmetric { n, entries })
}

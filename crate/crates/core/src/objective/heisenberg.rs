//! Dense-matrix check that the rotor cost is the expectation of the XZ
//! Heisenberg Hamiltonian `H = Σ w_ij (X_i X_j + Z_i Z_j)` in the product
//! state `ρ = ⊗ ½(I + sin θ_i X_i + cos θ_i Z_i)`.
//!
//! Everything is assembled explicitly as `2^n × 2^n` Kronecker products,
//! so this is only usable for small graphs.

use crate::error::{check_len, Error, Result};
use crate::graph::Graph;
use crate::objective::RotorConfig;
use crate::scalar::Scalar;

pub const HEISENBERG_LIMIT: usize = 10;

#[derive(Clone)]
struct Dense<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Scalar> Dense<T> {
    fn from_2x2(m: [[T; 2]; 2]) -> Self {
        Self {
            dim: 2,
            data: vec![m[0][0], m[0][1], m[1][0], m[1][1]],
        }
    }

    fn kron(&self, other: &Self) -> Self {
        let dim = self.dim * other.dim;
        let mut data = vec![T::zero(); dim * dim];
        for (r1, row) in self.data.chunks(self.dim).enumerate() {
            for (c1, &a) in row.iter().enumerate() {
                if a == T::zero() {
                    continue;
                }
                for (r2, row2) in other.data.chunks(other.dim).enumerate() {
                    let base = (r1 * other.dim + r2) * dim + c1 * other.dim;
                    for (c2, &b) in row2.iter().enumerate() {
                        data[base + c2] = a * b;
                    }
                }
            }
        }
        Self { dim, data }
    }

    fn add_scaled(&mut self, w: T, other: &Self) {
        for (x, &y) in self.data.iter_mut().zip(&other.data) {
            *x += w * y;
        }
    }

    /// `tr(A B)`.
    fn trace_product(&self, other: &Self) -> T {
        let d = self.dim;
        (0..d)
            .flat_map(|a| (0..d).map(move |b| (a, b)))
            .map(|(a, b)| self.data[a * d + b] * other.data[b * d + a])
            .sum()
    }
}

fn chain<T: Scalar>(factors: impl IntoIterator<Item = Dense<T>>) -> Dense<T> {
    factors
        .into_iter()
        .reduce(|acc, f| acc.kron(&f))
        .expect("at least one factor")
}

/// `tr(H ρ)`, assembled densely. Requires `n ≤ HEISENBERG_LIMIT`.
pub fn heisenberg_expectation<T: Scalar>(g: &Graph<T>, theta: &RotorConfig<T>) -> Result<T> {
    let n = g.n();
    if n > HEISENBERG_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: HEISENBERG_LIMIT,
        });
    }
    check_len(n, theta.len())?;
    let (o, l) = (T::zero(), T::one());
    let id = Dense::from_2x2([[l, o], [o, l]]);
    let x = Dense::from_2x2([[o, l], [l, o]]);
    let z = Dense::from_2x2([[l, o], [o, -l]]);

    let dim = 1usize << n;
    let mut h = Dense {
        dim,
        data: vec![T::zero(); dim * dim],
    };
    for e in g.edges() {
        for pauli in [&x, &z] {
            let term = chain((0..n).map(|v| {
                if v == e.i || v == e.j {
                    pauli.clone()
                } else {
                    id.clone()
                }
            }));
            h.add_scaled(e.w, &term);
        }
    }

    let half = T::lit(0.5);
    let rho = chain(theta.angles().iter().map(|&t| {
        let (s, c) = (t.sin(), t.cos());
        Dense::from_2x2([[half * (l + c), half * s], [half * s, half * (l - c)]])
    }));
    Ok(h.trace_product(&rho))
}

//! Monte Carlo estimates for stochastic reconfiguration.
//!
//! With `O_k = ∂ ln ψ / ∂p_k` and local energy `E(θ) = cost(θ)` (the
//! Hamiltonian is diagonal), a batch of `N` samples gives
//!
//! ```text
//! g_k  = 2 ⟨(E - ⟨E⟩)(O_k - ⟨O_k⟩)⟩
//! S_kl =   ⟨(O_k - ⟨O_k⟩)(O_l - ⟨O_l⟩)⟩
//! ```
//!
//! and the update solves `(S + λI) δ = g`. `S` is only ever applied as
//! `S x = Ōᵀ(Ō x) / N` with the column-centred sample matrix `Ō`.

use crate::error::{check_len, Error, Result};
use crate::graph::Graph;
use crate::nqs::RbmParams;
use crate::objective::{cost_from_unit_vectors, RotorConfig};
use crate::scalar::Scalar;

use super::chain::ChainState;
use super::config::VmcConfig;
use super::minres::LinearOperator;

/// Recorded samples of one SR iteration, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SrBatch<T> {
    n_visible: usize,
    n_params: usize,
    samples: Vec<T>,
    o_matrix: Vec<T>,
    e_loc: Vec<T>,
}

impl<T: Scalar> SrBatch<T> {
    pub fn with_capacity(n_visible: usize, n_params: usize, rows: usize) -> Self {
        Self {
            n_visible,
            n_params,
            samples: Vec::with_capacity(rows * n_visible),
            o_matrix: Vec::with_capacity(rows * n_params),
            e_loc: Vec::with_capacity(rows),
        }
    }

    /// Builds a batch from explicit rows.
    pub fn from_rows(samples: Vec<Vec<T>>, o_rows: Vec<Vec<T>>, e_loc: Vec<T>) -> Result<Self> {
        check_len(samples.len(), o_rows.len())?;
        check_len(samples.len(), e_loc.len())?;
        let n_visible = samples.first().map_or(0, Vec::len);
        let n_params = o_rows.first().map_or(0, Vec::len);
        let mut batch = Self::with_capacity(n_visible, n_params, e_loc.len());
        for ((s, o), e) in samples.into_iter().zip(o_rows).zip(e_loc) {
            check_len(n_visible, s.len())?;
            check_len(n_params, o.len())?;
            batch.samples.extend(s);
            batch.o_matrix.extend(o);
            batch.e_loc.push(e);
        }
        Ok(batch)
    }

    /// Appends the walker's current state.
    pub fn record(&mut self, g: &Graph<T>, params: &RbmParams<T>, chain: &ChainState<T>) {
        let v = chain.vectors();
        self.samples.extend_from_slice(chain.theta().angles());
        let start = self.o_matrix.len();
        self.o_matrix.resize(start + self.n_params, T::zero());
        params.log_derivatives_into(v, &mut self.o_matrix[start..]);
        self.e_loc.push(cost_from_unit_vectors(g, v));
    }

    pub fn len(&self) -> usize {
        self.e_loc.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e_loc.is_empty()
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    pub fn sample(&self, k: usize) -> &[T] {
        &self.samples[k * self.n_visible..(k + 1) * self.n_visible]
    }

    pub fn o_row(&self, k: usize) -> &[T] {
        &self.o_matrix[k * self.n_params..(k + 1) * self.n_params]
    }

    pub fn e_loc(&self) -> &[T] {
        &self.e_loc
    }

    /// Index and energy of the lowest-cost recorded sample.
    pub fn best(&self) -> Option<(usize, T)> {
        self.e_loc
            .iter()
            .copied()
            .enumerate()
            .fold(None, |best, (k, e)| match best {
                Some((_, b)) if b <= e => best,
                _ => Some((k, e)),
            })
    }

    fn o_mean(&self) -> Vec<T> {
        let inv = T::one() / T::from_count(self.len());
        let mut mean = vec![T::zero(); self.n_params];
        for row in self.o_matrix.chunks_exact(self.n_params) {
            for (m, &o) in mean.iter_mut().zip(row) {
                *m += o;
            }
        }
        mean.iter_mut().for_each(|m| *m *= inv);
        mean
    }

    /// `(S + λI)` as a matrix-free operator.
    pub fn metric(&self, lambda: T) -> SrMetric<T> {
        let mean = self.o_mean();
        let mut centered = self.o_matrix.clone();
        for row in centered.chunks_exact_mut(self.n_params) {
            for (o, &m) in row.iter_mut().zip(&mean) {
                *o -= m;
            }
        }
        SrMetric {
            rows: self.len(),
            n_params: self.n_params,
            centered,
            lambda,
            scratch: Default::default(),
        }
    }
}

/// Advances the chain `n_samp` steps and records the last `n_samp - n_warm`
/// states. Returns the batch and the acceptance rate over all steps.
pub fn sample_batch<T: Scalar>(
    g: &Graph<T>,
    params: &RbmParams<T>,
    chain: &mut ChainState<T>,
    cfg: &VmcConfig<T>,
) -> (SrBatch<T>, f64) {
    let mut batch =
        SrBatch::with_capacity(params.n_visible(), params.num_params(), cfg.batch_len());
    let mut accepted = 0usize;
    for s in 0..cfg.n_samp {
        let acc = chain.mh_step(params);
        accepted += acc as usize;
        if s < cfg.n_warm {
            if cfg.tune_step {
                chain.tune(acc);
            }
        } else {
            batch.record(g, params, chain);
        }
    }
    (batch, accepted as f64 / cfg.n_samp as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Forces<T> {
    pub e_mean: T,
    pub grad: Vec<T>,
    pub o_mean: Vec<T>,
}

/// Energy mean and the covariance force `g_k = 2 cov(E, O_k)`.
pub fn estimate_forces<T: Scalar>(batch: &SrBatch<T>) -> Result<Forces<T>> {
    let n = batch.len();
    if n == 0 {
        return Err(Error::EmptyBatch);
    }
    if n < 2 {
        return Err(Error::InvalidArgument(
            "force estimate needs at least 2 samples".into(),
        ));
    }
    let inv = T::one() / T::from_count(n);
    let e_mean = batch.e_loc.iter().copied().sum::<T>() * inv;
    let o_mean = batch.o_mean();
    let mut grad = vec![T::zero(); batch.n_params];
    for (row, &e) in batch
        .o_matrix
        .chunks_exact(batch.n_params)
        .zip(&batch.e_loc)
    {
        let de = e - e_mean;
        for ((gk, &o), &m) in grad.iter_mut().zip(row).zip(&o_mean) {
            *gk += de * (o - m);
        }
    }
    let scale = T::lit(2.0) * inv;
    grad.iter_mut().for_each(|gk| *gk *= scale);
    Ok(Forces {
        e_mean,
        grad,
        o_mean,
    })
}

/// Regularized SR metric `S + λI` backed by the centred sample matrix.
#[derive(Debug, Clone)]
pub struct SrMetric<T> {
    rows: usize,
    n_params: usize,
    centered: Vec<T>,
    lambda: T,
    scratch: std::cell::RefCell<Vec<T>>,
}

impl<T: Scalar> SrMetric<T> {
    pub fn lambda(&self) -> T {
        self.lambda
    }

    /// Dense `S` (without the shift); `P × P`, for diagnostics and tests.
    pub fn covariance_dense(&self) -> Vec<Vec<T>> {
        let inv = T::one() / T::from_count(self.rows);
        let rows: Vec<&[T]> = self.centered.chunks_exact(self.n_params).collect();
        (0..self.n_params)
            .map(|k| {
                (0..self.n_params)
                    .map(|l| rows.iter().map(|r| r[k] * r[l]).sum::<T>() * inv)
                    .collect()
            })
            .collect()
    }
}

impl<T: Scalar> LinearOperator<T> for SrMetric<T> {
    fn dim(&self) -> usize {
        self.n_params
    }

    fn apply(&self, x: &[T], out: &mut [T]) {
        let mut proj = self.scratch.borrow_mut();
        proj.clear();
        proj.extend(
            self.centered
                .chunks_exact(self.n_params)
                .map(|row| crate::scalar::dot(row, x)),
        );
        let inv = T::one() / T::from_count(self.rows);
        for (o, &xi) in out.iter_mut().zip(x) {
            *o = self.lambda * xi;
        }
        for (row, &p) in self.centered.chunks_exact(self.n_params).zip(proj.iter()) {
            let w = p * inv;
            for (o, &r) in out.iter_mut().zip(row) {
                *o += w * r;
            }
        }
    }
}

/// `(S + λI) x`, computed in two passes over the centred rows.
pub fn apply_metric<T: Scalar>(batch: &SrBatch<T>, x: &[T], lambda: T) -> Result<Vec<T>> {
    check_len(batch.n_params, x.len())?;
    if batch.is_empty() {
        return Err(Error::EmptyBatch);
    }
    let mut out = vec![T::zero(); x.len()];
    batch.metric(lambda).apply(x, &mut out);
    Ok(out)
}

/// The recorded sample `k` as a rotor configuration.
pub fn sample_config<T: Scalar>(batch: &SrBatch<T>, k: usize) -> RotorConfig<T> {
    RotorConfig::new(batch.sample(k).to_vec())
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Variational Monte Carlo settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct VmcConfig<T> {
    /// Metropolis steps per SR iteration.
    pub n_samp: usize,
    /// Leading steps of each batch left out of the estimates.
    pub n_warm: usize,
    /// Number of SR iterations.
    pub n_iter: usize,
    /// Diagonal shift of the SR metric.
    pub lambda_reg: T,
    pub learning_rate: T,
    /// Hidden-unit density `m / n`.
    pub alpha: f64,
    /// Half-width (radians) of the uniform per-coordinate proposal.
    pub proposal_step: T,
    pub minres_tol: T,
    /// `None` means the parameter count.
    pub minres_max_iter: Option<usize>,
    pub seed: u64,
    /// Adapt the proposal width toward 50% acceptance during warm steps.
    pub tune_step: bool,
}

impl<T: Scalar> Default for VmcConfig<T> {
    fn default() -> Self {
        Self {
            n_samp: 40,
            n_warm: 0,
            n_iter: 1000,
            lambda_reg: T::lit(1e-6),
            learning_rate: T::lit(0.01),
            alpha: 1.0,
            proposal_step: T::lit(0.3),
            minres_tol: T::lit(1e-10),
            minres_max_iter: None,
            seed: 0,
            tune_step: false,
        }
    }
}

impl<T: Scalar> VmcConfig<T> {
    /// Settings used for certification on small graphs: 300 iterations with
    /// 10 samples up to 4 vertices, 1000 with 40 up to 6 vertices, 4000 with
    /// 40 beyond; always no warm samples and `λ = 1e-9`.
    pub fn small_graph_tier(n: usize, seed: u64) -> Self {
        let (n_iter, n_samp) = match n {
            0..=4 => (300, 10),
            5..=6 => (1000, 40),
            _ => (4000, 40),
        };
        Self {
            n_iter,
            n_samp,
            n_warm: 0,
            lambda_reg: T::lit(1e-9),
            seed,
            ..Self::default()
        }
    }

    /// Rows recorded per batch.
    pub fn batch_len(&self) -> usize {
        self.n_samp.saturating_sub(self.n_warm)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidArgument(msg));
        if self.n_warm >= self.n_samp || self.batch_len() < 2 {
            return fail(format!(
                "need at least 2 recorded samples, got n_samp={} n_warm={}",
                self.n_samp, self.n_warm
            ));
        }
        if self.n_iter == 0 {
            return fail("n_iter must be ≥ 1".into());
        }
        if !(self.lambda_reg >= T::zero() && self.lambda_reg.is_finite()) {
            return fail(format!(
                "lambda_reg must be finite and ≥ 0, got {}",
                self.lambda_reg
            ));
        }
        if !(self.learning_rate > T::zero() && self.learning_rate.is_finite()) {
            return fail(format!(
                "learning_rate must be positive, got {}",
                self.learning_rate
            ));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return fail(format!("alpha must be positive, got {}", self.alpha));
        }
        if !(self.proposal_step > T::zero() && self.proposal_step.is_finite()) {
            return fail(format!(
                "proposal_step must be positive, got {}",
                self.proposal_step
            ));
        }
        if !(self.minres_tol > T::zero()) {
            return fail(format!(
                "minres_tol must be positive, got {}",
                self.minres_tol
            ));
        }
        if self.minres_max_iter == Some(0) {
            return fail("minres_max_iter must be ≥ 1".into());
        }
        Ok(())
    }
}

//! Random-walk Metropolis-Hastings over the Born density `|ψ(θ)|²`.

use rand::Rng;

use crate::error::{check_len, Result};
use crate::nqs::RbmParams;
use crate::objective::RotorConfig;
use crate::rng::{seeded, ChaCha8Rng, STREAM_CHAIN};
use crate::scalar::{wrap_angle, Scalar};

const TUNE_RATE: f64 = 0.05;

/// A single walker with its cached `ln ψ`.
#[derive(Debug, Clone)]
pub struct ChainState<T> {
    theta: RotorConfig<T>,
    vectors: Vec<[T; 2]>,
    log_psi: T,
    step: T,
    rng: ChaCha8Rng,
}

impl<T: Scalar> ChainState<T> {
    pub fn new(
        params: &RbmParams<T>,
        theta: RotorConfig<T>,
        step: T,
        rng: ChaCha8Rng,
    ) -> Result<Self> {
        check_len(params.n_visible(), theta.len())?;
        let vectors = theta.unit_vectors();
        let log_psi = params.log_psi_from_vectors(&vectors);
        Ok(Self {
            theta,
            vectors,
            log_psi,
            step,
            rng,
        })
    }

    /// Walker started from uniform angles on the chain stream of `seed`.
    pub fn random(params: &RbmParams<T>, step: T, seed: u64) -> Result<Self> {
        let mut rng = seeded(seed, STREAM_CHAIN);
        let theta = RotorConfig::random(params.n_visible(), &mut rng);
        Self::new(params, theta, step, rng)
    }

    pub fn theta(&self) -> &RotorConfig<T> {
        &self.theta
    }

    pub(crate) fn vectors(&self) -> &[[T; 2]] {
        &self.vectors
    }

    pub fn log_psi(&self) -> T {
        self.log_psi
    }

    /// Current proposal half-width.
    pub fn step(&self) -> T {
        self.step
    }

    /// Recomputes the cache after the parameters changed.
    pub fn refresh(&mut self, params: &RbmParams<T>) {
        self.log_psi = params.log_psi_from_vectors(&self.vectors);
    }

    /// One proposal `θ' = θ + δ`, `δ_j ~ U(-step, step)`, accepted with
    /// probability `min(1, exp(2 (ln ψ(θ') - ln ψ(θ))))`. Returns whether
    /// the move was accepted.
    pub fn mh_step(&mut self, params: &RbmParams<T>) -> bool {
        let step = self.step.to_f64_lossy();
        let proposal = RotorConfig::new(
            self.theta
                .angles()
                .iter()
                .map(|&t| wrap_angle(t + T::lit(self.rng.random_range(-step..step))))
                .collect(),
        );
        let vectors = proposal.unit_vectors();
        let log_psi = params.log_psi_from_vectors(&vectors);
        let log_ratio = T::lit(2.0) * (log_psi - self.log_psi);
        let u: f64 = self.rng.random();
        let accept = u.ln() < log_ratio.to_f64_lossy();
        if accept {
            self.theta = proposal;
            self.vectors = vectors;
            self.log_psi = log_psi;
        }
        accept
    }

    /// Multiplicative step adaptation toward 50% acceptance.
    pub(crate) fn tune(&mut self, accepted: bool) {
        let dir = if accepted { 0.5 } else { -0.5 };
        let scaled = self.step.to_f64_lossy() * (TUNE_RATE * dir).exp();
        self.step = T::lit(scaled.clamp(1e-3, std::f64::consts::PI));
    }
}

/// `2 (ln ψ(to) - ln ψ(from))`, the log Metropolis ratio for a symmetric proposal.
pub fn log_acceptance_ratio<T: Scalar>(
    params: &RbmParams<T>,
    from: &RotorConfig<T>,
    to: &RotorConfig<T>,
) -> Result<T> {
    Ok(T::lit(2.0) * (params.log_psi(to)? - params.log_psi(from)?))
}

//! Variational Monte Carlo training of the rotor RBM.
//!
//! Each SR iteration advances a persistent Metropolis chain, estimates the
//! energy gradient and metric from the recorded batch, solves
//! `(S + λI) δ = g` with MINRES and applies `p ← p - η δ`.

mod chain;
mod config;
pub mod minres;
mod sr;

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use chain::{log_acceptance_ratio, ChainState};
pub use config::VmcConfig;
pub use minres::{minres_solve, FnOperator, LinearOperator, MinresOutcome};
pub use sr::{
    apply_metric, estimate_forces, sample_batch, sample_config, Forces, SrBatch, SrMetric,
};

use crate::bmz::procedure_cut;
use crate::error::{check_len, Result};
use crate::graph::{CutAssignment, Graph};
use crate::nqs::RbmParams;
use crate::objective::RotorConfig;
use crate::scalar::Scalar;

/// Per-iteration diagnostics of [`sr_iteration`].
#[derive(Debug, Clone, PartialEq)]
pub struct SrDiagnostics<T> {
    pub e_mean: T,
    pub accept_rate: f64,
    /// True MINRES residual `‖(S + λI) δ - g‖`.
    pub residual: T,
    pub minres_iters: usize,
    /// Lowest-cost sample of the batch.
    pub best_energy: T,
    pub best_theta: RotorConfig<T>,
}

/// One sample / estimate / solve / update cycle. The chain cache is refreshed
/// against the updated parameters before returning.
pub fn sr_iteration<T: Scalar>(
    g: &Graph<T>,
    params: &mut RbmParams<T>,
    chain: &mut ChainState<T>,
    cfg: &VmcConfig<T>,
) -> Result<SrDiagnostics<T>> {
    check_len(params.n_visible(), g.n())?;
    let (batch, accept_rate) = sample_batch(g, params, chain, cfg);
    let forces = estimate_forces(&batch)?;
    let metric = batch.metric(cfg.lambda_reg);
    let max_iter = cfg.minres_max_iter.unwrap_or(params.num_params()).max(1);
    let solve = minres_solve(&metric, &forces.grad, cfg.minres_tol, max_iter)?;
    params.apply_update(&solve.x, cfg.learning_rate)?;
    chain.refresh(params);
    let (k, best_energy) = batch.best().expect("validated batch is non-empty");
    Ok(SrDiagnostics {
        e_mean: forces.e_mean,
        accept_rate,
        residual: solve.residual,
        minres_iters: solve.iters,
        best_energy,
        best_theta: sample_config(&batch, k),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct IterationRecord<T> {
    pub iteration: usize,
    pub e_mean: T,
    pub accept_rate: f64,
    pub residual: T,
    pub minres_iters: usize,
    /// Lowest sampled cost up to and including this iteration.
    pub best_energy: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace<T> {
    pub config: VmcConfig<T>,
    pub records: Vec<IterationRecord<T>>,
    pub final_params: RbmParams<T>,
    pub best_theta: RotorConfig<T>,
    pub best_energy: T,
    pub best_cut_value: T,
    pub best_cut: CutAssignment,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct RunSummary<T> {
    pub best_energy: T,
    pub best_cut_value: T,
    pub best_cut: Vec<i8>,
    pub final_e_mean: T,
    pub config: VmcConfig<T>,
    pub wall_time_secs: f64,
}

impl<T: Scalar> RunTrace<T> {
    /// Best sampled energy within the first `iterations` iterations.
    pub fn best_energy_at(&self, iterations: usize) -> Option<T> {
        iterations
            .checked_sub(1)
            .and_then(|i| self.records.get(i))
            .map(|r| r.best_energy)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "iteration,e_mean,accept_rate,residual")?;
        for r in &self.records {
            writeln!(
                out,
                "{},{},{},{}",
                r.iteration, r.e_mean, r.accept_rate, r.residual
            )?;
        }
        Ok(())
    }

    pub fn summary(&self, wall_time_secs: f64) -> RunSummary<T> {
        RunSummary {
            best_energy: self.best_energy,
            best_cut_value: self.best_cut_value,
            best_cut: self.best_cut.labels().to_vec(),
            final_e_mean: self.records.last().map_or(T::nan(), |r| r.e_mean),
            config: self.config,
            wall_time_secs,
        }
    }

    /// Writes `<stem>.csv` and `<stem>.json`.
    pub fn save(&self, stem: &Path, wall_time_secs: f64) -> Result<()> {
        let csv = std::fs::File::create(stem.with_extension("csv"))?;
        self.write_csv(std::io::BufWriter::new(csv))?;
        let json = std::fs::File::create(stem.with_extension("json"))?;
        serde_json::to_writer_pretty(std::io::BufWriter::new(json), &self.summary(wall_time_secs))?;
        Ok(())
    }
}

/// Trains `init` for `cfg.n_iter` iterations with a chain started uniformly
/// at random from `cfg.seed`.
pub fn run_vmc<T: Scalar>(
    g: &Graph<T>,
    cfg: &VmcConfig<T>,
    init: RbmParams<T>,
) -> Result<RunTrace<T>> {
    run_vmc_with(g, cfg, init, |_| {})
}

/// [`run_vmc`] with a callback after every iteration.
pub fn run_vmc_with<T: Scalar, F: FnMut(&IterationRecord<T>)>(
    g: &Graph<T>,
    cfg: &VmcConfig<T>,
    init: RbmParams<T>,
    mut observe: F,
) -> Result<RunTrace<T>> {
    cfg.validate()?;
    check_len(g.n(), init.n_visible())?;
    let mut params = init;
    let mut chain = ChainState::random(&params, cfg.proposal_step, cfg.seed)?;
    let mut records = Vec::with_capacity(cfg.n_iter);
    let mut best: Option<(T, RotorConfig<T>)> = None;
    for iteration in 1..=cfg.n_iter {
        let d = sr_iteration(g, &mut params, &mut chain, cfg)?;
        if best.as_ref().is_none_or(|(e, _)| d.best_energy < *e) {
            best = Some((d.best_energy, d.best_theta));
        }
        let record = IterationRecord {
            iteration,
            e_mean: d.e_mean,
            accept_rate: d.accept_rate,
            residual: d.residual,
            minres_iters: d.minres_iters,
            best_energy: best.as_ref().map(|(e, _)| *e).expect("set above"),
        };
        observe(&record);
        records.push(record);
    }
    let (best_energy, best_theta) = best.expect("n_iter ≥ 1");
    let (best_cut_value, best_cut) = procedure_cut(g, &best_theta)?;
    Ok(RunTrace {
        config: *cfg,
        records,
        final_params: params,
        best_theta,
        best_energy,
        best_cut_value,
        best_cut,
    })
}

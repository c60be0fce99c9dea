//! Multi-seed experiments and parameter sweeps over both solvers.
//!
//! Seeds run in parallel; each worker owns its solver state and results are
//! gathered in seed order, so every table is independent of scheduling.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bmz::{bmz_run, BmzConfig, BmzRun};
use crate::error::{Error, Result};
use crate::graph::{Graph, WeightMode};
use crate::nqs::RbmParams;
use crate::vmc::{run_vmc, RunTrace, VmcConfig};

/// Standard deviation of the initial RBM weights.
pub const DEFAULT_INIT_SIGMA: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum GraphSource {
    File {
        path: PathBuf,
    },
    Generate {
        n: usize,
        m: usize,
        mode: WeightMode,
        seed: u64,
    },
}

impl GraphSource {
    pub fn load(&self) -> Result<Graph<f64>> {
        match self {
            GraphSource::File { path } => Ok(Graph::parse_edge_list(&fs::read_to_string(path)?)?),
            GraphSource::Generate { n, m, mode, seed } => Graph::generate(*n, *m, *mode, *seed),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solver {
    Bmz,
    Nqs,
    Both,
}

impl Solver {
    fn runs_bmz(self) -> bool {
        matches!(self, Solver::Bmz | Solver::Both)
    }

    fn runs_nqs(self) -> bool {
        matches!(self, Solver::Nqs | Solver::Both)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Init {
    Random,
    /// Visible biases of length `r` pointing along a BMZ solution.
    Pretrained {
        r: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub graph: GraphSource,
    pub solver: Solver,
    pub vmc: VmcConfig<f64>,
    pub bmz: BmzConfig<f64>,
    pub seeds: Vec<u64>,
    pub init: Init,
    pub init_sigma: f64,
    /// Directory for per-seed traces and tables; nothing is written when unset.
    pub out_dir: Option<PathBuf>,
}

impl ExperimentSpec {
    pub fn new(graph: GraphSource, solver: Solver) -> Self {
        Self {
            graph,
            solver,
            vmc: VmcConfig::default(),
            bmz: BmzConfig::default(),
            seeds: (0..10).collect(),
            init: Init::Random,
            init_sigma: DEFAULT_INIT_SIGMA,
            out_dir: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.seeds.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one seed is required".into(),
            ));
        }
        if self.solver.runs_nqs() {
            self.vmc.validate()?;
        }
        if self.solver.runs_bmz() || matches!(self.init, Init::Pretrained { .. }) {
            self.bmz.validate()?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedResult {
    pub seed: u64,
    pub energy: f64,
    pub cut_value: f64,
    pub wall_time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedStats {
    pub mean: f64,
    /// Population standard deviation over seeds.
    pub std: f64,
    pub min: f64,
    pub cut_mean: f64,
    pub cut_std: f64,
    pub cut_max: f64,
    pub per_seed: Vec<SeedResult>,
}

fn mean_std(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    let var = values.map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

impl SeedStats {
    pub fn from_results(per_seed: Vec<SeedResult>) -> Result<Self> {
        if per_seed.is_empty() {
            return Err(Error::InvalidArgument(
                "no seed results to aggregate".into(),
            ));
        }
        let (mean, std) = mean_std(per_seed.iter().map(|r| r.energy));
        let min = per_seed
            .iter()
            .map(|r| r.energy)
            .fold(f64::INFINITY, f64::min);
        let (cut_mean, cut_std) = mean_std(per_seed.iter().map(|r| r.cut_value));
        let cut_max = per_seed
            .iter()
            .map(|r| r.cut_value)
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(Self {
            mean,
            std,
            min,
            cut_mean,
            cut_std,
            cut_max,
            per_seed,
        })
    }

    pub fn max(&self) -> f64 {
        self.per_seed
            .iter()
            .map(|r| r.energy)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Everything a seed produced.
#[derive(Debug, Clone)]
pub struct SeedOutput {
    pub seed: u64,
    pub bmz: Option<(BmzRun<f64>, f64)>,
    pub nqs: Option<(RunTrace<f64>, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub bmz: Option<SeedStats>,
    pub nqs: Option<SeedStats>,
}

impl ExperimentReport {
    /// Energy and cut aggregates per solver; wall times are left to the JSON.
    pub fn stats_csv(&self) -> String {
        let mut out = String::from("solver,mean,std,min,cut_mean,cut_std,cut_max\n");
        for (name, s) in self.rows() {
            writeln!(
                out,
                "{name},{},{},{},{},{},{}",
                s.mean, s.std, s.min, s.cut_mean, s.cut_std, s.cut_max
            )
            .unwrap();
        }
        out
    }

    /// `solver,seed,energy,cut_value`.
    pub fn seeds_csv(&self) -> String {
        let mut out = String::from("solver,seed,energy,cut_value\n");
        for (name, stats) in self.rows() {
            for r in &stats.per_seed {
                writeln!(out, "{name},{},{},{}", r.seed, r.energy, r.cut_value).unwrap();
            }
        }
        out
    }

    fn rows(&self) -> impl Iterator<Item = (&'static str, &SeedStats)> {
        [("bmz", self.bmz.as_ref()), ("nqs", self.nqs.as_ref())]
            .into_iter()
            .filter_map(|(name, s)| s.map(|s| (name, s)))
    }
}

fn timed<R>(f: impl FnOnce() -> Result<R>) -> Result<(R, f64)> {
    let start = Instant::now();
    let r = f()?;
    Ok((r, start.elapsed().as_secs_f64()))
}

/// Runs both solvers as requested for one seed. With pretrained init the BMZ
/// solution of the same seed seeds the RBM, so BMZ always finishes first.
pub fn run_seed(g: &Graph<f64>, spec: &ExperimentSpec, seed: u64) -> Result<SeedOutput> {
    let needs_bmz = spec.solver.runs_bmz()
        || (spec.solver.runs_nqs() && matches!(spec.init, Init::Pretrained { .. }));
    let bmz = if needs_bmz {
        Some(timed(|| bmz_run(g, &spec.bmz, seed))?)
    } else {
        None
    };
    let nqs = if spec.solver.runs_nqs() {
        let init = match spec.init {
            Init::Random => RbmParams::init_random(g.n(), spec.vmc.alpha, spec.init_sigma, seed)?,
            Init::Pretrained { r } => {
                let theta = &bmz.as_ref().expect("computed above").0.outcome.theta;
                RbmParams::init_pretrained(theta, spec.vmc.alpha, r, spec.init_sigma, seed)?
            }
        };
        let cfg = VmcConfig { seed, ..spec.vmc };
        Some(timed(|| run_vmc(g, &cfg, init))?)
    } else {
        None
    };
    let bmz = if spec.solver.runs_bmz() { bmz } else { None };
    Ok(SeedOutput { seed, bmz, nqs })
}

/// Runs every seed, aggregates, and writes artifacts when `out_dir` is set:
/// `nqs_seed<k>.{csv,json}`, `bmz_seed<k>.json`, `stats.csv`, `seeds.csv`,
/// `report.json`.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<(ExperimentReport, Vec<SeedOutput>)> {
    spec.validate()?;
    let g = spec.graph.load()?;
    let outputs: Vec<SeedOutput> = spec
        .seeds
        .par_iter()
        .map(|&s| run_seed(&g, spec, s))
        .collect::<Result<_>>()?;

    let stats = |pick: &dyn Fn(&SeedOutput) -> Option<SeedResult>| -> Result<Option<SeedStats>> {
        let rows: Vec<SeedResult> = outputs.iter().filter_map(pick).collect();
        if rows.is_empty() {
            Ok(None)
        } else {
            SeedStats::from_results(rows).map(Some)
        }
    };
    let report = ExperimentReport {
        bmz: stats(&|o| {
            o.bmz.as_ref().map(|(r, t)| SeedResult {
                seed: o.seed,
                energy: r.outcome.energy,
                cut_value: r.cut_value,
                wall_time: *t,
            })
        })?,
        nqs: stats(&|o| {
            o.nqs.as_ref().map(|(r, t)| SeedResult {
                seed: o.seed,
                energy: r.best_energy,
                cut_value: r.best_cut_value,
                wall_time: *t,
            })
        })?,
    };
    if let Some(dir) = &spec.out_dir {
        write_artifacts(dir, spec, &report, &outputs)?;
    }
    Ok((report, outputs))
}

fn write_artifacts(
    dir: &Path,
    spec: &ExperimentSpec,
    report: &ExperimentReport,
    outputs: &[SeedOutput],
) -> Result<()> {
    fs::create_dir_all(dir)?;
    for o in outputs {
        if let Some((trace, t)) = &o.nqs {
            trace.save(&dir.join(format!("nqs_seed{}", o.seed)), *t)?;
        }
        if let Some((run, t)) = &o.bmz {
            let json = serde_json::json!({
                "seed": run.seed,
                "energy": run.outcome.energy,
                "cut_value": run.cut_value,
                "cut": run.cut.labels(),
                "iters": run.outcome.iters,
                "grad_inf": run.outcome.grad_inf,
                "wall_time_secs": t,
            });
            fs::write(
                dir.join(format!("bmz_seed{}.json", o.seed)),
                serde_json::to_string_pretty(&json)?,
            )?;
        }
    }
    fs::write(dir.join("stats.csv"), report.stats_csv())?;
    fs::write(dir.join("seeds.csv"), report.seeds_csv())?;
    let json = serde_json::json!({ "spec": spec, "report": report });
    fs::write(
        dir.join("report.json"),
        serde_json::to_string_pretty(&json)?,
    )?;
    Ok(())
}

/// One sweep axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "param", content = "values")]
pub enum SweepGrid {
    NIter(Vec<usize>),
    Samples(Vec<(usize, usize)>),
    LambdaReg(Vec<f64>),
}

impl SweepGrid {
    pub fn len(&self) -> usize {
        match self {
            SweepGrid::NIter(v) => v.len(),
            SweepGrid::Samples(v) => v.len(),
            SweepGrid::LambdaReg(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn point(&self, k: usize, base: &VmcConfig<f64>) -> (String, VmcConfig<f64>) {
        match self {
            SweepGrid::NIter(v) => (
                v[k].to_string(),
                VmcConfig {
                    n_iter: v[k],
                    ..*base
                },
            ),
            SweepGrid::Samples(v) => {
                let (n_samp, n_warm) = v[k];
                (
                    format!("({n_samp};{n_warm})"),
                    VmcConfig {
                        n_samp,
                        n_warm,
                        ..*base
                    },
                )
            }
            SweepGrid::LambdaReg(v) => (
                format!("{:e}", v[k]),
                VmcConfig {
                    lambda_reg: v[k],
                    ..*base
                },
            ),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            SweepGrid::NIter(_) => "n_iter",
            SweepGrid::Samples(_) => "n_samp_n_warm",
            SweepGrid::LambdaReg(_) => "lambda_reg",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub point: String,
    pub stats: SeedStats,
}

/// NQS statistics at each grid point, every other setting taken from `spec`.
pub fn run_sweep(spec: &ExperimentSpec, grid: &SweepGrid) -> Result<Vec<SweepRow>> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("sweep grid is empty".into()));
    }
    let mut rows = Vec::with_capacity(grid.len());
    for k in 0..grid.len() {
        let (point, vmc) = grid.point(k, &spec.vmc);
        let sub = ExperimentSpec {
            solver: Solver::Nqs,
            vmc,
            out_dir: spec
                .out_dir
                .as_ref()
                .map(|d| d.join(format!("{}_{k}", grid.name()))),
            ..spec.clone()
        };
        let (report, _) = run_experiment(&sub)?;
        rows.push(SweepRow {
            point,
            stats: report.nqs.expect("nqs solver ran"),
        });
    }
    if let Some(dir) = &spec.out_dir {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("sweep.csv"), sweep_csv(grid, &rows))?;
    }
    Ok(rows)
}

/// `<param>,min,mean,max,std`, one line per grid point.
pub fn sweep_csv(grid: &SweepGrid, rows: &[SweepRow]) -> String {
    let mut out = format!("{},min,mean,max,std\n", grid.name());
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.point,
            r.stats.min,
            r.stats.mean,
            r.stats.max(),
            r.stats.std
        )
        .unwrap();
    }
    out
}

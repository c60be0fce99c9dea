use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rotor_maxcut::bmz::BmzConfig;
use rotor_maxcut::experiment::{
    run_experiment, run_sweep, sweep_csv, ExperimentReport, ExperimentSpec, GraphSource, Init,
    Solver, SweepGrid, DEFAULT_INIT_SIGMA,
};
use rotor_maxcut::graph::{brute_force_max_cut, Graph, WeightMode};
use rotor_maxcut::vmc::VmcConfig;

#[derive(Parser)]
#[command(
    name = "rotor-maxcut",
    version,
    about = "Max-Cut via rotor relaxation: BMZ and neural-network VMC"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random graph as an edge list.
    GenGraph {
        #[arg(long)]
        n: usize,
        /// Number of edges.
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Weights::Uniform)]
        weights: Weights,
        #[arg(long, default_value_t = 0.0)]
        lo: f64,
        #[arg(long, default_value_t = 15.0)]
        hi: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Exact maximum cut by enumeration (at most 24 vertices).
    Bruteforce { graph: PathBuf },
    /// Multi-seed run of one or both solvers.
    Run(RunArgs),
    /// NQS statistics over a grid of one parameter.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        /// Comma-separated iteration counts.
        #[arg(long, group = "grid")]
        n_iter_grid: Option<String>,
        /// Comma-separated `n_samp:n_warm` pairs.
        #[arg(long, group = "grid")]
        samples_grid: Option<String>,
        /// Comma-separated regularization values.
        #[arg(long, group = "grid")]
        lambda_grid: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Weights {
    /// All weights 1.
    Uniform,
    /// Uniform on (lo, hi).
    Random,
}

impl Weights {
    fn mode(self, lo: f64, hi: f64) -> WeightMode {
        match self {
            Weights::Uniform => WeightMode::Uniform1,
            Weights::Random => WeightMode::RandomRange { lo, hi },
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverArg {
    Bmz,
    Nqs,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum InitArg {
    Random,
    Pretrained,
}

#[derive(Args)]
struct RunArgs {
    /// Edge-list file.
    #[arg(long, required_unless_present = "gen_n")]
    graph: Option<PathBuf>,
    /// Generate the graph instead: vertex count.
    #[arg(long, requires = "gen_m", conflicts_with = "graph")]
    gen_n: Option<usize>,
    /// Generated edge count.
    #[arg(long)]
    gen_m: Option<usize>,
    #[arg(long, value_enum, default_value_t = Weights::Uniform)]
    gen_weights: Weights,
    #[arg(long, default_value_t = 0.0)]
    gen_lo: f64,
    #[arg(long, default_value_t = 15.0)]
    gen_hi: f64,
    #[arg(long, default_value_t = 0)]
    gen_seed: u64,

    #[arg(long, value_enum, default_value_t = SolverArg::Nqs)]
    solver: SolverArg,
    /// `a..b` or a comma-separated list.
    #[arg(long, default_value = "0..10")]
    seeds: String,
    /// Use the small-graph settings for the graph size (overridden by explicit flags).
    #[arg(long)]
    small_graph_tier: bool,

    #[arg(long)]
    n_samp: Option<usize>,
    #[arg(long)]
    n_warm: Option<usize>,
    #[arg(long)]
    n_iter: Option<usize>,
    #[arg(long)]
    lambda_reg: Option<f64>,
    #[arg(long)]
    learning_rate: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Proposal half-width in radians.
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    minres_tol: Option<f64>,
    #[arg(long)]
    minres_max_iter: Option<usize>,
    /// Adapt the proposal width during warm samples.
    #[arg(long)]
    tune_step: bool,

    #[arg(long, value_enum, default_value_t = InitArg::Random)]
    init: InitArg,
    /// Visible-bias length for pretrained initialization.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    #[arg(long, default_value_t = DEFAULT_INIT_SIGMA)]
    init_sigma: f64,

    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    grad_tol: Option<f64>,

    /// Directory for traces and tables.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn parse_seeds(text: &str) -> Result<Vec<u64>> {
    let seeds: Vec<u64> = if let Some((a, b)) = text.split_once("..") {
        (a.trim().parse()?..b.trim().parse()?).collect()
    } else {
        text.split(',')
            .map(|s| s.trim().parse())
            .collect::<Result<_, _>>()?
    };
    if seeds.is_empty() {
        bail!("no seeds in {text:?}");
    }
    Ok(seeds)
}

fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<T>()
                .with_context(|| format!("bad grid value {s:?}"))
        })
        .collect()
}

impl RunArgs {
    fn spec(&self) -> Result<ExperimentSpec> {
        let source = match (&self.graph, self.gen_n, self.gen_m) {
            (Some(path), _, _) => GraphSource::File { path: path.clone() },
            (None, Some(n), Some(m)) => GraphSource::Generate {
                n,
                m,
                mode: self.gen_weights.mode(self.gen_lo, self.gen_hi),
                seed: self.gen_seed,
            },
            _ => bail!("give --graph or both --gen-n and --gen-m"),
        };
        let solver = match self.solver {
            SolverArg::Bmz => Solver::Bmz,
            SolverArg::Nqs => Solver::Nqs,
            SolverArg::Both => Solver::Both,
        };
        let mut vmc = if self.small_graph_tier {
            VmcConfig::small_graph_tier(source.load()?.n(), 0)
        } else {
            VmcConfig::default()
        };
        let set = |dst: &mut usize, v: Option<usize>| v.into_iter().for_each(|v| *dst = v);
        let setf = |dst: &mut f64, v: Option<f64>| v.into_iter().for_each(|v| *dst = v);
        set(&mut vmc.n_samp, self.n_samp);
        set(&mut vmc.n_warm, self.n_warm);
        set(&mut vmc.n_iter, self.n_iter);
        setf(&mut vmc.lambda_reg, self.lambda_reg);
        setf(&mut vmc.learning_rate, self.learning_rate);
        setf(&mut vmc.alpha, self.alpha);
        setf(&mut vmc.proposal_step, self.step);
        setf(&mut vmc.minres_tol, self.minres_tol);
        if self.minres_max_iter.is_some() {
            vmc.minres_max_iter = self.minres_max_iter;
        }
        vmc.tune_step = self.tune_step;

        let mut bmz = BmzConfig::default();
        set(&mut bmz.max_iters, self.max_iters);
        setf(&mut bmz.grad_tol, self.grad_tol);

        let init = match self.init {
            InitArg::Random => Init::Random,
            InitArg::Pretrained => Init::Pretrained { r: self.r },
        };
        Ok(ExperimentSpec {
            graph: source,
            solver,
            vmc,
            bmz,
            seeds: parse_seeds(&self.seeds)?,
            init,
            init_sigma: self.init_sigma,
            out_dir: self.out.clone(),
        })
    }
}

fn print_report(report: &ExperimentReport) {
    print!("{}", report.stats_csv());
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::GenGraph {
            n,
            m,
            weights,
            lo,
            hi,
            seed,
            out,
        } => {
            let g = Graph::<f64>::generate(n, m, weights.mode(lo, hi), seed)?;
            fs::write(&out, g.to_edge_list())
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "wrote {} ({} vertices, {} edges, density {:.3})",
                out.display(),
                g.n(),
                g.num_edges(),
                g.density()
            );
        }
        Command::Bruteforce { graph } => {
            let text = fs::read_to_string(&graph)
                .with_context(|| format!("reading {}", graph.display()))?;
            let g = Graph::<f64>::parse_edge_list(&text)?;
            let (value, cut) = brute_force_max_cut(&g)?;
            println!("max cut: {value}");
            let labels: Vec<String> = cut.labels().iter().map(|x| format!("{x:+}")).collect();
            println!("assignment: {}", labels.join(" "));
        }
        Command::Run(args) => {
            let spec = args.spec()?;
            let (report, _) = run_experiment(&spec)?;
            print_report(&report);
        }
        Command::Sweep {
            run,
            n_iter_grid,
            samples_grid,
            lambda_grid,
        } => {
            let grid = match (n_iter_grid, samples_grid, lambda_grid) {
                (Some(v), _, _) => SweepGrid::NIter(parse_list(&v)?),
                (_, Some(v), _) => SweepGrid::Samples(
                    v.split(',')
                        .map(|pair| {
                            let (s, w) = pair
                                .split_once(':')
                                .with_context(|| format!("expected n_samp:n_warm, got {pair:?}"))?;
                            Ok((s.trim().parse()?, w.trim().parse()?))
                        })
                        .collect::<Result<_>>()?,
                ),
                (_, _, Some(v)) => SweepGrid::LambdaReg(parse_list(&v)?),
                _ => bail!("give one of --n-iter-grid, --samples-grid, --lambda-grid"),
            };
            let rows = run_sweep(&run.spec()?, &grid)?;
            print!("{}", sweep_csv(&grid, &rows));
        }
    }
    Ok(())
}

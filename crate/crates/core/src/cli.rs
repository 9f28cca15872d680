//! Command-line front end: `graph`, `simulate`, `optimize`, `sweep`.
//!
//! Exit codes: 0 on success, 2 for usage, config or I/O errors, 3 when the
//! numerics fail (an integration left the simplex).

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::config::RunConfig;
use crate::dynamics::integrate;
use crate::error::{Error, Result};
use crate::graph::{barabasi_albert, load_graph, named_small_graph, watts_strogatz, DirectedGraph};
use crate::harness::{run_sweep, SweepParam, SweepSpec};
use crate::objective::{RcInstance, Strategy};
use crate::optimizer::{solve_rc, SolverSettings, StrategyResult};
use crate::VERSION;

/// Environment variable read when `--threads` is absent.
pub const THREADS_ENV: &str = "RUMOR_CONTAIN_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "rumor-contain", version, about = "Rumor containment on networks")]
struct Cli {
    /// Worker threads; defaults to $RUMOR_CONTAIN_THREADS, then all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate or convert network files.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Write the expected-state trajectory for one strategy as CSV.
    Simulate(SimulateArgs),
    /// Find the most effective strategy on the budget line.
    Optimize(OptimizeArgs),
    /// Re-optimize while one parameter runs over a range.
    Sweep(SweepArgs),
}

#[derive(Debug, Subcommand)]
enum GraphCommand {
    Gen(GenArgs),
    Convert(ConvertArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Model {
    Named,
    Ws,
    Ba,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphFormat {
    Edges,
    Json,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: Model,
    /// Small-graph index, 1..=9.
    #[arg(long)]
    index: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long, default_value_t = 0.1)]
    p: f64,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Output format; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    format: Option<GraphFormat>,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    #[arg(long = "in", alias = "input")]
    input: PathBuf,
    /// Mirror every arc of the input.
    #[arg(long)]
    symmetric: bool,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum)]
    format: Option<GraphFormat>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    gamma1: f64,
    #[arg(long)]
    gamma2: f64,
    #[arg(long)]
    out: PathBuf,
    /// Overrides the step from the config.
    #[arg(long)]
    dt: Option<f64>,
    /// Allow strategies that do not spend exactly the budget.
    #[arg(long)]
    free_strategy: bool,
}

#[derive(Debug, Args)]
struct OptimizeArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Include the grid values of the objective.
    #[arg(long)]
    profile: bool,
    #[arg(long)]
    grid_points: Option<usize>,
    #[arg(long)]
    refine_tol: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// One of beta1, beta2, delta, horizon, budget, c1, c2.
    #[arg(long)]
    param: String,
    /// START:STOP:STEP, STOP included.
    #[arg(long, allow_hyphen_values = true)]
    values: String,
    #[arg(long)]
    out: PathBuf,
    /// Manifest path; defaults to the CSV path with `.manifest.json`.
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[arg(long)]
    grid_points: Option<usize>,
    #[arg(long)]
    dt: Option<f64>,
}

/// Parses and runs a command line, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };

    let threads = match cli.threads {
        Some(t) => t,
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => match v.trim().parse() {
                Ok(t) => t,
                Err(_) => {
                    eprintln!("error: {THREADS_ENV}={v:?} is not a thread count");
                    return EXIT_USAGE;
                }
            },
            Err(_) => 0,
        },
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return EXIT_USAGE;
        }
    };

    match pool.install(|| dispatch(cli.command)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_numerical() {
                EXIT_NUMERICAL
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Graph(GraphCommand::Gen(a)) => cmd_graph_gen(a),
        Command::Graph(GraphCommand::Convert(a)) => cmd_graph_convert(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Optimize(a) => cmd_optimize(a),
        Command::Sweep(a) => cmd_sweep(a),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn write_graph(g: &DirectedGraph, out: &Path, format: Option<GraphFormat>) -> Result<()> {
    let format = format.unwrap_or(if out.extension().is_some_and(|e| e == "json") {
        GraphFormat::Json
    } else {
        GraphFormat::Edges
    });
    let text = match format {
        GraphFormat::Edges => g.to_edge_list(),
        GraphFormat::Json => serde_json::to_string_pretty(&g.to_json())? + "\n",
    };
    write_file(out, &text)
}

fn cmd_graph_gen(a: GenArgs) -> Result<i32> {
    let need_n = || a.n.ok_or_else(|| Error::Config("--n is required for this model".into()));
    let g = match a.model {
        Model::Named => {
            let index = a
                .index
                .ok_or_else(|| Error::Config("--index is required for --model named".into()))?;
            named_small_graph(index)?
        }
        Model::Ws => watts_strogatz(need_n()?, a.k, a.p, a.seed)?,
        Model::Ba => barabasi_albert(need_n()?, a.m, a.seed)?,
    };
    write_graph(&g, &a.out, a.format)?;
    Ok(EXIT_OK)
}

fn cmd_graph_convert(a: ConvertArgs) -> Result<i32> {
    let g = load_graph(&a.input, a.symmetric)?;
    write_graph(&g, &a.out, a.format)?;
    Ok(EXIT_OK)
}

fn load_config(path: &Path) -> Result<(RunConfig, RcInstance)> {
    let cfg = RunConfig::load(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let inst = cfg.to_instance(base)?;
    Ok((cfg, inst))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Meta<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a RunConfig,
}

impl<'a> Meta<'a> {
    fn new(config: &'a RunConfig) -> Self {
        Self {
            tool: "rumor-contain",
            version: VERSION,
            config,
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SimulateMeta<'a> {
    #[serde(flatten)]
    meta: Meta<'a>,
    gamma1: f64,
    gamma2: f64,
    dt: f64,
    free_strategy: bool,
}

fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.file_stem().unwrap_or_default().to_os_string();
    name.push(suffix);
    path.with_file_name(name)
}

fn cmd_simulate(a: SimulateArgs) -> Result<i32> {
    let (cfg, inst) = load_config(&a.config)?;
    let mut cfg = cfg;
    if a.dt.is_some() {
        cfg.dt = a.dt;
    }
    let cfg = cfg.resolved();
    let dt = cfg.dt.expect("resolved");
    let strategy = Strategy {
        gamma1: a.gamma1,
        gamma2: a.gamma2,
    };
    if !a.free_strategy && !inst.on_budget_line(strategy) {
        return Err(Error::Config(format!(
            "strategy ({}, {}) spends {} per unit time but the budget is {}; \
             pass --free-strategy to simulate it anyway",
            a.gamma1,
            a.gamma2,
            inst.c1 * a.gamma1 + inst.c2 * a.gamma2,
            inst.budget
        )));
    }
    let traj = integrate(
        &inst.init,
        &inst.params(strategy),
        &inst.rumor_network,
        &inst.truth_network,
        inst.horizon,
        dt,
    )?;
    write_file(&a.out, &traj.to_csv())?;
    let meta = SimulateMeta {
        meta: Meta::new(&cfg),
        gamma1: a.gamma1,
        gamma2: a.gamma2,
        dt,
        free_strategy: a.free_strategy,
    };
    write_file(&sidecar(&a.out, ".meta.json"), &(serde_json::to_string_pretty(&meta)? + "\n"))?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct OptimizeOutput<'a> {
    #[serde(flatten)]
    result: &'a StrategyResult,
    meta: Meta<'a>,
}

fn cmd_optimize(a: OptimizeArgs) -> Result<i32> {
    let (mut cfg, inst) = load_config(&a.config)?;
    cfg.grid_points = a.grid_points.or(cfg.grid_points);
    cfg.refine_tol = a.refine_tol.or(cfg.refine_tol);
    cfg.dt = a.dt.or(cfg.dt);
    let cfg = cfg.resolved();
    let mut settings = cfg.solver_settings();
    settings.profile = a.profile;
    let result = solve_rc(&inst, &settings)?;
    let out = OptimizeOutput {
        result: &result,
        meta: Meta::new(&cfg),
    };
    write_file(&a.out, &(serde_json::to_string_pretty(&out)? + "\n"))?;
    Ok(EXIT_OK)
}

/// Expands `START:STOP:STEP` into `START, START + STEP, ...`, keeping STOP
/// when it is hit within a relative 1e-12.
pub fn parse_value_range(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::Config(format!("--values `{s}`: expected START:STOP:STEP"));
    let parts: Vec<f64> = s
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bad())?;
    let [start, stop, step] = parts[..] else {
        return Err(bad());
    };
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step <= 0.0 || stop < start {
        return Err(Error::Config(format!(
            "--values `{s}`: need finite START <= STOP and STEP > 0"
        )));
    }
    let slack = 1e-12 * stop.abs().max(1.0);
    let count = ((stop - start + slack) / step).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(Error::Config(format!("--values `{s}` expands to {count} values")));
    }
    Ok((0..count).map(|k| start + k as f64 * step).collect())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Seeds {
    rumor_network: Option<u64>,
    truth_network: Option<u64>,
}

#[derive(Serialize)]
struct RowError {
    value: f64,
    error: String,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SweepManifest<'a> {
    #[serde(flatten)]
    meta: Meta<'a>,
    param: SweepParam,
    values: &'a [f64],
    csv: String,
    base_instance: &'a RcInstance,
    seeds: Seeds,
    dt: f64,
    grid_points: usize,
    refine_tol: f64,
    errors: Vec<RowError>,
}

fn spec_seed(spec: &crate::config::GraphSpec) -> Option<u64> {
    use crate::config::GraphSpec;
    match spec {
        GraphSpec::Ws { seed, .. } | GraphSpec::Ba { seed, .. } => *seed,
        _ => None,
    }
}

fn cmd_sweep(a: SweepArgs) -> Result<i32> {
    let parameter: SweepParam = a.param.parse()?;
    let values = parse_value_range(&a.values)?;
    let (mut cfg, base) = load_config(&a.config)?;
    cfg.grid_points = a.grid_points.or(cfg.grid_points);
    cfg.dt = a.dt.or(cfg.dt);
    // Defaults that depend on the swept value (dt on horizon, refineTol on
    // budget and c1) are re-derived per row unless set explicitly.
    let (dt, refine_tol) = (cfg.dt, cfg.refine_tol);
    let cfg = cfg.resolved();
    let settings = SolverSettings {
        dt,
        refine_tol,
        ..cfg.solver_settings()
    };

    let spec = SweepSpec {
        base,
        parameter,
        values,
    };
    let result = run_sweep(&spec, &settings)?;
    write_file(&a.out, &result.to_csv())?;

    let errors: Vec<RowError> = result
        .failures()
        .map(|(value, e)| RowError {
            value,
            error: e.to_string(),
        })
        .collect();
    let manifest = SweepManifest {
        meta: Meta::new(&cfg),
        param: parameter,
        values: &spec.values,
        csv: a.out.file_name().unwrap_or_default().to_string_lossy().into_owned(),
        base_instance: &spec.base,
        seeds: Seeds {
            rumor_network: spec_seed(&cfg.rumor_network),
            truth_network: spec_seed(&cfg.truth_network),
        },
        dt: settings.dt.unwrap_or_else(|| spec.base.default_dt()),
        grid_points: settings.grid_points,
        refine_tol: settings.refine_tol_for(&spec.base),
        errors,
    };
    let manifest_path = a.manifest.unwrap_or_else(|| sidecar(&a.out, ".manifest.json"));
    write_file(&manifest_path, &(serde_json::to_string_pretty(&manifest)? + "\n"))?;

    let mut failures = result.failures().peekable();
    if failures.peek().is_none() {
        return Ok(EXIT_OK);
    }
    let numerical = result.failures().any(|(_, e)| e.is_numerical());
    for (value, e) in result.failures() {
        eprintln!("error: {parameter} = {value}: {e}");
    }
    Ok(if numerical { EXIT_NUMERICAL } else { EXIT_USAGE })
}

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fuzzsemi::cauchy::CSV_BAND_LEVELS;
use fuzzsemi::config::ProblemConfig;
use fuzzsemi::verify::{self, Suite};
use fuzzsemi::{
    closed_form, lift_matrix, solve, solve_first_order, solve_second_order, solve_wave, uniform_time_grid, BuiltinKind,
    CauchyProblem, Element, Error, Forcing, FuzzyFunction, FuzzyNumber, Trajectory, DEFAULT_NODE_COUNT,
};

const SCHEMA: &str = "fuzzsemi/1";

/// Fuzzy semigroup solvers: worked examples, problem files and property
/// suites.
#[derive(Parser, Debug)]
#[command(name = "fuzzsemi", version)]
struct Cli {
    /// Worker threads for library-level parallelism (output is unaffected).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write level bands r = 0, 0.5, 1 as CSV.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a worked example with the series engine and compare against
    /// its closed form.
    Example {
        name: ExampleName,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Level count of the triangular initial data.
        #[arg(long, default_value_t = fuzzsemi::DEFAULT_LEVEL_COUNT)]
        levels: usize,
    },
    /// Solve the problem described by a JSON file.
    Solve {
        config: PathBuf,
        #[arg(long)]
        nodes: Option<usize>,
        /// Override the file's horizon.
        #[arg(long)]
        t_max: Option<f64>,
        /// Override the file's tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run seeded property suites.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = verify::DEFAULT_CASES)]
        cases: usize,
    },
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long, default_value_t = 1.0)]
    t_max: f64,
    /// Number of time nodes on [0, t-max].
    #[arg(long, default_value_t = fuzzsemi::cauchy::DEFAULT_TIME_NODES)]
    nodes: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExampleName {
    Problem4,
    Problem5,
    Problem6,
    Wave,
    #[value(name = "remarkA")]
    RemarkA,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Marks errors that exit with code 1 (usage, I/O, schema); everything
/// else is a numerical failure and exits with 2.
#[derive(Debug)]
struct Usage(anyhow::Error);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(e: impl Into<anyhow::Error>) -> anyhow::Error {
    anyhow::Error::new(Usage(e.into()))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("FUZZSEMI_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            let is_usage = e.downcast_ref::<Usage>().is_some();
            ExitCode::from(if is_usage { 1 } else { 2 })
        }
    }
}

/// Returns whether every tolerance / property check passed.
fn run(cli: Cli) -> Result<bool> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(usage)?;
    }
    let (doc, csv, passed) = match cli.command {
        Command::Example { name, grid, tol, levels } => {
            if !(tol > 0.0) || !(grid.t_max >= 0.0) || levels == 0 {
                return Err(usage(anyhow::anyhow!("--tol must be > 0, --t-max >= 0 and --levels >= 1")));
            }
            example(name, &grid, tol, levels)?
        }
        Command::Solve { config, nodes, t_max, tol } => solve_config(&config, nodes, t_max, tol)?,
        Command::Verify { suite, seed, cases } => {
            let report = verify::run(suite, seed, cases);
            for f in report.failures() {
                log::warn!("{}/{} failed: {:e} > {:e}", f.suite, f.property, f.max_violation, f.tolerance);
            }
            let passed = report.passed;
            let mut doc = json!({"schema": SCHEMA, "command": "verify", "suite": suite.to_string()});
            merge(&mut doc, serde_json::to_value(&report)?);
            (doc, None, passed)
        }
    };
    write_out(cli.out.as_deref(), &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    if let (Some(path), Some(text)) = (cli.csv.as_deref(), csv) {
        fs::write(path, text).with_context(|| format!("writing {}", path.display())).map_err(usage)?;
    }
    Ok(passed)
}

fn merge(doc: &mut Value, extra: Value) {
    if let (Value::Object(a), Value::Object(b)) = (doc, extra) {
        a.extend(b);
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())).map_err(usage),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn tri(l: f64, c: f64, r: f64, levels: usize) -> Result<FuzzyNumber> {
    Ok(FuzzyNumber::triangular(l, c, r, levels)?)
}

type Outcome = (Value, Option<String>, bool);

fn example(name: ExampleName, grid: &GridArgs, tol: f64, levels: usize) -> Result<Outcome> {
    let times = uniform_time_grid(grid.t_max, grid.nodes);
    let horizon = if grid.t_max > 0.0 { grid.t_max } else { 1.0 };
    // headroom so the comparison at `tol` is not dominated by truncation
    let series_tol = tol / 10.0;
    let u0 = tri(0.0, 1.0, 2.0, levels)?;
    let v0 = tri(1.0, 2.0, 3.0, levels)?;
    let pair = Element::pair(u0.clone(), v0.clone());
    let p5 = || lift_matrix(vec![vec![1.0, 1.0], vec![-1.0, -1.0]]);

    let (series, exact): (Trajectory, Vec<Element>) = match name {
        ExampleName::Problem4 => {
            let op = lift_matrix(vec![vec![0.0, 1.0], vec![1.0, 0.0]])?;
            let p = CauchyProblem::first_order(op, pair, Forcing::Zero, horizon, series_tol)?;
            let exact = times.iter().map(|&t| closed_form::problem4(&u0, &v0, t)).collect();
            (solve_first_order(&p, &times)?, exact)
        }
        ExampleName::Problem5 => {
            let p = CauchyProblem::first_order(p5()?, pair, Forcing::Zero, horizon, series_tol)?;
            let exact = times.iter().map(|&t| closed_form::problem5(&u0, &v0, t)).collect();
            (solve_first_order(&p, &times)?, exact)
        }
        ExampleName::Problem6 => {
            let p = CauchyProblem::second_order(p5()?, pair, horizon, series_tol)?;
            let exact = times.iter().map(|&t| closed_form::problem6(&u0, &v0, t)).collect();
            (solve_second_order(&p, &times)?, exact)
        }
        ExampleName::RemarkA => {
            let op = fuzzsemi::builtin(BuiltinKind::RemarkA, Some(u0.clone()))?;
            let p = CauchyProblem::first_order(op, u0.clone().into(), Forcing::Zero, horizon, series_tol)?;
            let exact = times
                .iter()
                .map(|&t| closed_form::rank_one(BuiltinKind::RemarkA, &u0, &u0, t).map(Element::from))
                .collect::<Result<_, _>>()?;
            (solve_first_order(&p, &times)?, exact)
        }
        ExampleName::Wave => {
            let n = DEFAULT_NODE_COUNT;
            let xs: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
            let u2 = FuzzyFunction::constant(0.0, 1.0, n, &FuzzyNumber::zero())?;
            let u1 = |x: f64, _order: usize| u0.scale(x.exp());
            // every even derivative of e^x ⊙ c is e^x ⊙ c, bounded by e ||c|| on [0, 1]
            let bound = 1f64.exp() * u0.norm();
            let mut states = Vec::with_capacity(times.len());
            let mut exact = Vec::with_capacity(times.len());
            for &t in &times {
                states.push(Element::from(solve_wave(&u1, Some(bound), &u2, t, &xs, series_tol)?));
                let f = FuzzyFunction::new(
                    0.0,
                    1.0,
                    xs.clone(),
                    xs.iter().map(|&x| closed_form::wave_exp(&u0, t, x)).collect(),
                )?;
                exact.push(Element::from(f));
            }
            (Trajectory { times: times.clone(), states }, exact)
        }
    };
    let exact = Trajectory { times: times.clone(), states: exact };
    let distances = series.distances(&exact)?;
    let max_distance = distances.iter().copied().fold(0.0, f64::max);
    let passed = max_distance <= tol;
    log::info!("{name:?}: max distance {max_distance:e} (tol {tol:e})");
    let doc = json!({
        "schema": SCHEMA,
        "command": "example",
        "example": format!("{}", name.to_possible_value().expect("no skipped values").get_name()),
        "tol": tol,
        "times": times,
        "series": series.states,
        "closed_form": exact.states,
        "distances": distances,
        "max_distance": max_distance,
        "passed": passed,
    });
    Ok((doc, Some(series.to_csv(&CSV_BAND_LEVELS)), passed))
}

fn solve_config(path: &Path, nodes: Option<usize>, t_max: Option<f64>, tol: Option<f64>) -> Result<Outcome> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(usage)?;
    let mut cfg = ProblemConfig::from_json(&text).map_err(usage)?;
    if let Some(t) = t_max {
        cfg.horizon = t;
    }
    if let Some(t) = tol {
        cfg.tol = t;
    }
    // re-validate overrides through the same path-qualified checks
    let cfg = ProblemConfig::from_json(&serde_json::to_string(&cfg)?).map_err(usage)?;
    let problem = cfg.to_problem().map_err(usage)?;
    let times = uniform_time_grid(cfg.horizon, nodes.unwrap_or(fuzzsemi::cauchy::DEFAULT_TIME_NODES));
    let traj = solve(&problem, &times)?;
    let doc = json!({
        "schema": SCHEMA,
        "command": "solve",
        "problem": cfg,
        "times": traj.times,
        "states": traj.states,
    });
    Ok((doc, Some(traj.to_csv(&CSV_BAND_LEVELS)), true))
}

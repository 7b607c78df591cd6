use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use helionics_core::hamiltonian::{default_start, optimize};
use helionics_core::measures::{entropy_density, profile, radial_momentum};
use helionics_core::quadrature::log_space;
use helionics_core::series::{
    charge_grid, find_crossover, sweep_rows, CrossoverMethod, CrossoverQuantity, CrossoverSystem,
};
use helionics_core::{
    Error, ProfileQuantity, QuadSpec, RadialDensity, StateKind, SweepRow,
};
use serde::Serialize;

use crate::cache::{input_hash, unix_time, write_atomic, Cache, RunManifest, ARTIFACT_VERSION};
use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::plot::{render_svg, resolve_series, PlotSpec};
use crate::table::{profile_csv, sweep_csv, SweepLine, Table};

#[derive(Debug, Parser)]
#[command(name = "helionics", version, about = "Entropies and mutual information of two-electron ions")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Relative tolerance of every integral.
    #[arg(long, global = true)]
    pub quad_rel_tol: Option<f64>,
    /// Absolute tolerance of every integral.
    #[arg(long, global = true)]
    pub quad_abs_tol: Option<f64>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Flat key = value file with defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Cache directory (also settable through HELIONICS_CACHE).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimize the orbital exponents of one state and print the energy.
    Optimize {
        /// singlet, triplet or ni-triplet
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        z: Option<f64>,
        /// Starting exponents, comma separated.
        #[arg(long, value_delimiter = ',')]
        start: Option<Vec<f64>>,
    },
    /// Optimize and measure every charge of a range; writes a CSV table.
    Sweep {
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        z_min: Option<f64>,
        #[arg(long)]
        z_max: Option<f64>,
        #[arg(long)]
        step: Option<f64>,
        /// Neither read nor write cached points.
        #[arg(long)]
        no_cache: bool,
    },
    /// Locate a position/momentum crossover in the nuclear charge.
    Crossover {
        /// hydrogenic, singlet, triplet or ni-triplet
        #[arg(long)]
        kind: Option<String>,
        /// one-electron-entropy, two-electron-entropy or mutual-information
        #[arg(long)]
        quantity: Option<String>,
        /// Charge bracket, comma separated.
        #[arg(long, value_delimiter = ',')]
        bracket: Option<Vec<f64>>,
        /// bisection or interpolation
        #[arg(long)]
        method: Option<String>,
    },
    /// Tabulate a radial profile curve.
    Profile {
        /// hydrogenic, singlet, triplet or ni-triplet
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        z: Option<f64>,
        /// entropy-density-r, entropy-density-p, info-density-p or radial-momentum
        #[arg(long)]
        quantity: Option<String>,
        #[arg(long)]
        grid_min: Option<f64>,
        #[arg(long)]
        grid_max: Option<f64>,
        /// Number of log-spaced grid points.
        #[arg(long)]
        points: Option<usize>,
    },
    /// Render CSV tables to an SVG line chart.
    Plot {
        /// Default table for curves that name no file.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Plot spec file.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
}

struct Context {
    config: Config,
    spec: QuadSpec,
    out: Option<PathBuf>,
    cache_dir: PathBuf,
}

impl Context {
    fn new(common: &Common) -> CliResult<Self> {
        let config = match &common.config {
            Some(p) => Config::load(p)?,
            None => Config::default(),
        };
        let defaults = QuadSpec::default();
        let rel = config.pick(common.quad_rel_tol, "quad-rel-tol", defaults.rel_tol)?;
        let abs = config.pick(common.quad_abs_tol, "quad-abs-tol", defaults.abs_tol)?;
        let spec = QuadSpec::new(rel, abs, defaults.max_panels)?;
        let out = config.pick_opt(common.out.clone(), "out")?;
        let cache_dir = Cache::resolve_dir(common.cache_dir.clone(), config.get("cache-dir")?);
        Ok(Context {
            config,
            spec,
            out,
            cache_dir,
        })
    }

    fn required<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<T> {
        self.config
            .pick_opt(flag, key)?
            .ok_or_else(|| CliError::Config(format!("missing --{key}")))
    }

    fn parsed<T>(&self, flag: Option<String>, key: &str) -> CliResult<Option<T>>
    where
        T: std::str::FromStr<Err = Error>,
    {
        match self.config.pick_opt(flag, key)? {
            None => Ok(None),
            Some(s) => Ok(Some(s.parse::<T>()?)),
        }
    }

    fn emit(&self, text: &str) -> CliResult<Option<PathBuf>> {
        match &self.out {
            Some(path) => {
                write_atomic(path, text.as_bytes())?;
                Ok(Some(path.clone()))
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .and_then(|_| stdout.flush())
                    .map_err(|e| CliError::io("<stdout>", e))?;
                Ok(None)
            }
        }
    }
}

fn list(flag: Option<Vec<f64>>, config: &Config, key: &str) -> CliResult<Option<Vec<f64>>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match config.raw(key) {
        None => Ok(None),
        Some(v) => v
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
            .map_err(|_| CliError::Config(format!("bad list '{v}' for '{key}'"))),
    }
}

pub fn run(cli: Cli) -> CliResult<()> {
    let ctx = Context::new(&cli.common)?;
    match cli.command {
        Command::Optimize { kind, z, start } => cmd_optimize(&ctx, kind, z, start),
        Command::Sweep {
            kind,
            z_min,
            z_max,
            step,
            no_cache,
        } => cmd_sweep(&ctx, kind, z_min, z_max, step, no_cache),
        Command::Crossover {
            kind,
            quantity,
            bracket,
            method,
        } => cmd_crossover(&ctx, kind, quantity, bracket, method),
        Command::Profile {
            kind,
            z,
            quantity,
            grid_min,
            grid_max,
            points,
        } => cmd_profile(&ctx, kind, z, quantity, grid_min, grid_max, points),
        Command::Plot { input, spec } => cmd_plot(&ctx, input, spec),
    }
}

#[derive(Serialize)]
struct EnergyDoc {
    kinetic: f64,
    nuclear: f64,
    repulsion: f64,
    total: f64,
}

#[derive(Serialize)]
struct OptimizeDoc {
    kind: StateKind,
    z: f64,
    params: [f64; 2],
    energy: EnergyDoc,
    converged: bool,
    iterations: usize,
    evaluations: usize,
    virial_ratio: f64,
}

fn cmd_optimize(ctx: &Context, kind: Option<String>, z: Option<f64>, start: Option<Vec<f64>>) -> CliResult<()> {
    let kind: StateKind = ctx
        .parsed(kind, "kind")?
        .ok_or_else(|| CliError::Config("missing --kind".into()))?;
    let z: f64 = ctx.required(z, "z")?;
    let initial = match list(start, &ctx.config, "start")? {
        None => default_start(kind, z),
        Some(v) if v.len() == 2 => [v[0], v[1]],
        Some(v) => {
            return Err(CliError::Config(format!("--start needs two exponents, got {}", v.len())))
        }
    };
    let r = optimize(kind, z, initial)?;
    let doc = OptimizeDoc {
        kind: r.kind,
        z: r.z_nuclear,
        params: r.params,
        energy: EnergyDoc {
            kinetic: r.energy.kinetic,
            nuclear: r.energy.nuclear_attraction,
            repulsion: r.energy.electron_repulsion,
            total: r.energy.total,
        },
        converged: r.converged,
        iterations: r.iterations,
        evaluations: r.evaluations,
        virial_ratio: 2.0 * r.energy.kinetic / r.energy.potential(),
    };
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    ctx.emit(&text)?;
    Ok(())
}

fn cmd_sweep(
    ctx: &Context,
    kind: Option<String>,
    z_min: Option<f64>,
    z_max: Option<f64>,
    step: Option<f64>,
    no_cache: bool,
) -> CliResult<()> {
    let started = unix_time();
    let kind: StateKind = ctx
        .parsed(kind, "kind")?
        .ok_or_else(|| CliError::Config("missing --kind".into()))?;
    let z_min = ctx.config.pick(z_min, "z-min", 2.0)?;
    let z_max = ctx.config.pick(z_max, "z-max", 30.0)?;
    let step = ctx.config.pick(step, "step", 1.0)?;
    let no_cache = no_cache || ctx.config.get::<bool>("no-cache")?.unwrap_or(false);
    let zs = charge_grid(z_min, z_max, step)?;
    let cache = Cache::new(&ctx.cache_dir);

    let mut found: Vec<Option<Result<SweepRow, String>>> = zs
        .iter()
        .map(|&z| {
            if no_cache {
                None
            } else {
                cache.load(kind, z, &ctx.spec).map(Ok)
            }
        })
        .collect();
    let hits = found.iter().filter(|r| r.is_some()).count();
    let missing: Vec<f64> = zs
        .iter()
        .zip(&found)
        .filter(|(_, r)| r.is_none())
        .map(|(&z, _)| z)
        .collect();
    let computed = sweep_rows(kind, &missing, &ctx.spec);
    for (z, result) in computed {
        if let Ok(row) = &result {
            if !no_cache {
                cache.store(row, &ctx.spec)?;
            }
        }
        let i = zs.iter().position(|&x| x == z).expect("computed charge is on the grid");
        found[i] = Some(result.map_err(|e| e.to_string()));
    }

    let lines: Vec<SweepLine<'_>> = zs
        .iter()
        .zip(&found)
        .map(|(&z, r)| SweepLine {
            z,
            kind,
            row: r.as_ref().expect("every charge resolved").as_ref().map_err(Clone::clone),
        })
        .collect();
    let failed = lines.iter().filter(|l| l.row.is_err()).count();
    let written = ctx.emit(&sweep_csv(&lines)?)?;
    eprintln!(
        "sweep {}: {} points, {} cached, {} computed, {} failed",
        kind,
        zs.len(),
        hits,
        missing.len(),
        failed
    );

    if !no_cache {
        let manifest = RunManifest {
            command_line: std::env::args().collect(),
            config: ctx.config.entries().clone(),
            quad_spec: ctx.spec,
            artifact_version: ARTIFACT_VERSION.to_string(),
            input_hash: input_hash(kind, &zs, &ctx.spec),
            started_unix: started,
            finished_unix: unix_time(),
            outputs: written.iter().map(|p| p.display().to_string()).collect(),
            cache_hits: hits,
            computed: missing.len(),
        };
        manifest.write(&cache)?;
    }
    if failed > 0 {
        return Err(CliError::PartialFailure {
            failed,
            total: zs.len(),
        });
    }
    Ok(())
}

fn cmd_crossover(
    ctx: &Context,
    kind: Option<String>,
    quantity: Option<String>,
    bracket: Option<Vec<f64>>,
    method: Option<String>,
) -> CliResult<()> {
    let system: CrossoverSystem = ctx
        .parsed(kind, "kind")?
        .ok_or_else(|| CliError::Config("missing --kind".into()))?;
    let quantity: CrossoverQuantity = ctx
        .parsed(quantity, "quantity")?
        .ok_or_else(|| CliError::Config("missing --quantity".into()))?;
    let method: CrossoverMethod = ctx
        .parsed(method, "method")?
        .unwrap_or(CrossoverMethod::Bisection);
    let bracket = match list(bracket, &ctx.config, "bracket")? {
        Some(v) if v.len() == 2 => (v[0], v[1]),
        Some(v) => return Err(CliError::Config(format!("--bracket needs two charges, got {}", v.len()))),
        None => match (system, quantity) {
            (CrossoverSystem::Hydrogenic, _) => (1.0, 2.0),
            (_, CrossoverQuantity::MutualInformation) => (4.0, 5.0),
            _ => (2.0, 3.0),
        },
    };
    let r = find_crossover(system, quantity, bracket, method, &ctx.spec)?;
    let mut text = serde_json::to_string_pretty(&r)?;
    text.push('\n');
    ctx.emit(&text)?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_profile(
    ctx: &Context,
    kind: Option<String>,
    z: Option<f64>,
    quantity: Option<String>,
    grid_min: Option<f64>,
    grid_max: Option<f64>,
    points: Option<usize>,
) -> CliResult<()> {
    let system: CrossoverSystem = ctx
        .parsed(kind, "kind")?
        .ok_or_else(|| CliError::Config("missing --kind".into()))?;
    let quantity: ProfileQuantity = ctx
        .parsed(quantity, "quantity")?
        .ok_or_else(|| CliError::Config("missing --quantity".into()))?;
    let z: f64 = ctx.required(z, "z")?;
    let default_grid = quantity.default_grid();
    let lo = ctx.config.pick(grid_min, "grid-min", default_grid[0])?;
    let hi = ctx.config.pick(grid_max, "grid-max", default_grid[default_grid.len() - 1])?;
    let n = ctx.config.pick(points, "points", default_grid.len())?;
    if !(lo > 0.0 && hi > lo && n >= 2) {
        return Err(CliError::Config(format!("bad grid {lo}..{hi} with {n} points")));
    }
    let grid = log_space(lo, hi, n);
    let curve = match system.state_kind() {
        None => {
            let d = RadialDensity::hydrogenic(z, quantity.space())?;
            let curve = match quantity {
                ProfileQuantity::EntropyDensityR | ProfileQuantity::EntropyDensityP => entropy_density(&d, &grid)?,
                ProfileQuantity::RadialMomentum => radial_momentum(&d, &grid)?,
                ProfileQuantity::InfoDensityP => {
                    return Err(Error::InvalidInput("a one-electron ion has no information density".into()).into())
                }
            };
            curve.with_source(z, None)
        }
        Some(kind) => {
            let state = optimize(kind, z, default_start(kind, z))?.state()?;
            profile(&state, quantity, &grid, &ctx.spec)?
        }
    };
    ctx.emit(&profile_csv(&curve)?)?;
    Ok(())
}

fn cmd_plot(ctx: &Context, input: Option<PathBuf>, spec_path: Option<PathBuf>) -> CliResult<()> {
    let spec_path: PathBuf = ctx.required(spec_path, "spec")?;
    let spec = PlotSpec::load(&spec_path)?;
    let input: Option<PathBuf> = ctx.config.pick_opt(input, "input")?;
    let table = match &input {
        Some(p) => Some(Table::parse(
            &std::fs::read_to_string(p).map_err(|e| CliError::io(p, e))?,
        )?),
        None => None,
    };
    let base = spec_path.parent().unwrap_or(Path::new("."));
    let series = resolve_series(&spec, table.as_ref(), base)?;
    let svg = render_svg(&spec, &series)?;
    match (&ctx.out, &spec.output) {
        (None, Some(path)) => write_atomic(&base.join(path), svg.as_bytes())?,
        _ => {
            ctx.emit(&svg)?;
        }
    }
    Ok(())
}

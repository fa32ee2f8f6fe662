//! Command-line front end: quantize, compare, oracle, boost, blackbody,
//! windings. Machine-readable JSON or CSV on stdout (or `--out`), exit code
//! 0 on success, 1 on usage/config problems, 2 on numerical failure.

mod commands;
mod config;
mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use commands::{Context, EngineParams, Format, OracleParams, PotentialParams};
use config::RunConfig;

/// Failures mapped to the exit-code contract.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config, or input files: exit 1.
    Usage(String),
    /// The computation itself failed or violated a bound: exit 2.
    Numerical(String),
}

#[derive(Parser)]
#[command(
    name = "cyclequant",
    version,
    about = "Periodicity kinematics, semiclassical spectra, and cross-checked numerics",
    after_help = "Config file: UTF-8 `key = value` lines (keys mirror the long flags; flags win).\n\
                  --config PATH selects it; the CYCLEQUANT_CONFIG environment variable is the fallback.\n\
                  Exit codes: 0 success, 1 usage/config error, 2 numerical failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// Config file with `key = value` lines
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output format: json or csv
    #[arg(long)]
    format: Option<String>,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Seed recorded in the report metadata (reports are deterministic)
    #[arg(long)]
    seed: Option<u64>,
    /// Unit system: natural or si
    #[arg(long)]
    units: Option<String>,
}

#[derive(Args, Debug, Default)]
struct PotentialArgs {
    /// harmonic | linear | anharmonic | box | coulomb | tabulated
    #[arg(long)]
    potential: Option<String>,
    /// Particle mass (natural units)
    #[arg(long)]
    m: Option<f64>,
    /// Oscillator frequency
    #[arg(long)]
    omega: Option<f64>,
    /// Linear potential slope (V = m g x)
    #[arg(long)]
    g: Option<f64>,
    /// Quartic perturbation strength
    #[arg(long)]
    epsilon: Option<f64>,
    /// Box width
    #[arg(long = "L")]
    length: Option<f64>,
    /// Nuclear charge for the Coulomb potential
    #[arg(long)]
    z: Option<f64>,
    /// Orbital quantum number for the Coulomb potential
    #[arg(long = "l")]
    ell: Option<u32>,
    /// Two-column `x V` file for the tabulated potential
    #[arg(long, value_name = "PATH")]
    table: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
struct EngineArgs {
    /// Number of levels to produce
    #[arg(long)]
    levels: Option<u32>,
    /// Morse index override (default: matched to the potential)
    #[arg(long)]
    morse: Option<f64>,
    /// Reduced Planck constant of the engine
    #[arg(long)]
    hbar: Option<f64>,
    /// Gauss-Legendre points for the action quadrature
    #[arg(long = "quadrature-points")]
    quadrature_points: Option<usize>,
}

#[derive(Args, Debug, Default)]
struct OracleArgs {
    /// Lower grid boundary (with --xmax; otherwise the box is automatic)
    #[arg(long, allow_hyphen_values = true)]
    xmin: Option<f64>,
    /// Upper grid boundary
    #[arg(long, allow_hyphen_values = true)]
    xmax: Option<f64>,
    /// Interior grid points (or point density for the automatic box)
    #[arg(long = "grid-n")]
    grid_n: Option<usize>,
    /// Richardson-extrapolate from the half-spacing grid
    #[arg(long)]
    richardson: Option<bool>,
    /// Coulomb centrifugal term: bare or langer
    #[arg(long)]
    centrifugal: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Semiclassical spectrum of a potential
    Quantize {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        potential: PotentialArgs,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Semiclassical spectrum against the finite-difference oracle
    Compare {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        potential: PotentialArgs,
        #[command(flatten)]
        engine: EngineArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Finite-difference Schrödinger eigenvalues
    Oracle {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        potential: PotentialArgs,
        #[command(flatten)]
        engine: EngineArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Boost a particle's intrinsic periodicity
    Boost {
        #[command(flatten)]
        common: CommonArgs,
        /// Particle mass: `electron` or a number
        #[arg(long)]
        mass: Option<String>,
        /// Boost velocity along x (|beta| < 1)
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        /// Also emit this many Doppler-shifted harmonics
        #[arg(long)]
        levels: Option<u32>,
    },
    /// Planck vs Rayleigh-Jeans rows over an x grid
    Blackbody {
        #[command(flatten)]
        common: CommonArgs,
        /// Grid spec start:stop:lin|log:count
        #[arg(long = "x-grid")]
        x_grid: Option<String>,
    },
    /// Mode sum vs winding sum of the circle heat kernel
    Windings {
        #[command(flatten)]
        common: CommonArgs,
        /// Circle circumference
        #[arg(long = "L")]
        circumference: Option<f64>,
        /// Diffusion time
        #[arg(long)]
        t: Option<f64>,
        /// Mode cutoff (default: automatic)
        #[arg(long = "k-cut")]
        k_cut: Option<u32>,
        /// Winding cutoff (default: automatic)
        #[arg(long = "w-cut")]
        w_cut: Option<u32>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprint!("{e}");
            std::process::exit(1);
        }
    };
    match run(cli) {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    }
}

fn context(common: &CommonArgs, cfg: &RunConfig, default_units: &str) -> Result<Context, CliError> {
    let format = Format::parse(
        &common
            .format
            .clone()
            .or_else(|| cfg.get_str("format"))
            .unwrap_or_else(|| "json".into()),
    )?;
    let out = common
        .out
        .clone()
        .or_else(|| cfg.get_str("out").map(PathBuf::from));
    let seed = match common.seed {
        Some(s) => s,
        None => cfg.get_u64("seed")?.unwrap_or(0),
    };
    let units = common
        .units
        .clone()
        .or_else(|| cfg.get_str("units"))
        .unwrap_or_else(|| default_units.into());
    let constants = cfg.constants(&units)?;
    Ok(Context {
        format,
        out,
        seed,
        units,
        constants,
    })
}

fn potential_params(args: &PotentialArgs, cfg: &RunConfig) -> Result<PotentialParams, CliError> {
    Ok(PotentialParams {
        kind: args
            .potential
            .clone()
            .or_else(|| cfg.get_str("potential"))
            .unwrap_or_else(|| "harmonic".into()),
        mass: pick(args.m, cfg.get_f64("m")?, 1.0),
        omega: pick(args.omega, cfg.get_f64("omega")?, 1.0),
        slope: pick(args.g, cfg.get_f64("g")?, 1.0),
        epsilon: pick(args.epsilon, cfg.get_f64("epsilon")?, 0.0),
        length: pick(args.length, cfg.get_f64("L")?, 1.0),
        z: pick(args.z, cfg.get_f64("z")?, 1.0),
        l: pick(args.ell, cfg.get_u32("l")?, 0),
        table: args
            .table
            .clone()
            .or_else(|| cfg.get_str("table").map(PathBuf::from)),
    })
}

fn engine_params(args: &EngineArgs, cfg: &RunConfig) -> Result<EngineParams, CliError> {
    Ok(EngineParams {
        levels: pick(args.levels, cfg.get_u32("levels")?, 10),
        morse: args.morse.or(cfg.get_f64("morse")?),
        hbar: pick(args.hbar, cfg.get_f64("hbar")?, 1.0),
        quadrature_points: pick(
            args.quadrature_points,
            cfg.get_usize("quadrature_points")?,
            128,
        ),
    })
}

fn oracle_params(args: &OracleArgs, cfg: &RunConfig) -> Result<OracleParams, CliError> {
    Ok(OracleParams {
        x_min: args.xmin.or(cfg.get_f64("xmin")?),
        x_max: args.xmax.or(cfg.get_f64("xmax")?),
        grid_n: pick(args.grid_n, cfg.get_usize("grid_n")?, 2000),
        richardson: pick(args.richardson, cfg.get_bool("richardson")?, true),
        centrifugal: args
            .centrifugal
            .clone()
            .or_else(|| cfg.get_str("centrifugal"))
            .unwrap_or_else(|| "bare".into()),
    })
}

fn pick<T>(flag: Option<T>, config: Option<T>, default: T) -> T {
    flag.or(config).unwrap_or(default)
}

fn emit(ctx: &Context, content: String) -> Result<(), CliError> {
    match &ctx.out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Quantize {
            common,
            potential,
            engine,
        } => {
            let cfg = RunConfig::load(common.config.as_deref())?;
            let ctx = context(&common, &cfg, "natural")?;
            let params = potential_params(&potential, &cfg)?;
            let engine = engine_params(&engine, &cfg)?;
            let body = commands::cmd_quantize(&ctx, &params, &engine)?;
            emit(&ctx, body)
        }
        Command::Oracle {
            common,
            potential,
            engine,
            oracle,
        } => {
            let cfg = RunConfig::load(common.config.as_deref())?;
            let ctx = context(&common, &cfg, "natural")?;
            let params = potential_params(&potential, &cfg)?;
            let engine = engine_params(&engine, &cfg)?;
            let oracle = oracle_params(&oracle, &cfg)?;
            let body = commands::cmd_oracle(&ctx, &params, &engine, &oracle)?;
            emit(&ctx, body)
        }
        Command::Compare {
            common,
            potential,
            engine,
            oracle,
        } => {
            let cfg = RunConfig::load(common.config.as_deref())?;
            let ctx = context(&common, &cfg, "natural")?;
            let params = potential_params(&potential, &cfg)?;
            let engine = engine_params(&engine, &cfg)?;
            let oracle = oracle_params(&oracle, &cfg)?;
            let (body, failure) = commands::cmd_compare(&ctx, &params, &engine, &oracle)?;
            emit(&ctx, body)?;
            match failure {
                Some(msg) => Err(CliError::Numerical(msg)),
                None => Ok(()),
            }
        }
        Command::Boost {
            common,
            mass,
            beta,
            levels,
        } => {
            let cfg = RunConfig::load(common.config.as_deref())?;
            let ctx = context(&common, &cfg, "si")?;
            let mass = mass
                .or_else(|| cfg.get_str("mass"))
                .unwrap_or_else(|| "electron".into());
            let beta = pick(beta, cfg.get_f64("beta")?, 0.0);
            let levels = pick(levels, cfg.get_u32("levels")?, 0);
            let body = commands::cmd_boost(&ctx, &mass, beta, levels)?;
            emit(&ctx, body)
        }
        Command::Blackbody { common, x_grid } => {
            let cfg = RunConfig::load(common.config.as_deref())?;
            let ctx = context(&common, &cfg, "natural")?;
            let grid = x_grid
                .or_else(|| cfg.get_str("x_grid"))
                .unwrap_or_else(|| "1e-3:30:log:60".into());
            let body = commands::cmd_blackbody(&ctx, &grid)?;
            emit(&ctx, body)
        }
        Command::Windings {
            common,
            circumference,
            t,
            k_cut,
            w_cut,
        } => {
            let cfg = RunConfig::load(common.config.as_deref())?;
            let ctx = context(&common, &cfg, "natural")?;
            let circumference = pick(circumference, cfg.get_f64("L")?, std::f64::consts::TAU);
            let t = pick(t, cfg.get_f64("t")?, 1.0);
            let k_cut = k_cut.or(cfg.get_u32("k_cut")?);
            let w_cut = w_cut.or(cfg.get_u32("w_cut")?);
            let body = commands::cmd_windings(&ctx, circumference, t, k_cut, w_cut)?;
            emit(&ctx, body)
        }
    }
}

//! Argument parsing and command implementations for the `symgauss` binary.

pub mod records;

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use symgauss::closedform::{log_Za_typeiv, log_za_typeiv, GaussParam};
use symgauss::equilibrium::{self, EnergyKernel, KernelVariant, MinimizeOptions};
use symgauss::highrank::{e2_cone, e2_domain, EnergyKind, F_finite_rank, F_limit, LimitFamily, E2_equilibrium};
use symgauss::rootsys::{catalog, RootFamily, SpaceDescriptor};
use symgauss::validate::{self, Criterion, ValidateOptions};

use records::{
    emit, BoxError, ClosedformRecord, EquilibriumRecord, Format, LimitRecord, RankValue, Tabular,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VALIDATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "symgauss", version, about = "Gaussian integrals on classical symmetric spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the eleven families of classical symmetric spaces.
    Catalog(CatalogArgs),
    /// Exact log Z_a and log z_a of a complex (type IV) space.
    Closedform(ClosedformArgs),
    /// High-rank limits F(t), e2(t), E2(t), optionally with finite-rank F_r.
    Limit(LimitArgs),
    /// Minimize the log-gas energy and compare with the closed-form limit.
    Equilibrium(EquilibriumArgs),
    /// Run the acceptance suite.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// Only the complex (type IV) rows.
    #[arg(long)]
    pub complex: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("scale").required(true).args(["sigma", "t"]))]
pub struct ClosedformArgs {
    #[arg(long)]
    pub family: RootFamily,
    /// One or more ranks, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub rank: Vec<usize>,
    /// σ grid, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub sigma: Option<Vec<f64>>,
    /// t grid, with σ² = t/r.
    #[arg(long, value_delimiter = ',')]
    pub t: Option<Vec<f64>>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[arg(long)]
    pub family: LimitFamily,
    #[arg(long, value_delimiter = ',', required = true)]
    pub t: Vec<f64>,
    /// Add finite-rank F_r columns for these ranks.
    #[arg(long, value_delimiter = ',')]
    pub ranks: Vec<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EquilibriumArgs {
    #[arg(long)]
    pub kernel: KernelVariant,
    #[arg(long, default_value_t = 4.0)]
    pub c: f64,
    #[arg(long)]
    pub t: f64,
    #[arg(long, default_value_t = 2.0)]
    pub beta: f64,
    /// BC kernel only.
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    #[arg(long, value_delimiter = ',', required = true)]
    pub ranks: Vec<usize>,
    #[arg(long, default_value_t = equilibrium::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 20_000)]
    pub max_iter: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Criteria to run, by name or number (dilog, typeiv, spherical, highrank,
    /// macdonald, perturbative, equilibrium, gradient, degrees).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<Criterion>,
    #[arg(long, default_value_t = validate::DEFAULT_SEED)]
    pub seed: u64,
    /// Monte Carlo samples per case; accepts forms like 1e6.
    #[arg(long, default_value = "1e6", value_parser = parse_count)]
    pub samples: usize,
    /// Include wall-clock timings (makes the report non-reproducible).
    #[arg(long)]
    pub timings: bool,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

fn parse_count(s: &str) -> Result<usize, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if !(x >= 1.0 && x.fract() == 0.0 && x <= 1e12) {
        return Err(format!("'{s}' is not a positive whole number"));
    }
    Ok(x as usize)
}

fn check_grid(name: &str, v: &[f64]) -> Result<(), BoxError> {
    if v.is_empty() || v.windows(2).any(|w| w[0] >= w[1]) {
        return Err(format!("--{name} must be non-empty and strictly increasing").into());
    }
    Ok(())
}

fn check_ranks(v: &[usize]) -> Result<(), BoxError> {
    if v.windows(2).any(|w| w[0] >= w[1]) {
        return Err("ranks must be strictly increasing".into());
    }
    Ok(())
}

fn write_out(text: &str, path: &Option<PathBuf>) -> Result<(), BoxError> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn finish<T: Tabular>(records: &[T], out: &OutputArgs) -> Result<u8, BoxError> {
    write_out(&emit(records, out.format)?, &out.output)?;
    Ok(EXIT_OK)
}

pub fn closedform_records(args: &ClosedformArgs) -> Result<Vec<ClosedformRecord>, BoxError> {
    check_ranks(&args.rank)?;
    let mut out = Vec::new();
    for &r in &args.rank {
        let desc = SpaceDescriptor::type_iv(args.family, r)?;
        let params: Vec<GaussParam> = match (&args.sigma, &args.t) {
            (Some(s), None) => {
                check_grid("sigma", s)?;
                s.iter().map(|&x| GaussParam::sigma(x)).collect::<Result<_, _>>()?
            }
            (None, Some(t)) => {
                check_grid("t", t)?;
                t.iter().map(|&x| GaussParam::t_over_r(x, r)).collect::<Result<_, _>>()?
            }
            _ => return Err("give exactly one of --sigma and --t".into()),
        };
        for p in params {
            out.push(ClosedformRecord {
                family: args.family.to_string(),
                rank: r as u64,
                sigma: p.sigma_value(),
                log_big_za: log_Za_typeiv(&desc, p)?,
                log_za: log_za_typeiv(&desc, p)?,
            });
        }
    }
    Ok(out)
}

pub fn limit_records(args: &LimitArgs) -> Result<Vec<LimitRecord>, BoxError> {
    check_grid("t", &args.t)?;
    check_ranks(&args.ranks)?;
    let fam = args.family;
    let descs: Vec<SpaceDescriptor> =
        args.ranks.iter().map(|&r| SpaceDescriptor::type_iv(fam.root_family(), r)).collect::<Result<_, _>>()?;
    args.t
        .par_iter()
        .map(|&t| -> Result<LimitRecord, BoxError> {
            let kind = fam.energy_kind();
            let e2 = match kind {
                EnergyKind::Cone => e2_cone(t)?,
                EnergyKind::Domain => e2_domain(t)?,
            };
            let f_r = descs
                .iter()
                .map(|d| Ok(RankValue { r: d.rank as u64, value: F_finite_rank(d, t)? }))
                .collect::<Result<_, BoxError>>()?;
            Ok(LimitRecord { family: fam.to_string(), t, F: F_limit(fam, t)?, F_r: f_r, e2, E2: E2_equilibrium(kind, t)? })
        })
        .collect()
}

pub fn equilibrium_records(args: &EquilibriumArgs) -> Result<Vec<EquilibriumRecord>, BoxError> {
    check_ranks(&args.ranks)?;
    let kernel = EnergyKernel::new(args.kernel, args.c, args.t, args.beta, args.delta)?;
    let target = kernel.closed_form_target()?;
    let opts = MinimizeOptions { max_iter: args.max_iter, grad_tol: None, seed: args.seed };
    args.ranks
        .par_iter()
        .map(|&r| -> Result<EquilibriumRecord, BoxError> {
            let m = equilibrium::minimize(&kernel, r, opts)?;
            Ok(EquilibriumRecord {
                kernel: args.kernel.to_string(),
                c: args.c,
                t: args.t,
                beta: args.beta,
                delta: args.delta,
                r: r as u64,
                E_r: m.energy_er,
                grad_norm: m.grad_inf_norm,
                converged: m.converged,
                closed_form_target: target,
                gap: target.map(|e| (m.energy_er - e).abs() / e),
                exploratory: target.is_none(),
            })
        })
        .collect()
}

/// Run one command. Returns the process exit code.
pub fn run(cli: Cli) -> Result<u8, BoxError> {
    match cli.command {
        Command::Catalog(a) => {
            let rows: Vec<_> = catalog().into_iter().filter(|e| !a.complex || e.is_complex()).collect();
            finish(&rows, &a.out)
        }
        Command::Closedform(a) => finish(&closedform_records(&a)?, &a.out),
        Command::Limit(a) => finish(&limit_records(&a)?, &a.out),
        Command::Equilibrium(a) => finish(&equilibrium_records(&a)?, &a.out),
        Command::Validate(a) => {
            if a.samples < symgauss::oracle::MIN_SAMPLES {
                return Err(format!("--samples must be at least {}", symgauss::oracle::MIN_SAMPLES).into());
            }
            let opts = ValidateOptions { seed: a.seed, samples: a.samples, only: a.only };
            let report = validate::run(&opts)?;
            write_out(&report.render(a.timings), &a.output)?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_VALIDATION })
        }
    }
}

/// Cap the global worker pool from `SYMGAUSS_THREADS`, if set.
pub fn configure_threads() -> Result<(), BoxError> {
    if let Ok(v) = std::env::var("SYMGAUSS_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| format!("SYMGAUSS_THREADS must be a positive integer, got '{v}'"))?;
        if n == 0 {
            return Err("SYMGAUSS_THREADS must be positive".into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

//! The acceptance suite. Each criterion produces named checks with a measured
//! value and the tolerance it is held to.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closedform::{log_Za_tau_typeiv, log_Za_typeiv, log_za_cone, macdonald_sides, GaussParam};
use crate::equilibrium::{self, EnergyKernel, KernelVariant, MinimizeOptions, ParticleConfig};
use crate::error::{Error, Result};
use crate::highrank::{E2_equilibrium, F_finite_rank, F_limit, LimitFamily};
use crate::oracle::{self, sigma2_coefficient, Method, RadialIntegrand};
use crate::rootsys::{degrees, dual_inner, enumerate_weyl, rho, DualVector, RootFamily, SpaceDescriptor};
use crate::special::{adaptive_quad_breaks, int_log1mexp};

pub const DEFAULT_SAMPLES: usize = 1_000_000;
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    Dilog,
    TypeIv,
    Spherical,
    HighRank,
    Macdonald,
    Perturbative,
    Equilibrium,
    Gradient,
    Degrees,
}

impl Criterion {
    pub const ALL: [Criterion; 9] = [
        Criterion::Dilog,
        Criterion::TypeIv,
        Criterion::Spherical,
        Criterion::HighRank,
        Criterion::Macdonald,
        Criterion::Perturbative,
        Criterion::Equilibrium,
        Criterion::Gradient,
        Criterion::Degrees,
    ];

    pub fn number(self) -> usize {
        Self::ALL.iter().position(|&c| c == self).unwrap() + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Dilog => "dilog",
            Criterion::TypeIv => "typeiv",
            Criterion::Spherical => "spherical",
            Criterion::HighRank => "highrank",
            Criterion::Macdonald => "macdonald",
            Criterion::Perturbative => "perturbative",
            Criterion::Equilibrium => "equilibrium",
            Criterion::Gradient => "gradient",
            Criterion::Degrees => "degrees",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s || c.number().to_string() == s)
            .ok_or_else(|| Error::Domain(format!("unknown criterion '{s}'")))
    }
}

/// One comparison: passes when `measured ≤ tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Check { name: name.into(), measured, tolerance, pass: measured <= tolerance }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub criterion: Criterion,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub criteria: Vec<CriterionReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed())
    }

    /// Plain-text report. Without `timings` the output depends only on the options.
    pub fn render(&self, timings: bool) -> String {
        let mut s = String::new();
        for c in &self.criteria {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let _ = write!(s, "[{}] {:<13} {}", c.criterion.number(), c.criterion.name(), status);
            if timings {
                let _ = write!(s, "  ({:.2} s)", c.elapsed.as_secs_f64());
            }
            s.push('\n');
            for k in &c.checks {
                let _ = writeln!(
                    s,
                    "    {:<4} {:<40} measured {:>11.4e}  tol {:.1e}",
                    if k.pass { "ok" } else { "FAIL" },
                    k.name,
                    k.measured,
                    k.tolerance
                );
            }
        }
        let _ = writeln!(s, "overall: {}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidateOptions {
    pub seed: u64,
    pub samples: usize,
    /// Empty means every criterion.
    pub only: Vec<Criterion>,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions { seed: DEFAULT_SEED, samples: DEFAULT_SAMPLES, only: Vec::new() }
    }
}

pub fn run(opts: &ValidateOptions) -> Result<Report> {
    let list: Vec<Criterion> = if opts.only.is_empty() { Criterion::ALL.to_vec() } else { opts.only.clone() };
    let criteria = list.into_iter().map(|c| run_criterion(c, opts)).collect::<Result<_>>()?;
    Ok(Report { criteria })
}

pub fn run_criterion(c: Criterion, opts: &ValidateOptions) -> Result<CriterionReport> {
    let start = Instant::now();
    let checks = match c {
        Criterion::Dilog => dilog()?,
        Criterion::TypeIv => type_iv(opts)?,
        Criterion::Spherical => spherical(opts)?,
        Criterion::HighRank => high_rank()?,
        Criterion::Macdonald => macdonald()?,
        Criterion::Perturbative => perturbative()?,
        Criterion::Equilibrium => equilibrium_limit()?,
        Criterion::Gradient => gradient(opts.seed)?,
        Criterion::Degrees => degree_order()?,
    };
    Ok(CriterionReport { criterion: c, checks, elapsed: start.elapsed() })
}

fn tiv(f: RootFamily, r: usize) -> Result<SpaceDescriptor> {
    SpaceDescriptor::type_iv(f, r)
}

fn dilog() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for t in [0.1, 0.5, 1.0, 3.0] {
        for a in [0.25, 0.5, 1.0, 2.0] {
            let f = |x: f64| (-(-2.0 * t * x).exp_m1()).ln();
            let q = adaptive_quad_breaks(f, &[0.0, a], 1e-13, 20_000)?.value;
            let v = int_log1mexp(t, a)?;
            out.push(Check::at_most(format!("t={t} a={a}"), (v - q).abs(), 1e-9));
        }
    }
    Ok(out)
}

fn type_iv(opts: &ValidateOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let cases = [(RootFamily::A, 1), (RootFamily::A, 2), (RootFamily::B, 2), (RootFamily::C, 2), (RootFamily::D, 2)];
    for (i, (f, r)) in cases.into_iter().enumerate() {
        let d = tiv(f, r)?;
        for (j, sigma) in [0.5, 1.0].into_iter().enumerate() {
            let p = GaussParam::sigma(sigma)?;
            let exact = log_Za_typeiv(&d, p)?;
            let seed = opts.seed.wrapping_add((2 * i + j) as u64);
            let mc = oracle::mc_radial(&d, p, opts.samples, seed)?;
            let tag = format!("{f}{r} sigma={sigma}");
            out.push(Check::at_most(format!("{tag} mc z-score"), mc.z_score(exact), 3.0));
            out.push(Check::at_most(format!("{tag} mc rel std err"), mc.std_err_rel, 0.01));
            let q = oracle::quad_radial(&d, p, 1e-10)?;
            out.push(Check::at_most(format!("{tag} quadrature log err"), (q - exact).abs(), 1e-6));
        }
    }
    Ok(out)
}

fn spherical(opts: &ValidateOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let p = GaussParam::sigma(0.5)?;
    for (i, r) in [1usize, 2].into_iter().enumerate() {
        let d = tiv(RootFamily::A, r)?;
        let rh = rho(&d);
        let at_rho = log_Za_tau_typeiv(&d, p, &rh)?.log_abs;
        out.push(Check::at_most(format!("A{r} tau=rho identity"), (at_rho - log_Za_typeiv(&d, p)?).abs(), 1e-12));
        for (j, (name, k)) in [("rho", 1.0), ("2rho", 2.0)].into_iter().enumerate() {
            let tau = DualVector::new(rh.scaled(k).coeffs);
            let exact = log_Za_tau_typeiv(&d, p, &tau)?.log_abs;
            let seed = opts.seed.wrapping_add(100 + (2 * i + j) as u64);
            let mc = oracle::mc_radial_weighted(&d, p, &tau, opts.samples, seed)?;
            out.push(Check::at_most(format!("A{r} tau={name} mc z-score"), mc.z_score(exact), 3.0));
        }
    }
    Ok(out)
}

fn high_rank() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let fams = [(LimitFamily::A, RootFamily::A), (LimitFamily::B, RootFamily::B), (LimitFamily::C, RootFamily::C), (LimitFamily::D, RootFamily::D)];
    for (lf, rf) in fams {
        for t in [0.5, 1.0, 2.0] {
            let limit = F_limit(lf, t)?;
            let mut scaled = Vec::new();
            for r in [50usize, 100, 200, 400] {
                let fr = F_finite_rank(&tiv(rf, r)?, t)?;
                scaled.push(r as f64 * (fr - limit).abs());
            }
            let hi = scaled.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let lo = scaled.iter().copied().fold(f64::INFINITY, f64::min);
            out.push(Check::at_most(format!("{lf} t={t} spread of r|F_r-F|"), hi / lo, 1.5));
        }
    }
    Ok(out)
}

fn macdonald() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for f in [RootFamily::A, RootFamily::B, RootFamily::C, RootFamily::D] {
        let mut worst = 0.0f64;
        for r in f.min_rank().max(1)..=8 {
            let (l, rr) = macdonald_sides(&tiv(f, r)?)?;
            worst = worst.max((l - rr).exp_m1().abs());
        }
        out.push(Check::at_most(format!("{f} ranks 1-8 relative"), worst, 1e-10));
    }
    let p = GaussParam::sigma(1.0)?;
    for beta in [1.0, 2.0] {
        let q = oracle::quad_integrand(&RadialIntegrand::flat_cone(beta, 2)?, p, 1e-9)?;
        let rel = (q - log_za_cone(beta, 2, p)?).exp_m1().abs();
        out.push(Check::at_most(format!("cone beta={beta} r=2 vs quadrature"), rel, 1e-5));
    }
    Ok(out)
}

fn perturbative() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let grid = [0.05, 0.1, 0.15, 0.2];
    for (f, r) in [(RootFamily::A, 1), (RootFamily::A, 2), (RootFamily::B, 2)] {
        let d = tiv(f, r)?;
        let rh = rho(&d);
        let target = dual_inner(&d, &rh, &rh)?;
        let cf = sigma2_coefficient(&d, &grid, Method::ClosedForm)?;
        let qd = sigma2_coefficient(&d, &grid, Method::Quadrature)?;
        out.push(Check::at_most(format!("{f}{r} closedform vs (rho,rho)"), (cf / target - 1.0).abs(), 0.01));
        out.push(Check::at_most(format!("{f}{r} quadrature vs (rho,rho)"), (qd / target - 1.0).abs(), 0.01));
        out.push(Check::at_most(format!("{f}{r} closedform vs quadrature"), (cf / qd - 1.0).abs(), 0.005));
    }
    Ok(out)
}

/// Minimizer of `(4/t)s² - 2 log sinh 2s` by golden section, giving E_2.
fn two_particle_oracle(t: f64) -> f64 {
    let f = |s: f64| 4.0 / t * s * s - 2.0 * (2.0 * s).sinh().ln();
    let (mut lo, mut hi) = (1e-3, 5.0);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    while hi - lo > 1e-12 {
        let a = hi - phi * (hi - lo);
        let b = lo + phi * (hi - lo);
        if f(a) < f(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    f(0.5 * (lo + hi)) / 2.0
}

fn equilibrium_limit() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let opts = MinimizeOptions::default();
    for variant in [KernelVariant::A, KernelVariant::C] {
        for t in [0.5, 1.0, 2.0] {
            let k = EnergyKernel::new(variant, 4.0, t, 2.0, 1.0)?;
            let target = k.closed_form_target()?.expect("A and C kernels have targets");
            let m = equilibrium::minimize(&k, 200, opts)?;
            let gap = (m.energy_er - target).abs() / target;
            out.push(Check::at_most(format!("{variant} t={t} r=200 gap"), gap, 0.02));
        }
    }
    let k = EnergyKernel::a(4.0, 1.0, 2.0)?;
    let e2 = equilibrium::minimize(&k, 2, opts)?.energy_er;
    out.push(Check::at_most("A r=2 vs two-particle oracle", (e2 - two_particle_oracle(1.0)).abs(), 1e-6));
    for r in [2usize, 50] {
        for beta in [1.0, 4.0] {
            let lhs = equilibrium::minimize(&EnergyKernel::a(4.0, 1.0, beta)?, r, opts)?.energy_er;
            let rhs = beta / 2.0 * equilibrium::minimize(&EnergyKernel::a(4.0, beta / 2.0, 2.0)?, r, opts)?.energy_er;
            out.push(Check::at_most(format!("beta={beta} r={r} scaling"), (lhs - rhs).abs(), 1e-9));
        }
    }
    let target = E2_equilibrium(crate::highrank::EnergyKind::Cone, 1.0)?;
    let study = equilibrium::convergence_study(&k, &[25, 50, 100], opts)?;
    let excess = study.rows.iter().map(|row| row.energy_er - target).fold(f64::NEG_INFINITY, f64::max);
    out.push(Check::at_most("A t=1 E_r below limit", excess.max(0.0), 1e-6));
    Ok(out)
}

/// Jittered, well separated positions with random signs (C, BC) or a random shift (A).
fn random_config(rng: &mut ChaCha8Rng, variant: KernelVariant, r: usize) -> Vec<f64> {
    (0..r)
        .map(|i| {
            let x = 0.15 + 0.35 * i as f64 + rng.gen_range(-0.1..0.1);
            match variant {
                KernelVariant::A => x - 1.4,
                _ if rng.gen_bool(0.5) => -x,
                _ => x,
            }
        })
        .collect()
}

fn gradient(seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let kernels = [EnergyKernel::a(4.0, 1.0, 2.0)?, EnergyKernel::c(4.0, 1.0, 2.0)?, EnergyKernel::bc(4.0, 1.0, 2.0, 1.5)?];
    let h = 1e-6;
    for k in kernels {
        let mut worst = 0.0f64;
        for s in 0..20u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(s));
            let x = random_config(&mut rng, k.variant, 8);
            let cfg = ParticleConfig::new(k, x)?;
            let g = equilibrium::gradient(&cfg)?;
            for i in 0..cfg.len() {
                let mut p = cfg.positions().to_vec();
                let mut m = p.clone();
                p[i] += h;
                m[i] -= h;
                let ep = equilibrium::total_energy(&ParticleConfig::new(k, p)?)?;
                let em = equilibrium::total_energy(&ParticleConfig::new(k, m)?)?;
                worst = worst.max((g[i] - (ep - em) / (2.0 * h)).abs());
            }
        }
        out.push(Check::at_most(format!("{} kernel r=8, 20 seeds", k.variant), worst, 1e-5));
    }
    Ok(out)
}

fn degree_order() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for f in [RootFamily::A, RootFamily::B, RootFamily::C, RootFamily::D] {
        let mut mismatches = 0u64;
        for r in f.min_rank()..=6 {
            let d = tiv(f, r)?;
            let prod: u64 = degrees(&d)?.iter().product();
            let count = enumerate_weyl(&d, 6)?.len() as u64;
            mismatches += u64::from(prod != count);
        }
        out.push(Check::at_most(format!("{f} ranks up to 6, mismatches"), mismatches as f64, 0.0));
    }
    Ok(out)
}

//! Log-gas r-point energies.
//!
//! For a kernel `k(x,y) = ½W(x) + ½W(y) - (β/2)L(x,y)` the total energy of
//! `r` particles is `K_r(a) = Σ_{i≠j} k(a_i,a_j) = (r-1)ΣW(a_i) - βΣ_{i<j}L(a_i,a_j)`
//! and `E_r = inf K_r / (r(r-1))`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::highrank::{E2_equilibrium, EnergyKind};
use crate::special::{coth, csch_sq, log_sinh_abs};

pub const DEFAULT_SEED: u64 = 0x5EED_2024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelVariant {
    A,
    C,
    BC,
}

impl FromStr for KernelVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(KernelVariant::A),
            "C" => Ok(KernelVariant::C),
            "BC" => Ok(KernelVariant::BC),
            other => Err(Error::Domain(format!("unknown kernel variant '{other}'"))),
        }
    }
}

impl fmt::Display for KernelVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelVariant::A => "A",
            KernelVariant::C => "C",
            KernelVariant::BC => "BC",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyKernel {
    pub variant: KernelVariant,
    pub c: f64,
    pub t: f64,
    pub beta: f64,
    /// Only used by the BC variant.
    pub delta: f64,
}

impl EnergyKernel {
    pub fn new(variant: KernelVariant, c: f64, t: f64, beta: f64, delta: f64) -> Result<Self> {
        let pos = |x: f64| x > 0.0 && x.is_finite();
        if !(pos(c) && pos(t) && pos(beta)) {
            return Err(Error::Domain(format!("kernel needs c, t, beta > 0 (c={c}, t={t}, beta={beta})")));
        }
        if !(delta >= 1.0 && delta.is_finite()) {
            return Err(Error::Domain(format!("delta must be ≥ 1, got {delta}")));
        }
        Ok(EnergyKernel { variant, c, t, beta, delta })
    }

    pub fn a(c: f64, t: f64, beta: f64) -> Result<Self> {
        Self::new(KernelVariant::A, c, t, beta, 1.0)
    }

    pub fn c(c: f64, t: f64, beta: f64) -> Result<Self> {
        Self::new(KernelVariant::C, c, t, beta, 1.0)
    }

    pub fn bc(c: f64, t: f64, beta: f64, delta: f64) -> Result<Self> {
        Self::new(KernelVariant::BC, c, t, beta, delta)
    }

    fn reflected(&self) -> bool {
        self.variant != KernelVariant::A
    }

    fn single(&self) -> bool {
        self.variant == KernelVariant::BC && self.delta > 1.0
    }

    fn w(&self, x: f64) -> f64 {
        let q = self.c / (2.0 * self.t) * x * x;
        if self.single() {
            q - self.beta * (self.delta - 1.0) * log_sinh_abs(x)
        } else {
            q
        }
    }

    fn w1(&self, x: f64) -> f64 {
        let q = self.c / self.t * x;
        if self.single() {
            q - self.beta * (self.delta - 1.0) * coth(x)
        } else {
            q
        }
    }

    fn w2(&self, x: f64) -> f64 {
        let q = self.c / self.t;
        if self.single() {
            q + self.beta * (self.delta - 1.0) * csch_sq(x)
        } else {
            q
        }
    }

    fn pair(&self, x: f64, y: f64) -> f64 {
        let l = log_sinh_abs(x - y);
        if self.reflected() {
            l + log_sinh_abs(x + y)
        } else {
            l
        }
    }

    /// Closed-form r → ∞ limit of E_r, when one is known (A, C, and BC with δ = 1).
    pub fn closed_form_target(&self) -> Result<Option<f64>> {
        let kind = match self.variant {
            KernelVariant::A => EnergyKind::Cone,
            KernelVariant::C => EnergyKind::Domain,
            KernelVariant::BC if self.delta == 1.0 => EnergyKind::Domain,
            KernelVariant::BC => return Ok(None),
        };
        // rescale to c = 4, then E_β(t) = (β/2) E_2(βt/2)
        let t4 = 4.0 * self.t / self.c;
        Ok(Some(self.beta / 2.0 * E2_equilibrium(kind, self.beta * t4 / 2.0)?))
    }
}

/// k(x, y); `+inf` on singular pairs.
pub fn kernel_eval(kernel: &EnergyKernel, x: f64, y: f64) -> f64 {
    let v = 0.5 * kernel.w(x) + 0.5 * kernel.w(y) - 0.5 * kernel.beta * kernel.pair(x, y);
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Particle positions, sorted increasingly, together with their kernel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParticleConfig {
    positions: Vec<f64>,
    kernel: EnergyKernel,
}

impl ParticleConfig {
    pub fn new(kernel: EnergyKernel, mut positions: Vec<f64>) -> Result<Self> {
        if positions.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("positions must be finite".into()));
        }
        positions.sort_by(f64::total_cmp);
        if let Some(msg) = singularity(&kernel, &positions) {
            return Err(Error::Singular(msg));
        }
        Ok(ParticleConfig { positions, kernel })
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn kernel(&self) -> &EnergyKernel {
        &self.kernel
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

fn singularity(kernel: &EnergyKernel, a: &[f64]) -> Option<String> {
    for (i, &x) in a.iter().enumerate() {
        if kernel.single() && x == 0.0 {
            return Some(format!("particle {i} at the origin"));
        }
        for (j, &y) in a.iter().enumerate().skip(i + 1) {
            if x == y {
                return Some(format!("particles {i} and {j} coincide"));
            }
            if kernel.reflected() && x == -y {
                return Some(format!("particles {i} and {j} are mirror images"));
            }
        }
    }
    None
}

fn energy_raw(k: &EnergyKernel, a: &[f64]) -> f64 {
    let r = a.len();
    let mut wsum = 0.0;
    let mut lsum = 0.0;
    for i in 0..r {
        wsum += k.w(a[i]);
        for j in i + 1..r {
            lsum += k.pair(a[i], a[j]);
        }
    }
    let v = (r as f64 - 1.0) * wsum - k.beta * lsum;
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

fn gradient_raw(k: &EnergyKernel, a: &[f64], g: &mut [f64]) {
    let r = a.len();
    let rm1 = r as f64 - 1.0;
    for i in 0..r {
        g[i] = rm1 * k.w1(a[i]);
    }
    for i in 0..r {
        for j in i + 1..r {
            let m = k.beta * coth(a[i] - a[j]);
            g[i] -= m;
            g[j] += m;
            if k.reflected() {
                let p = k.beta * coth(a[i] + a[j]);
                g[i] -= p;
                g[j] -= p;
            }
        }
    }
}

fn hessian_raw(k: &EnergyKernel, a: &[f64]) -> Vec<Vec<f64>> {
    let r = a.len();
    let rm1 = r as f64 - 1.0;
    let mut h = vec![vec![0.0; r]; r];
    for i in 0..r {
        h[i][i] = rm1 * k.w2(a[i]);
    }
    for i in 0..r {
        for j in i + 1..r {
            let m = k.beta * csch_sq(a[i] - a[j]);
            let p = if k.reflected() { k.beta * csch_sq(a[i] + a[j]) } else { 0.0 };
            h[i][i] += m + p;
            h[j][j] += m + p;
            h[i][j] = p - m;
            h[j][i] = p - m;
        }
    }
    h
}

/// K_r(a) = Σ_{i≠j} k(a_i, a_j).
pub fn total_energy(config: &ParticleConfig) -> Result<f64> {
    let v = energy_raw(&config.kernel, &config.positions);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Singular("energy is infinite".into()))
    }
}

/// ∂K_r/∂a_i = (r-1)W'(a_i) - β Σ_{j≠i} [coth(a_i - a_j) (+ coth(a_i + a_j))].
pub fn gradient(config: &ParticleConfig) -> Result<Vec<f64>> {
    let mut g = vec![0.0; config.len()];
    gradient_raw(&config.kernel, &config.positions, &mut g);
    if g.iter().all(|x| x.is_finite()) {
        Ok(g)
    } else {
        Err(Error::Singular("gradient is infinite".into()))
    }
}

/// Hessian of K_r, as dense rows.
pub fn hessian(config: &ParticleConfig) -> Result<Vec<Vec<f64>>> {
    let h = hessian_raw(&config.kernel, &config.positions);
    if h.iter().flatten().all(|x| x.is_finite()) {
        Ok(h)
    } else {
        Err(Error::Singular("hessian is infinite".into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeOptions {
    pub max_iter: usize,
    /// Defaults to `1e-8·r`.
    pub grad_tol: Option<f64>,
    pub seed: u64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        MinimizeOptions { max_iter: 20_000, grad_tol: None, seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizationResult {
    pub energy_er: f64,
    pub config: ParticleConfig,
    pub grad_inf_norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// The optimizer's working region. A: strictly increasing. C (and BC with
/// δ = 1): `|a_1| < a_2 < … < a_r`, so the first particle may cross 0 where the
/// energy is smooth. BC with δ > 1: `0 < a_1 < … < a_r`.
fn feasible(k: &EnergyKernel, a: &[f64]) -> bool {
    if a.iter().any(|x| !x.is_finite()) {
        return false;
    }
    let increasing = a.windows(2).all(|w| w[0] < w[1]);
    match k.variant {
        KernelVariant::A => increasing,
        _ if k.single() => increasing && a[0] > 0.0,
        _ => increasing && (a.len() < 2 || a[1] > a[0].abs()),
    }
}

fn initial_positions(k: &EnergyKernel, r: usize, seed: u64) -> Vec<f64> {
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    let scale = (k.t / k.c).sqrt();
    let mut x: Vec<f64> = (0..r)
        .map(|i| {
            let u = (i as f64 + 0.5) / r as f64;
            let u = if k.variant == KernelVariant::A { u } else { 0.5 + 0.5 * u };
            scale * normal.inverse_cdf(u)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gaps: Vec<f64> = (0..r)
        .map(|i| {
            let left = if i > 0 { x[i] - x[i - 1] } else { f64::INFINITY };
            let right = if i + 1 < r { x[i + 1] - x[i] } else { f64::INFINITY };
            let g = left.min(right);
            if g.is_finite() {
                g
            } else {
                scale
            }
        })
        .collect();
    for (xi, g) in x.iter_mut().zip(&gaps) {
        *xi += 0.2 * g * rng.gen_range(-1.0..1.0);
    }
    if k.variant != KernelVariant::A && x[0] <= 0.0 {
        x[0] = 0.5 * x[1];
    }
    x
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn diagonal_preconditioner(k: &EnergyKernel, a: &[f64]) -> Vec<f64> {
    let h = hessian_raw(k, a);
    let r = a.len();
    let mut m = vec![0.0; r * r];
    for i in 0..r {
        let d = h[i][i];
        m[i * r + i] = if d > 0.0 && d.is_finite() { 1.0 / d } else { 1.0 };
    }
    m
}

/// Minimize K_r with dense BFGS and a backtracking line search that rejects
/// steps leaving the chamber.
pub fn minimize(kernel: &EnergyKernel, r: usize, opts: MinimizeOptions) -> Result<MinimizationResult> {
    if r < 2 {
        return Err(Error::Domain(format!("need at least two particles, got r = {r}")));
    }
    let tol = opts.grad_tol.unwrap_or(1e-8 * r as f64);
    let k = kernel;
    let mut x = initial_positions(k, r, opts.seed);
    let mut f = energy_raw(k, &x);
    let mut g = vec![0.0; r];
    gradient_raw(k, &x, &mut g);
    let mut h = diagonal_preconditioner(k, &x);

    let mut d = vec![0.0; r];
    let mut xn = vec![0.0; r];
    let mut gn = vec![0.0; r];
    let mut hy = vec![0.0; r];
    let mut iterations = 0;
    let mut gnorm = inf_norm(&g);
    let mut fresh = true;

    while gnorm > tol && iterations < opts.max_iter {
        iterations += 1;
        for i in 0..r {
            d[i] = -dot(&h[i * r..(i + 1) * r], &g);
        }
        let mut slope = dot(&g, &d);
        if !(slope < 0.0) {
            h = diagonal_preconditioner(k, &x);
            for i in 0..r {
                d[i] = -h[i * r + i] * g[i];
            }
            slope = dot(&g, &d);
        }
        let noise = 1e-13 * (f.abs() + 1.0);
        let mut alpha = 1.0;
        let mut accepted = false;
        for _ in 0..80 {
            for i in 0..r {
                xn[i] = x[i] + alpha * d[i];
            }
            if feasible(k, &xn) {
                let fnew = energy_raw(k, &xn);
                if fnew <= f + 1e-4 * alpha * slope + noise {
                    gradient_raw(k, &xn, &mut gn);
                    let smaller = inf_norm(&gn) < gnorm;
                    if fnew <= f + 1e-4 * alpha * slope || smaller {
                        f = fnew;
                        accepted = true;
                        break;
                    }
                }
            }
            alpha *= 0.5;
        }
        if !accepted {
            if fresh {
                break;
            }
            h = diagonal_preconditioner(k, &x);
            fresh = true;
            continue;
        }
        fresh = false;
        // s = xn - x, y = gn - g; reuse d as s
        let mut sy = 0.0;
        let mut yy = 0.0;
        for i in 0..r {
            d[i] = xn[i] - x[i];
            let y = gn[i] - g[i];
            g[i] = y;
            sy += d[i] * y;
            yy += y * y;
        }
        let ss = dot(&d, &d);
        if sy > 1e-12 * (ss * yy).sqrt() {
            let rho = 1.0 / sy;
            for i in 0..r {
                hy[i] = dot(&h[i * r..(i + 1) * r], &g);
            }
            let yhy = dot(&g, &hy);
            let coef = rho * rho * yhy + rho;
            for i in 0..r {
                for j in 0..r {
                    h[i * r + j] += coef * d[i] * d[j] - rho * (d[i] * hy[j] + hy[i] * d[j]);
                }
            }
        }
        x.copy_from_slice(&xn);
        g.copy_from_slice(&gn);
        gnorm = inf_norm(&g);
    }

    let shown: Vec<f64> = if k.variant == KernelVariant::A { x.clone() } else { x.iter().map(|v| v.abs()).collect() };
    let config = ParticleConfig::new(*k, shown)?;
    let energy = total_energy(&config)?;
    Ok(MinimizationResult {
        energy_er: energy / (r * (r - 1)) as f64,
        config,
        grad_inf_norm: gnorm,
        iterations,
        converged: gnorm <= tol,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub r: usize,
    pub energy_er: f64,
    pub grad_inf_norm: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    pub rows: Vec<ConvergenceRow>,
    /// E_r ≤ E_{r'} for every consecutive pair r < r'.
    pub nondecreasing: bool,
}

/// Minimize at every rank and report the sequence `(r, E_r)`.
pub fn convergence_study(kernel: &EnergyKernel, ranks: &[usize], opts: MinimizeOptions) -> Result<ConvergenceStudy> {
    if ranks.is_empty() || ranks.windows(2).any(|w| w[0] >= w[1]) || ranks[0] < 2 {
        return Err(Error::Domain("ranks must be strictly increasing and at least 2".into()));
    }
    let mut rows = Vec::with_capacity(ranks.len());
    for &r in ranks {
        let m = minimize(kernel, r, opts)?;
        rows.push(ConvergenceRow { r, energy_er: m.energy_er, grad_inf_norm: m.grad_inf_norm, converged: m.converged });
    }
    let nondecreasing = rows.windows(2).all(|w| w[0].energy_er <= w[1].energy_er);
    Ok(ConvergenceStudy { rows, nondecreasing })
}

//! Independent estimates of the radial integrals
//! `∫_𝔞 e^{-‖a‖²/2σ²} Π |sinh λ(a)|^{m_λ} da`.
//!
//! Integration runs in metric-orthonormal coordinates `y`, with `a = B·y`. For
//! the A family `B` spans the trace-zero hyperplane, which is the same as
//! integrating the centre of mass out analytically.
//!
//! Monte Carlo runs in chunks of [`CHUNK`] samples. Chunk `k` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` on stream `k`, chunks run in parallel, and
//! they are merged in index order. Results therefore do not depend on the
//! thread count.

use std::cell::Cell;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closedform::{log_Za_typeiv, log_za_typeiv, GaussParam, SphericalFunction};
use crate::error::{Error, Result};
use crate::rootsys::{self, root_shapes, weyl_group, DualVector, RootFamily, RootShape, SpaceDescriptor};
use crate::special::{adaptive_quad_breaks, log_sinh_abs};

pub const CHUNK: usize = 65_536;
pub const MIN_SAMPLES: usize = 10_000;
pub const MC_RANK_CAP: usize = 8;
pub const WEIGHTED_RANK_CAP: usize = 4;
pub const QUAD_RANK_CAP: usize = 2;
/// Largest Weyl group used as a mixture proposal.
pub const MIXTURE_CAP: u128 = 384;

/// Streaming mean and variance of `e^{lw}` for log-weights `lw`, kept
/// relative to the running maximum so huge weights do not overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogWelford {
    n: u64,
    shift: f64,
    mean: f64,
    m2: f64,
}

impl Default for LogWelford {
    fn default() -> Self {
        LogWelford { n: 0, shift: f64::NEG_INFINITY, mean: 0.0, m2: 0.0 }
    }
}

impl LogWelford {
    pub fn new() -> Self {
        Self::default()
    }

    fn rescale(&mut self, shift: f64) {
        if self.shift.is_finite() {
            let s = (self.shift - shift).exp();
            self.mean *= s;
            self.m2 *= s * s;
        }
        self.shift = shift;
    }

    pub fn push(&mut self, lw: f64) {
        self.n += 1;
        if lw > self.shift {
            self.rescale(lw);
        }
        let x = if lw == f64::NEG_INFINITY { 0.0 } else { (lw - self.shift).exp() };
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    /// Chan's parallel combination.
    pub fn merge(&mut self, other: &LogWelford) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let mut b = *other;
        let shift = self.shift.max(b.shift);
        self.rescale(shift);
        b.rescale(shift);
        let n = self.n + b.n;
        let d = b.mean - self.mean;
        self.mean += d * b.n as f64 / n as f64;
        self.m2 += b.m2 + d * d * (self.n as f64) * (b.n as f64) / n as f64;
        self.n = n;
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    /// log of the sample mean of the weights.
    pub fn log_mean(&self) -> f64 {
        self.shift + self.mean.ln()
    }

    /// Unbiased sample variance, relative to `e^{2·shift}`.
    fn scaled_variance(&self) -> f64 {
        if self.n < 2 {
            return f64::INFINITY;
        }
        self.m2 / (self.n - 1) as f64
    }

    /// Standard error of the mean divided by the mean.
    pub fn rel_std_err(&self) -> f64 {
        (self.scaled_variance() / self.n as f64).sqrt() / self.mean
    }

    /// Kish effective sample size `(Σw)²/Σw²`.
    pub fn ess(&self) -> f64 {
        let n = self.n as f64;
        n * self.mean * self.mean / (self.mean * self.mean + self.m2 / n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleEstimate {
    pub log_value: f64,
    pub std_err_rel: f64,
    pub n_samples: usize,
    pub seed: u64,
    pub ess: f64,
    /// Samples given zero weight because a Weyl sum cancelled.
    pub rejected: u64,
}

impl OracleEstimate {
    /// |log_value - target| in units of the standard error.
    pub fn z_score(&self, target: f64) -> f64 {
        ((self.log_value - target).exp() - 1.0).abs() / self.std_err_rel
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Proposal {
    /// Weyl mixture for curved integrands with small Weyl groups, else Gaussian.
    #[default]
    Auto,
    Gaussian,
    WeylMixture,
}

/// `Π |sinh λ(a)|^{m_λ}` (curved) or `Π |λ(a)|^{m_λ}` (flat) on a subspace
/// of ambient coordinates.
#[derive(Debug, Clone)]
pub struct RadialIntegrand {
    ambient: usize,
    rank: usize,
    /// ambient × rank, row-major
    basis: Vec<f64>,
    roots: Vec<(RootShape, f64)>,
    flat: bool,
    desc: Option<SpaceDescriptor>,
}

fn orthonormal_basis(n: usize, trace_zero: bool, c: f64) -> (usize, Vec<f64>) {
    let s = 1.0 / c.sqrt();
    if !trace_zero {
        let mut b = vec![0.0; n * n];
        for i in 0..n {
            b[i * n + i] = s;
        }
        return (n, b);
    }
    // Helmert columns (1,…,1,-k,0,…)/√(k(k+1))
    let r = n - 1;
    let mut b = vec![0.0; n * r];
    for k in 1..=r {
        let norm = s / ((k * (k + 1)) as f64).sqrt();
        for i in 0..k {
            b[i * r + k - 1] = norm;
        }
        b[k * r + k - 1] = -(k as f64) * norm;
    }
    (r, b)
}

impl RadialIntegrand {
    fn from_desc(desc: &SpaceDescriptor, flat: bool) -> Self {
        let n = desc.ambient_dim;
        let (rank, basis) = orthonormal_basis(n, desc.family == RootFamily::A, desc.metric_c);
        let roots = root_shapes(desc).into_iter().map(|(s, m)| (s, m as f64)).collect();
        RadialIntegrand { ambient: n, rank, basis, roots, flat, desc: Some(desc.clone()) }
    }

    /// The integrand of Z_𝔞.
    pub fn curved(desc: &SpaceDescriptor) -> Self {
        Self::from_desc(desc, false)
    }

    /// The integrand of z_𝔞: every `sinh λ` replaced by `λ`.
    pub fn flat(desc: &SpaceDescriptor) -> Self {
        Self::from_desc(desc, true)
    }

    /// `Π_{i<j} |a_i - a_j|^β` on ℝ^r with `‖a‖² = 4Σa_j²`.
    pub fn flat_cone(beta: f64, rank: usize) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) || rank == 0 {
            return Err(Error::Domain(format!("cone needs beta > 0 and rank ≥ 1 (beta={beta}, rank={rank})")));
        }
        let (_, basis) = orthonormal_basis(rank, false, 4.0);
        let mut roots = Vec::new();
        for i in 0..rank {
            for j in i + 1..rank {
                roots.push((RootShape::Diff(i, j), beta));
            }
        }
        Ok(RadialIntegrand { ambient: rank, rank, basis, roots, flat: true, desc: None })
    }

    /// `Π_{i<j}(a_i² - a_j²)² Π_i (2a_i)²` on ℝ^r with `‖a‖² = 4Σa_j²`.
    pub fn flat_symplectic(rank: usize) -> Result<Self> {
        let desc = SpaceDescriptor::type_iv(RootFamily::C, rank)?;
        Ok(Self::flat(&desc))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn to_ambient(&self, y: &[f64], a: &mut [f64]) {
        for (i, ai) in a.iter_mut().enumerate() {
            let row = &self.basis[i * self.rank..(i + 1) * self.rank];
            *ai = row.iter().zip(y).map(|(b, v)| b * v).sum();
        }
    }

    /// `Bᵀν` for an ambient functional ν.
    fn pull_back(&self, nu: &[f64]) -> Vec<f64> {
        (0..self.rank).map(|k| (0..self.ambient).map(|i| self.basis[i * self.rank + k] * nu[i]).sum()).collect()
    }

    /// log of the root product at ambient point `a`.
    pub fn log_eval(&self, a: &[f64]) -> f64 {
        let mut acc = 0.0;
        for &(s, m) in &self.roots {
            let x = s.eval(a);
            acc += m * if self.flat { x.abs().ln() } else { log_sinh_abs(x) };
        }
        acc
    }
}

fn check_mc(rank: usize, cap: usize, n: usize) -> Result<()> {
    if rank > cap {
        return Err(Error::RankCap { what: "Monte Carlo oracle", rank, cap });
    }
    if n < MIN_SAMPLES {
        return Err(Error::Domain(format!("need at least {MIN_SAMPLES} samples, got {n}")));
    }
    Ok(())
}

struct Sampler<'a> {
    f: &'a RadialIntegrand,
    sigma: f64,
    s2: f64,
    /// Component means in y-coordinates; empty for the plain Gaussian.
    means: Vec<Vec<f64>>,
    weight: Option<&'a SphericalFunction>,
}

impl Sampler<'_> {
    fn with_tilt(mut self, nu: &[f64]) -> Result<Self> {
        let desc = self.f.desc.as_ref().ok_or_else(|| Error::Domain("no Weyl group for this integrand".into()))?;
        let group = weyl_group(desc)?;
        let mut buf = vec![0.0; nu.len()];
        self.means = group
            .iter()
            .map(|w| {
                w.apply_into(nu, &mut buf);
                self.f.pull_back(&buf).into_iter().map(|v| self.s2 * v).collect()
            })
            .collect();
        Ok(self)
    }

    fn chunk(&self, seed: u64, index: usize, count: usize) -> (LogWelford, u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index as u64);
        let r = self.f.rank;
        let mut y = vec![0.0; r];
        let mut a = vec![0.0; self.f.ambient];
        let mut acc = LogWelford::new();
        let mut rejected = 0;
        let inv = 0.5 / self.s2;
        let log_k = (self.means.len().max(1) as f64).ln();
        for _ in 0..count {
            let mean = if self.means.is_empty() { None } else { Some(&self.means[rng.gen_range(0..self.means.len())]) };
            for (j, yj) in y.iter_mut().enumerate() {
                let z: f64 = rng.sample(StandardNormal);
                *yj = self.sigma * z + mean.map_or(0.0, |m| m[j]);
            }
            self.f.to_ambient(&y, &mut a);
            let mut lw = self.f.log_eval(&a);
            if let Some(phi) = self.weight {
                match phi.log_eval(&a) {
                    Ok(v) if v.sign > 0 => lw += v.log_abs,
                    _ => {
                        rejected += 1;
                        lw = f64::NEG_INFINITY;
                    }
                }
            }
            if !self.means.is_empty() && lw > f64::NEG_INFINITY {
                let yy: f64 = y.iter().map(|v| v * v).sum();
                let mut m = f64::NEG_INFINITY;
                let mut ex: Vec<f64> = Vec::with_capacity(self.means.len());
                for mu in &self.means {
                    let d: f64 = y.iter().zip(mu).map(|(p, q)| (p - q) * (p - q)).sum();
                    let e = -d * inv;
                    m = m.max(e);
                    ex.push(e);
                }
                let lse = m + ex.iter().map(|e| (e - m).exp()).sum::<f64>().ln();
                lw += -yy * inv - (lse - log_k);
            }
            acc.push(lw);
        }
        (acc, rejected)
    }

    fn run(&self, n: usize, seed: u64) -> Result<OracleEstimate> {
        let chunks = n.div_ceil(CHUNK);
        let parts: Vec<(LogWelford, u64)> = (0..chunks)
            .into_par_iter()
            .map(|k| self.chunk(seed, k, CHUNK.min(n - k * CHUNK)))
            .collect();
        let mut acc = LogWelford::new();
        let mut rejected = 0;
        for (p, rj) in &parts {
            acc.merge(p);
            rejected += rj;
        }
        if !(acc.mean > 0.0) {
            return Err(Error::Domain("all importance weights vanished".into()));
        }
        let r = self.f.rank as f64;
        Ok(OracleEstimate {
            log_value: 0.5 * r * (2.0 * PI * self.s2).ln() + acc.log_mean(),
            std_err_rel: acc.rel_std_err(),
            n_samples: n,
            seed,
            ess: acc.ess(),
            rejected,
        })
    }
}

fn use_mixture(f: &RadialIntegrand, proposal: Proposal) -> Result<bool> {
    Ok(match proposal {
        Proposal::Gaussian => false,
        Proposal::WeylMixture => true,
        Proposal::Auto => match &f.desc {
            Some(d) if !f.flat && d.rank <= rootsys::DEFAULT_WEYL_CAP => rootsys::weyl_order(d)? <= MIXTURE_CAP,
            _ => false,
        },
    })
}

fn two_rho(desc: &SpaceDescriptor) -> Vec<f64> {
    rootsys::rho_doubled(desc).into_iter().map(|x| x as f64).collect()
}

/// Importance-sampling estimate of `log ∫ e^{-|y|²/2σ²} f(By) dy`.
pub fn mc_integrand(f: &RadialIntegrand, p: GaussParam, n: usize, seed: u64, proposal: Proposal) -> Result<OracleEstimate> {
    check_mc(f.rank, MC_RANK_CAP, n)?;
    let base = Sampler { f, sigma: p.sigma_value(), s2: p.sigma2(), means: Vec::new(), weight: None };
    let sampler = if use_mixture(f, proposal)? {
        let desc = f.desc.as_ref().ok_or_else(|| Error::Domain("Weyl mixture needs a root system".into()))?;
        base.with_tilt(&two_rho(desc))?
    } else {
        base
    };
    sampler.run(n, seed)
}

/// Monte Carlo estimate of log Z_𝔞(σ).
pub fn mc_radial(desc: &SpaceDescriptor, p: GaussParam, n: usize, seed: u64) -> Result<OracleEstimate> {
    mc_integrand(&RadialIntegrand::curved(desc), p, n, seed, Proposal::Auto)
}

/// The Weyl image of `v` with the largest pairing against ρ.
fn dominant(desc: &SpaceDescriptor, v: &[f64]) -> Result<Vec<f64>> {
    let rho = two_rho(desc);
    let group = weyl_group(desc)?;
    let mut best = v.to_vec();
    let mut best_dot = f64::NEG_INFINITY;
    let mut buf = vec![0.0; v.len()];
    for w in group.iter() {
        w.apply_into(v, &mut buf);
        let d: f64 = buf.iter().zip(&rho).map(|(x, y)| x * y).sum();
        if d > best_dot {
            best_dot = d;
            best.copy_from_slice(&buf);
        }
    }
    Ok(best)
}

/// Monte Carlo estimate of `log ∫ e^{-‖a‖²/2σ²} Φ_τ(a) Π sinh² λ(a) da`.
pub fn mc_radial_weighted(
    desc: &SpaceDescriptor,
    p: GaussParam,
    tau: &DualVector,
    n: usize,
    seed: u64,
) -> Result<OracleEstimate> {
    desc.check_type_iv()?;
    check_mc(desc.rank, WEIGHTED_RANK_CAP, n)?;
    let phi = SphericalFunction::new(desc, tau)?;
    let f = RadialIntegrand::curved(desc);
    let mut nu = dominant(desc, &tau.coeffs)?;
    for (x, r) in nu.iter_mut().zip(two_rho(desc)) {
        *x += r / 2.0;
    }
    let base = Sampler { f: &f, sigma: p.sigma_value(), s2: p.sigma2(), means: Vec::new(), weight: Some(&phi) };
    let sampler = if use_mixture(&f, Proposal::Auto)? { base.with_tilt(&nu)? } else { base };
    sampler.run(n, seed)
}

fn dedup_sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Tensor-product adaptive quadrature of `log ∫ e^{-|y|²/2σ²} f(By) dy`,
/// with absolute log-scale error about `tol`.
pub fn quad_integrand(f: &RadialIntegrand, p: GaussParam, tol: f64) -> Result<f64> {
    if f.rank > QUAD_RANK_CAP {
        return Err(Error::RankCap { what: "quadrature oracle", rank: f.rank, cap: QUAD_RANK_CAP });
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let sigma = p.sigma_value();
    let s2 = p.sigma2();
    // widen the 12σ box by the tilt, so the peak sits well inside it
    let tilt = match (&f.desc, f.flat) {
        (Some(d), false) => f.pull_back(&two_rho(d)).iter().fold(0.0f64, |m, v| m.max(v.abs())) * s2,
        _ => 0.0,
    };
    let half = 12.0 * sigma + tilt;
    let inv = 0.5 / s2;
    let log_g = |y: &[f64]| -> f64 {
        let mut a = [0.0; QUAD_RANK_CAP + 1];
        let a = &mut a[..f.ambient];
        f.to_ambient(y, a);
        f.log_eval(a) - y.iter().map(|v| v * v).sum::<f64>() * inv
    };
    // coarse Riemann pass for the scale
    let m = if f.rank == 1 { 801 } else { 161 };
    let h = 2.0 * half / (m - 1) as f64;
    let grid: Vec<f64> = (0..m).map(|i| -half + i as f64 * h).collect();
    let mut logs = Vec::new();
    if f.rank == 1 {
        logs.extend(grid.iter().map(|&u| log_g(&[u])));
    } else {
        for &u in &grid {
            logs.extend(grid.iter().map(|&v| log_g(&[u, v])));
        }
    }
    let peak = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !peak.is_finite() {
        return Err(Error::Domain("integrand vanishes on the quadrature grid".into()));
    }
    let coarse: f64 = logs.iter().map(|l| (l - peak).exp()).sum::<f64>() * h.powi(f.rank as i32);
    let g = |y: &[f64]| (log_g(y) - peak).exp();

    // root hyperplanes through the origin are the only kinks
    let outer_pts = dedup_sorted(vec![-half, 0.0, half]);
    let value = if f.rank == 1 {
        adaptive_quad_breaks(|u| g(&[u]), &outer_pts, tol * coarse, 20_000)?.value
    } else {
        let mut slopes = Vec::new();
        let mut col = [0.0; QUAD_RANK_CAP + 1];
        for &(s, _) in &f.roots {
            f.to_ambient(&[1.0, 0.0], &mut col[..f.ambient]);
            let l1 = s.eval(&col[..f.ambient]);
            f.to_ambient(&[0.0, 1.0], &mut col[..f.ambient]);
            let l2 = s.eval(&col[..f.ambient]);
            if l2.abs() > 1e-14 {
                slopes.push(-l1 / l2);
            }
        }
        let inner_tol = 0.25 * tol * coarse / (2.0 * half);
        let failure: Cell<Option<Error>> = Cell::new(None);
        let inner = |u: f64| -> f64 {
            let mut pts = vec![-half, half];
            pts.extend(slopes.iter().map(|k| k * u).filter(|v| v.abs() < half));
            let pts = dedup_sorted(pts);
            match adaptive_quad_breaks(|v| g(&[u, v]), &pts, inner_tol, 20_000) {
                Ok(o) => o.value,
                Err(e) => {
                    failure.set(Some(e));
                    0.0
                }
            }
        };
        let out = adaptive_quad_breaks(inner, &outer_pts, 0.5 * tol * coarse, 20_000)?;
        if let Some(e) = failure.take() {
            return Err(e);
        }
        out.value
    };
    if !(value > 0.0) {
        return Err(Error::QuadNonConvergence { estimate: value, error_estimate: f64::NAN });
    }
    Ok(peak + value.ln())
}

/// Quadrature estimate of log Z_𝔞(σ), rank ≤ 2.
pub fn quad_radial(desc: &SpaceDescriptor, p: GaussParam, tol: f64) -> Result<f64> {
    quad_integrand(&RadialIntegrand::curved(desc), p, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    ClosedForm,
    Quadrature,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "closedform" | "closed-form" => Ok(Method::ClosedForm),
            "quadrature" | "quad" => Ok(Method::Quadrature),
            other => Err(Error::Domain(format!("unknown method '{other}'"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closedform",
            Method::Quadrature => "quadrature",
        })
    }
}

/// Fitted coefficient `b` of `Z_𝔞/z_𝔞 - 1 ≈ b·σ² + c·σ⁴` over a grid of σ.
pub fn sigma2_coefficient(desc: &SpaceDescriptor, sigma_grid: &[f64], method: Method) -> Result<f64> {
    if sigma_grid.len() < 4 {
        return Err(Error::Domain(format!("need at least 4 grid points, got {}", sigma_grid.len())));
    }
    if sigma_grid.iter().any(|&s| !(s > 0.0 && s <= 0.2)) || sigma_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("σ grid must be strictly increasing inside (0, 0.2]".into()));
    }
    let (mut s11, mut s12, mut s22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &sigma in sigma_grid {
        let p = GaussParam::sigma(sigma)?;
        let diff = match method {
            Method::ClosedForm => log_Za_typeiv(desc, p)? - log_za_typeiv(desc, p)?,
            Method::Quadrature => {
                let tol = 1e-11;
                quad_radial(desc, p, tol)? - quad_integrand(&RadialIntegrand::flat(desc), p, tol)?
            }
        };
        let y = diff.exp_m1();
        let s = p.sigma2();
        s11 += s * s;
        s12 += s * s * s;
        s22 += s * s * s * s;
        b1 += s * y;
        b2 += s * s * y;
    }
    let det = s11 * s22 - s12 * s12;
    if !(det.abs() > 0.0) {
        return Err(Error::Domain("degenerate σ grid".into()));
    }
    Ok((b1 * s22 - b2 * s12) / det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::{log_za_cone, log_za_symplectic};
    use approx::assert_relative_eq;

    fn tiv(f: RootFamily, r: usize) -> SpaceDescriptor {
        SpaceDescriptor::type_iv(f, r).unwrap()
    }

    #[test]
    fn welford_merge_matches_single_pass() {
        let lws: Vec<f64> = (0..1000).map(|i| ((i * 37 % 101) as f64).sin() * 30.0).collect();
        let mut one = LogWelford::new();
        lws.iter().for_each(|&x| one.push(x));
        let mut merged = LogWelford::new();
        for part in lws.chunks(137) {
            let mut w = LogWelford::new();
            part.iter().for_each(|&x| w.push(x));
            merged.merge(&w);
        }
        assert_eq!(one.count(), merged.count());
        assert_relative_eq!(one.log_mean(), merged.log_mean(), max_relative = 1e-12);
        assert_relative_eq!(one.rel_std_err(), merged.rel_std_err(), max_relative = 1e-12);
    }

    #[test]
    fn welford_handles_zero_weights() {
        let mut w = LogWelford::new();
        w.push(f64::NEG_INFINITY);
        w.push(0.0);
        w.push(f64::NEG_INFINITY);
        assert_relative_eq!(w.log_mean(), (1.0f64 / 3.0).ln(), epsilon = 1e-15);
    }

    #[test]
    fn quadrature_rank_one() {
        let d = tiv(RootFamily::A, 1);
        let p = GaussParam::sigma(1.0).unwrap();
        let want = ((2.0 * PI).sqrt() * 0.5f64.exp() * 0.5f64.sinh()).ln();
        assert!((quad_radial(&d, p, 1e-11).unwrap() - want).abs() < 1e-8);
    }

    #[test]
    fn quadrature_rank_two_matches_closed_form() {
        let d = tiv(RootFamily::C, 2);
        let p = GaussParam::sigma(0.6).unwrap();
        let q = quad_radial(&d, p, 1e-10).unwrap();
        assert!((q - log_Za_typeiv(&d, p).unwrap()).abs() < 1e-6);
        let s1 = GaussParam::sigma(1.0).unwrap();
        let cone = quad_integrand(&RadialIntegrand::flat_cone(2.0, 2).unwrap(), s1, 1e-10).unwrap();
        assert!((cone - log_za_cone(2.0, 2, s1).unwrap()).abs() < 1e-6);
        let sp = quad_integrand(&RadialIntegrand::flat_symplectic(2).unwrap(), s1, 1e-10).unwrap();
        assert!((sp - log_za_symplectic(2, s1).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn mc_is_reproducible_and_close() {
        let d = tiv(RootFamily::A, 1);
        let p = GaussParam::sigma(1.0).unwrap();
        let a = mc_radial(&d, p, 100_000, 3).unwrap();
        let b = mc_radial(&d, p, 100_000, 3).unwrap();
        assert_eq!(a, b);
        assert!(a.z_score(log_Za_typeiv(&d, p).unwrap()) < 4.0);
        assert!(mc_radial(&d, p, 10, 3).is_err());
        assert!(mc_radial(&tiv(RootFamily::B, 9), p, 100_000, 3).is_err());
    }

    #[test]
    fn helmert_basis_is_orthonormal_in_metric() {
        let (r, b) = orthonormal_basis(4, true, 4.0);
        for k in 0..r {
            for l in 0..r {
                let g: f64 = (0..4).map(|i| 4.0 * b[i * r + k] * b[i * r + l]).sum();
                assert_relative_eq!(g, if k == l { 1.0 } else { 0.0 }, epsilon = 1e-15);
            }
            let tr: f64 = (0..4).map(|i| b[i * r + k]).sum();
            assert!(tr.abs() < 1e-15);
        }
    }

    #[test]
    fn sigma2_grid_validation() {
        let d = tiv(RootFamily::A, 1);
        assert!(sigma2_coefficient(&d, &[0.05, 0.1, 0.15], Method::ClosedForm).is_err());
        assert!(sigma2_coefficient(&d, &[0.05, 0.1, 0.15, 0.3], Method::ClosedForm).is_err());
        let b = sigma2_coefficient(&d, &[0.05, 0.1, 0.15, 0.2], Method::ClosedForm).unwrap();
        assert!((b - 0.5).abs() < 0.005);
    }
}

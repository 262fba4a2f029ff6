//! Exact radial Gaussian integrals for the complex (type IV) spaces, the
//! symmetric cones and the symplectic domain.
//!
//! All values are logarithms of the radial integrals
//! `∫_𝔞 e^{-‖a‖²/2σ²} J(a) da` with the Lebesgue measure of the metric on 𝔞.
//! The volume constant of the space never appears.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rootsys::{
    self, dual_inner, pairings, rho, rho_pairings, weyl_group, DualVector, RootFamily, SpaceDescriptor,
    WeylElement,
};
use crate::special::{log_gamma, log_sch, log_sinh_abs};

/// Gaussian dispersion, stored as σ².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussParam {
    sigma2: f64,
}

impl GaussParam {
    pub fn sigma(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::Domain(format!("sigma must be positive, got {sigma}")));
        }
        Ok(GaussParam { sigma2: sigma * sigma })
    }

    /// σ² = t/r.
    pub fn t_over_r(t: f64, r: usize) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) || r == 0 {
            return Err(Error::Domain(format!("need t > 0 and r ≥ 1 (t={t}, r={r})")));
        }
        Ok(GaussParam { sigma2: t / r as f64 })
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn sigma_value(&self) -> f64 {
        self.sigma2.sqrt()
    }
}

/// `sign · e^{log_abs}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub log_abs: f64,
    pub sign: i8,
}

impl LogValue {
    pub fn positive(log_abs: f64) -> Self {
        LogValue { log_abs, sign: 1 }
    }

    pub fn value(&self) -> f64 {
        self.sign as f64 * self.log_abs.exp()
    }

    pub fn mul(self, other: LogValue) -> LogValue {
        LogValue { log_abs: self.log_abs + other.log_abs, sign: self.sign * other.sign }
    }

    pub fn div(self, other: LogValue) -> LogValue {
        LogValue { log_abs: self.log_abs - other.log_abs, sign: self.sign * other.sign }
    }
}

/// ϖ(τ) = Π_{λ∈Δ+} (λ, τ), each root counted once.
pub fn log_varpi(desc: &SpaceDescriptor, tau: &DualVector) -> Result<LogValue> {
    let mut acc = LogValue::positive(0.0);
    for (_, p) in pairings(desc, tau)? {
        let s = if p < 0.0 { -1 } else { 1 };
        acc = acc.mul(LogValue { log_abs: p.abs().ln(), sign: s });
    }
    Ok(acc)
}

fn log_varpi_rho(desc: &SpaceDescriptor) -> f64 {
    rho_pairings(desc).into_iter().map(|(_, p)| p.ln()).sum()
}

fn rho_sq(desc: &SpaceDescriptor) -> f64 {
    let r = rho(desc);
    dual_inner(desc, &r, &r).expect("rho has ambient dimension")
}

/// log z_𝔞(σ) = log|W| + d·log σ + (r/2)·log 2π + log ϖ(ρ/2).
pub fn log_za_typeiv(desc: &SpaceDescriptor, p: GaussParam) -> Result<f64> {
    desc.check_type_iv()?;
    let r = desc.rank as f64;
    let d = desc.dimension() as f64;
    let n_pos = rho_pairings(desc).len() as f64;
    let varpi_half = log_varpi_rho(desc) - n_pos * std::f64::consts::LN_2;
    Ok(rootsys::log_weyl_order(desc)? + 0.5 * d * p.sigma2.ln() + 0.5 * r * (2.0 * PI).ln() + varpi_half)
}

/// log Z_𝔞(σ) = log|W| - |Δ+|·log 2 + (r/2)·log(2πσ²) + σ²(ρ,ρ) + Σ log sinh(σ²(λ,ρ)).
#[allow(non_snake_case)]
pub fn log_Za_typeiv(desc: &SpaceDescriptor, p: GaussParam) -> Result<f64> {
    desc.check_type_iv()?;
    let s2 = p.sigma2;
    let pr = rho_pairings(desc);
    let sinh_sum: f64 = pr.iter().map(|&(_, x)| log_sinh_abs(s2 * x)).sum();
    Ok(rootsys::log_weyl_order(desc)? - pr.len() as f64 * std::f64::consts::LN_2
        + 0.5 * desc.rank as f64 * (2.0 * PI * s2).ln()
        + s2 * rho_sq(desc)
        + sinh_sum)
}

/// log Z_𝔞(σ, τ) = log z_𝔞 + (σ²/2)((τ,τ) + (ρ,ρ)) + Σ log sch(σ²(λ,τ)) for real τ.
#[allow(non_snake_case)]
pub fn log_Za_tau_typeiv(desc: &SpaceDescriptor, p: GaussParam, tau: &DualVector) -> Result<LogValue> {
    let base = log_za_typeiv(desc, p)?;
    let s2 = p.sigma2;
    let tt = dual_inner(desc, tau, tau)?;
    let sch: f64 = pairings(desc, tau)?.into_iter().map(|(_, x)| log_sch(s2 * x)).sum();
    Ok(LogValue::positive(base + 0.5 * s2 * (tt + rho_sq(desc)) + sch))
}

/// Both sides of `|W|·ϖ(ρ/2) = Π(‖λ‖²/2)·Π Γ(1+d_j)`, as logarithms.
pub fn macdonald_sides(desc: &SpaceDescriptor) -> Result<(f64, f64)> {
    desc.check_type_iv()?;
    let n_pos = rho_pairings(desc).len() as f64;
    let lhs = rootsys::log_weyl_order(desc)? + log_varpi_rho(desc) - n_pos * std::f64::consts::LN_2;
    let mut rhs = 0.0;
    for root in rootsys::positive_roots(desc) {
        let v = root.as_dual();
        rhs += (dual_inner(desc, &v, &v)? / 2.0).ln();
    }
    for d in rootsys::degrees(desc)? {
        rhs += log_gamma(1.0 + d as f64)?;
    }
    Ok((lhs, rhs))
}

fn project(desc: &SpaceDescriptor, v: &[f64]) -> Vec<f64> {
    if desc.family == RootFamily::A {
        let m = v.iter().sum::<f64>() / v.len() as f64;
        v.iter().map(|x| x - m).collect()
    } else {
        v.to_vec()
    }
}

/// Signed log-sum-exp of `Σ_w det(w)·e^{x_w}`. Errors when the signed residue
/// is below `1e-8` of the unsigned total.
fn signed_lse(terms: &[(f64, i8)]) -> Result<LogValue> {
    let m = terms.iter().map(|t| t.0).fold(f64::NEG_INFINITY, f64::max);
    let mut signed = 0.0;
    let mut total = 0.0;
    for &(x, s) in terms {
        let e = (x - m).exp();
        signed += s as f64 * e;
        total += e;
    }
    let residue = signed.abs() / total;
    if !(residue > 1e-8) {
        return Err(Error::WallProximity { residue });
    }
    Ok(LogValue { log_abs: m + signed.abs().ln(), sign: if signed < 0.0 { -1 } else { 1 } })
}

/// The spherical function Φ_τ of a type IV space, with its Weyl group cached.
#[derive(Debug, Clone)]
pub struct SphericalFunction {
    desc: SpaceDescriptor,
    group: Arc<Vec<WeylElement>>,
    tau: Vec<f64>,
    rho: Vec<f64>,
    prefactor: LogValue,
}

impl SphericalFunction {
    pub fn new(desc: &SpaceDescriptor, tau: &DualVector) -> Result<Self> {
        desc.check_type_iv()?;
        if tau.coeffs.len() != desc.ambient_dim {
            return Err(Error::DimensionMismatch { expected: desc.ambient_dim, got: tau.coeffs.len() });
        }
        let group = weyl_group(desc)?;
        let vt = log_varpi(desc, tau)?;
        if !vt.log_abs.is_finite() {
            return Err(Error::Domain("ϖ(τ) = 0: τ lies on a wall".into()));
        }
        let prefactor = LogValue::positive(log_varpi_rho(desc)).div(vt);
        Ok(SphericalFunction {
            desc: desc.clone(),
            group,
            tau: project(desc, &tau.coeffs),
            rho: rho(desc).coeffs,
            prefactor,
        })
    }

    fn weyl_sum(&self, v: &[f64], a: &[f64], buf: &mut [f64], terms: &mut Vec<(f64, i8)>) -> Result<LogValue> {
        terms.clear();
        for w in self.group.iter() {
            w.apply_into(a, buf);
            let x: f64 = v.iter().zip(buf.iter()).map(|(p, q)| p * q).sum();
            terms.push((x, w.det));
        }
        signed_lse(terms)
    }

    /// log Φ_τ(Exp a) together with its sign.
    pub fn log_eval(&self, a: &[f64]) -> Result<LogValue> {
        if a.len() != self.desc.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.desc.ambient_dim, got: a.len() });
        }
        let a = project(&self.desc, a);
        let mut buf = vec![0.0; a.len()];
        let mut terms = Vec::with_capacity(self.group.len());
        let num = self.weyl_sum(&self.tau, &a, &mut buf, &mut terms)?;
        let den = self.weyl_sum(&self.rho, &a, &mut buf, &mut terms)?;
        Ok(self.prefactor.mul(num).div(den))
    }

    pub fn eval(&self, a: &[f64]) -> Result<f64> {
        self.log_eval(a).map(|v| v.value())
    }
}

/// Φ_τ(Exp a) = (ϖ(ρ)/ϖ(τ)) · Σ_w det(w) e^{τ(wa)} / Σ_w det(w) e^{ρ(wa)}.
pub fn spherical_typeiv(desc: &SpaceDescriptor, tau: &DualVector, a: &[f64]) -> Result<f64> {
    SphericalFunction::new(desc, tau)?.eval(a)
}

fn check_rank(rank: usize) -> Result<()> {
    if rank == 0 {
        return Err(Error::Domain("rank must be at least 1".into()));
    }
    Ok(())
}

/// log of `∫_{ℝ^r} e^{-‖a‖²/2σ²} Π_{i<j}|a_i - a_j|^β da` with `‖a‖² = 4Σa_j²`.
pub fn log_za_cone(beta: f64, rank: usize, p: GaussParam) -> Result<f64> {
    check_rank(rank)?;
    if ![1.0, 2.0, 4.0].contains(&beta) {
        return Err(Error::Domain(format!("cone integrals need beta in {{1, 2, 4}}, got {beta}")));
    }
    let r = rank as f64;
    let d = r + r * (r - 1.0) * beta / 2.0;
    let g1 = log_gamma(1.0 + beta / 2.0)?;
    let mut acc = 0.5 * d * (p.sigma2 / 4.0).ln() + 0.5 * r * (8.0 * PI).ln();
    for j in 1..=rank {
        acc += log_gamma(1.0 + j as f64 * beta / 2.0)? - g1;
    }
    Ok(acc)
}

/// log of the flat symplectic integral
/// `∫ e^{-‖a‖²/2σ²} Π_{i<j}(a_i² - a_j²)² Π_i (2a_i)² da`, `‖a‖² = 4Σa_j²`.
pub fn log_za_symplectic(rank: usize, p: GaussParam) -> Result<f64> {
    check_rank(rank)?;
    let r = rank as f64;
    let mut acc = r * r * (p.sigma2 / 4.0).ln() + 0.5 * r * (8.0 * PI * p.sigma2).ln();
    for j in 1..=rank {
        acc += log_gamma(1.0 + 2.0 * j as f64)?;
    }
    Ok(acc)
}

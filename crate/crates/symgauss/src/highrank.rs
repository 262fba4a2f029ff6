//! Rank-to-infinity limits at fixed `t = rσ²`.
//!
//! With `ls(x) = log(sinh x / x)`, the limits of `(1/r²)·log(Z_𝔞/z_𝔞)` are
//!
//! ```text
//! A:       F(t) = t/12 + ∫₀¹ (1-u)·ls(tu/2) du
//! B, C, D: F(t) = t/3  + 2∫₀¹ (1-x)·ls(tx) dx
//! ```
//!
//! The weights `(1-u)` are the densities of `|x_i - x_j|` for two independent
//! uniform points. Both integrals reduce to `∫₀ᵃ ls(tx)dx` and `∫₀ᵃ x·ls(tx)dx`,
//! which are evaluated through the dilogarithm and trilogarithm.

use std::fmt;
use std::str::FromStr;

use crate::closedform::GaussParam;
use crate::error::{Error, Result};
use crate::rootsys::{dual_inner, rho, rho_pairings, RootFamily, SpaceDescriptor};
use crate::special::{int_log1mexp, int_x_log1mexp, log_sch, BERNOULLI_EVEN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitFamily {
    A,
    B,
    C,
    D,
}

impl LimitFamily {
    pub const ALL: [LimitFamily; 4] = [LimitFamily::A, LimitFamily::B, LimitFamily::C, LimitFamily::D];

    pub fn root_family(self) -> RootFamily {
        match self {
            LimitFamily::A => RootFamily::A,
            LimitFamily::B => RootFamily::B,
            LimitFamily::C => RootFamily::C,
            LimitFamily::D => RootFamily::D,
        }
    }

    /// Equilibrium problem whose energy the limit reconstructs.
    pub fn energy_kind(self) -> EnergyKind {
        match self {
            LimitFamily::A => EnergyKind::Cone,
            _ => EnergyKind::Domain,
        }
    }
}

impl TryFrom<RootFamily> for LimitFamily {
    type Error = Error;
    fn try_from(f: RootFamily) -> Result<Self> {
        match f {
            RootFamily::A => Ok(LimitFamily::A),
            RootFamily::B => Ok(LimitFamily::B),
            RootFamily::C => Ok(LimitFamily::C),
            RootFamily::D => Ok(LimitFamily::D),
            RootFamily::BC => Err(Error::Domain("no high-rank limit for the BC family".into())),
        }
    }
}

impl FromStr for LimitFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RootFamily::from_str(s)?.try_into()
    }
}

impl fmt::Display for LimitFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root_family().fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnergyKind {
    /// A-kernel, symmetric cones.
    Cone,
    /// C-kernel, classical domains.
    Domain,
}

impl FromStr for EnergyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cone" => Ok(EnergyKind::Cone),
            "domain" => Ok(EnergyKind::Domain),
            other => Err(Error::Domain(format!("unknown energy kind '{other}'"))),
        }
    }
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    Ok(())
}

const SERIES_CUT: f64 = 0.5;
const SERIES_TERMS: usize = 12;

/// (∫₀ᵃ ls(tx) dx, ∫₀ᵃ x·ls(tx) dx)
fn ls_moments(t: f64, a: f64) -> Result<(f64, f64)> {
    let ta = t * a;
    if ta <= SERIES_CUT {
        // ls(y) = Σ 2^{2n} B_{2n} y^{2n} / (2n (2n)!), radius π
        let mut g0 = 0.0;
        let mut g1 = 0.0;
        let mut fact = 1.0;
        let mut pow4 = 1.0;
        let mut ya = 1.0;
        for n in 1..=SERIES_TERMS {
            let k = 2 * n;
            fact *= ((k - 1) * k) as f64;
            pow4 *= 4.0;
            ya *= ta * ta;
            let c = pow4 * BERNOULLI_EVEN[n - 1] / (k as f64 * fact);
            g0 += c * ya * a / (k + 1) as f64;
            g1 += c * ya * a * a / (k + 2) as f64;
        }
        return Ok((g0, g1));
    }
    let l = (2.0 * ta).ln();
    let g0 = ta * a / 2.0 - a * (l - 1.0) + int_log1mexp(t, a)?;
    let g1 = ta * a * a / 3.0 - a * a * l / 2.0 + a * a / 4.0 + int_x_log1mexp(t, a)?;
    Ok((g0, g1))
}

/// F(t) for the given family; B, C and D share one code path.
#[allow(non_snake_case)]
pub fn F_limit(fam: LimitFamily, t: f64) -> Result<f64> {
    check_t(t)?;
    match fam {
        LimitFamily::A => {
            let (g0, g1) = ls_moments(t, 0.5)?;
            Ok(t / 12.0 + 2.0 * g0 - 4.0 * g1)
        }
        LimitFamily::B | LimitFamily::C | LimitFamily::D => {
            let (g0, g1) = ls_moments(t, 1.0)?;
            Ok(t / 3.0 + 2.0 * g0 - 2.0 * g1)
        }
    }
}

/// `(1/r²)·log(Z_𝔞/z_𝔞)` at `σ² = t/r` for a type IV descriptor of rank `r`.
#[allow(non_snake_case)]
pub fn F_finite_rank(desc: &SpaceDescriptor, t: f64) -> Result<f64> {
    check_t(t)?;
    desc.check_type_iv()?;
    let r = desc.rank;
    let s2 = GaussParam::t_over_r(t, r)?.sigma2();
    let p = rho(desc);
    let rr = dual_inner(desc, &p, &p)?;
    let sum: f64 = rho_pairings(desc).into_iter().map(|(_, x)| log_sch(s2 * x)).sum();
    Ok((s2 * rr + sum) / (r * r) as f64)
}

/// e₂(t) = 3/4 - (1/2)·log(t/4).
pub fn e2_cone(t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(0.75 - 0.5 * (t / 4.0).ln())
}

/// e₂(t) = 3/2 - log(t/2).
pub fn e2_domain(t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(1.5 - (t / 2.0).ln())
}

/// E₂(t) = e₂(t) - F(t), the β = 2 equilibrium energy at `c = 4`.
#[allow(non_snake_case)]
pub fn E2_equilibrium(kind: EnergyKind, t: f64) -> Result<f64> {
    match kind {
        EnergyKind::Cone => Ok(e2_cone(t)? - F_limit(LimitFamily::A, t)?),
        EnergyKind::Domain => Ok(e2_domain(t)? - F_limit(LimitFamily::C, t)?),
    }
}

/// lim (1/r²) log z_𝔞 = -(β/2)·E₂(βt/2).
pub fn beta_scaled_limit(kind: EnergyKind, beta: f64, t: f64) -> Result<f64> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain(format!("beta must be positive, got {beta}")));
    }
    check_t(t)?;
    Ok(-(beta / 2.0) * E2_equilibrium(kind, beta * t / 2.0)?)
}

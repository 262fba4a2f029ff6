//! Classical restricted root systems and the symmetric spaces built on them.
//!
//! Coordinates follow the usual conventions: `a = (a_1, ..., a_n)` with the
//! metric `‖a‖² = c·Σ a_i²`. The A family lives on the hyperplane `Σ a_i = 0`
//! of an `(r+1)`-dimensional ambient space; every other family uses `r`
//! coordinates.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootFamily {
    A,
    B,
    C,
    D,
    BC,
}

impl RootFamily {
    pub const ALL: [RootFamily; 5] = [RootFamily::A, RootFamily::B, RootFamily::C, RootFamily::D, RootFamily::BC];

    pub fn min_rank(self) -> usize {
        match self {
            RootFamily::D => 2,
            _ => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RootFamily::A => "A",
            RootFamily::B => "B",
            RootFamily::C => "C",
            RootFamily::D => "D",
            RootFamily::BC => "BC",
        }
    }
}

impl fmt::Display for RootFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RootFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(RootFamily::A),
            "B" => Ok(RootFamily::B),
            "C" => Ok(RootFamily::C),
            "D" => Ok(RootFamily::D),
            "BC" => Ok(RootFamily::BC),
            other => Err(Error::Domain(format!("unknown root family '{other}'"))),
        }
    }
}

/// A row of the classification table, with whatever extra parameter the row
/// needs beyond the rank (`q` for the `p ≤ q` families, parity of `n` for SO*(2n)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableRow {
    SlReal,
    SlComplex,
    SlQuaternion,
    SoPq { q: usize },
    SoOddComplex,
    SoEvenComplex,
    SpReal,
    SpComplex,
    SuPq { q: usize },
    SpPq { q: usize },
    SoStar { odd: bool },
}

/// How the multiplicities of a descriptor are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicities {
    Row(TableRow),
    Explicit { alpha: u32, beta: u32, gamma: u32 },
}

/// Restricted-root data of one symmetric space (or of a hypothetical one,
/// when built from explicit multiplicities).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub family: RootFamily,
    pub rank: usize,
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub metric_c: f64,
    pub ambient_dim: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub coeffs: Vec<i32>,
    pub multiplicity: u32,
}

/// A linear functional on 𝔞, in ambient coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualVector {
    pub coeffs: Vec<f64>,
}

impl DualVector {
    pub fn new(coeffs: Vec<f64>) -> Self {
        DualVector { coeffs }
    }

    pub fn scaled(&self, s: f64) -> DualVector {
        DualVector { coeffs: self.coeffs.iter().map(|x| x * s).collect() }
    }

    /// Value of the functional at `a`.
    pub fn eval(&self, a: &[f64]) -> f64 {
        self.coeffs.iter().zip(a).map(|(x, y)| x * y).sum()
    }
}

impl Root {
    pub fn eval(&self, a: &[f64]) -> f64 {
        self.coeffs.iter().zip(a).map(|(&c, y)| c as f64 * y).sum()
    }

    pub fn as_dual(&self) -> DualVector {
        DualVector { coeffs: self.coeffs.iter().map(|&c| c as f64).collect() }
    }
}

impl SpaceDescriptor {
    /// Real dimension of the symmetric space: rank plus the sum of multiplicities.
    pub fn dimension(&self) -> usize {
        let r = self.rank;
        let pairs = r * (r - 1) / 2;
        let (a, b, g) = (self.alpha as usize, self.beta as usize, self.gamma as usize);
        match self.family {
            RootFamily::A => r + b * r * (r + 1) / 2,
            RootFamily::B => r + 2 * b * pairs + a * r,
            RootFamily::C => r + 2 * b * pairs + g * r,
            RootFamily::D => r + 2 * b * pairs,
            RootFamily::BC => r + 2 * b * pairs + (a + g) * r,
        }
    }

    /// All non-zero multiplicities equal 2 and the metric is the normalized one.
    pub fn is_type_iv(&self) -> bool {
        let ok = |m: u32| m == 0 || m == 2;
        self.family != RootFamily::BC
            && self.beta == 2
            && ok(self.alpha)
            && ok(self.gamma)
            && (self.family != RootFamily::C || self.gamma == 2)
            && (self.family != RootFamily::B || self.alpha == 2)
            && self.metric_c == 4.0
    }

    /// The complex (type IV) space of the given reduced family, with `metric_c = 4`.
    pub fn type_iv(family: RootFamily, rank: usize) -> Result<SpaceDescriptor> {
        let row = match family {
            RootFamily::A => TableRow::SlComplex,
            RootFamily::B => TableRow::SoOddComplex,
            RootFamily::C => TableRow::SpComplex,
            RootFamily::D => TableRow::SoEvenComplex,
            RootFamily::BC => return Err(Error::NotTypeIv("BC".into())),
        };
        build_space(family, rank, Multiplicities::Row(row), 4.0)
    }

    pub(crate) fn check_type_iv(&self) -> Result<()> {
        if self.is_type_iv() {
            Ok(())
        } else {
            Err(Error::NotTypeIv(self.label.clone()))
        }
    }
}

struct RowData {
    family: RootFamily,
    alpha: u32,
    beta: u32,
    gamma: u32,
    label: String,
}

fn row_data(row: TableRow, r: usize) -> Result<RowData> {
    let n = r + 1;
    let need_q = |q: usize| -> Result<()> {
        if q < r {
            Err(Error::Multiplicity { family: "table".into(), reason: format!("row needs q ≥ p = {r}, got q = {q}") })
        } else {
            Ok(())
        }
    };
    let d = |family, alpha, beta, gamma, label: String| RowData { family, alpha, beta, gamma, label };
    Ok(match row {
        TableRow::SlReal => d(RootFamily::A, 0, 1, 0, format!("SL({n},R)/SO({n})")),
        TableRow::SlComplex => d(RootFamily::A, 0, 2, 0, format!("SL({n},C)/SU({n})")),
        TableRow::SlQuaternion => d(RootFamily::A, 0, 4, 0, format!("SL({n},H)/Sp({n})")),
        TableRow::SoPq { q } => {
            need_q(q)?;
            let fam = if q == r { RootFamily::D } else { RootFamily::B };
            d(fam, (q - r) as u32, 1, 0, format!("SO0({r},{q})/SO({r})xSO({q})"))
        }
        TableRow::SoOddComplex => d(RootFamily::B, 2, 2, 0, format!("SO({},C)/SO({})", 2 * r + 1, 2 * r + 1)),
        TableRow::SoEvenComplex => d(RootFamily::D, 0, 2, 0, format!("SO({},C)/SO({})", 2 * r, 2 * r)),
        TableRow::SpReal => d(RootFamily::C, 0, 1, 1, format!("Sp({r},R)/U({r})")),
        TableRow::SpComplex => d(RootFamily::C, 0, 2, 2, format!("Sp({r},C)/Sp({r})")),
        TableRow::SuPq { q } => {
            need_q(q)?;
            let fam = if q == r { RootFamily::C } else { RootFamily::BC };
            d(fam, 2 * (q - r) as u32, 2, 1, format!("SU({r},{q})/S(U({r})xU({q}))"))
        }
        TableRow::SpPq { q } => {
            need_q(q)?;
            let fam = if q == r { RootFamily::C } else { RootFamily::BC };
            d(fam, 4 * (q - r) as u32, 4, 3, format!("Sp({r},{q})/Sp({r})xSp({q})"))
        }
        TableRow::SoStar { odd } => {
            let m = 2 * r + usize::from(odd);
            let fam = if odd { RootFamily::BC } else { RootFamily::C };
            d(fam, if odd { 4 } else { 0 }, 4, 1, format!("SO*({})/U({m})", 2 * m))
        }
    })
}

impl TableRow {
    /// The table's dimension formula, evaluated at rank `r`.
    pub fn table_dimension(self, r: usize) -> usize {
        let n = r + 1;
        match self {
            TableRow::SlReal => (n - 1) * (n + 2) / 2,
            TableRow::SlComplex => (n - 1) * (n + 1),
            TableRow::SlQuaternion => (n - 1) * (2 * n + 1),
            TableRow::SoPq { q } => r * q,
            TableRow::SoOddComplex => r * (2 * r + 1),
            TableRow::SoEvenComplex => r * (2 * r - 1),
            TableRow::SpReal => r * (r + 1),
            TableRow::SpComplex => r * (2 * r + 1),
            TableRow::SuPq { q } => 2 * r * q,
            TableRow::SpPq { q } => 4 * r * q,
            TableRow::SoStar { odd } => {
                let m = 2 * r + usize::from(odd);
                m * (m - 1)
            }
        }
    }

    /// Family this row produces at rank `r`.
    pub fn family(self, r: usize) -> Result<RootFamily> {
        row_data(self, r).map(|d| d.family)
    }
}

fn validate_explicit(family: RootFamily, alpha: u32, beta: u32, gamma: u32) -> Result<RootFamily> {
    let bad = |reason: &str| Err(Error::Multiplicity { family: family.to_string(), reason: reason.into() });
    if beta == 0 {
        return bad("beta must be positive");
    }
    match family {
        RootFamily::A | RootFamily::D if alpha != 0 || gamma != 0 => bad("alpha and gamma must vanish"),
        RootFamily::B if alpha == 0 => bad("alpha = 0 is the D family"),
        RootFamily::B if gamma != 0 => bad("gamma must vanish (use BC)"),
        RootFamily::C if gamma == 0 => bad("gamma = 0 is the D family"),
        RootFamily::C if alpha != 0 => bad("alpha must vanish (use BC)"),
        RootFamily::BC if gamma == 0 => bad("gamma = 0 is the B family"),
        RootFamily::BC if alpha == 0 => Ok(RootFamily::C),
        f => Ok(f),
    }
}

/// Build a descriptor from a table row or from raw multiplicities.
///
/// A BC request with `alpha = 0` degenerates to the C family.
pub fn build_space(family: RootFamily, rank: usize, mult: Multiplicities, metric_c: f64) -> Result<SpaceDescriptor> {
    if !(metric_c > 0.0 && metric_c.is_finite()) {
        return Err(Error::Domain(format!("metric_c must be positive, got {metric_c}")));
    }
    let (fam, alpha, beta, gamma, label) = match mult {
        Multiplicities::Row(row) => {
            let d = row_data(row, rank)?;
            let compatible = d.family == family
                || (family == RootFamily::BC && d.family == RootFamily::C)
                || (family == RootFamily::B && d.family == RootFamily::D && d.alpha == 0);
            if !compatible {
                return Err(Error::Multiplicity {
                    family: family.to_string(),
                    reason: format!("row {row:?} at rank {rank} is of family {}", d.family),
                });
            }
            (d.family, d.alpha, d.beta, d.gamma, d.label)
        }
        Multiplicities::Explicit { alpha, beta, gamma } => {
            let fam = validate_explicit(family, alpha, beta, gamma)?;
            (fam, alpha, beta, gamma, format!("{fam}{rank}(alpha={alpha},beta={beta},gamma={gamma})"))
        }
    };
    if rank < fam.min_rank() {
        return Err(Error::RankTooSmall { family: fam.to_string(), rank, min: fam.min_rank() });
    }
    let ambient_dim = if fam == RootFamily::A { rank + 1 } else { rank };
    Ok(SpaceDescriptor { family: fam, rank, alpha, beta, gamma, metric_c, ambient_dim, label })
}

/// Sparse description of a positive root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootShape {
    /// e_i - e_j
    Diff(usize, usize),
    /// e_i + e_j
    Sum(usize, usize),
    /// e_i
    Single(usize),
    /// 2 e_i
    Double(usize),
}

impl RootShape {
    /// λ(a) for ambient coordinates `a`.
    pub fn eval(self, a: &[f64]) -> f64 {
        match self {
            RootShape::Diff(i, j) => a[i] - a[j],
            RootShape::Sum(i, j) => a[i] + a[j],
            RootShape::Single(i) => a[i],
            RootShape::Double(i) => 2.0 * a[i],
        }
    }

    fn eval_int(self, v: &[i64]) -> i64 {
        match self {
            RootShape::Diff(i, j) => v[i] - v[j],
            RootShape::Sum(i, j) => v[i] + v[j],
            RootShape::Single(i) => v[i],
            RootShape::Double(i) => 2 * v[i],
        }
    }

    pub fn coeffs(self, n: usize) -> Vec<i32> {
        let mut c = vec![0; n];
        match self {
            RootShape::Diff(i, j) => {
                c[i] = 1;
                c[j] = -1;
            }
            RootShape::Sum(i, j) => {
                c[i] = 1;
                c[j] = 1;
            }
            RootShape::Single(i) => c[i] = 1,
            RootShape::Double(i) => c[i] = 2,
        }
        c
    }
}

/// Positive roots as (shape, multiplicity), in the order of [`positive_roots`].
pub fn root_shapes(desc: &SpaceDescriptor) -> Vec<(RootShape, u32)> {
    let n = desc.ambient_dim;
    let mut out = Vec::new();
    if desc.family == RootFamily::A {
        for (i, j) in (0..n).tuple_combinations() {
            out.push((RootShape::Diff(i, j), desc.beta));
        }
        return out;
    }
    for (i, j) in (0..n).tuple_combinations() {
        out.push((RootShape::Diff(i, j), desc.beta));
        out.push((RootShape::Sum(i, j), desc.beta));
    }
    if desc.alpha > 0 {
        out.extend((0..n).map(|i| (RootShape::Single(i), desc.alpha)));
    }
    if desc.gamma > 0 {
        out.extend((0..n).map(|i| (RootShape::Double(i), desc.gamma)));
    }
    out
}

/// The positive restricted roots with their multiplicities. Roots of
/// multiplicity zero are omitted.
pub fn positive_roots(desc: &SpaceDescriptor) -> Vec<Root> {
    root_shapes(desc)
        .into_iter()
        .map(|(s, m)| Root { coeffs: s.coeffs(desc.ambient_dim), multiplicity: m })
        .collect()
}

/// 2ρ = Σ m_λ λ, in exact integer arithmetic.
pub fn rho_doubled(desc: &SpaceDescriptor) -> Vec<i64> {
    let n = desc.ambient_dim;
    let (r, a, b, g) = (n as i64, desc.alpha as i64, desc.beta as i64, desc.gamma as i64);
    (0..n as i64)
        .map(|i| match desc.family {
            // Σ_{i<j} (e_i - e_j): coefficient (n-1-i) - i
            RootFamily::A => b * (r - 1 - 2 * i),
            // e_i ± e_j for j > i contribute 2 each to e_i
            _ => 2 * b * (r - 1 - i) + a + 2 * g,
        })
        .collect()
}

/// ρ = ½ Σ m_λ λ.
pub fn rho(desc: &SpaceDescriptor) -> DualVector {
    DualVector { coeffs: rho_doubled(desc).into_iter().map(|x| x as f64 / 2.0).collect() }
}

fn as_half_integers(v: &[f64]) -> Option<Vec<i128>> {
    v.iter()
        .map(|&x| {
            let d = 2.0 * x;
            (d.fract() == 0.0 && d.abs() < 9.0e15).then_some(d as i128)
        })
        .collect()
}

/// Inner product on 𝔞* induced by the metric: `(u, v) = (u·v)/c`, after
/// projecting A-family vectors onto the trace-zero hyperplane.
///
/// Half-integer inputs (all roots, ρ, and their integer combinations) are
/// paired in exact integer arithmetic.
pub fn dual_inner(desc: &SpaceDescriptor, u: &DualVector, v: &DualVector) -> Result<f64> {
    let n = desc.ambient_dim;
    for w in [u, v] {
        if w.coeffs.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: w.coeffs.len() });
        }
    }
    let c = desc.metric_c;
    let is_a = desc.family == RootFamily::A;
    if let (Some(ui), Some(vi)) = (as_half_integers(&u.coeffs), as_half_integers(&v.coeffs)) {
        let dot: i128 = ui.iter().zip(&vi).map(|(x, y)| x * y).sum();
        return Ok(if is_a {
            let su: i128 = ui.iter().sum();
            let sv: i128 = vi.iter().sum();
            let num = n as i128 * dot - su * sv;
            num as f64 / (4.0 * n as f64 * c)
        } else {
            dot as f64 / (4.0 * c)
        });
    }
    let (mu, mv) = if is_a {
        (u.coeffs.iter().sum::<f64>() / n as f64, v.coeffs.iter().sum::<f64>() / n as f64)
    } else {
        (0.0, 0.0)
    };
    Ok(u.coeffs.iter().zip(&v.coeffs).map(|(x, y)| (x - mu) * (y - mv)).sum::<f64>() / c)
}

/// `(λ, ρ)` for every positive root, with its multiplicity, in root order.
/// Exact up to the final division by `2c`.
pub fn rho_pairings(desc: &SpaceDescriptor) -> Vec<(u32, f64)> {
    let r2 = rho_doubled(desc);
    let c2 = 2.0 * desc.metric_c;
    // A-family roots have zero trace, so no projection is needed
    root_shapes(desc).into_iter().map(|(s, m)| (m, s.eval_int(&r2) as f64 / c2)).collect()
}

/// `(λ, v)` for every positive root, with its multiplicity, in root order.
pub fn pairings(desc: &SpaceDescriptor, v: &DualVector) -> Result<Vec<(u32, f64)>> {
    if v.coeffs.len() != desc.ambient_dim {
        return Err(Error::DimensionMismatch { expected: desc.ambient_dim, got: v.coeffs.len() });
    }
    let c = desc.metric_c;
    Ok(root_shapes(desc).into_iter().map(|(s, m)| (m, s.eval(&v.coeffs) / c)).collect())
}

/// Degrees of the basic invariants of the Weyl group.
pub fn degrees(desc: &SpaceDescriptor) -> Result<Vec<u64>> {
    let r = desc.rank as u64;
    match desc.family {
        RootFamily::A => Ok((2..=r + 1).collect()),
        RootFamily::B | RootFamily::C => Ok((1..=r).map(|j| 2 * j).collect()),
        RootFamily::D => {
            let mut d: Vec<u64> = (1..r).map(|j| 2 * j).collect();
            d.push(r);
            Ok(d)
        }
        RootFamily::BC => Err(Error::NonReduced),
    }
}

/// |W| as the product of the degrees.
pub fn weyl_order(desc: &SpaceDescriptor) -> Result<u128> {
    degrees(desc)?
        .into_iter()
        .try_fold(1u128, |acc, d| acc.checked_mul(d as u128))
        .ok_or_else(|| Error::Domain(format!("|W| overflows at rank {}", desc.rank)))
}

/// log |W|, usable at any rank.
pub fn log_weyl_order(desc: &SpaceDescriptor) -> Result<f64> {
    Ok(degrees(desc)?.into_iter().map(|d| (d as f64).ln()).sum())
}

/// An element of the Weyl group acting on coordinates by `(w·a)_i = signs[i]·a[perm[i]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
    pub det: i8,
}

impl WeylElement {
    pub fn apply(&self, a: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; a.len()];
        self.apply_into(a, &mut out);
        out
    }

    pub fn apply_into(&self, a: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.signs[i] as f64 * a[self.perm[i]];
        }
    }
}

fn parity(perm: &[usize]) -> i8 {
    let mut inv = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

pub const DEFAULT_WEYL_CAP: usize = 6;

/// Enumerate the Weyl group: permutations (A), signed permutations (B, C, BC)
/// or evenly signed permutations (D).
pub fn enumerate_weyl(desc: &SpaceDescriptor, rank_cap: usize) -> Result<Vec<WeylElement>> {
    if desc.rank > rank_cap {
        return Err(Error::RankCap { what: "Weyl enumeration", rank: desc.rank, cap: rank_cap });
    }
    let n = desc.ambient_dim;
    let mut out = Vec::new();
    for perm in (0..n).permutations(n) {
        let p = parity(&perm);
        if desc.family == RootFamily::A {
            out.push(WeylElement { perm, signs: vec![1; n], det: p });
            continue;
        }
        for mask in 0u32..(1 << n) {
            let flips = mask.count_ones();
            if desc.family == RootFamily::D && flips % 2 == 1 {
                continue;
            }
            let signs: Vec<i8> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            let det = if flips % 2 == 1 { -p } else { p };
            out.push(WeylElement { perm: perm.clone(), signs, det });
        }
    }
    Ok(out)
}

type WeylKey = (RootFamily, usize);

fn weyl_cache() -> &'static RwLock<HashMap<WeylKey, Arc<Vec<WeylElement>>>> {
    static CACHE: OnceLock<RwLock<HashMap<WeylKey, Arc<Vec<WeylElement>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Cached [`enumerate_weyl`] at the default cap.
pub fn weyl_group(desc: &SpaceDescriptor) -> Result<Arc<Vec<WeylElement>>> {
    let fam = match desc.family {
        RootFamily::BC | RootFamily::C => RootFamily::B,
        f => f,
    };
    let key = (fam, desc.rank);
    if let Some(g) = weyl_cache().read().expect("weyl cache poisoned").get(&key) {
        return Ok(Arc::clone(g));
    }
    let g = Arc::new(enumerate_weyl(desc, DEFAULT_WEYL_CAP)?);
    weyl_cache().write().expect("weyl cache poisoned").entry(key).or_insert_with(|| Arc::clone(&g));
    Ok(g)
}

/// One line of the classification table, in the table's own notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub label: String,
    pub family: String,
    pub rank_formula: String,
    pub dim_formula: String,
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
    pub remark: String,
}

const CATALOG: [(&str, &str, &str, &str, &str, &str, &str, &str); 11] = [
    ("SL(r,R)/SO(r)", "A", "r-1", "(r-1)(r+2)/2", "0", "1", "0", ""),
    ("SL(r,C)/SU(r)", "A", "r-1", "(r-1)(r+1)", "0", "2", "0", "complex case"),
    ("SL(r,H)/Sp(r)", "A", "r-1", "(r-1)(2r+1)", "0", "4", "0", ""),
    ("SO0(p,q)/SO(p)xSO(q)", "B or D", "p", "pq", "q-p", "1", "0", "p <= q"),
    ("SO(2r+1,C)/SO(2r+1)", "B", "r", "r(2r+1)", "2", "2", "0", "complex case"),
    ("SO(2r,C)/SO(2r)", "D", "r", "r(2r-1)", "0", "2", "0", "complex case"),
    ("Sp(r,R)/U(r)", "C", "r", "r(r+1)", "0", "1", "1", ""),
    ("Sp(r,C)/Sp(r)", "C", "r", "r(2r+1)", "0", "2", "2", "complex case"),
    ("SU(p,q)/S(U(p)xU(q))", "BC or C", "p", "2pq", "2(q-p)", "2", "1", "p <= q"),
    ("Sp(p,q)/Sp(p)xSp(q)", "BC or C", "p", "4pq", "4(q-p)", "4", "3", "p <= q"),
    ("SO*(2n)/U(n)", "BC or C", "floor(n/2)", "n(n-1)", "4 or 0", "4", "1", "alpha = 4 if n is odd"),
];

/// The eleven rows of the classification table, in table order.
pub fn catalog() -> Vec<CatalogEntry> {
    CATALOG
        .iter()
        .map(|&(label, family, rank_formula, dim_formula, alpha, beta, gamma, remark)| CatalogEntry {
            label: label.into(),
            family: family.into(),
            rank_formula: rank_formula.into(),
            dim_formula: dim_formula.into(),
            alpha: alpha.into(),
            beta: beta.into(),
            gamma: gamma.into(),
            remark: remark.into(),
        })
        .collect()
}

impl CatalogEntry {
    pub fn is_complex(&self) -> bool {
        self.remark == "complex case"
    }
}

/// Row selectors matching [`catalog`] order; rows with a `q` use `q = p + extra`.
pub fn catalog_rows(extra: usize, odd: bool) -> [TableRow; 11] {
    [
        TableRow::SlReal,
        TableRow::SlComplex,
        TableRow::SlQuaternion,
        TableRow::SoPq { q: extra },
        TableRow::SoOddComplex,
        TableRow::SoEvenComplex,
        TableRow::SpReal,
        TableRow::SpComplex,
        TableRow::SuPq { q: extra },
        TableRow::SpPq { q: extra },
        TableRow::SoStar { odd },
    ]
}

//! Scalar special functions in 64-bit floating point.
//!
//! Everything here is pure and reentrant. The crossovers for the hyperbolic
//! helpers are fixed at |x| = 1e-2 (Taylor) and |x| = 20 (asymptotic).

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};

/// ζ(2) = π²/6.
pub const ZETA2: f64 = PI * PI / 6.0;
/// Apéry's constant ζ(3).
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

const TAYLOR_CUT: f64 = 1e-2;
const ASYMPTOTIC_CUT: f64 = 20.0;

/// Bernoulli numbers B_2, B_4, ..., B_24.
pub(crate) const BERNOULLI_EVEN: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// log|sinh x|. Returns `-inf` at x = 0, which upstream code treats as a
/// coincident-particle sentinel.
pub fn log_sinh_abs(x: f64) -> f64 {
    let ax = x.abs();
    if ax == 0.0 {
        f64::NEG_INFINITY
    } else if ax >= ASYMPTOTIC_CUT {
        ax - LN_2 + (-(-2.0 * ax).exp()).ln_1p()
    } else {
        ax.sinh().ln()
    }
}

/// log(sinh(x)/x), extended by 0 at the origin. Even in x.
pub fn log_sch(x: f64) -> f64 {
    let ax = x.abs();
    if ax < TAYLOR_CUT {
        let x2 = ax * ax;
        x2 * (1.0 / 6.0 + x2 * (-1.0 / 180.0 + x2 / 2835.0))
    } else if ax < 1.0 {
        // sinh(x)/x - 1 summed directly keeps full relative precision
        let x2 = ax * ax;
        let mut term = 1.0;
        let mut q = 0.0;
        for k in 1..20 {
            term *= x2 / ((2 * k) * (2 * k + 1)) as f64;
            q += term;
            if term < 1e-17 * q {
                break;
            }
        }
        q.ln_1p()
    } else {
        log_sinh_abs(ax) - ax.ln()
    }
}

/// coth x for x != 0, via 1 + 2/(e^{2|x|} - 1) and oddness.
pub fn coth(x: f64) -> f64 {
    let v = 1.0 + 2.0 / (2.0 * x.abs()).exp_m1();
    if x < 0.0 {
        -v
    } else {
        v
    }
}

/// 1/sinh²x for x != 0, written to avoid overflow for large |x|.
pub fn csch_sq(x: f64) -> f64 {
    let ax = x.abs();
    let e = (-2.0 * ax).exp();
    let d = -(-2.0 * ax).exp_m1();
    4.0 * e / (d * d)
}

fn li2_series(x: f64) -> f64 {
    // x in [0, 1/2]
    let mut sum = 0.0;
    let mut p = 1.0;
    for k in 1..200 {
        p *= x;
        let term = p / (k * k) as f64;
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

/// Real dilogarithm Li₂(x) = Σ x^k/k² on [-1, 1].
pub fn dilog(x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("dilog argument {x} outside [-1, 1]")));
    }
    Ok(if x == 1.0 {
        ZETA2
    } else if x > 0.5 {
        ZETA2 - x.ln() * (1.0 - x).ln() - li2_series(1.0 - x)
    } else if x >= 0.0 {
        li2_series(x)
    } else {
        // Landen: maps [-1, 0) onto (0, 1/2]
        let l = (-x).ln_1p();
        -li2_series(x / (x - 1.0)) - 0.5 * l * l
    })
}

/// ζ(-n) for n ≥ 0, from the Bernoulli table.
fn zeta_nonpos(n: usize) -> f64 {
    if n == 0 {
        -0.5
    } else if n % 2 == 0 {
        0.0
    } else {
        -BERNOULLI_EVEN[(n + 1) / 2 - 1] / (n + 1) as f64
    }
}

/// Li₂(e^{-b}) for b ≥ 0, accurate as b → 0 where e^{-b} → 1.
pub fn li2_exp_neg(b: f64) -> f64 {
    debug_assert!(b >= 0.0);
    if b == 0.0 {
        return ZETA2;
    }
    if b >= LN_2 {
        li2_series((-b).exp())
    } else {
        let y = -(-b).exp_m1();
        ZETA2 + b * y.ln() - li2_series(y)
    }
}

/// Li₃(e^{-b}) for b ≥ 0.
pub fn li3_exp_neg(b: f64) -> f64 {
    debug_assert!(b >= 0.0);
    if b == 0.0 {
        return ZETA3;
    }
    if b >= 1.0 {
        let x = (-b).exp();
        let mut sum = 0.0;
        let mut p = 1.0;
        for k in 1..400 {
            p *= x;
            let kf = k as f64;
            let term = p / (kf * kf * kf);
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
        }
        sum
    } else {
        // expansion in mu = -b around mu = 0
        let mu = -b;
        let mut sum = ZETA3 + ZETA2 * mu + (1.5 - b.ln()) * mu * mu / 2.0;
        let mut p = mu * mu / 2.0;
        for k in 3..24usize {
            p *= mu / k as f64;
            sum += zeta_nonpos(k - 3) * p;
        }
        sum
    }
}

/// ∫₀ᵃ log(1 - e^{-2tx}) dx = (Li₂(e^{-2ta}) - π²/6)/(2t).
pub fn int_log1mexp(t: f64, a: f64) -> Result<f64> {
    if !(t > 0.0 && a > 0.0) || !t.is_finite() || !a.is_finite() {
        return Err(Error::Domain(format!("int_log1mexp needs t > 0, a > 0 (t={t}, a={a})")));
    }
    Ok((li2_exp_neg(2.0 * t * a) - ZETA2) / (2.0 * t))
}

/// ∫₀ᵃ x·log(1 - e^{-2tx}) dx = (b·Li₂(e^{-b}) + Li₃(e^{-b}) - ζ(3))/(4t²), b = 2ta.
pub fn int_x_log1mexp(t: f64, a: f64) -> Result<f64> {
    if !(t > 0.0 && a > 0.0) || !t.is_finite() || !a.is_finite() {
        return Err(Error::Domain(format!("int_x_log1mexp needs t > 0, a > 0 (t={t}, a={a})")));
    }
    let b = 2.0 * t * a;
    Ok((b * li2_exp_neg(b) + li3_exp_neg(b) - ZETA3) / (4.0 * t * t))
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// log Γ(x) for x > 0 (Lanczos, g = 7).
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma needs a positive finite argument, got {x}")));
    }
    if x < 0.5 {
        return Ok(lanczos(x + 1.0) - x.ln());
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + a.ln()
}

/// Closed integration interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo <= hi) {
            return Err(Error::Domain(format!("interval [{lo}, {hi}] has lo > hi")));
        }
        Ok(Interval { lo, hi })
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Value and error estimate of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOutcome {
    pub value: f64,
    pub error: f64,
}

const DEFAULT_MAX_PIECES: usize = 4000;

/// Globally adaptive Gauss-Kronrod (7/15) integration over `[lo, hi]` to absolute `tol`.
pub fn adaptive_quad<F: Fn(f64) -> f64>(f: F, iv: Interval, tol: f64) -> Result<f64> {
    adaptive_quad_breaks(f, &[iv.lo, iv.hi], tol, DEFAULT_MAX_PIECES).map(|o| o.value)
}

/// Adaptive integration over consecutive breakpoints `pts` (sorted). Kinks of
/// the integrand should be listed so no panel straddles them.
pub fn adaptive_quad_breaks<F: Fn(f64) -> f64>(
    f: F,
    pts: &[f64],
    tol: f64,
    max_pieces: usize,
) -> Result<QuadOutcome> {
    if pts.len() < 2 {
        return Err(Error::Domain("need at least two breakpoints".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    for w in pts.windows(2) {
        if !(w[0] <= w[1]) {
            return Err(Error::Domain("breakpoints must be sorted".into()));
        }
        if w[0] == w[1] {
            continue;
        }
        let (v, e) = gk15(&f, w[0], w[1]);
        total += v;
        total_err += e;
        heap.push(Piece { a: w[0], b: w[1], value: v, err: e });
    }
    while total_err > tol {
        if heap.len() >= max_pieces {
            return Err(Error::QuadNonConvergence { estimate: total, error_estimate: total_err });
        }
        let Some(p) = heap.pop() else { break };
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            return Err(Error::QuadNonConvergence { estimate: total, error_estimate: total_err });
        }
        let (v1, e1) = gk15(&f, p.a, m);
        let (v2, e2) = gk15(&f, m, p.b);
        total += v1 + v2 - p.value;
        total_err += e1 + e2 - p.err;
        heap.push(Piece { a: p.a, b: m, value: v1, err: e1 });
        heap.push(Piece { a: m, b: p.b, value: v2, err: e2 });
    }
    // re-sum to shed the drift of the running totals
    let (mut value, mut error) = (0.0, 0.0);
    for p in heap.iter() {
        value += p.value;
        error += p.err;
    }
    if !value.is_finite() {
        return Err(Error::QuadNonConvergence { estimate: value, error_estimate: f64::INFINITY });
    }
    Ok(QuadOutcome { value, error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sinh_and_sch_values() {
        assert_relative_eq!(log_sinh_abs(1.0), 0.161_439_361_571_195_63, epsilon = 1e-15);
        assert_eq!(log_sinh_abs(-1.0), log_sinh_abs(1.0));
        assert!((log_sinh_abs(50.0) - (50.0 - LN_2)).abs() < 1e-15);
        assert_eq!(log_sinh_abs(0.0), f64::NEG_INFINITY);
        assert!(log_sinh_abs(1e6).is_finite());
        assert_eq!(log_sch(0.0), 0.0);
        assert_eq!(log_sch(-2.0), log_sch(2.0));
        assert_relative_eq!(log_sch(0.005), 4.166_663_194_449_955_9e-6, max_relative = 1e-14);
    }

    #[test]
    fn crossover_boundaries_agree() {
        for &x in &[TAYLOR_CUT, 1.0, ASYMPTOTIC_CUT] {
            let below = x * (1.0 - 1e-12);
            let rel = (log_sch(below) - log_sch(x)).abs() / log_sch(x);
            assert!(rel < 1e-11, "log_sch jump {rel:e} at {x}");
            let slope = (x - below) * coth(x);
            assert!((log_sinh_abs(x) - log_sinh_abs(below) - slope).abs() < 1e-13);
        }
        for &x in &[0.01, 0.5, 3.0, 30.0] {
            let direct = log_sinh_abs(x) - f64::ln(x);
            assert!((log_sch(x) - direct).abs() < 1e-13);
        }
    }

    #[test]
    fn dilog_values() {
        assert_eq!(dilog(0.0).unwrap(), 0.0);
        assert_eq!(dilog(1.0).unwrap(), ZETA2);
        assert_relative_eq!(dilog(0.5).unwrap(), 0.582_240_526_465_012_51, epsilon = 1e-15);
        assert_relative_eq!(dilog(-0.5).unwrap(), -0.448_414_206_923_646_2, epsilon = 1e-15);
        assert_relative_eq!(dilog(0.9).unwrap(), 1.299_714_723_004_958_8, epsilon = 1e-14);
        assert_relative_eq!(dilog(-1.0).unwrap(), -0.822_467_033_424_113_2, epsilon = 1e-15);
        assert!(dilog(1.5).is_err());
    }

    #[test]
    fn polylog_exp_neg_values() {
        let cases = [
            (0.01, 1.588_857_378_877_227_5, 1.185_912_904_299_022_5),
            (0.3, 0.961_617_056_972_413_8, 0.832_477_342_730_843),
            (0.7, 0.577_513_887_834_417_2, 0.533_239_426_445_401_5),
            (1.5, 0.236_992_412_275_942_37, 0.229_808_809_060_144),
            (5.0, 0.006_749_331_100_053_042, 0.006_743_633_352_338_416),
        ];
        for (b, l2, l3) in cases {
            assert_relative_eq!(li2_exp_neg(b), l2, max_relative = 1e-14);
            assert_relative_eq!(li3_exp_neg(b), l3, max_relative = 1e-14);
        }
    }

    #[test]
    fn int_log1mexp_values() {
        assert_relative_eq!(int_log1mexp(1.0, 1.0).unwrap(), -0.752_360_742_478_669_1, epsilon = 1e-14);
        let far = int_log1mexp(1.0, 30.0).unwrap();
        assert!((far + PI * PI / 12.0).abs() < 1e-12);
        let scaled = int_log1mexp(2.0, 0.5).unwrap();
        assert_relative_eq!(scaled, (dilog((-2.0f64).exp()).unwrap() - ZETA2) / 4.0, epsilon = 1e-15);
        assert!(int_log1mexp(0.0, 1.0).is_err());
        assert!(int_log1mexp(1.0, -1.0).is_err());
    }

    #[test]
    fn log_gamma_values() {
        assert!((log_gamma(3.0).unwrap() - LN_2).abs() < 1e-15);
        assert!(log_gamma(1.0).unwrap().abs() < 1e-15);
        assert_relative_eq!(log_gamma(7.5).unwrap(), 7.534_364_236_758_733, max_relative = 1e-14);
        assert_relative_eq!(log_gamma(0.5).unwrap(), 0.572_364_942_924_700_1, max_relative = 1e-14);
        assert_relative_eq!(log_gamma(100.3).unwrap(), 360.514_705_729_058_13, max_relative = 1e-14);
        assert_relative_eq!(log_gamma(10000.5).unwrap(), 82_104.322_654_128_37, max_relative = 1e-14);
        assert!(log_gamma(0.0).is_err());
    }

    #[test]
    fn quadrature_basics() {
        let one = adaptive_quad(|_| 1.0, Interval::new(0.0, 1.0).unwrap(), 1e-12).unwrap();
        assert!((one - 1.0).abs() < 1e-14);
        let sq = adaptive_quad(|x| x * x, Interval::new(-0.5, 0.5).unwrap(), 1e-12).unwrap();
        assert!((sq - 1.0 / 12.0).abs() < 1e-14);
        let lg = adaptive_quad(|x| (-(-2.0 * x).exp()).ln_1p(), Interval::new(0.0, 1.0).unwrap(), 1e-10).unwrap();
        assert!((lg - int_log1mexp(1.0, 1.0).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn quadrature_reports_best_estimate_on_failure() {
        let r = adaptive_quad_breaks(|x: f64| x.sin() * 1e3, &[0.0, 100.0], 1e-14, 3);
        match r {
            Err(Error::QuadNonConvergence { estimate, .. }) => assert!(estimate.is_finite()),
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}

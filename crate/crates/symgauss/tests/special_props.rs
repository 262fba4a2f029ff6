use proptest::prelude::*;
use symgauss::special::{
    adaptive_quad_breaks, dilog, int_log1mexp, int_x_log1mexp, log_gamma, log_sch, log_sinh_abs, ZETA2,
};

#[test]
fn frozen_reference_values() {
    assert!((dilog(0.5).unwrap() - 0.582_240_526_465_012_5).abs() < 1e-15);
    assert!((int_log1mexp(1.0, 1.0).unwrap() + 0.752_360_742_478_669_1).abs() < 1e-14);
    assert!((log_gamma(7.5).unwrap() - 7.534_364_236_758_733).abs() < 1e-13);
}

#[test]
fn domain_errors() {
    assert!(dilog(1.5).is_err());
    assert!(int_log1mexp(0.0, 1.0).is_err());
    assert!(int_log1mexp(1.0, -1.0).is_err());
    assert!(log_gamma(0.0).is_err());
}

proptest! {
    #[test]
    fn sinh_and_sch_are_even(x in -80.0f64..80.0) {
        prop_assert_eq!(log_sinh_abs(x), log_sinh_abs(-x));
        prop_assert_eq!(log_sch(x), log_sch(-x));
        prop_assert!(log_sch(x) >= 0.0);
    }

    #[test]
    fn sch_is_sinh_over_x(x in 0.02f64..40.0) {
        prop_assert!((log_sch(x) - (log_sinh_abs(x) - x.ln())).abs() < 1e-13 * (1.0 + x));
    }

    #[test]
    fn dilog_reflection(x in 0.001f64..0.999) {
        let lhs = dilog(x).unwrap() + dilog(1.0 - x).unwrap();
        let rhs = ZETA2 - x.ln() * (1.0 - x).ln();
        prop_assert!((lhs - rhs).abs() < 1e-13);
    }

    #[test]
    fn dilog_inversion_identity(x in -0.999f64..-0.001) {
        // Li2(x) + Li2(x/(x-1)) = -½ log²(1-x) for x < 1
        let lhs = dilog(x).unwrap() + dilog(x / (x - 1.0)).unwrap();
        let l = (1.0 - x).ln();
        prop_assert!((lhs + 0.5 * l * l).abs() < 1e-13);
    }

    #[test]
    fn log1mexp_integrals_match_quadrature(t in 0.05f64..5.0, a in 0.05f64..3.0) {
        let f = |x: f64| (-(-2.0 * t * x).exp_m1()).ln();
        let q0 = adaptive_quad_breaks(f, &[0.0, a], 1e-13, 20_000).unwrap().value;
        let q1 = adaptive_quad_breaks(|x| x * f(x), &[0.0, a], 1e-13, 20_000).unwrap().value;
        prop_assert!((int_log1mexp(t, a).unwrap() - q0).abs() < 1e-9);
        prop_assert!((int_x_log1mexp(t, a).unwrap() - q1).abs() < 1e-9);
    }

    #[test]
    fn log_gamma_recurrence(x in 0.1f64..50.0) {
        let lhs = log_gamma(x + 1.0).unwrap() - log_gamma(x).unwrap();
        prop_assert!((lhs - x.ln()).abs() < 1e-12 * (1.0 + x.ln().abs()));
    }
}

use proptest::prelude::*;
use symgauss::closedform::{
    log_Za_tau_typeiv, log_Za_typeiv, log_za_typeiv, macdonald_sides, spherical_typeiv, GaussParam,
};
use symgauss::rootsys::{dual_inner, rho, weyl_group, DualVector, RootFamily, SpaceDescriptor};

fn reduced() -> impl Strategy<Value = RootFamily> {
    prop_oneof![Just(RootFamily::A), Just(RootFamily::B), Just(RootFamily::C), Just(RootFamily::D)]
}

fn tiv(f: RootFamily, r: usize) -> SpaceDescriptor {
    SpaceDescriptor::type_iv(f, r).unwrap()
}

#[test]
fn tau_at_rho_is_the_plain_value_for_all_rows() {
    for f in [RootFamily::A, RootFamily::B, RootFamily::C, RootFamily::D] {
        for r in f.min_rank()..=8 {
            let d = tiv(f, r);
            for sigma in [0.3, 1.0, 2.0] {
                let p = GaussParam::sigma(sigma).unwrap();
                let a = log_Za_tau_typeiv(&d, p, &rho(&d)).unwrap().log_abs;
                let b = log_Za_typeiv(&d, p).unwrap();
                assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "{f}{r} sigma={sigma}");
            }
        }
    }
}

#[test]
fn small_sigma_slope_is_rho_squared() {
    for r in 1..=3 {
        let d = tiv(RootFamily::A, r);
        let p = rho(&d);
        let target = dual_inner(&d, &p, &p).unwrap();
        let s2: Vec<f64> = (0..8).map(|k| 1e-4 * 10f64.powf(2.0 * k as f64 / 7.0)).collect();
        let y: Vec<f64> = s2
            .iter()
            .map(|&s| {
                let g = GaussParam::sigma(s.sqrt()).unwrap();
                log_Za_typeiv(&d, g).unwrap() - log_za_typeiv(&d, g).unwrap()
            })
            .collect();
        // least squares for y ≈ b·s + c·s², keeping b
        let m = |k: i32| s2.iter().map(|s| s.powi(k)).sum::<f64>();
        let v = |k: i32| s2.iter().zip(&y).map(|(s, v)| s.powi(k) * v).sum::<f64>();
        let slope = (v(1) * m(4) - v(2) * m(3)) / (m(2) * m(4) - m(3) * m(3));
        assert!((slope / target - 1.0).abs() < 1e-3, "A{r}: {slope} vs {target}");
    }
}

#[test]
fn large_rank_values_are_finite() {
    for f in [RootFamily::A, RootFamily::B, RootFamily::C, RootFamily::D] {
        let d = tiv(f, 500);
        for s2 in [1e-3, 1.0, 10.0] {
            let p = GaussParam::sigma(f64::sqrt(s2)).unwrap();
            assert!(log_Za_typeiv(&d, p).unwrap().is_finite());
            assert!(log_za_typeiv(&d, p).unwrap().is_finite());
        }
    }
}

proptest! {
    #[test]
    fn za_is_homogeneous(f in reduced(), r in 1usize..=10, sigma in 0.05f64..3.0) {
        prop_assume!(r >= f.min_rank());
        let d = tiv(f, r);
        let a = log_za_typeiv(&d, GaussParam::sigma(sigma).unwrap()).unwrap();
        let b = log_za_typeiv(&d, GaussParam::sigma(2.0 * sigma).unwrap()).unwrap();
        prop_assert!((b - a - d.dimension() as f64 * 2f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn macdonald_mehta_holds(f in reduced(), r in 1usize..=8) {
        prop_assume!(r >= f.min_rank());
        let (lhs, rhs) = macdonald_sides(&tiv(f, r)).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-10 * lhs.abs().max(1.0));
    }

    #[test]
    fn za_tends_to_flat_value(f in reduced(), r in 1usize..=4) {
        prop_assume!(r >= f.min_rank());
        let d = tiv(f, r);
        let p = GaussParam::sigma(1e-4).unwrap();
        let diff = log_Za_typeiv(&d, p).unwrap() - log_za_typeiv(&d, p).unwrap();
        prop_assert!(diff.abs() < 1e-5);
    }

    #[test]
    fn spherical_function_is_weyl_invariant(
        f in reduced(),
        a in proptest::collection::vec(-1.5f64..1.5, 3),
        tau in proptest::collection::vec(0.2f64..2.0, 3),
    ) {
        let r = 2;
        let d = tiv(f, r);
        let n = d.ambient_dim;
        let tau = DualVector::new(tau[..n].to_vec());
        let a = &a[..n];
        let Ok(base) = spherical_typeiv(&d, &tau, a) else { return Ok(()) };
        for w in weyl_group(&d).unwrap().iter() {
            if let Ok(v) = spherical_typeiv(&d, &tau, &w.apply(a)) {
                prop_assert!((v / base - 1.0).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn spherical_at_rho_is_one(f in reduced(), a in proptest::collection::vec(-2.0f64..2.0, 3)) {
        let d = tiv(f, 2);
        if let Ok(v) = spherical_typeiv(&d, &rho(&d), &a[..d.ambient_dim]) {
            prop_assert!((v - 1.0).abs() < 1e-6);
        }
    }
}

use proptest::prelude::*;
use symgauss::highrank::{e2_cone, e2_domain, E2_equilibrium, EnergyKind, F_finite_rank, F_limit, LimitFamily};
use symgauss::rootsys::{RootFamily, SpaceDescriptor};

#[test]
fn frozen_limits() {
    let fa = [0.042_534_000_375_919_6, 0.086_794_078_767_834_8, 0.180_376_390_506_754, 0.497_440_094_538_928];
    let fc = [0.173_588_157_535_670, 0.360_752_781_013_508, 0.772_534_326_552_320, 2.225_801_657_029_09];
    for (i, t) in [0.5, 1.0, 2.0, 5.0].into_iter().enumerate() {
        assert!((F_limit(LimitFamily::A, t).unwrap() - fa[i]).abs() < 1e-12);
        assert!((F_limit(LimitFamily::C, t).unwrap() - fc[i]).abs() < 1e-12);
    }
    assert!((E2_equilibrium(EnergyKind::Cone, 1.0).unwrap() - 1.356_353_101_792_11).abs() < 1e-12);
    assert!((E2_equilibrium(EnergyKind::Domain, 2.0).unwrap() - 0.727_465_673_447_680).abs() < 1e-12);
}

#[test]
fn finite_rank_one() {
    // (1/r²) log(Z/z) for A1 at t = 1 is 1/2 + log(sinh(1/2)/(1/2))
    let d = SpaceDescriptor::type_iv(RootFamily::A, 1).unwrap();
    let want = 0.5 + (0.5f64.sinh() / 0.5).ln();
    assert!((F_finite_rank(&d, 1.0).unwrap() - want).abs() < 1e-14);
}

proptest! {
    #[test]
    fn bcd_share_one_limit(t in 0.01f64..20.0) {
        let b = F_limit(LimitFamily::B, t).unwrap();
        prop_assert_eq!(b, F_limit(LimitFamily::C, t).unwrap());
        prop_assert_eq!(b, F_limit(LimitFamily::D, t).unwrap());
    }

    #[test]
    fn a_limit_is_half_of_c_at_half_t(t in 0.01f64..20.0) {
        let a = F_limit(LimitFamily::A, t).unwrap();
        let c = F_limit(LimitFamily::C, t / 2.0).unwrap();
        prop_assert!((a - c / 2.0).abs() < 1e-12 * (1.0 + a));
    }

    #[test]
    fn small_t_expansion(t in 1e-4f64..1e-2) {
        let a = F_limit(LimitFamily::A, t).unwrap();
        prop_assert!((a - t / 12.0 - t * t / 288.0).abs() < t * t * t);
    }

    #[test]
    fn limits_are_increasing(t in 0.01f64..10.0) {
        for f in [LimitFamily::A, LimitFamily::C] {
            prop_assert!(F_limit(f, t * 1.01).unwrap() > F_limit(f, t).unwrap());
        }
    }

    #[test]
    fn finite_rank_approaches_limit(t in 0.2f64..3.0) {
        for (lf, rf) in [(LimitFamily::A, RootFamily::A), (LimitFamily::C, RootFamily::C)] {
            let lim = F_limit(lf, t).unwrap();
            let g100 = (F_finite_rank(&SpaceDescriptor::type_iv(rf, 100).unwrap(), t).unwrap() - lim).abs();
            let g200 = (F_finite_rank(&SpaceDescriptor::type_iv(rf, 200).unwrap(), t).unwrap() - lim).abs();
            prop_assert!(g200 < 0.6 * g100);
        }
    }

    #[test]
    fn equilibrium_energy_is_e2_minus_f(t in 0.05f64..5.0) {
        let a = E2_equilibrium(EnergyKind::Cone, t).unwrap();
        prop_assert!((a - e2_cone(t).unwrap() + F_limit(LimitFamily::A, t).unwrap()).abs() < 1e-14);
        let c = E2_equilibrium(EnergyKind::Domain, t).unwrap();
        prop_assert!((c - e2_domain(t).unwrap() + F_limit(LimitFamily::C, t).unwrap()).abs() < 1e-14);
    }
}

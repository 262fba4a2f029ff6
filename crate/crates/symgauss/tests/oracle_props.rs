use proptest::prelude::*;
use symgauss::closedform::{log_Za_typeiv, log_za_typeiv, GaussParam};
use symgauss::oracle::{
    mc_integrand, mc_radial, mc_radial_weighted, quad_radial, sigma2_coefficient, LogWelford, Method, Proposal,
    RadialIntegrand,
};
use symgauss::rootsys::{rho, RootFamily, SpaceDescriptor};

fn tiv(f: RootFamily, r: usize) -> SpaceDescriptor {
    SpaceDescriptor::type_iv(f, r).unwrap()
}

#[test]
fn standardized_errors_have_unit_variance() {
    let d = tiv(RootFamily::A, 1);
    let p = GaussParam::sigma(1.0).unwrap();
    let exact = log_Za_typeiv(&d, p).unwrap();
    let z: Vec<f64> = (0..20)
        .map(|s| {
            let e = mc_radial(&d, p, 20_000, 1000 + s).unwrap();
            (e.log_value - exact).exp_m1() / e.std_err_rel
        })
        .collect();
    let mean = z.iter().sum::<f64>() / 20.0;
    let var = z.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / 19.0;
    assert!((0.5..=2.0).contains(&var), "variance {var}");
}

#[test]
fn tiny_sigma_matches_flat_value() {
    let d = tiv(RootFamily::B, 2);
    let p = GaussParam::sigma(1e-2).unwrap();
    let e = mc_radial(&d, p, 200_000, 5).unwrap();
    assert!(e.z_score(log_za_typeiv(&d, p).unwrap()) < 3.0);
}

#[test]
fn weighting_by_rho_reduces_to_plain_estimate() {
    let d = tiv(RootFamily::A, 2);
    let p = GaussParam::sigma(0.5).unwrap();
    let a = mc_radial(&d, p, 50_000, 9).unwrap();
    let b = mc_radial_weighted(&d, p, &rho(&d), 50_000, 9).unwrap();
    assert!((a.log_value - b.log_value).abs() < 1e-10);
    assert_eq!(b.rejected, 0);
}

#[test]
fn both_proposals_agree() {
    let d = tiv(RootFamily::C, 2);
    let p = GaussParam::sigma(0.5).unwrap();
    let exact = log_Za_typeiv(&d, p).unwrap();
    let f = RadialIntegrand::curved(&d);
    for prop in [Proposal::Gaussian, Proposal::WeylMixture] {
        let e = mc_integrand(&f, p, 400_000, 2, prop).unwrap();
        assert!(e.z_score(exact) < 3.5, "{prop:?}");
    }
}

#[test]
fn flat_cone_beta_one_by_monte_carlo() {
    use symgauss::closedform::log_za_cone;
    let p = GaussParam::sigma(1.0).unwrap();
    let f = RadialIntegrand::flat_cone(1.0, 2).unwrap();
    let e = mc_integrand(&f, p, 400_000, 4, Proposal::Auto).unwrap();
    assert!(e.z_score(log_za_cone(1.0, 2, p).unwrap()) < 3.0);
}

#[test]
fn symplectic_by_monte_carlo() {
    use symgauss::closedform::log_za_symplectic;
    let p = GaussParam::sigma(0.7).unwrap();
    let f = RadialIntegrand::flat_symplectic(2).unwrap();
    let e = mc_integrand(&f, p, 400_000, 8, Proposal::Auto).unwrap();
    assert!(e.z_score(log_za_symplectic(2, p).unwrap()) < 3.0);
}

#[test]
fn quadrature_rank_cap() {
    let p = GaussParam::sigma(1.0).unwrap();
    assert!(quad_radial(&tiv(RootFamily::A, 3), p, 1e-8).is_err());
}

#[test]
fn sigma2_methods_agree() {
    let grid = [0.05, 0.1, 0.15, 0.2];
    for (f, r) in [(RootFamily::A, 1), (RootFamily::B, 2), (RootFamily::D, 2)] {
        let d = tiv(f, r);
        let a = sigma2_coefficient(&d, &grid, Method::ClosedForm).unwrap();
        let b = sigma2_coefficient(&d, &grid, Method::Quadrature).unwrap();
        assert!((a / b - 1.0).abs() < 0.005);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn welford_chunking_is_exact(
        lws in proptest::collection::vec(-40.0f64..40.0, 2..400),
        k in 1usize..40,
    ) {
        let mut one = LogWelford::new();
        lws.iter().for_each(|&x| one.push(x));
        let mut merged = LogWelford::new();
        for part in lws.chunks(k) {
            let mut w = LogWelford::new();
            part.iter().for_each(|&x| w.push(x));
            merged.merge(&w);
        }
        prop_assert!((one.log_mean() - merged.log_mean()).abs() < 1e-12);
        if lws.len() > 2 {
            prop_assert!((one.rel_std_err() / merged.rel_std_err() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn estimates_are_reproducible(seed in 0u64..10_000) {
        let d = tiv(RootFamily::A, 2);
        let p = GaussParam::sigma(0.8).unwrap();
        let a = mc_radial(&d, p, 70_000, seed).unwrap();
        prop_assert_eq!(a, mc_radial(&d, p, 70_000, seed).unwrap());
        prop_assert!(a.std_err_rel >= 0.0 && a.ess > 0.0 && a.n_samples == 70_000);
    }

    #[test]
    fn rank_two_quadrature_matches_closed_form(sigma in 0.3f64..1.2, fam in 0usize..4) {
        let f = [RootFamily::A, RootFamily::B, RootFamily::C, RootFamily::D][fam];
        let d = tiv(f, 2);
        let p = GaussParam::sigma(sigma).unwrap();
        prop_assert!((quad_radial(&d, p, 1e-9).unwrap() - log_Za_typeiv(&d, p).unwrap()).abs() < 1e-6);
    }
}

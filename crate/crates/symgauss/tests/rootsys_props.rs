use proptest::prelude::*;
use symgauss::rootsys::{
    build_space, catalog, degrees, dual_inner, enumerate_weyl, positive_roots, rho, weyl_group, weyl_order,
    DualVector, Multiplicities, RootFamily, SpaceDescriptor,
};

fn reduced() -> impl Strategy<Value = RootFamily> {
    prop_oneof![Just(RootFamily::A), Just(RootFamily::B), Just(RootFamily::C), Just(RootFamily::D)]
}

#[test]
fn catalog_has_eleven_rows_four_complex() {
    let rows = catalog();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows.iter().filter(|r| r.is_complex()).count(), 4);
}

#[test]
fn type_iv_rho_squared_small_ranks() {
    // (ρ,ρ) at c = 4: A1 = 1/2, B2 = 5/2
    let a1 = SpaceDescriptor::type_iv(RootFamily::A, 1).unwrap();
    let r = rho(&a1);
    assert_eq!(dual_inner(&a1, &r, &r).unwrap(), 0.5);
    let b2 = SpaceDescriptor::type_iv(RootFamily::B, 2).unwrap();
    let r = rho(&b2);
    assert_eq!(dual_inner(&b2, &r, &r).unwrap(), 2.5);
}

#[test]
fn explicit_multiplicity_edge_cases() {
    let bc = Multiplicities::Explicit { alpha: 0, beta: 2, gamma: 2 };
    assert_eq!(build_space(RootFamily::BC, 3, bc, 4.0).unwrap().family, RootFamily::C);
    let b0 = Multiplicities::Explicit { alpha: 0, beta: 2, gamma: 0 };
    assert!(build_space(RootFamily::B, 3, b0, 4.0).is_err());
    assert!(SpaceDescriptor::type_iv(RootFamily::D, 1).is_err());
}

proptest! {
    #[test]
    fn degree_product_is_group_order(f in reduced(), r in 1usize..=5) {
        prop_assume!(r >= f.min_rank());
        let d = SpaceDescriptor::type_iv(f, r).unwrap();
        let prod: u64 = degrees(&d).unwrap().iter().product();
        prop_assert_eq!(prod as u128, weyl_order(&d).unwrap());
        prop_assert_eq!(prod as usize, enumerate_weyl(&d, 6).unwrap().len());
    }

    #[test]
    fn dimension_counts_roots(f in reduced(), r in 1usize..=12) {
        prop_assume!(r >= f.min_rank());
        let d = SpaceDescriptor::type_iv(f, r).unwrap();
        let roots = positive_roots(&d);
        let m: u32 = roots.iter().map(|x| x.multiplicity).sum();
        prop_assert_eq!(d.dimension(), r + m as usize);
        // the number of positive roots is Σ(d_j - 1)
        let n: u64 = degrees(&d).unwrap().iter().map(|x| x - 1).sum();
        prop_assert_eq!(roots.len() as u64, n);
    }

    #[test]
    fn exact_inner_product_matches_float(f in reduced(), r in 1usize..=30) {
        prop_assume!(r >= f.min_rank());
        let d = SpaceDescriptor::type_iv(f, r).unwrap();
        let p = rho(&d);
        let exact = dual_inner(&d, &p, &p).unwrap();
        let nudged = DualVector::new(p.coeffs.iter().map(|x| x + 1e-300).collect());
        let float = dual_inner(&d, &nudged, &nudged).unwrap();
        prop_assert!((exact - float).abs() <= 1e-12 * exact);
    }

    #[test]
    fn weyl_group_preserves_inner_product(
        f in reduced(),
        r in 2usize..=4,
        v in proptest::collection::vec(-3.0f64..3.0, 5),
    ) {
        let d = SpaceDescriptor::type_iv(f, r).unwrap();
        let v = &v[..d.ambient_dim];
        let n2: f64 = v.iter().map(|x| x * x).sum();
        for w in weyl_group(&d).unwrap().iter() {
            let wv = w.apply(v);
            let m2: f64 = wv.iter().map(|x| x * x).sum();
            prop_assert!((m2 - n2).abs() < 1e-12);
        }
    }

    #[test]
    fn weyl_group_permutes_roots(f in reduced(), r in 2usize..=3) {
        let d = SpaceDescriptor::type_iv(f, r).unwrap();
        let roots: Vec<Vec<f64>> =
            positive_roots(&d).into_iter().map(|x| x.coeffs.iter().map(|&c| c as f64).collect()).collect();
        for w in weyl_group(&d).unwrap().iter() {
            for root in &roots {
                let img = w.apply(root);
                let neg: Vec<f64> = img.iter().map(|x| -x).collect();
                prop_assert!(roots.contains(&img) || roots.contains(&neg));
            }
        }
    }
}

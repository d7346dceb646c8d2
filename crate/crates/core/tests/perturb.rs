use brkit_core::exactgeom::LatticeSupport;
use brkit_core::perturb::{
    make_regular_instance, perturb_system, rationalize, rationalize_complex, rouche_radius, PlanOptions,
};
use brkit_core::polysys::{parse_system, randomize_constants};
use brkit_core::rootfind::{certify_regular, locate_roots, NewtonConfig};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

fn small_plan() -> PlanOptions {
    PlanOptions { sphere_samples: 20_000, ..PlanOptions::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rationalization_is_within_tolerance(x in -1e6f64..1e6, k in 1i32..12) {
        let eps = 10f64.powi(-k);
        let r = rationalize(x, eps);
        let exact = BigRational::from_float(x).unwrap();
        let bound = BigRational::from_float(eps).unwrap();
        prop_assert!((r.clone() - exact).abs() <= bound);
        prop_assert!(r.denom().to_f64().unwrap() <= 1.0 / eps + 1.0);
    }

    #[test]
    fn complex_rationalization(re in -100f64..100.0, im in -100f64..100.0) {
        let g = rationalize_complex(Complex64::new(re, im), 1e-6);
        prop_assert!((g.to_complex() - Complex64::new(re, im)).norm() <= 1e-6 * 2f64.sqrt());
    }
}

#[test]
fn plan_bound_is_monotone() {
    let s = parse_system(2, &["z1^2 - 1", "z2^2 - 4"]).unwrap();
    let p = rouche_radius(&s, &small_plan()).unwrap();
    assert!(p.is_valid());
    let mut last = 0.0;
    for k in 1..20 {
        let b = p.perturbation_bound(k as f64 * 0.05);
        assert!(b > last);
        last = b;
    }
    assert!(p.admits(p.epsilon) && !p.admits(4.0 * p.epsilon));
}

#[test]
fn plan_scales_with_the_system() {
    let s = parse_system(1, &["z1^2 - 1"]).unwrap();
    let t = parse_system(1, &["2*z1^2 - 2"]).unwrap();
    let a = rouche_radius(&s, &small_plan()).unwrap();
    let b = rouche_radius(&t, &small_plan()).unwrap();
    assert!((b.delta0 - 2.0 * a.delta0).abs() < 1e-12);
    assert!((b.epsilon - 2.0 * a.epsilon).abs() < 1e-12);
}

#[test]
fn perturbation_keeps_count_and_regularity() {
    let s = parse_system(2, &["z1^2 + z2 - 3", "z1*z2 - 1"]).unwrap();
    let plan = rouche_radius(&s, &small_plan()).unwrap();
    let base = locate_roots(&s, Some(3), &NewtonConfig::default());
    assert_eq!(base.len(), 3);
    for seed in 0..10 {
        let t = perturb_system(&s, &plan, seed).unwrap();
        assert_eq!(t.supports(), s.supports());
        let r = locate_roots(&t, Some(3), &NewtonConfig::with_seed(seed));
        assert!(r.complete && certify_regular(&t, &r, 1e-6).is_regular(), "seed {seed}");
    }
}

#[test]
fn constant_randomization_is_rarely_singular() {
    let s = parse_system(2, &["z1^2 - 2*z1*z2 + z2^2 + 1", "z1^2 + z2^2 - 1"]).unwrap();
    let mut suspect = 0;
    for seed in 0..200 {
        let t = randomize_constants(&s, 8, seed).unwrap();
        let r = locate_roots(&t, None, &NewtonConfig::with_seed(seed));
        if !certify_regular(&t, &r, 1e-6).is_regular() {
            suspect += 1;
        }
    }
    assert!(suspect <= 2, "{suspect}/200");
}

#[test]
fn regular_instance_is_reproducible() {
    let sup = vec![LatticeSupport::dense(2, 1), LatticeSupport::dense(2, 2)];
    let a = make_regular_instance(&sup, 10, 9).unwrap();
    let b = make_regular_instance(&sup, 10, 9).unwrap();
    assert_eq!(a.system, b.system);
    assert!(a.certificate.is_regular());
    assert_eq!(a.roots.len(), 2);
    assert!(a.system.supports_contain_origin());
}

use brkit_core::exactgeom::{
    convex_hull, minkowski_sum, mixed_volume_ie, mixed_volume_interp, volume_exact, LatticeSupport, Zonotope,
};
use num_rational::BigRational;
use proptest::prelude::*;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn support(d: usize, max_pts: usize) -> impl Strategy<Value = LatticeSupport> {
    prop::collection::vec(prop::collection::vec(0i64..=3, d), 1..=max_pts)
        .prop_map(move |pts| LatticeSupport::new(d, pts).unwrap())
}

fn system(d: usize) -> impl Strategy<Value = Vec<LatticeSupport>> {
    prop::collection::vec(support(d, 5), d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn symmetric_under_reordering(sup in (1usize..=3).prop_flat_map(system), rot in 0usize..3) {
        let mut other = sup.clone();
        other.rotate_left(rot % sup.len());
        prop_assert_eq!(mixed_volume_ie(&sup).unwrap().value, mixed_volume_ie(&other).unwrap().value);
    }

    #[test]
    fn translation_invariant(sup in (1usize..=3).prop_flat_map(system), shift in prop::collection::vec(0i64..=3, 3)) {
        let d = sup.len();
        let moved: Vec<_> = sup.iter().map(|s| s.translate(&shift[..d]).unwrap()).collect();
        prop_assert_eq!(mixed_volume_ie(&sup).unwrap().value, mixed_volume_ie(&moved).unwrap().value);
    }

    #[test]
    fn monotone_in_each_support(sup in (1usize..=3).prop_flat_map(system), extra in prop::collection::vec(0i64..=3, 3)) {
        let d = sup.len();
        let mut bigger = sup.clone();
        bigger[0] = bigger[0].union(&LatticeSupport::new(d, vec![extra[..d].to_vec()]).unwrap()).unwrap();
        prop_assert!(mixed_volume_ie(&bigger).unwrap().value >= mixed_volume_ie(&sup).unwrap().value);
    }

    #[test]
    fn two_routes_agree(sup in (1usize..=3).prop_flat_map(system)) {
        prop_assert_eq!(mixed_volume_ie(&sup).unwrap().value, mixed_volume_interp(&sup).unwrap().value);
    }

    #[test]
    fn doubling_scales_volume(s in (1usize..=3).prop_flat_map(|d| support(d, 7))) {
        let p = s.newton_polytope();
        let pp = minkowski_sum(&p, &p).unwrap();
        let scale = q(1 << s.dim());
        prop_assert_eq!(volume_exact(&pp), volume_exact(&p) * scale);
    }
}

#[test]
fn zonotope_volume_matches_hull() {
    let gens = vec![vec![q(1), q(0), q(2)], vec![q(0), q(3), q(1)], vec![q(1), q(1), q(0)], vec![q(2), q(-1), q(1)]];
    let z = Zonotope::new(gens).unwrap();
    assert_eq!(volume_exact(&z.polytope().unwrap()), z.volume());
}

#[test]
fn rational_hull_volume() {
    let half = BigRational::new(1.into(), 2.into());
    let pts = vec![
        vec![q(0), q(0)],
        vec![half.clone(), q(0)],
        vec![q(0), half.clone()],
        vec![half.clone(), half.clone()],
        vec![BigRational::new(1.into(), 4.into()), BigRational::new(1.into(), 4.into())],
    ];
    let p = convex_hull(&pts).unwrap();
    assert_eq!(p.num_vertices(), 4);
    assert_eq!(volume_exact(&p), BigRational::new(1.into(), 4.into()));
}

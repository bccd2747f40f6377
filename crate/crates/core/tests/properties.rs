use krasner_core::corpus::z_lift;
use krasner_core::{
    enumerate_ideals, parse_structure, random_structures, ring_lift, serialize_structure,
    ExactStructure, FiniteRing, Grade, RadicalMethod, SearchSpace, SupportPolicy,
};
use proptest::prelude::*;

fn lift_with(k: usize, t1: (i64, i64), t2: (i64, i64)) -> ExactStructure {
    ring_lift(
        &FiniteRing::integers_mod(k).unwrap(),
        2,
        2,
        Grade::ratio(t1.0, t1.1).unwrap(),
        Grade::ratio(t2.0, t2.1).unwrap(),
    )
    .unwrap()
}

fn threshold() -> impl Strategy<Value = (i64, i64)> {
    (1i64..=12).prop_flat_map(|q| (1..=q, Just(q)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lifts_validate_for_any_thresholds(k in 1usize..=8, t1 in threshold(), t2 in threshold()) {
        let r = lift_with(k, t1, t2);
        prop_assert!(r.validate().unwrap().passed());
        prop_assert_eq!(parse_structure(&serialize_structure(&r)).unwrap(), r);
    }

    #[test]
    fn lattice_ignores_thresholds(k in 1usize..=10, t1 in threshold(), t2 in threshold()) {
        let r = lift_with(k, t1, t2);
        let base = z_lift(k, 2, 2).unwrap();
        let (lat, base_lat) = (enumerate_ideals(&r).unwrap(), enumerate_ideals(&base).unwrap());
        prop_assert_eq!(lat.ideals(), base_lat.ideals());
    }

    #[test]
    fn radical_is_extensive_idempotent_and_monotone(k in 1usize..=16) {
        let r = z_lift(k, 2, 2).unwrap();
        let lat = enumerate_ideals(&r).unwrap();
        for i in lat.ideals() {
            let rad = lat.f_radical(i, RadicalMethod::Powers).unwrap();
            prop_assert!(i.is_subset(&rad));
            prop_assert!(lat.contains(&rad));
            prop_assert_eq!(&lat.f_radical(&rad, RadicalMethod::Powers).unwrap(), &rad);
            for j in lat.ideals().iter().filter(|j| i.is_subset(j)) {
                prop_assert!(rad.is_subset(&lat.f_radical(j, RadicalMethod::Powers).unwrap()));
            }
        }
    }

    #[test]
    fn lattice_is_closed_under_intersection(k in 1usize..=16) {
        let r = z_lift(k, 2, 2).unwrap();
        let lat = enumerate_ideals(&r).unwrap();
        for a in lat.ideals() {
            for b in lat.ideals() {
                let mut meet = a.clone();
                meet.intersect_with(b);
                prop_assert!(lat.contains(&meet));
            }
        }
    }

    #[test]
    fn random_structures_validate(seed in any::<u64>()) {
        let space = SearchSpace::new(
            3,
            2,
            2,
            vec![Grade::ratio(1, 2).unwrap(), Grade::one()],
            SupportPolicy::AnyNonempty,
            1 << 20,
        )
        .unwrap();
        for r in random_structures(&space, seed, 64).unwrap() {
            prop_assert!(r.validate().unwrap().passed());
            let lat = enumerate_ideals(&r).unwrap();
            prop_assert!(lat.contains(&r.full_set()));
            prop_assert_eq!(lat.maximal_ideals().is_empty(), r.size() == 1);
            for p in lat.prime_ideals(false) {
                prop_assert_eq!(lat.is_prime_by_subsets(&p).unwrap(), true);
            }
        }
    }
}

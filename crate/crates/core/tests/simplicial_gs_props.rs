//! Property suites for the simplicial module and the inequality reports.

use prop_core::selftest::{e1_brute_force, random_presentation};
use prop_core::simplicial::{random_kernel_word, wbar_homology};
use prop_core::{
    build_one_skeleton, e1_dimensions, gs_quadratic, gs_report, koch_power_bound, koch_report, peiffer_lifting_check,
    FiniteGroupTable, Presentation, Prime, QuotientOptions, SimplicialFpModule,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_bound_at_two_is_the_quadratic_bound(d in 1u64..10_000, r in 0u64..100_000_000) {
        prop_assert_eq!(koch_power_bound(d, r, 2).unwrap(), gs_quadratic(d, r));
    }

    #[test]
    fn power_bound_is_monotone_in_r(d in 1u64..50, r in 0u64..10_000, m in 2u32..8) {
        if koch_power_bound(d, r, m).unwrap() {
            prop_assert!(koch_power_bound(d, r + 1, m).unwrap());
        }
    }

    #[test]
    fn koch_values_follow_the_formula(d in 1u64..5, r in prop::collection::vec(0u64..3, 6), b in prop::collection::vec(0u64..20, 6)) {
        let mut r = r;
        let mut b = b;
        r[0] = 1;
        b[0] = 1;
        let rep = koch_report(d, &r, &b, 5).unwrap();
        for n in 1..=5usize {
            let c = |k: usize| b[..=k].iter().sum::<u64>() as i128;
            let want = -(d as i128) * c(n - 1) + (0..=n).map(|nu| c(nu) * r[n - nu] as i128).sum::<i128>();
            prop_assert_eq!(rep.e[n - 1], want);
        }
    }

    #[test]
    fn skeletons_satisfy_the_identities(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pres = random_presentation(&mut rng, 3, 2);
        let sk = build_one_skeleton(&pres, 4).unwrap();
        let rep = sk.check_identities();
        prop_assert!(rep.passed(), "{:?}", rep.violations.first());
        for n in 0..=4 {
            prop_assert_eq!(sk.relator_generator_count(n), n * pres.relators().len());
        }
    }

    #[test]
    fn peiffer_lifting_holds(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pres = random_presentation(&mut rng, 3, 2);
        let sk = build_one_skeleton(&pres, 2).unwrap();
        let x = random_kernel_word(&sk, &mut rng, 6);
        let y = random_kernel_word(&sk, &mut rng, 6);
        prop_assert!(peiffer_lifting_check(&x, &y, &sk).unwrap());
    }

    #[test]
    fn moore_homology_matches_unnormalized(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = SimplicialFpModule::random(&mut rng, Prime::new(p).unwrap(), 5, 3, true);
        prop_assert_eq!(m.moore_homology(2).unwrap(), m.unnormalized_homology(2).unwrap());
    }

    #[test]
    fn e1_matches_enumeration(h in prop::collection::vec(0u64..6, 7), n in 1usize..=4, m in 0usize..=6) {
        prop_assert_eq!(e1_dimensions(&h, n, m).unwrap(), e1_brute_force(&h, n, m));
    }
}

#[test]
fn wbar_basics() {
    let two = Prime::new(2).unwrap();
    let three = Prime::new(3).unwrap();
    for g in [FiniteGroupTable::cyclic(2), FiniteGroupTable::cyclic(3), FiniteGroupTable::cyclic(4)] {
        for p in [two, three] {
            assert_eq!(wbar_homology(&g, p, 2, false).unwrap()[0], 1);
        }
    }
    assert_eq!(wbar_homology(&FiniteGroupTable::cyclic(1), two, 4, false).unwrap(), vec![1, 0, 0, 0, 0]);
    // integral homology of S_3 is Z, Z/2, 0, Z/6 in degrees 0..3
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| {
                    let c = [a[b[0]], a[b[1]], a[b[2]]];
                    perms.iter().position(|x| *x == c).unwrap()
                })
                .collect()
        })
        .collect();
    let s3 = FiniteGroupTable::new(table).unwrap();
    assert_eq!(wbar_homology(&s3, two, 2, false).unwrap(), vec![1, 1, 1]);
    assert_eq!(wbar_homology(&s3, three, 3, false).unwrap(), vec![1, 0, 0, 1]);
}

#[test]
fn free_presentations_give_koch_equality() {
    for d in [2usize, 3] {
        let pres = Presentation::with_default_names(Prime::new(3).unwrap(), d, vec![]).unwrap();
        let rep = gs_report(&pres, 6, QuotientOptions::default()).unwrap();
        assert!(rep.e.iter().all(|&e| e == 1));
        assert!(rep.e_at_least_one.iter().all(|&f| f));
    }
}

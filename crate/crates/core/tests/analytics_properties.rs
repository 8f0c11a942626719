mod common;

use proptest::prelude::*;

use esdg_core::analytics::coverage_count_unbounded;
use esdg_core::oracles::fpd_by_repeated_eat;
use esdg_core::{
    build_esdg, coverage_count, coverage_report, coverage_time, eccentricity, Percent,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pruned_count_equals_full_count(g in common::corpus_graphs(), s_pick in any::<u32>(), k in 0u32..=80) {
        let e = build_esdg(&g);
        let s = s_pick % g.vertex_count() as u32;
        prop_assert_eq!(coverage_count(&e, s, k).unwrap(), coverage_count_unbounded(&e, s, k).unwrap());
        let oracle = fpd_by_repeated_eat(&g, s).unwrap();
        prop_assert_eq!(coverage_count(&e, s, k).unwrap(), oracle.iter().filter(|&&j| j <= k).count());
    }

    #[test]
    fn count_is_monotone_in_k(g in common::small_graphs(), s_pick in any::<u32>()) {
        let e = build_esdg(&g);
        let s = s_pick % g.vertex_count() as u32;
        let counts: Vec<usize> = (0..=30).map(|k| coverage_count(&e, s, k).unwrap()).collect();
        prop_assert_eq!(counts[0], 1);
        prop_assert!(counts.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(counts.iter().all(|&c| c <= g.vertex_count()));
    }

    #[test]
    fn coverage_time_is_the_generalized_inverse(g in common::corpus_graphs(), s_pick in any::<u32>(), p in 1u64..=100) {
        let e = build_esdg(&g);
        let s = s_pick % g.vertex_count() as u32;
        let p = Percent::new(p).unwrap();
        let need = p.required_count(g.vertex_count());
        match coverage_time(&e, s, p).unwrap() {
            Some(d) => {
                prop_assert!(coverage_count(&e, s, d).unwrap() >= need);
                if d > 0 {
                    prop_assert!(coverage_count(&e, s, d - 1).unwrap() < need);
                }
            }
            None => prop_assert!(coverage_count(&e, s, u32::MAX - 1).unwrap() < need),
        }
    }

    #[test]
    fn eccentricity_is_full_coverage_time(g in common::small_graphs(), s_pick in any::<u32>()) {
        let e = build_esdg(&g);
        let s = s_pick % g.vertex_count() as u32;
        let ecc = eccentricity(&e, s).unwrap();
        prop_assert_eq!(ecc, coverage_time(&e, s, Percent::new(100).unwrap()).unwrap());
        let r = coverage_report(&e, s, Some(3), Some(Percent::new(100).unwrap())).unwrap();
        prop_assert_eq!(r.eccentricity, ecc);
        prop_assert_eq!(r.coverage_count, Some(coverage_count(&e, s, 3).unwrap()));
    }
}

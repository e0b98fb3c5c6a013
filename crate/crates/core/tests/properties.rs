use manymatch::axioms::{is_substitutable, satisfies_lad};
use manymatch::cycles::{build_digraph, cyclic_matching, find_cycles};
use manymatch::matching::{blair_interval, rural_hospitals_holds};
use manymatch::{
    brute_force_stable_set, deferred_acceptance, is_stable, mms_algorithm, random_market, reduce, stable_set,
    unanimous_blair_geq, GenConfig, Matching, Profile, Side,
};
use proptest::prelude::*;

fn config(f: usize, w: usize, q: usize, p: f64, seed: u64) -> GenConfig {
    GenConfig {
        n_firms: f,
        n_workers: w,
        quota: q,
        acceptability_prob: p,
        seed,
    }
}

/// Mostly fully acceptable, balanced markets: sparse or lopsided ones nearly
/// always have a single stable matching.
fn market() -> impl Strategy<Value = Profile> {
    let any_shape = (2usize..=4, 2usize..=5, 1usize..=2, 0.5f64..=1.0, any::<u64>())
        .prop_map(|(f, w, q, p, seed)| config(f, w, q, p, seed));
    let balanced = (
        prop::sample::select(vec![(3, 3, 1), (4, 4, 1), (4, 4, 2), (4, 5, 1), (2, 4, 2), (3, 5, 2)]),
        any::<u64>(),
    )
        .prop_map(|((f, w, q), seed)| config(f, w, q, 1.0, seed));
    prop_oneof![1 => any_shape, 3 => balanced].prop_map(|cfg| random_market(&cfg).unwrap())
}

fn comparable_pairs<'a>(p: &'a Profile, stable: &'a [Matching]) -> impl Iterator<Item = (&'a Matching, &'a Matching)> {
    stable.iter().flat_map(move |a| {
        stable
            .iter()
            .filter(move |b| unanimous_blair_geq(p, a, b, Side::Firm))
            .map(move |b| (a, b))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn enumeration_matches_oracle(p in market()) {
        let (found, _) = stable_set(&p).unwrap();
        prop_assert_eq!(found, brute_force_stable_set(&p).unwrap());
    }

    #[test]
    fn reduced_stable_set_is_blair_interval(p in market()) {
        let stable = brute_force_stable_set(&p).unwrap();
        for (hi, lo) in comparable_pairs(&p, &stable) {
            let r = reduce(&p, hi, lo).unwrap();
            prop_assert_eq!(brute_force_stable_set(r.profile()).unwrap(), blair_interval(&p, &stable, hi, lo));
            for a in p.all_agents() {
                prop_assert!(is_substitutable(r.profile().pref(a), 12).unwrap());
                prop_assert!(satisfies_lad(r.profile().pref(a), 12).unwrap());
            }
            let (top, _) = deferred_acceptance(r.profile(), Side::Firm).unwrap();
            let (bottom, _) = deferred_acceptance(r.profile(), Side::Worker).unwrap();
            prop_assert_eq!(&top, hi);
            prop_assert_eq!(&bottom, lo);
        }
    }

    #[test]
    fn cycles_exist_iff_matchings_differ(p in market()) {
        let stable = brute_force_stable_set(&p).unwrap();
        for (hi, lo) in comparable_pairs(&p, &stable) {
            let r = reduce(&p, hi, lo).unwrap();
            let cycles = find_cycles(&r, hi, lo);
            prop_assert_eq!(cycles.is_empty(), hi == lo);
            prop_assert!(build_digraph(&r, hi, lo).max_out_degree() <= 1);
            for c in &cycles {
                let next = cyclic_matching(hi, c);
                prop_assert!(&next != hi);
                prop_assert!(is_stable(r.profile(), &next));
                prop_assert!(is_stable(&p, &next));
                prop_assert!(unanimous_blair_geq(&p, hi, &next, Side::Firm));
                prop_assert!(unanimous_blair_geq(&p, &next, lo, Side::Firm));
                prop_assert!(rural_hospitals_holds([hi, &next]));
            }
        }
    }

    #[test]
    fn every_non_optimal_matching_is_reached_by_a_cycle(p in market()) {
        let (found, trace) = stable_set(&p).unwrap();
        let mu_f = trace.mu_f.clone().unwrap();
        for m in found.iter().filter(|m| **m != mu_f) {
            prop_assert!(trace.produced().any(|x| x == m));
        }
        prop_assert!(trace.produced().all(|m| found.binary_search(m).is_ok()));
    }

    #[test]
    fn structure_of_stable_set(p in market()) {
        let stable = brute_force_stable_set(&p).unwrap();
        prop_assert!(rural_hospitals_holds(&stable));
        for a in &stable {
            for b in &stable {
                prop_assert_eq!(
                    unanimous_blair_geq(&p, a, b, Side::Firm),
                    unanimous_blair_geq(&p, b, a, Side::Worker)
                );
            }
        }
        let (mf, _) = deferred_acceptance(&p, Side::Firm).unwrap();
        let (mw, _) = deferred_acceptance(&p, Side::Worker).unwrap();
        for m in &stable {
            prop_assert!(unanimous_blair_geq(&p, &mf, m, Side::Firm));
            prop_assert!(unanimous_blair_geq(&p, &mw, m, Side::Worker));
        }
    }

    #[test]
    fn truncation_algorithm_never_invents_matchings(p in market()) {
        let stable = brute_force_stable_set(&p).unwrap();
        let out = mms_algorithm(&p).unwrap();
        for m in &out.matchings {
            prop_assert!(stable.binary_search(m).is_ok());
        }
    }
}

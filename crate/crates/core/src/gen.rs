//! Random markets with responsive preferences.
//!
//! Each agent finds each partner acceptable independently with probability
//! `acceptability_prob`, ranks the acceptable ones uniformly at random, and
//! lists every nonempty set of at most `quota` acceptable partners. Sets are
//! ordered by their sorted rank vectors, padded to `quota` with +∞ and
//! compared lexicographically (smaller first). The resulting choice function
//! picks the best `quota` acceptable partners available, so it is
//! substitutable and satisfies the law of aggregate demand.
//!
//! The generator is `ChaCha8Rng::seed_from_u64(seed)`. Draws happen firm by
//! firm then worker by worker; per agent, one Bernoulli draw per partner in
//! index order, then a Fisher-Yates shuffle of the acceptable ones.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::market::Profile;
use crate::partner_set::{PartnerSet, MAX_SIDE};

/// Upper bound on the length of any generated ranked list.
pub const GEN_LIST_CAP: u128 = 4096;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenConfig {
    pub n_firms: usize,
    pub n_workers: usize,
    pub quota: usize,
    pub acceptability_prob: f64,
    pub seed: u64,
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Worst-case list length: every opposite agent acceptable.
fn max_list_len(n_opposite: usize, quota: usize) -> u128 {
    (1..=quota.min(n_opposite)).map(|k| binomial(n_opposite, k)).fold(0u128, u128::saturating_add)
}

/// The responsive list over `ranking` (best first) with sets of size at most
/// `quota`.
pub fn responsive_list(ranking: &[usize], quota: usize) -> Vec<PartnerSet> {
    // Combinations of rank positions in lexicographic order are already
    // sorted by padded rank vector, except that a prefix must come after its
    // extensions. Collect and sort explicitly.
    let mut combos: Vec<Vec<usize>> = Vec::new();
    let mut current = Vec::new();
    fn walk(start: usize, n: usize, quota: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for i in start..n {
            current.push(i);
            out.push(current.clone());
            if current.len() < quota {
                walk(i + 1, n, quota, current, out);
            }
            current.pop();
        }
    }
    walk(0, ranking.len(), quota, &mut current, &mut combos);
    let key = |c: &Vec<usize>| {
        let mut k = c.clone();
        k.resize(quota, usize::MAX);
        k
    };
    combos.sort_by_cached_key(key);
    combos
        .into_iter()
        .map(|c| c.into_iter().map(|pos| ranking[pos]).collect())
        .collect()
}

pub fn random_market(cfg: &GenConfig) -> Result<Profile> {
    if cfg.quota == 0 {
        return Err(Error::InvalidProfile("quota must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&cfg.acceptability_prob) {
        return Err(Error::InvalidProfile(format!(
            "acceptability probability {} outside [0, 1]",
            cfg.acceptability_prob
        )));
    }
    for n in [cfg.n_firms, cfg.n_workers] {
        if n > MAX_SIDE {
            return Err(Error::CapExceeded {
                what: "market side",
                size: n as u128,
                cap: MAX_SIDE as u128,
            });
        }
    }
    for n_opposite in [cfg.n_workers, cfg.n_firms] {
        let len = max_list_len(n_opposite, cfg.quota);
        if len > GEN_LIST_CAP {
            return Err(Error::CapExceeded {
                what: "generated list length",
                size: len,
                cap: GEN_LIST_CAP,
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut side = |count: usize, n_opposite: usize| -> Vec<Vec<PartnerSet>> {
        (0..count)
            .map(|_| {
                let mut ranking: Vec<usize> = (0..n_opposite)
                    .filter(|_| rng.gen_bool(cfg.acceptability_prob))
                    .collect();
                ranking.shuffle(&mut rng);
                responsive_list(&ranking, cfg.quota)
            })
            .collect()
    };
    let firms = side(cfg.n_firms, cfg.n_workers);
    let workers = side(cfg.n_workers, cfg.n_firms);
    Profile::new(firms, workers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{is_substitutable, satisfies_lad};
    use crate::market::AgentId;

    fn cfg(seed: u64) -> GenConfig {
        GenConfig {
            n_firms: 3,
            n_workers: 4,
            quota: 2,
            acceptability_prob: 0.8,
            seed,
        }
    }

    #[test]
    fn responsive_order() {
        let l = responsive_list(&[7, 3, 5], 2);
        let show: Vec<Vec<usize>> = l.iter().map(|s| s.iter().collect()).collect();
        assert_eq!(
            show,
            vec![vec![3, 7], vec![5, 7], vec![7], vec![3, 5], vec![3], vec![5]]
        );
        assert!(responsive_list(&[], 2).is_empty());
        assert_eq!(responsive_list(&[2, 0, 1], 1).len(), 3);
    }

    #[test]
    fn deterministic_for_seed() {
        assert_eq!(random_market(&cfg(9)).unwrap(), random_market(&cfg(9)).unwrap());
        let distinct = (0..20).map(|s| random_market(&cfg(s)).unwrap()).collect::<Vec<_>>();
        assert!(distinct.windows(2).any(|w| w[0] != w[1]));
    }

    #[test]
    fn quota_one_gives_singletons() {
        let p = random_market(&GenConfig { quota: 1, ..cfg(4) }).unwrap();
        for a in p.all_agents() {
            assert!(p.pref(a).ranked().iter().all(|s| s.len() == 1));
        }
    }

    #[test]
    fn generated_preferences_satisfy_axioms() {
        for seed in 0..50 {
            let p = random_market(&cfg(seed)).unwrap();
            for a in p.all_agents() {
                assert!(is_substitutable(p.pref(a), 12).unwrap());
                assert!(satisfies_lad(p.pref(a), 12).unwrap());
            }
        }
    }

    #[test]
    fn choice_is_top_quota_available() {
        for seed in 0..20 {
            let ranking_of = |p: &Profile, a: AgentId| -> Vec<usize> {
                // singletons appear in rank order
                p.pref(a)
                    .ranked()
                    .iter()
                    .filter(|s| s.len() == 1)
                    .map(|s| s.iter().next().unwrap())
                    .collect()
            };
            let c = cfg(seed);
            let p = random_market(&c).unwrap();
            for a in p.all_agents() {
                let ranking = ranking_of(&p, a);
                for s in PartnerSet::full(p.n_opposite(a)).subsets() {
                    let expect: PartnerSet = ranking.iter().copied().filter(|&x| s.contains(x)).take(c.quota).collect();
                    assert_eq!(p.choice(a, s), expect);
                }
            }
        }
    }

    #[test]
    fn bad_configs_rejected() {
        assert!(matches!(random_market(&GenConfig { quota: 0, ..cfg(0) }), Err(Error::InvalidProfile(_))));
        assert!(matches!(
            random_market(&GenConfig { acceptability_prob: 1.5, ..cfg(0) }),
            Err(Error::InvalidProfile(_))
        ));
        assert!(matches!(
            random_market(&GenConfig { n_workers: 40, quota: 4, ..cfg(0) }),
            Err(Error::CapExceeded { .. })
        ));
        assert_eq!(max_list_len(4, 2), 10);
    }
}

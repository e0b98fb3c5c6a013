use manymatch::fixtures::*;
use manymatch::{reduce, AgentId, Matching, Profile, Side};

fn render(profile: &Profile, agent: AgentId) -> String {
    let prefix = match agent.side {
        Side::Firm => "w",
        Side::Worker => "f",
    };
    profile
        .pref(agent)
        .ranked()
        .iter()
        .map(|s| s.iter().map(|i| format!("{prefix}{}", i + 1)).collect::<String>())
        .collect::<Vec<_>>()
        .join(",")
}

fn rendered(profile: &Profile) -> Vec<String> {
    profile.all_agents().map(|a| render(profile, a)).collect()
}

fn check(mu: Matching, expected: [&str; 9]) {
    let r = reduce(&example1(), &mu, &example1_mu_w()).unwrap();
    assert_eq!(rendered(r.profile()), expected.map(String::from).to_vec());
}

#[test]
fn firm_optimal_reduction() {
    // f3 loses w3: w3 never accepts f3
    check(
        example1_mu_f(),
        [
            "w1w2,w1w3,w2w4,w1w4,w3w4,w2w3,w1,w4,w3,w2",
            "w3w5,w2w5,w2w3,w2,w3,w5",
            "w2w4,w1w2,w1w4,w1,w2,w4",
            "f3,f1",
            "f2f3,f1f3,f1f2,f1,f2,f3",
            "f1,f2",
            "f1,f3",
            "f2",
            "",
        ],
    );
}

#[test]
fn first_cyclic_matching_reduction() {
    // w4 loses f3: C_w4({f1, f3}) = {f1} is w4's assignment
    check(
        example1_mu_sigma1(),
        [
            "w2w4,w3w4,w2w3,w4,w3,w2",
            "w3w5,w2w5,w2w3,w2,w3,w5",
            "w1w2,w1,w2",
            "f3",
            "f2f3,f1f3,f1f2,f1,f2,f3",
            "f1,f2",
            "f1",
            "f2",
            "",
        ],
    );
}

#[test]
fn second_cyclic_matching_reduction() {
    // w2 is matched to {f2, f3} at both ends, so every set with f1 goes
    check(
        example1_mu_sigma2(),
        [
            "w1w3,w1w4,w3w4,w1,w4,w3",
            "w2w5,w2,w5",
            "w2w4,w1w2,w1w4,w1,w2,w4",
            "f3,f1",
            "f2f3,f2,f3",
            "f1",
            "f1,f3",
            "f2",
            "",
        ],
    );
}

#[test]
fn direct_and_chained_reductions_coincide() {
    let p = example1();
    let mw = example1_mu_w();
    let base = reduce(&p, &example1_mu_f(), &mw).unwrap().into_profile();
    for mu in [example1_mu_f(), example1_mu_sigma1(), example1_mu_sigma2(), mw.clone()] {
        let direct = reduce(&p, &mu, &mw).unwrap();
        let chained = reduce(&base, &mu, &mw).unwrap();
        assert_eq!(direct.profile(), chained.profile());
    }
}

#[test]
fn one_to_one_reductions() {
    let p = example2();
    let mw = example2_mu_w();
    let r = reduce(&p, &example2_mu_f(), &mw).unwrap();
    assert_eq!(
        rendered(r.profile()),
        ["w1,w3,w4", "w2,w1", "w4,w2,w3", "w3,w2", "f2,f1", "f4,f3,f2", "f3,f1,f4", "f1,f3"]
    );
    let r = reduce(&p, &mw, &mw).unwrap();
    for a in p.all_agents() {
        let own = mw.partners(a);
        let ranked = r.profile().pref(a).ranked();
        assert!(ranked.iter().all(|s| s.is_subset(own)));
        assert_eq!(ranked.first().copied().unwrap_or_default(), own);
    }
}

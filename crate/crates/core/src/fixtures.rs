//! The two worked markets used throughout the test-suite, plus a compact
//! parser for ranked lists written as `w1w2,w3,w1` (one-based labels).

use crate::market::Profile;
use crate::matching::Matching;
use crate::partner_set::PartnerSet;

/// Parses `"w1w2,w1w5,w3"` (or the `f` equivalent) into ranked sets.
/// An empty string or `"∅"` yields an empty list.
pub fn parse_list(text: &str) -> Vec<PartnerSet> {
    let text = text.trim();
    if text.is_empty() || text == "∅" {
        return Vec::new();
    }
    text.split(',').map(|item| parse_set(item.trim())).collect()
}

/// Parses `"w1w2"` into `{0, 1}`.
pub fn parse_set(item: &str) -> PartnerSet {
    item.split(['w', 'f'])
        .filter(|s| !s.is_empty())
        .map(|n| {
            let n: usize = n.trim().parse().expect("agent label");
            n - 1
        })
        .collect()
}

/// One-based shorthand: `set(&[1, 2])` is `{w1, w2}` (or `{f1, f2}`).
pub fn set(members: &[usize]) -> PartnerSet {
    members.iter().map(|m| m - 1).collect()
}

fn profile(firms: &[&str], workers: &[&str]) -> Profile {
    Profile::new(
        firms.iter().map(|l| parse_list(l)).collect(),
        workers.iter().map(|l| parse_list(l)).collect(),
    )
    .expect("fixture profile")
}

fn matching(n_workers: usize, assign: &[&str]) -> Matching {
    Matching::new(n_workers, assign.iter().map(|s| parse_set(s)).collect())
}

/// Three firms, six workers; four stable matchings.
pub fn example1() -> Profile {
    profile(
        &[
            "w1w2,w1w5,w2w5,w1w3,w4w5,w2w4,w1w4,w3w4,w3w5,w2w3,w1,w4,w3,w2,w5",
            "w3w6,w3w5,w5w6,w2w5,w1w3,w2w6,w1w5,w1w2,w2w3,w1w6,w1,w2,w3,w5,w6",
            "w2w4,w1w2,w3w4,w2w3,w1w3,w1w4,w1,w2,w3,w4",
        ],
        &[
            "f3,f1,f2",
            "f2f3,f1f3,f1f2,f1,f2,f3",
            "f1,f2",
            "f1,f3,f2",
            "f2,f3",
            "f1f3,f3,f1",
        ],
    )
}

pub fn example1_mu_f() -> Matching {
    matching(6, &["w1w2", "w3w5", "w2w4"])
}

pub fn example1_mu_w() -> Matching {
    matching(6, &["w3w4", "w2w5", "w1w2"])
}

pub fn example1_mu_sigma1() -> Matching {
    matching(6, &["w2w4", "w3w5", "w1w2"])
}

pub fn example1_mu_sigma2() -> Matching {
    matching(6, &["w1w3", "w2w5", "w2w4"])
}

/// One-to-one market with four agents per side; three stable matchings.
pub fn example2() -> Profile {
    profile(
        &["w2,w1,w3,w4", "w4,w2,w3,w1", "w4,w2,w3,w1", "w3,w1,w4,w2"],
        &["f2,f1,f4,f3", "f4,f3,f2,f1", "f3,f1,f4,f2", "f1,f3,f4,f2"],
    )
}

pub fn example2_mu_f() -> Matching {
    matching(4, &["w1", "w2", "w4", "w3"])
}

/// The intermediate stable matching the truncation algorithm never finds.
pub fn example2_mu() -> Matching {
    matching(4, &["w3", "w1", "w4", "w2"])
}

pub fn example2_mu_w() -> Matching {
    matching(4, &["w4", "w1", "w3", "w2"])
}

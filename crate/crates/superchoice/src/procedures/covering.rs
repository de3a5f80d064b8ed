//! Covering-based solutions: Fishburn, the two uncovered sets, Richelson.
//!
//! Each variant picks the alternatives that no other alternative covers.
//! `uncovered_lower` (uncovered set I) covers y by x when x μ y and
//! L(y) ⊆ L(x); `uncovered_upper` (uncovered set II) when x μ y and
//! D(x) ⊆ D(y).

use fixedbitset::FixedBitSet;

use crate::altset::AltSet;
use crate::majority::MajorityRelation;

fn uncovered(mu: &MajorityRelation, covers: impl Fn(usize, usize) -> bool) -> AltSet {
    let m = mu.m();
    mu.universe()
        .from_locals((0..m).filter(|&y| !(0..m).any(|x| x != y && covers(x, y))))
}

fn proper_subset(a: &FixedBitSet, b: &FixedBitSet) -> bool {
    a.is_subset(b) && a.count_ones(..) < b.count_ones(..)
}

/// x covers y iff D(x) ⊊ D(y).
pub fn fishburn(mu: &MajorityRelation) -> AltSet {
    uncovered(mu, |x, y| proper_subset(mu.upper(x), mu.upper(y)))
}

/// Uncovered set I: x covers y iff x μ y and L(y) ⊆ L(x).
pub fn uncovered_lower(mu: &MajorityRelation) -> AltSet {
    uncovered(mu, |x, y| {
        mu.beats(x, y) && mu.lower(y).is_subset(mu.lower(x))
    })
}

/// Uncovered set II: x covers y iff x μ y and D(x) ⊆ D(y).
pub fn uncovered_upper(mu: &MajorityRelation) -> AltSet {
    uncovered(mu, |x, y| {
        mu.beats(x, y) && mu.upper(x).is_subset(mu.upper(y))
    })
}

/// x covers y iff x μ y, D(x) ⊆ D(y) and L(y) ⊆ L(x).
pub fn richelson(mu: &MajorityRelation) -> AltSet {
    uncovered(mu, |x, y| {
        mu.beats(x, y) && mu.upper(x).is_subset(mu.upper(y)) && mu.lower(y).is_subset(mu.lower(x))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu(labels: &str, edges: &str) -> MajorityRelation {
        let l: Vec<&str> = labels.split_whitespace().collect();
        MajorityRelation::from_edge_list(&l, edges).unwrap()
    }

    fn fmt(mu: &MajorityRelation, s: &AltSet) -> String {
        mu.universe().format_set(s)
    }

    #[test]
    fn fishburn_on_six_alternatives() {
        let m = mu(
            "a b c d e f",
            "a>b a>e a>f b>c b>d b>f c>a c>d c>e d>a e>d e>f f>c f>d",
        );
        assert_eq!(fmt(&m, &fishburn(&m)), "{a, b, c}");
    }

    #[test]
    fn fishburn_on_five_alternatives() {
        let m = mu("a b c d e", "a>b a>d a>e b>c b>d c>a c>d d>e");
        assert_eq!(fmt(&m, &fishburn(&m)), "{a, b, c}");
        let no_d = m
            .restrict(&m.universe().parse_set("a b c e").unwrap())
            .unwrap();
        assert_eq!(fmt(&no_d, &fishburn(&no_d)), "{a, b, c, e}");
    }

    #[test]
    fn upper_and_lower_uncovered_sets_differ() {
        // a>c, f>a with c and f tied: x μ y and D(x) ⊆ D(y) removes a only
        let m = mu("a c f", "a>c f>a");
        assert_eq!(fmt(&m, &uncovered_upper(&m)), "{c, f}");
        assert_eq!(fmt(&m, &uncovered_lower(&m)), "{a, f}");
        assert_eq!(fmt(&m, &richelson(&m)), "{a, c, f}");
    }

    #[test]
    fn transitive_relation_leaves_top() {
        let m = mu("a b c d", "c>a c>b c>d a>b a>d b>d");
        for f in [fishburn, uncovered_lower, uncovered_upper, richelson] {
            assert_eq!(fmt(&m, &f(&m)), "{c}");
        }
    }
}

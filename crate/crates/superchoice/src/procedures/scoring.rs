//! Positional rules and the Condorcet winner.

use super::{argmax, argmin};
use crate::altset::AltSet;
use crate::profile::Profile;

/// The alternative ranked first by a strict majority, if any.
pub fn simple_majority(p: &Profile) -> AltSet {
    let n = p.n() as u32;
    let f = p.first_place_counts();
    p.universe()
        .from_locals((0..p.m()).filter(|&x| 2 * f[x] > n))
}

pub fn plurality(p: &Profile) -> AltSet {
    p.universe().from_locals(argmax(&p.first_place_counts()))
}

/// Fewest last places.
pub fn inverse_plurality(p: &Profile) -> AltSet {
    p.universe().from_locals(argmin(&p.last_place_counts()))
}

/// Most appearances among the top q positions.
pub fn q_approval(p: &Profile, q: usize) -> AltSet {
    p.universe().from_locals(argmax(&p.top_counts(q)))
}

pub fn borda(p: &Profile) -> AltSet {
    p.universe().from_locals(argmax(&p.borda_counts()))
}

/// Condorcet winner if there is one, otherwise the Borda choice.
pub fn black(p: &Profile) -> AltSet {
    let w = condorcet_winner(p);
    if w.is_empty() {
        borda(p)
    } else {
        w
    }
}

/// Linear candidate scan followed by a verification pass.
pub fn condorcet_winner(p: &Profile) -> AltSet {
    let r = p.ranks();
    let n = p.n() as u32;
    let mut c = 0;
    for x in 1..p.m() {
        if 2 * r.support(c, x) <= n {
            c = x;
        }
    }
    if (0..p.m()).all(|y| y == c || 2 * r.support(c, y) > n) {
        p.universe().from_locals([c])
    } else {
        AltSet::empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(p: &Profile, s: &AltSet) -> String {
        p.universe().format_set(s)
    }

    #[test]
    fn majority_on_two_way_contraction() {
        let p = Profile::from_rankings(&["a c b", "a c b", "c b a", "b a c", "b a c"]).unwrap();
        let bc = p.contract(&p.universe().parse_set("b,c").unwrap()).unwrap();
        assert_eq!(set(&bc, &simple_majority(&bc)), "{c}");
        assert_eq!(set(&p, &simple_majority(&p)), "{}");
    }

    #[test]
    fn plurality_keeps_ties() {
        let p = Profile::from_rankings(&["a c b", "a c b", "c a b", "b c a", "b c a", "c b a"])
            .unwrap();
        // firsts a 2, b 2, c 2
        assert_eq!(set(&p, &plurality(&p)), "{a, b, c}");
        let p = Profile::from_rankings(&["a c b", "a c b", "c a b", "b c a", "b c a"]).unwrap();
        assert_eq!(set(&p, &plurality(&p)), "{a, b}");
    }

    #[test]
    fn inverse_plurality_fewest_lasts() {
        let p = Profile::from_rankings(&["b a c d", "d b a c", "a d c b"]).unwrap();
        assert_eq!(set(&p, &inverse_plurality(&p)), "{a}");
    }

    #[test]
    fn one_approval_is_plurality() {
        let p = Profile::from_rankings(&["a b c", "b c a", "c a b", "a c b"]).unwrap();
        assert_eq!(q_approval(&p, 1), plurality(&p));
        assert_eq!(set(&p, &q_approval(&p, 2)), "{a, c}");
    }

    #[test]
    fn black_falls_back_to_borda_on_cycle() {
        let p = Profile::from_rankings(&["a b d", "a b d", "d a b", "b d a", "b d a"]).unwrap();
        assert_eq!(set(&p, &condorcet_winner(&p)), "{}");
        assert_eq!(set(&p, &black(&p)), "{b}");
        let q = Profile::from_rankings(&["a b c", "b a c", "a c b"]).unwrap();
        assert_eq!(set(&q, &black(&q)), "{a}");
        assert_eq!(set(&q, &condorcet_winner(&q)), "{a}");
    }

    #[test]
    fn borda_ties_on_five_voter_example() {
        let p = Profile::from_rankings(&[
            "e a b c d",
            "e a b c d",
            "a d c b e",
            "b c e a d",
            "b c a d e",
        ])
        .unwrap();
        assert_eq!(set(&p, &borda(&p)), "{a, b}");
    }
}

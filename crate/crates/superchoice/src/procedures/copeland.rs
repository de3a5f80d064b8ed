//! Copeland rules: u₁ = |L| − |D|, u₂ = |L|, u₃ = −|D|.

use super::argmax;
use crate::altset::AltSet;
use crate::majority::MajorityRelation;
use crate::profile::Profile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CopelandVariant {
    One,
    Two,
    Three,
}

impl CopelandVariant {
    fn score(self, wins: i64, losses: i64) -> i64 {
        match self {
            CopelandVariant::One => wins - losses,
            CopelandVariant::Two => wins,
            CopelandVariant::Three => -losses,
        }
    }
}

pub fn copeland_mu(mu: &MajorityRelation, v: CopelandVariant) -> AltSet {
    let scores: Vec<i64> = (0..mu.m())
        .map(|x| {
            v.score(
                mu.lower(x).count_ones(..) as i64,
                mu.upper(x).count_ones(..) as i64,
            )
        })
        .collect();
    mu.universe().from_locals(argmax(&scores))
}

/// Streams pairwise supports from the rank table without storing μ.
pub fn copeland(p: &Profile, v: CopelandVariant) -> AltSet {
    let m = p.m();
    let n = p.n() as u32;
    let r = p.ranks();
    let mut wins = vec![0i64; m];
    let mut losses = vec![0i64; m];
    for x in 0..m {
        for y in x + 1..m {
            let s = r.support(x, y);
            if 2 * s > n {
                wins[x] += 1;
                losses[y] += 1;
            } else if 2 * s < n {
                wins[y] += 1;
                losses[x] += 1;
            }
        }
    }
    let scores: Vec<i64> = (0..m).map(|x| v.score(wins[x], losses[x])).collect();
    p.universe().from_locals(argmax(&scores))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scores_on_six_alternative_relation() {
        let mu = MajorityRelation::from_edge_list(
            &["a", "b", "c", "d", "e", "f"],
            "a>b a>f b>c c>a d>b e>d f>e",
        )
        .unwrap();
        let u1: Vec<i64> = (0..6)
            .map(|x| mu.lower(x).count_ones(..) as i64 - mu.upper(x).count_ones(..) as i64)
            .collect();
        assert_eq!(u1, vec![1, -1, 0, 0, 0, 0]);
        assert_eq!(
            mu.universe()
                .format_set(&copeland_mu(&mu, CopelandVariant::One)),
            "{a}"
        );
        assert_eq!(
            mu.universe()
                .format_set(&copeland_mu(&mu, CopelandVariant::Two)),
            "{a}"
        );
    }

    #[test]
    fn cycle_chooses_everything() {
        let p = Profile::from_rankings(&["a b c", "b c a", "c a b"]).unwrap();
        for v in [
            CopelandVariant::One,
            CopelandVariant::Two,
            CopelandVariant::Three,
        ] {
            assert_eq!(copeland(&p, v), p.universe().all());
        }
    }

    #[test]
    fn profile_and_relation_paths_agree() {
        let p = Profile::from_rankings(&["a b c d", "b a d c", "c a b d", "a d c b"]).unwrap();
        let mu = p.majority_relation();
        for v in [
            CopelandVariant::One,
            CopelandVariant::Two,
            CopelandVariant::Three,
        ] {
            assert_eq!(copeland(&p, v), copeland_mu(&mu, v));
        }
    }
}

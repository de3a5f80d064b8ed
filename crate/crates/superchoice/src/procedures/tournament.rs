//! Minimax and Simpson on pairwise supports.

use super::{argmax, argmin};
use crate::altset::AltSet;
use crate::majority::TournamentMatrix;
use crate::profile::Profile;

/// Largest opposition max_x S(x, y) and smallest support min_x S(y, x) per
/// alternative, streamed from the rank table.
fn extremes(p: &Profile) -> (Vec<u32>, Vec<u32>) {
    let m = p.m();
    let n = p.n() as u32;
    let r = p.ranks();
    let mut worst_opp = vec![0u32; m];
    let mut min_support = vec![if m > 1 { u32::MAX } else { 0 }; m];
    for x in 0..m {
        for y in x + 1..m {
            let sxy = r.support(x, y);
            let syx = n - sxy;
            worst_opp[y] = worst_opp[y].max(sxy);
            worst_opp[x] = worst_opp[x].max(syx);
            min_support[x] = min_support[x].min(sxy);
            min_support[y] = min_support[y].min(syx);
        }
    }
    (worst_opp, min_support)
}

/// argmin over y of max over x ≠ y of S(x, y).
pub fn minimax(p: &Profile) -> AltSet {
    p.universe().from_locals(argmin(&extremes(p).0))
}

/// argmax over x of min over y ≠ x of S(x, y).
pub fn simpson(p: &Profile) -> AltSet {
    p.universe().from_locals(argmax(&extremes(p).1))
}

pub fn minimax_matrix(s: &TournamentMatrix) -> AltSet {
    let m = s.m();
    let worst: Vec<u32> = (0..m)
        .map(|y| {
            (0..m)
                .filter(|&x| x != y)
                .map(|x| s.get(x, y))
                .max()
                .unwrap_or(0)
        })
        .collect();
    s.universe().from_locals(argmin(&worst))
}

pub fn simpson_matrix(s: &TournamentMatrix) -> AltSet {
    let m = s.m();
    let least: Vec<u32> = (0..m)
        .map(|x| {
            (0..m)
                .filter(|&y| y != x)
                .map(|y| s.get(x, y))
                .min()
                .unwrap_or(0)
        })
        .collect();
    s.universe().from_locals(argmax(&least))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fifteen() -> Profile {
        let mut rows = vec!["c b d a"; 2];
        rows.push("b c d a");
        rows.push("a b c d");
        rows.extend(["a c b d"; 4]);
        rows.push("c b d a");
        rows.push("d c a b");
        rows.extend(["d b a c"; 3]);
        rows.push("b a d c");
        rows.push("c d a b");
        Profile::from_rankings_in(
            crate::altset::Universe::new(["a", "b", "c", "d"]).unwrap(),
            &rows,
        )
        .unwrap()
    }

    #[test]
    fn support_matrix_of_fifteen_voters() {
        let s = fifteen().tournament_matrix();
        let rows: Vec<Vec<u32>> = (0..4)
            .map(|x| (0..4).filter(|&y| y != x).map(|y| s.get(x, y)).collect())
            .collect();
        assert_eq!(rows, [[7, 9, 6], [8, 6, 10], [6, 9, 10], [9, 5, 5]]);
        assert_eq!(s.universe().format_set(&minimax_matrix(&s)), "{a, b, c}");
    }

    #[test]
    fn streaming_matches_matrix() {
        let p = fifteen();
        let s = p.tournament_matrix();
        assert_eq!(minimax(&p), minimax_matrix(&s));
        assert_eq!(simpson(&p), simpson_matrix(&s));
        assert_eq!(p.universe().format_set(&minimax(&p)), "{a, b, c}");
    }

    #[test]
    fn singleton_is_chosen() {
        let p = Profile::from_rankings(&["a"]).unwrap();
        assert_eq!(minimax(&p), p.universe().all());
        assert_eq!(simpson(&p), p.universe().all());
    }
}

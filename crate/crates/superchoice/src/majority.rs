//! Majority relation, pairwise support matrix and McGarvey realization.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::altset::{AltId, AltSet, Universe};
use crate::error::{parse_err, Error, Result};
use crate::profile::{content_lines, Profile};

/// Asymmetric relation μ with out- and in-neighbour bitsets per alternative.
///
/// `out[x]` is the lower contour set L(x), `inn[x]` the upper contour set D(x).
#[derive(Clone, PartialEq, Eq)]
pub struct MajorityRelation {
    universe: Universe,
    out: Vec<FixedBitSet>,
    inn: Vec<FixedBitSet>,
}

impl MajorityRelation {
    pub fn empty(universe: Universe) -> Self {
        let m = universe.len();
        MajorityRelation {
            universe,
            out: vec![FixedBitSet::with_capacity(m); m],
            inn: vec![FixedBitSet::with_capacity(m); m],
        }
    }

    pub fn from_profile(p: &Profile) -> Self {
        let mut mu = Self::empty(p.universe().clone());
        let r = p.ranks();
        let n = p.n() as u32;
        for x in 0..p.m() {
            for y in x + 1..p.m() {
                let s = r.support(x, y);
                if 2 * s > n {
                    mu.set(x, y);
                } else if 2 * s < n {
                    mu.set(y, x);
                }
            }
        }
        mu
    }

    /// Builds μ from local-index edges `x μ y`.
    pub fn from_edges(universe: Universe, edges: &[(usize, usize)]) -> Result<Self> {
        let mut mu = Self::empty(universe);
        for &(x, y) in edges {
            if x == y {
                return Err(Error::SelfComparison);
            }
            if mu.beats(y, x) {
                return Err(Error::Config(format!(
                    "relation is not asymmetric on ({}, {})",
                    mu.universe.label(x),
                    mu.universe.label(y)
                )));
            }
            mu.set(x, y);
        }
        Ok(mu)
    }

    /// Edges written as `a>b` tokens.
    pub fn from_edge_list(labels: &[&str], edges: &str) -> Result<Self> {
        let universe = Universe::new(labels.iter().copied())?;
        let mut e = Vec::new();
        for tok in edges.split_whitespace() {
            let (x, y) = tok
                .split_once('>')
                .ok_or_else(|| Error::Config(format!("bad edge `{tok}`")))?;
            e.push((universe.local(x)?, universe.local(y)?));
        }
        Self::from_edges(universe, &e)
    }

    /// Parses the matrix format: header of labels, then one row per label,
    /// optionally led by the row label, entries `1`, `0` or `-`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or(Error::EmptyProfile)?;
        let cols: Vec<&str> = header.split_whitespace().collect();
        let universe =
            Universe::new(cols.iter().copied()).map_err(|e| parse_err(hline, e.to_string()))?;
        let m = cols.len();
        let mut rows: Vec<Option<Vec<bool>>> = vec![None; m];
        for (k, (ln, line)) in lines.enumerate() {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let (row_label, cells) = if toks.len() == m + 1 {
                (toks[0], &toks[1..])
            } else if toks.len() == m && k < m {
                (cols[k], &toks[..])
            } else {
                return Err(parse_err(ln, format!("expected {m} entries")));
            };
            let pos = cols
                .iter()
                .position(|c| *c == row_label)
                .ok_or_else(|| parse_err(ln, format!("unknown row `{row_label}`")))?;
            if rows[pos].is_some() {
                return Err(parse_err(ln, format!("row `{row_label}` given twice")));
            }
            let mut row = Vec::with_capacity(m);
            for (c, cell) in cells.iter().enumerate() {
                row.push(match *cell {
                    "1" if c != pos => true,
                    "0" | "-" => false,
                    _ => return Err(parse_err(ln, format!("bad entry `{cell}`"))),
                });
            }
            rows[pos] = Some(row);
        }
        let mut edges = Vec::new();
        for (pos, row) in rows.iter().enumerate() {
            let row = row
                .as_ref()
                .ok_or_else(|| parse_err(hline, format!("missing row `{}`", cols[pos])))?;
            for (c, &b) in row.iter().enumerate() {
                if b {
                    edges.push((
                        universe.local(cols[pos]).unwrap(),
                        universe.local(cols[c]).unwrap(),
                    ));
                }
            }
        }
        Self::from_edges(universe, &edges).map_err(|e| parse_err(hline, e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let m = self.m();
        let mut out = self.universe.labels().collect::<Vec<_>>().join(" ");
        out.push('\n');
        for x in 0..m {
            out.push_str(self.universe.label(x));
            for y in 0..m {
                out.push(' ');
                out.push(if x == y {
                    '-'
                } else if self.beats(x, y) {
                    '1'
                } else {
                    '0'
                });
            }
            out.push('\n');
        }
        out
    }

    fn set(&mut self, x: usize, y: usize) {
        self.out[x].insert(y);
        self.inn[y].insert(x);
    }

    fn clear(&mut self, x: usize, y: usize) {
        self.out[x].set(y, false);
        self.inn[y].set(x, false);
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn m(&self) -> usize {
        self.universe.len()
    }

    pub fn beats(&self, x: usize, y: usize) -> bool {
        self.out[x].contains(y)
    }

    /// L(x) = { y : x μ y } as local bits.
    pub fn lower(&self, x: usize) -> &FixedBitSet {
        &self.out[x]
    }

    /// D(x) = { y : y μ x } as local bits.
    pub fn upper(&self, x: usize) -> &FixedBitSet {
        &self.inn[x]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.m())
            .flat_map(|x| self.out[x].ones().map(move |y| (x, y)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(|b| b.count_ones(..)).sum()
    }

    pub fn upper_contour_sets(&self) -> Vec<AltSet> {
        self.inn
            .iter()
            .map(|b| self.universe.from_bits(b))
            .collect()
    }

    pub fn lower_contour_sets(&self) -> Vec<AltSet> {
        self.out
            .iter()
            .map(|b| self.universe.from_bits(b))
            .collect()
    }

    /// Sets `winner μ loser`, clears the reverse, leaves the rest alone.
    pub fn perturb(&self, winner: AltId, loser: AltId) -> Result<Self> {
        if winner == loser {
            return Err(Error::SelfComparison);
        }
        let w = self
            .universe
            .index_of(winner)
            .ok_or_else(|| Error::UnknownAlternative(self.universe.label_of(winner).into()))?;
        let l = self
            .universe
            .index_of(loser)
            .ok_or_else(|| Error::UnknownAlternative(self.universe.label_of(loser).into()))?;
        let mut mu = self.clone();
        mu.clear(l, w);
        mu.set(w, l);
        Ok(mu)
    }

    /// μ restricted to `subset`.
    pub fn restrict(&self, subset: &AltSet) -> Result<Self> {
        let (universe, remap) = self.universe.restrict(subset)?;
        let mut mu = Self::empty(universe);
        for (x, y) in self.edges() {
            if let (Some(a), Some(b)) = (remap[x], remap[y]) {
                mu.set(a, b);
            }
        }
        Ok(mu)
    }

    /// McGarvey construction: every edge x→y contributes the pair of orders
    /// `x y r1..rk` and `rk..r1 x y`, giving margin 2 on (x, y) and 0 on every
    /// other pair. An edgeless relation becomes one order and its reverse.
    pub fn realize(&self) -> Profile {
        let m = self.m();
        let mut orders = Vec::new();
        for (x, y) in self.edges() {
            let rest: Vec<usize> = (0..m).filter(|&z| z != x && z != y).collect();
            let mut a = vec![x, y];
            a.extend(rest.iter().copied());
            let mut b: Vec<usize> = rest.iter().rev().copied().collect();
            b.extend([x, y]);
            orders.push(a);
            orders.push(b);
        }
        if orders.is_empty() {
            orders.push((0..m).collect());
            orders.push((0..m).rev().collect());
        }
        Profile::new(self.universe.clone(), orders).expect("realization is a valid profile")
    }
}

impl fmt::Debug for MajorityRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = &self.universe;
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(x, y)| format!("{}>{}", u.label(x), u.label(y)))
            .collect();
        write!(f, "μ[{}]", edges.join(" "))
    }
}

/// S(x, y) counts for every ordered pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TournamentMatrix {
    universe: Universe,
    n: u32,
    s: Vec<u32>,
}

impl TournamentMatrix {
    pub fn from_profile(p: &Profile) -> Self {
        let m = p.m();
        let r = p.ranks();
        let mut s = vec![0u32; m * m];
        for x in 0..m {
            for y in x + 1..m {
                let v = r.support(x, y);
                s[x * m + y] = v;
                s[y * m + x] = p.n() as u32 - v;
            }
        }
        TournamentMatrix {
            universe: p.universe().clone(),
            n: p.n() as u32,
            s,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.universe.len()
    }

    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.s[x * self.m() + y]
    }

    pub fn majority(&self) -> MajorityRelation {
        let mut edges = Vec::new();
        for x in 0..self.m() {
            for y in 0..self.m() {
                if x != y && 2 * self.get(x, y) > self.n {
                    edges.push((x, y));
                }
            }
        }
        MajorityRelation::from_edges(self.universe.clone(), &edges).expect("strict majority")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu_365() -> MajorityRelation {
        MajorityRelation::from_edge_list(
            &["a", "b", "c", "d", "e", "f"],
            "a>b a>f b>c c>a d>b e>d f>e",
        )
        .unwrap()
    }

    #[test]
    fn cycle_of_three_voters() {
        let p = Profile::from_rankings(&["a b d", "a b d", "d a b", "b d a", "b d a"]).unwrap();
        let mu = p.majority_relation();
        let u = p.universe();
        let (a, b, d) = (
            u.local("a").unwrap(),
            u.local("b").unwrap(),
            u.local("d").unwrap(),
        );
        assert!(mu.beats(a, b) && mu.beats(d, a) && mu.beats(b, d));
        assert_eq!(mu.edge_count(), 3);
    }

    #[test]
    fn even_split_leaves_no_edge() {
        let p = Profile::from_rankings(&["a b", "b a"]).unwrap();
        assert_eq!(p.majority_relation().edge_count(), 0);
    }

    #[test]
    fn unanimous_profile_gives_linear_relation() {
        let p = Profile::from_rankings(&["c a b", "c a b"]).unwrap();
        let mu = p.majority_relation();
        let u = p.universe();
        let (a, b, c) = (
            u.local("a").unwrap(),
            u.local("b").unwrap(),
            u.local("c").unwrap(),
        );
        assert!(mu.beats(c, a) && mu.beats(c, b) && mu.beats(a, b));
        assert_eq!(mu.edge_count(), 3);
    }

    #[test]
    fn matrix_text_round_trip() {
        let mu = mu_365();
        let back = MajorityRelation::parse(&mu.to_text()).unwrap();
        assert_eq!(back, mu);
        let bare = "a b c\n- 1 0\n0 - 1\n1 0 -\n";
        assert_eq!(MajorityRelation::parse(bare).unwrap().edge_count(), 3);
        assert!(MajorityRelation::parse("a b\na - 1\nb 1 -\n").is_err());
    }

    #[test]
    fn flip_reorients_one_pair() {
        let mu = mu_365();
        let u = mu.universe().clone();
        let (c, d) = (u.find("c").unwrap(), u.find("d").unwrap());
        let flipped = mu.perturb(c, d).unwrap();
        let expect = MajorityRelation::from_edge_list(
            &["a", "b", "c", "d", "e", "f"],
            "a>b a>f b>c c>a c>d d>b e>d f>e",
        )
        .unwrap();
        assert_eq!(flipped, expect);
        let back = flipped.perturb(d, c).unwrap();
        assert!(back.beats(3, 2) && !back.beats(2, 3));
        assert_eq!(mu.perturb(c, c).unwrap_err(), Error::SelfComparison);
    }

    #[test]
    fn realization_reproduces_relation() {
        let mu = mu_365();
        let p = mu.realize();
        assert_eq!(p.n(), 2 * mu.edge_count());
        assert_eq!(p.majority_relation(), mu);
        let t = p.tournament_matrix();
        for (x, y) in mu.edges() {
            assert_eq!(t.get(x, y), t.get(y, x) + 2);
        }
        let empty = MajorityRelation::empty(Universe::generated(3));
        assert_eq!(empty.realize().majority_relation(), empty);
    }

    #[test]
    fn upper_contour_sets_of_six_alternative_example() {
        let mu = MajorityRelation::from_edge_list(
            &["a", "b", "c", "d", "e", "f"],
            "a>b a>e a>f b>c b>d b>f c>a c>d c>e d>a e>d e>f f>c f>d",
        )
        .unwrap();
        let u = mu.universe().clone();
        let d: Vec<String> = mu
            .upper_contour_sets()
            .iter()
            .map(|s| u.format_set(s))
            .collect();
        assert_eq!(
            d,
            [
                "{c, d}",
                "{a}",
                "{b, f}",
                "{b, c, e, f}",
                "{a, c}",
                "{a, b, e}"
            ]
        );
    }
}

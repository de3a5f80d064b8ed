//! Preference profiles and the structures derived from them.

use std::fmt;

use crate::altset::{AltId, AltSet, Universe};
use crate::error::{parse_err, Error, Result};
use crate::grades::GradeTable;
use crate::majority::{MajorityRelation, TournamentMatrix};

/// n strict linear orders over a common universe, best first.
#[derive(Clone, PartialEq, Eq)]
pub struct Profile {
    universe: Universe,
    // criterion-major, local indices
    orders: Vec<u32>,
    n: usize,
}

/// A single-criterion move or a majority-level edge reorientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Perturbation {
    /// Move `target` up `steps` positions in criterion `criterion` (0-based).
    Improve {
        target: AltId,
        criterion: usize,
        steps: usize,
    },
    /// Set `winner μ loser` and clear the reverse.
    Flip { winner: AltId, loser: AltId },
}

impl Perturbation {
    pub fn describe(&self, u: &Universe) -> String {
        match *self {
            Perturbation::Improve {
                target,
                criterion,
                steps,
            } => format!("improve {} {} {}", u.label_of(target), criterion + 1, steps),
            Perturbation::Flip { winner, loser } => {
                format!("flip {} {}", u.label_of(winner), u.label_of(loser))
            }
        }
    }

    pub fn target(&self) -> AltId {
        match *self {
            Perturbation::Improve { target, .. } => target,
            Perturbation::Flip { winner, .. } => winner,
        }
    }
}

/// Rank positions, alternative-major: `pos(x, i)` is 0 for the top of criterion i.
#[derive(Clone, Debug)]
pub struct RankTable {
    m: usize,
    n: usize,
    pos: Vec<u32>,
}

impl RankTable {
    pub fn new(p: &Profile) -> Self {
        let (m, n) = (p.m(), p.n());
        let mut pos = vec![0u32; m * n];
        for i in 0..n {
            for (r, &x) in p.order(i).iter().enumerate() {
                pos[x as usize * n + i] = r as u32;
            }
        }
        RankTable { m, n, pos }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pos(&self, x: usize, i: usize) -> usize {
        self.pos[x * self.n + i] as usize
    }

    pub fn row(&self, x: usize) -> &[u32] {
        &self.pos[x * self.n..(x + 1) * self.n]
    }

    /// S(x, y): number of criteria ranking x above y.
    #[inline]
    pub fn support(&self, x: usize, y: usize) -> u32 {
        let (a, b) = (self.row(x), self.row(y));
        a.iter().zip(b).map(|(p, q)| u32::from(p < q)).sum()
    }
}

impl Profile {
    /// Builds a profile from local-index orders over `universe`.
    pub fn new(universe: Universe, orders: Vec<Vec<usize>>) -> Result<Self> {
        let m = universe.len();
        if orders.is_empty() || m == 0 {
            return Err(Error::EmptyProfile);
        }
        let mut flat = Vec::with_capacity(m * orders.len());
        let mut seen = vec![usize::MAX; m];
        for (i, o) in orders.iter().enumerate() {
            if o.len() != m
                || o.iter()
                    .any(|&x| x >= m || std::mem::replace(&mut seen[x], i) == i)
            {
                return Err(Error::Config(format!(
                    "order {} is not a permutation of the universe",
                    i + 1
                )));
            }
            flat.extend(o.iter().map(|&x| x as u32));
        }
        Ok(Profile {
            universe,
            n: orders.len(),
            orders: flat,
        })
    }

    /// Trusted constructor for enumerators: `orders` holds n permutations of
    /// 0..m back to back.
    pub(crate) fn from_flat(universe: Universe, orders: Vec<u32>) -> Self {
        let n = orders.len() / universe.len();
        debug_assert_eq!(n * universe.len(), orders.len());
        Profile {
            universe,
            orders,
            n,
        }
    }

    /// Orders given as whitespace-separated labels; the universe is taken
    /// from the first order.
    pub fn from_rankings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let first = rows.first().ok_or(Error::EmptyProfile)?;
        let universe = Universe::new(first.as_ref().split_whitespace())?;
        Self::from_rankings_in(universe, rows)
    }

    pub fn from_rankings_in<S: AsRef<str>>(universe: Universe, rows: &[S]) -> Result<Self> {
        let mut orders = Vec::with_capacity(rows.len());
        for (k, row) in rows.iter().enumerate() {
            let o = row
                .as_ref()
                .split_whitespace()
                .map(|t| universe.local(t))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| parse_err(k + 1, e.to_string()))?;
            orders.push(o);
        }
        Self::new(universe, orders)
    }

    /// Parses the profile text format: first line the labels, then one
    /// order per line, `#` lines ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or(Error::EmptyProfile)?;
        let universe = Universe::new(header.split_whitespace()).map_err(|e| match e {
            Error::EmptyProfile => Error::EmptyProfile,
            other => parse_err(hline, other.to_string()),
        })?;
        let m = universe.len();
        let mut orders = Vec::new();
        for (ln, line) in lines {
            let mut seen = vec![false; m];
            let mut o = Vec::with_capacity(m);
            for tok in line.split_whitespace() {
                let x = universe
                    .local(tok)
                    .map_err(|_| parse_err(ln, format!("unknown alternative `{tok}`")))?;
                if std::mem::replace(&mut seen[x], true) {
                    return Err(parse_err(ln, format!("`{tok}` appears twice")));
                }
                o.push(x);
            }
            if o.len() != m {
                let missing: Vec<&str> = (0..m)
                    .filter(|&x| !seen[x])
                    .map(|x| universe.label(x))
                    .collect();
                return Err(parse_err(
                    ln,
                    format!("order is not a permutation, missing {}", missing.join(" ")),
                ));
            }
            orders.push(o);
        }
        if orders.is_empty() {
            return Err(Error::EmptyProfile);
        }
        Self::new(universe, orders)
    }

    pub fn to_text(&self) -> String {
        let mut out = self.universe.labels().collect::<Vec<_>>().join(" ");
        out.push('\n');
        for i in 0..self.n {
            let row: Vec<&str> = self
                .order(i)
                .iter()
                .map(|&x| self.universe.label(x as usize))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn m(&self) -> usize {
        self.universe.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Order of criterion `i` as local indices, best first.
    pub fn order(&self, i: usize) -> &[u32] {
        let m = self.m();
        &self.orders[i * m..(i + 1) * m]
    }

    pub fn ranks(&self) -> RankTable {
        RankTable::new(self)
    }

    /// Restriction of every order to `subset`, relative order preserved.
    pub fn contract(&self, subset: &AltSet) -> Result<Profile> {
        let (universe, remap) = self.universe.restrict(subset)?;
        if universe.len() == self.m() {
            return Ok(self.clone());
        }
        let mut orders = Vec::with_capacity(universe.len() * self.n);
        for x in &self.orders {
            if let Some(y) = remap[*x as usize] {
                orders.push(y as u32);
            }
        }
        Ok(Profile {
            universe,
            orders,
            n: self.n,
        })
    }

    /// n⁺(x), local-indexed.
    pub fn first_place_counts(&self) -> Vec<u32> {
        let mut c = vec![0; self.m()];
        for i in 0..self.n {
            c[self.order(i)[0] as usize] += 1;
        }
        c
    }

    pub fn last_place_counts(&self) -> Vec<u32> {
        let m = self.m();
        let mut c = vec![0; m];
        for i in 0..self.n {
            c[self.order(i)[m - 1] as usize] += 1;
        }
        c
    }

    /// Number of criteria placing x among their top `q`.
    pub fn top_counts(&self, q: usize) -> Vec<u32> {
        let mut c = vec![0; self.m()];
        for i in 0..self.n {
            for &x in self.order(i).iter().take(q) {
                c[x as usize] += 1;
            }
        }
        c
    }

    /// r(x) = Σ_i (m − rank_i(x)) with rank 1 at the top.
    pub fn borda_counts(&self) -> Vec<u64> {
        let m = self.m();
        let mut r = vec![0u64; m];
        for i in 0..self.n {
            for (pos, &x) in self.order(i).iter().enumerate() {
                r[x as usize] += (m - 1 - pos) as u64;
            }
        }
        r
    }

    pub fn majority_relation(&self) -> MajorityRelation {
        MajorityRelation::from_profile(self)
    }

    pub fn tournament_matrix(&self) -> TournamentMatrix {
        TournamentMatrix::from_profile(self)
    }

    pub fn grade_table(&self) -> GradeTable {
        GradeTable::from_profile(self)
    }

    /// Applies a rank move; edge flips are rejected here.
    pub fn improve(&self, p: &Perturbation) -> Result<Profile> {
        let Perturbation::Improve {
            target,
            criterion,
            steps,
        } = *p
        else {
            return Err(Error::Config(
                "edge flips apply to majority relations, not profiles".into(),
            ));
        };
        if criterion >= self.n {
            return Err(Error::UnknownCriterion(criterion + 1));
        }
        let x = self
            .universe
            .index_of(target)
            .ok_or_else(|| Error::UnknownAlternative(self.universe.label_of(target).into()))?;
        let m = self.m();
        let row = &self.order(criterion);
        let pos = row.iter().position(|&y| y as usize == x).unwrap();
        if steps == 0 || steps > pos {
            return Err(Error::BadMove {
                label: self.universe.label(x).to_string(),
                rank: pos + 1,
                steps,
            });
        }
        let mut out = self.clone();
        let base = criterion * m;
        out.orders[base + pos - steps..=base + pos].rotate_right(1);
        Ok(out)
    }

    /// Every single-criterion upward move of `target`, in criterion then
    /// step order.
    pub fn improvements(&self, target: AltId) -> Vec<Perturbation> {
        let Some(x) = self.universe.index_of(target) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for criterion in 0..self.n {
            let pos = self
                .order(criterion)
                .iter()
                .position(|&y| y as usize == x)
                .unwrap();
            for steps in 1..=pos {
                out.push(Perturbation::Improve {
                    target,
                    criterion,
                    steps,
                });
            }
        }
        out
    }

    /// Replaces local alternative x by `perm[x]` in every order.
    pub fn relabeled(&self, perm: &[usize]) -> Profile {
        assert_eq!(perm.len(), self.m());
        let orders = self
            .orders
            .iter()
            .map(|&x| perm[x as usize] as u32)
            .collect();
        Profile {
            universe: self.universe.clone(),
            orders,
            n: self.n,
        }
    }

    /// Reorders criteria: criterion k of the result is criterion `perm[k]`.
    pub fn permute_criteria(&self, perm: &[usize]) -> Profile {
        assert_eq!(perm.len(), self.n);
        let mut orders = Vec::with_capacity(self.orders.len());
        for &i in perm {
            orders.extend_from_slice(self.order(i));
        }
        Profile {
            universe: self.universe.clone(),
            orders,
            n: self.n,
        }
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Non-blank, non-comment lines with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

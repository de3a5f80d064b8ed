//! Sequential-elimination rules.
//!
//! Each round rescores on the surviving alternatives. Tied alternatives are
//! removed together; a round that would remove every survivor ends the
//! procedure with the survivors as the choice.

use crate::altset::AltSet;
use crate::profile::{Profile, RankTable};

/// Result of an elimination run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub chosen: AltSet,
    /// No round removed more than one alternative and the run did not stop
    /// on an unresolved tie.
    pub tie_free: bool,
}

struct Survivors<'a> {
    p: &'a Profile,
    alive: Vec<bool>,
    count: usize,
    tie_free: bool,
}

impl<'a> Survivors<'a> {
    fn new(p: &'a Profile) -> Self {
        Survivors {
            p,
            alive: vec![true; p.m()],
            count: p.m(),
            tie_free: true,
        }
    }

    fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.alive.len()).filter(|&x| self.alive[x])
    }

    fn firsts(&self) -> Vec<u32> {
        let mut c = vec![0; self.alive.len()];
        for i in 0..self.p.n() {
            if let Some(&x) = self.p.order(i).iter().find(|&&x| self.alive[x as usize]) {
                c[x as usize] += 1;
            }
        }
        c
    }

    fn lasts(&self) -> Vec<u32> {
        let mut c = vec![0; self.alive.len()];
        for i in 0..self.p.n() {
            if let Some(&x) = self
                .p
                .order(i)
                .iter()
                .rev()
                .find(|&&x| self.alive[x as usize])
            {
                c[x as usize] += 1;
            }
        }
        c
    }

    fn borda(&self) -> Vec<u64> {
        let mut r = vec![0u64; self.alive.len()];
        let top = self.count as u64 - 1;
        for i in 0..self.p.n() {
            let mut k = 0u64;
            for &x in self.p.order(i) {
                if self.alive[x as usize] {
                    r[x as usize] += top - k;
                    k += 1;
                }
            }
        }
        r
    }

    fn majority_holder(&self, firsts: &[u32]) -> Option<usize> {
        let n = self.p.n() as u32;
        self.members().find(|&x| 2 * firsts[x] > n)
    }

    /// Removes `losers`; refuses (returning false) when that would empty the set.
    fn remove(&mut self, losers: &[usize]) -> bool {
        if losers.len() >= self.count {
            self.tie_free = false;
            return false;
        }
        if losers.len() > 1 {
            self.tie_free = false;
        }
        for &x in losers {
            self.alive[x] = false;
        }
        self.count -= losers.len();
        true
    }

    fn finish(self) -> Elimination {
        let chosen = self.p.universe().from_locals(self.members());
        Elimination {
            chosen,
            tie_free: self.tie_free,
        }
    }

    fn single(self, x: usize) -> Elimination {
        Elimination {
            chosen: self.p.universe().from_locals([x]),
            tie_free: self.tie_free,
        }
    }
}

/// Survivors holding the extreme value of `score` (min if `lowest`).
fn extreme<T: Ord + Copy>(s: &Survivors, score: &[T], lowest: bool) -> Vec<usize> {
    let vals = s.members().map(|x| score[x]);
    let target = if lowest { vals.min() } else { vals.max() }.unwrap();
    s.members().filter(|&x| score[x] == target).collect()
}

/// Drop the fewest-first-place alternatives until one holds a strict
/// majority of first places.
pub fn hare(p: &Profile) -> Elimination {
    let mut s = Survivors::new(p);
    loop {
        let f = s.firsts();
        if let Some(x) = s.majority_holder(&f) {
            return s.single(x);
        }
        let losers = extreme(&s, &f, true);
        if !s.remove(&losers) {
            return s.finish();
        }
    }
}

/// Drop the most-last-place alternatives until one holds a strict majority
/// of first places.
pub fn coombs(p: &Profile) -> Elimination {
    let mut s = Survivors::new(p);
    loop {
        let f = s.firsts();
        if let Some(x) = s.majority_holder(&f) {
            return s.single(x);
        }
        let losers = extreme(&s, &s.lasts(), false);
        if !s.remove(&losers) {
            return s.finish();
        }
    }
}

/// Majority winner if any; otherwise the two plurality leaders meet in a
/// pairwise majority contest. Ties for the finalist places admit every
/// tied alternative, and the contest then needs a Condorcet winner among
/// the finalists.
pub fn run_off(p: &Profile) -> Elimination {
    let mut s = Survivors::new(p);
    let f = s.firsts();
    if let Some(x) = s.majority_holder(&f) {
        return s.single(x);
    }
    let mut values: Vec<u32> = f.clone();
    values.sort_unstable_by(|a, b| b.cmp(a));
    values.dedup();
    let leaders: Vec<usize> = (0..p.m()).filter(|&x| f[x] == values[0]).collect();
    let finalists: Vec<usize> = if leaders.len() >= 2 {
        leaders
    } else {
        let second = values.get(1).copied().unwrap_or(values[0]);
        (0..p.m())
            .filter(|&x| f[x] == values[0] || f[x] == second)
            .collect()
    };
    if finalists.len() > 2 {
        s.tie_free = false;
    }
    let r = RankTable::new(p);
    let n = p.n() as u32;
    let winner = finalists
        .iter()
        .copied()
        .find(|&x| finalists.iter().all(|&y| y == x || 2 * r.support(x, y) > n));
    match winner {
        Some(x) => s.single(x),
        None => {
            s.tie_free = false;
            Elimination {
                chosen: p.universe().from_locals(finalists),
                tie_free: false,
            }
        }
    }
}

/// Drop the lowest Borda count until all survivors tie.
pub fn inverse_borda(p: &Profile) -> Elimination {
    let mut s = Survivors::new(p);
    loop {
        let r = s.borda();
        let losers = extreme(&s, &r, true);
        if losers.len() == s.count {
            return s.finish();
        }
        s.remove(&losers);
    }
}

/// Drop every alternative whose Borda count is strictly below the mean
/// until none is.
pub fn nanson(p: &Profile) -> Elimination {
    let mut s = Survivors::new(p);
    loop {
        let r = s.borda();
        let total: u64 = s.members().map(|x| r[x]).sum();
        let k = s.count as u64;
        let losers: Vec<usize> = s.members().filter(|&x| r[x] * k < total).collect();
        if losers.is_empty() {
            return s.finish();
        }
        s.remove(&losers);
    }
}

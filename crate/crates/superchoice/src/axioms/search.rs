//! Bounded counterexample search over enumerated or sampled profiles.
//!
//! Profiles are produced in a canonical order and checked in chunks; within
//! a chunk the first hit in order wins, so the result is the same for every
//! execution mode and worker count.

use std::ops::RangeInclusive;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_axiom_with, AxiomId, CheckOptions, Counterexample, MoveKind, Verdict};
use crate::altset::Universe;
use crate::error::{Error, Result};
use crate::majority::MajorityRelation;
use crate::par::{self, Execution};
use crate::procedures::Choice;
use crate::profile::Profile;

/// Default cap on the number of profiles a search may examine.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

const CHUNK: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    /// All n-tuples of linear orders, lexicographic in criterion order.
    Ordered,
    /// Profiles up to reordering of criteria (non-decreasing order indices).
    /// Complete for anonymous procedures.
    Multiset,
    /// Asymmetric relations on m alternatives (or tournaments only), each
    /// realized as a profile; improvements become edge flips.
    Majority { tournaments_only: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Random { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub m: RangeInclusive<usize>,
    pub n: RangeInclusive<usize>,
    pub space: Space,
    pub mode: Mode,
    pub budget: u64,
    pub check: CheckOptions,
    pub execution: Execution,
}

impl SearchConfig {
    pub fn exhaustive(m: RangeInclusive<usize>, n: RangeInclusive<usize>) -> Self {
        SearchConfig {
            m,
            n,
            space: Space::Ordered,
            mode: Mode::Exhaustive,
            budget: DEFAULT_BUDGET,
            check: CheckOptions::default(),
            execution: Execution::default(),
        }
    }

    pub fn random(
        m: RangeInclusive<usize>,
        n: RangeInclusive<usize>,
        samples: u64,
        seed: u64,
    ) -> Self {
        SearchConfig {
            mode: Mode::Random { samples, seed },
            ..Self::exhaustive(m, n)
        }
    }

    pub fn with_space(mut self, space: Space) -> Self {
        self.space = space;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Number of profiles (or relations) the configuration covers.
    pub fn space_size(&self) -> u128 {
        if let Mode::Random { samples, .. } = self.mode {
            return samples as u128;
        }
        let mut total: u128 = 0;
        for m in self.m.clone() {
            let f = factorial(m);
            match self.space {
                Space::Majority { tournaments_only } => {
                    let pairs = (m * (m.saturating_sub(1)) / 2) as u32;
                    let base: u128 = if tournaments_only { 2 } else { 3 };
                    total = total.saturating_add(base.saturating_pow(pairs));
                }
                Space::Ordered => {
                    for n in self.n.clone() {
                        total = total.saturating_add(f.saturating_pow(n as u32));
                    }
                }
                Space::Multiset => {
                    for n in self.n.clone() {
                        total = total.saturating_add(binomial(f + n as u128 - 1, n as u128));
                    }
                }
            }
        }
        total
    }

    fn validate(&self) -> Result<()> {
        if *self.m.start() == 0 || self.m.is_empty() {
            return Err(Error::Config(
                "m range must be nonempty and start at 1 or more".into(),
            ));
        }
        if !matches!(self.space, Space::Majority { .. })
            && (*self.n.start() == 0 || self.n.is_empty())
        {
            return Err(Error::Config(
                "n range must be nonempty and start at 1 or more".into(),
            ));
        }
        Ok(())
    }

    fn majority_level(&self) -> bool {
        matches!(self.space, Space::Majority { .. })
    }
}

fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<R = Box<Counterexample>> {
    /// `examined` counts profiles up to and including the witness.
    Found {
        witness: R,
        examined: u64,
    },
    Clean {
        examined: u64,
    },
    /// The budget stopped the search before the space was covered.
    Partial {
        examined: u64,
        total: u128,
    },
}

impl<R> SearchOutcome<R> {
    pub fn witness(&self) -> Option<&R> {
        match self {
            SearchOutcome::Found { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

/// Lexicographically ordered permutations of 0..m, flattened.
fn permutations(m: usize) -> Vec<Vec<u32>> {
    (0..m as u32).permutations(m).collect()
}

fn profile_from(universe: &Universe, perms: &[Vec<u32>], idx: &[usize]) -> Profile {
    let mut flat = Vec::with_capacity(idx.len() * universe.len());
    for &i in idx {
        flat.extend_from_slice(&perms[i]);
    }
    Profile::from_flat(universe.clone(), flat)
}

fn relation_from(
    universe: &Universe,
    states: &[usize],
    tournaments_only: bool,
) -> MajorityRelation {
    let m = universe.len();
    let pairs = (0..m).tuple_combinations::<(usize, usize)>();
    let mut edges = Vec::new();
    for ((x, y), &s) in pairs.zip(states) {
        match (tournaments_only, s) {
            (false, 1) | (true, 0) => edges.push((x, y)),
            (false, 2) | (true, 1) => edges.push((y, x)),
            _ => {}
        }
    }
    MajorityRelation::from_edges(universe.clone(), &edges).expect("asymmetric by construction")
}

/// Canonical enumeration of the configured space.
fn exhaustive_profiles(cfg: &SearchConfig) -> Box<dyn Iterator<Item = Profile> + '_> {
    let ms = cfg.m.clone();
    Box::new(ms.flat_map(move |m| -> Box<dyn Iterator<Item = Profile>> {
        let universe = Universe::generated(m);
        match cfg.space {
            Space::Majority { tournaments_only } => {
                let pairs = m * (m - 1) / 2;
                let k = if tournaments_only { 2 } else { 3 };
                if pairs == 0 {
                    let mu = MajorityRelation::empty(universe);
                    return Box::new(std::iter::once(mu.realize()));
                }
                Box::new(
                    (0..pairs)
                        .map(|_| 0..k)
                        .multi_cartesian_product()
                        .map(move |s| relation_from(&universe, &s, tournaments_only).realize()),
                )
            }
            Space::Ordered | Space::Multiset => {
                let perms = permutations(m);
                let f = perms.len();
                let multiset = cfg.space == Space::Multiset;
                Box::new(cfg.n.clone().flat_map(move |n| {
                    let universe = universe.clone();
                    let perms = perms.clone();
                    let idx: Box<dyn Iterator<Item = Vec<usize>>> = if multiset {
                        Box::new((0..f).combinations_with_replacement(n))
                    } else {
                        Box::new((0..n).map(|_| 0..f).multi_cartesian_product())
                    };
                    idx.map(move |i| profile_from(&universe, &perms, &i))
                }))
            }
        }
    }))
}

/// Sample `s` of a seeded-random search; independent of every other sample.
pub fn random_profile(cfg: &SearchConfig, seed: u64, s: u64) -> Profile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(s);
    let m = rng.gen_range(cfg.m.clone());
    let universe = Universe::generated(m);
    match cfg.space {
        Space::Majority { tournaments_only } => {
            let pairs = m * (m - 1) / 2;
            let k = if tournaments_only { 2 } else { 3 };
            let states: Vec<usize> = (0..pairs).map(|_| rng.gen_range(0..k)).collect();
            relation_from(&universe, &states, tournaments_only).realize()
        }
        _ => {
            let n = rng.gen_range(cfg.n.clone());
            let mut flat = Vec::with_capacity(m * n);
            let mut order: Vec<u32> = (0..m as u32).collect();
            for _ in 0..n {
                order.shuffle(&mut rng);
                flat.extend_from_slice(&order);
            }
            Profile::from_flat(universe, flat)
        }
    }
}

/// Runs `f` over the configured profiles and returns the first hit in
/// canonical order.
pub fn search_profiles<R, F>(cfg: &SearchConfig, f: F) -> Result<SearchOutcome<R>>
where
    R: Send,
    F: Fn(&Profile) -> Option<R> + Sync + Send,
{
    cfg.validate()?;
    let total = cfg.space_size();
    let limit = total.min(cfg.budget as u128) as u64;
    let source: Box<dyn Iterator<Item = Profile>> = match cfg.mode {
        Mode::Exhaustive => exhaustive_profiles(cfg),
        Mode::Random { seed, .. } => Box::new((0..).map(move |s| random_profile(cfg, seed, s))),
    };
    let mut examined: u64 = 0;
    for chunk in &source.take(limit as usize).chunks(CHUNK) {
        let batch: Vec<Profile> = chunk.collect();
        let hit = par::find_first(
            &batch.iter().enumerate().collect::<Vec<_>>(),
            cfg.execution,
            |(i, p)| f(p).map(|r| (*i, r)),
        );
        if let Some((i, witness)) = hit {
            return Ok(SearchOutcome::Found {
                witness,
                examined: examined + i as u64 + 1,
            });
        }
        examined += batch.len() as u64;
    }
    if (examined as u128) < total {
        Ok(SearchOutcome::Partial { examined, total })
    } else {
        Ok(SearchOutcome::Clean { examined })
    }
}

/// First violation of `axiom` by `proc` in the configured space.
pub fn search_counterexample(
    proc: &dyn Choice,
    axiom: AxiomId,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    let mut opts = cfg.check;
    if cfg.majority_level() {
        if axiom == AxiomId::NonComp {
            return Err(Error::Config(
                "the non-compensatory condition does not apply to majority relations".into(),
            ));
        }
        opts.moves = MoveKind::Flip;
    }
    search_profiles(cfg, |p| match check_axiom_with(proc, axiom, p, opts) {
        Verdict::Violated(c) => Some(c),
        _ => None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    /// No violation in the whole space; `profiles` were checked.
    Verified {
        profiles: u64,
    },
    Refuted(Box<Counterexample>),
    Partial {
        examined: u64,
        total: u128,
    },
}

/// Exhaustive check of `axiom` over the configured space.
pub fn verify_bounded(
    proc: &dyn Choice,
    axiom: AxiomId,
    cfg: &SearchConfig,
) -> Result<Verification> {
    if let Mode::Random { .. } = cfg.mode {
        return Err(Error::Config(
            "bounded verification needs exhaustive mode".into(),
        ));
    }
    Ok(match search_counterexample(proc, axiom, cfg)? {
        SearchOutcome::Found { witness, .. } => Verification::Refuted(witness),
        SearchOutcome::Clean { examined } => Verification::Verified { profiles: examined },
        SearchOutcome::Partial { examined, total } => Verification::Partial { examined, total },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::procedures::Procedure;
    use crate::superposition::TwoStageId;

    #[test]
    fn space_sizes() {
        assert_eq!(SearchConfig::exhaustive(3..=3, 3..=3).space_size(), 216);
        let ms = SearchConfig::exhaustive(3..=3, 3..=3).with_space(Space::Multiset);
        assert_eq!(ms.space_size(), 56);
        let mu = SearchConfig::exhaustive(3..=3, 1..=1).with_space(Space::Majority {
            tournaments_only: false,
        });
        assert_eq!(mu.space_size(), 27);
    }

    #[test]
    fn enumeration_is_complete_and_distinct() {
        let cfg = SearchConfig::exhaustive(3..=3, 2..=2);
        let all: Vec<Profile> = exhaustive_profiles(&cfg).collect();
        assert_eq!(all.len(), 36);
        let distinct: std::collections::HashSet<String> = all.iter().map(|p| p.to_text()).collect();
        assert_eq!(distinct.len(), 36);
        assert_eq!(all[0].to_text(), "a b c\na b c\na b c\n");
        let mu = SearchConfig::exhaustive(3..=3, 1..=1).with_space(Space::Majority {
            tournaments_only: true,
        });
        let rels: std::collections::HashSet<_> = exhaustive_profiles(&mu)
            .map(|p| p.majority_relation().edges())
            .collect();
        assert_eq!(rels.len(), 8);
    }

    #[test]
    fn plurality_then_majority_is_monotone_on_small_space() {
        let t = TwoStageId::new(2, 1).unwrap().procedure();
        let cfg = SearchConfig::exhaustive(3..=3, 3..=3);
        let v = verify_bounded(&t, AxiomId::Mon1, &cfg).unwrap();
        assert_eq!(v, Verification::Verified { profiles: 216 });
    }

    #[test]
    fn finds_heredity_violation() {
        let t = TwoStageId::new(2, 1).unwrap().procedure();
        let cfg = SearchConfig::exhaustive(3..=3, 5..=5);
        let out = search_counterexample(&t, AxiomId::H, &cfg).unwrap();
        let w = out.witness().expect("witness");
        assert!(w.replay(&t));
    }

    #[test]
    fn execution_modes_agree() {
        let t = TwoStageId::new(2, 1).unwrap().procedure();
        let cfg = SearchConfig::exhaustive(2..=3, 1..=4);
        let a = search_counterexample(
            &t,
            AxiomId::C,
            &cfg.clone().with_execution(Execution::Sequential),
        );
        let b = search_counterexample(&t, AxiomId::C, &cfg.with_execution(Execution::Parallel));
        assert_eq!(a.unwrap(), b.unwrap());
        let r = SearchConfig::random(3..=5, 3..=7, 500, 11);
        let a = search_counterexample(
            &t,
            AxiomId::O,
            &r.clone().with_execution(Execution::Sequential),
        );
        let b = search_counterexample(&t, AxiomId::O, &r.with_execution(Execution::Parallel));
        assert_eq!(a.unwrap(), b.unwrap());
    }

    #[test]
    fn budget_gives_partial() {
        let cfg = SearchConfig::exhaustive(3..=3, 3..=3).with_budget(10);
        let out = search_counterexample(&Procedure::Borda, AxiomId::Mon1, &cfg).unwrap();
        assert_eq!(
            out,
            SearchOutcome::Partial {
                examined: 10,
                total: 216
            }
        );
    }

    #[test]
    fn random_mode_is_refused_by_verify() {
        let cfg = SearchConfig::random(3..=3, 3..=3, 10, 1);
        assert!(verify_bounded(&Procedure::Borda, AxiomId::H, &cfg).is_err());
    }

    #[test]
    fn single_alternative_verifies() {
        let cfg = SearchConfig::exhaustive(1..=1, 1..=3);
        for axiom in AxiomId::ALL {
            let v = verify_bounded(&Procedure::Plurality, axiom, &cfg).unwrap();
            assert_eq!(v, Verification::Verified { profiles: 3 });
        }
    }

    #[test]
    fn threshold_rule_noncompensatory_on_small_space() {
        let cfg = SearchConfig::exhaustive(3..=3, 2..=2);
        let out = search_counterexample(&Procedure::Threshold, AxiomId::NonComp, &cfg).unwrap();
        assert_eq!(out, SearchOutcome::Clean { examined: 36 });
    }
}

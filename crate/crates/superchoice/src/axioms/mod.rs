//! Normative conditions: per-profile checks, self-validating witnesses and
//! bounded counterexample search.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use crate::altset::{AltId, AltSet, Universe};
use crate::majority::MajorityRelation;
use crate::procedures::Choice;
use crate::profile::{Perturbation, Profile};

mod id;
pub mod search;

pub use id::AxiomId;
pub use search::{
    random_profile, search_counterexample, search_profiles, verify_bounded, Mode, SearchConfig,
    SearchOutcome, Space, Verification, DEFAULT_BUDGET,
};

/// How Mon2 combines its two removals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mon2Form {
    /// a ∈ C(X∖{b}) or b ∈ C(X∖{a}).
    #[default]
    Disjunctive,
    /// Both must hold.
    Conjunctive,
}

/// What counts as improving an alternative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MoveKind {
    /// Every upward move of any length in a single criterion.
    #[default]
    Rank,
    /// Reorienting one μ edge (or tie) in favour of the alternative; the
    /// perturbed relation is realized again as a profile.
    Flip,
}

/// Which sub-presentations H, O and ACA inspect.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SubsetStrategy {
    #[default]
    All,
    /// Only subsets missing at most this many alternatives.
    Deletions(usize),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    pub mon2: Mon2Form,
    pub moves: MoveKind,
    pub subsets: SubsetStrategy,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// H, O, ACA: choice from X and from the subset X′.
    Subset {
        subset: AltSet,
        whole: AltSet,
        part: AltSet,
    },
    /// X′ ∪ X″ = X with C(X′) ∩ C(X″) ⊄ C(X).
    Concordance {
        left: AltSet,
        right: AltSet,
        left_choice: AltSet,
        right_choice: AltSet,
        whole: AltSet,
    },
    /// Mon2: two co-chosen alternatives and the choices after removing each.
    Removal {
        a: AltId,
        b: AltId,
        whole: AltSet,
        without_b: AltSet,
        without_a: AltSet,
        form: Mon2Form,
    },
    /// Mon1, strict monotonicity: choice before and after a move.
    Improvement {
        change: Perturbation,
        before: AltSet,
        after: AltSet,
    },
    NonCompensatory {
        choice: AltSet,
        best_class: AltSet,
    },
}

/// A violation together with the data needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub axiom: AxiomId,
    pub profile: Profile,
    pub moves: MoveKind,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated(Box<Counterexample>),
    NotApplicable,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        !matches!(self, Verdict::Violated(_))
    }

    pub fn witness(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Violated(c) => Some(c),
            _ => None,
        }
    }
}

/// Profile after a move of either kind.
pub fn apply_move(p: &Profile, change: &Perturbation) -> crate::Result<Profile> {
    match *change {
        Perturbation::Improve { .. } => p.improve(change),
        Perturbation::Flip { winner, loser } => {
            Ok(p.majority_relation().perturb(winner, loser)?.realize())
        }
    }
}

fn moves_for(p: &Profile, kind: MoveKind, target: AltId) -> Vec<Perturbation> {
    match kind {
        MoveKind::Rank => p.improvements(target),
        MoveKind::Flip => {
            let mu = p.majority_relation();
            let u = p.universe();
            let t = u.index_of(target).expect("target in universe");
            (0..u.len())
                .filter(|&y| y != t && !mu.beats(t, y))
                .map(|y| Perturbation::Flip {
                    winner: target,
                    loser: u.alt(y),
                })
                .collect()
        }
    }
}

/// Choices on sub-presentations, memoized by local bitmask.
struct Ctx<'a> {
    proc: &'a dyn Choice,
    p: &'a Profile,
    full: u64,
    memo: RefCell<HashMap<u64, AltSet>>,
}

impl<'a> Ctx<'a> {
    fn new(proc: &'a dyn Choice, p: &'a Profile) -> Self {
        assert!(p.m() < 64, "subset checks need fewer than 64 alternatives");
        Ctx {
            proc,
            p,
            full: (1u64 << p.m()) - 1,
            memo: RefCell::new(HashMap::new()),
        }
    }

    fn u(&self) -> &Universe {
        self.p.universe()
    }

    fn set(&self, mask: u64) -> AltSet {
        self.u()
            .from_locals((0..self.p.m()).filter(|i| mask >> i & 1 == 1))
    }

    fn mask(&self, s: &AltSet) -> u64 {
        self.u().locals(s).iter().fold(0, |m, &i| m | 1 << i)
    }

    fn choice(&self, mask: u64) -> AltSet {
        if let Some(c) = self.memo.borrow().get(&mask) {
            return c.clone();
        }
        let c = if mask == self.full {
            self.proc.choose(self.p)
        } else {
            let sub = self.p.contract(&self.set(mask)).expect("nonempty subset");
            self.proc.choose(&sub)
        };
        self.memo.borrow_mut().insert(mask, c.clone());
        c
    }

    fn subset_masks(&self, strategy: SubsetStrategy) -> impl Iterator<Item = u64> + '_ {
        let m = self.p.m() as u32;
        (1..self.full).filter(move |s| match strategy {
            SubsetStrategy::All => true,
            SubsetStrategy::Deletions(d) => (m - s.count_ones()) as usize <= d,
        })
    }
}

fn subset_violation(axiom: AxiomId, whole: &AltSet, subset: &AltSet, part: &AltSet) -> bool {
    match axiom {
        AxiomId::H => !whole.intersection(subset).is_subset(part),
        AxiomId::O => whole.is_subset(subset) && part != whole,
        AxiomId::Aca => {
            let meet = whole.intersection(subset);
            !meet.is_empty() && *part != meet
        }
        _ => false,
    }
}

fn removal_violation(form: Mon2Form, ok_a: bool, ok_b: bool) -> bool {
    match form {
        Mon2Form::Disjunctive => !ok_a && !ok_b,
        Mon2Form::Conjunctive => !(ok_a && ok_b),
    }
}

fn improvement_violation(axiom: AxiomId, target: AltId, before: &AltSet, after: &AltSet) -> bool {
    match axiom {
        AxiomId::Mon1 => before.contains(target) && !after.contains(target),
        AxiomId::StrictMono => {
            let mut with = before.clone();
            with.insert(target);
            let only = AltSet::from_ids([target]);
            after != before && *after != only && *after != with
        }
        _ => false,
    }
}

/// Checks `axiom` for `proc` on the universe of `p`, returning the first
/// violation in a fixed scan order.
pub fn check_axiom(proc: &dyn Choice, axiom: AxiomId, p: &Profile) -> Verdict {
    check_axiom_with(proc, axiom, p, CheckOptions::default())
}

/// Majority-level check: `mu` is realized as a profile, improvements are
/// edge flips, and the non-compensatory condition does not apply.
pub fn check_axiom_mu(proc: &dyn Choice, axiom: AxiomId, mu: &MajorityRelation) -> Verdict {
    if axiom == AxiomId::NonComp {
        return Verdict::NotApplicable;
    }
    let opts = CheckOptions {
        moves: MoveKind::Flip,
        ..CheckOptions::default()
    };
    check_axiom_with(proc, axiom, &mu.realize(), opts)
}

pub fn check_axiom_with(
    proc: &dyn Choice,
    axiom: AxiomId,
    p: &Profile,
    opts: CheckOptions,
) -> Verdict {
    if axiom == AxiomId::NonComp && opts.moves == MoveKind::Flip {
        return Verdict::NotApplicable;
    }
    let ctx = Ctx::new(proc, p);
    let whole = ctx.choice(ctx.full);
    let wrap = |witness| {
        Verdict::Violated(Box::new(Counterexample {
            axiom,
            profile: p.clone(),
            moves: opts.moves,
            witness,
        }))
    };
    match axiom {
        AxiomId::H | AxiomId::O | AxiomId::Aca => {
            for s in ctx.subset_masks(opts.subsets) {
                let subset = ctx.set(s);
                // skip choices we do not need for this axiom
                let relevant = match axiom {
                    AxiomId::H | AxiomId::Aca => !whole.intersection(&subset).is_empty(),
                    _ => whole.is_subset(&subset),
                };
                if !relevant {
                    continue;
                }
                let part = ctx.choice(s);
                if subset_violation(axiom, &whole, &subset, &part) {
                    return wrap(Witness::Subset {
                        subset,
                        whole,
                        part,
                    });
                }
            }
        }
        AxiomId::C => {
            for a in 1..ctx.full {
                let comp = ctx.full ^ a;
                // submasks s of a with s != a, in increasing order
                let mut subs: Vec<u64> = Vec::new();
                let mut s = a;
                loop {
                    s = (s - 1) & a;
                    subs.push(s);
                    if s == 0 {
                        break;
                    }
                }
                subs.sort_unstable();
                let ca = ctx.choice(a);
                if ca.is_empty() {
                    continue;
                }
                for s in subs {
                    let b = comp | s;
                    let cb = ctx.choice(b);
                    if !ca.intersection(&cb).is_subset(&whole) {
                        return wrap(Witness::Concordance {
                            left: ctx.set(a),
                            right: ctx.set(b),
                            left_choice: ca,
                            right_choice: cb,
                            whole,
                        });
                    }
                }
            }
        }
        AxiomId::Mon2 => {
            let chosen: Vec<AltId> = whole.iter().collect();
            for (i, &a) in chosen.iter().enumerate() {
                for &b in &chosen[i + 1..] {
                    let mask_a = ctx.mask(&AltSet::from_ids([a]));
                    let mask_b = ctx.mask(&AltSet::from_ids([b]));
                    let without_b = ctx.choice(ctx.full ^ mask_b);
                    let without_a = ctx.choice(ctx.full ^ mask_a);
                    let ok_a = without_b.contains(a);
                    let ok_b = without_a.contains(b);
                    if removal_violation(opts.mon2, ok_a, ok_b) {
                        return wrap(Witness::Removal {
                            a,
                            b,
                            whole,
                            without_b,
                            without_a,
                            form: opts.mon2,
                        });
                    }
                }
            }
        }
        AxiomId::Mon1 | AxiomId::StrictMono => {
            let targets: Vec<AltId> = if axiom == AxiomId::Mon1 {
                whole.iter().collect()
            } else {
                p.universe().alts().to_vec()
            };
            for t in targets {
                for change in moves_for(p, opts.moves, t) {
                    let q = apply_move(p, &change).expect("generated move is valid");
                    let after = proc.choose(&q);
                    if improvement_violation(axiom, t, &whole, &after) {
                        return wrap(Witness::Improvement {
                            change,
                            before: whole,
                            after,
                        });
                    }
                }
            }
        }
        AxiomId::NonComp => {
            let best_class = p.grade_table().threshold();
            if whole != best_class {
                return wrap(Witness::NonCompensatory {
                    choice: whole,
                    best_class,
                });
            }
        }
    }
    Verdict::Holds
}

impl Counterexample {
    /// Recomputes every stored choice with `proc` and confirms that the
    /// stored values are reproduced and still violate the axiom.
    pub fn replay(&self, proc: &dyn Choice) -> bool {
        let p = &self.profile;
        let on = |s: &AltSet| -> Option<AltSet> {
            if s.is_empty() {
                return None;
            }
            Some(proc.choose(&p.contract(s).ok()?))
        };
        let all = p.universe().all();
        let Some(whole_now) = on(&all) else {
            return false;
        };
        match &self.witness {
            Witness::Subset {
                subset,
                whole,
                part,
            } => {
                *whole == whole_now
                    && on(subset).as_ref() == Some(part)
                    && subset_violation(self.axiom, whole, subset, part)
            }
            Witness::Concordance {
                left,
                right,
                left_choice,
                right_choice,
                whole,
            } => {
                self.axiom == AxiomId::C
                    && *whole == whole_now
                    && left.union(right) == all
                    && on(left).as_ref() == Some(left_choice)
                    && on(right).as_ref() == Some(right_choice)
                    && !left_choice.intersection(right_choice).is_subset(whole)
            }
            Witness::Removal {
                a,
                b,
                whole,
                without_b,
                without_a,
                form,
            } => {
                self.axiom == AxiomId::Mon2
                    && *whole == whole_now
                    && whole.contains(*a)
                    && whole.contains(*b)
                    && on(&all.without(*b)).as_ref() == Some(without_b)
                    && on(&all.without(*a)).as_ref() == Some(without_a)
                    && removal_violation(*form, without_b.contains(*a), without_a.contains(*b))
            }
            Witness::Improvement {
                change,
                before,
                after,
            } => {
                let Ok(q) = apply_move(p, change) else {
                    return false;
                };
                *before == whole_now
                    && proc.choose(&q) == *after
                    && improvement_violation(self.axiom, change.target(), before, after)
            }
            Witness::NonCompensatory { choice, best_class } => {
                self.axiom == AxiomId::NonComp
                    && *choice == whole_now
                    && p.grade_table().threshold() == *best_class
                    && choice != best_class
            }
        }
    }

    /// Human-readable description of the violation.
    pub fn describe(&self) -> String {
        let u = self.profile.universe();
        let f = |s: &AltSet| u.format_set(s);
        match &self.witness {
            Witness::Subset {
                subset,
                whole,
                part,
            } => format!(
                "C(X) = {}, X' = {}, C(X') = {}",
                f(whole),
                f(subset),
                f(part)
            ),
            Witness::Concordance {
                left,
                right,
                left_choice,
                right_choice,
                whole,
            } => format!(
                "X' = {}, X'' = {}, C(X') = {}, C(X'') = {}, C(X) = {}",
                f(left),
                f(right),
                f(left_choice),
                f(right_choice),
                f(whole)
            ),
            Witness::Removal {
                a,
                b,
                whole,
                without_b,
                without_a,
                ..
            } => format!(
                "C(X) = {}, C(X\\{{{}}}) = {}, C(X\\{{{}}}) = {}",
                f(whole),
                u.label_of(*b),
                f(without_b),
                u.label_of(*a),
                f(without_a)
            ),
            Witness::Improvement {
                change,
                before,
                after,
            } => format!(
                "{}: C(P) = {}, C(P') = {}",
                change.describe(u),
                f(before),
                f(after)
            ),
            Witness::NonCompensatory { choice, best_class } => {
                format!(
                    "C(X) = {}, best threshold class = {}",
                    f(choice),
                    f(best_class)
                )
            }
        }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} violated: {}", self.axiom, self.describe())?;
        write!(f, "{}", self.profile.to_text())
    }
}

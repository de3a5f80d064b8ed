//! The 28 base choice procedures and the q-Pareto rule.

use std::fmt;

use crate::altset::AltSet;
use crate::error::{Error, Result};
use crate::grades::ThresholdFn;
use crate::majority::MajorityRelation;
use crate::profile::Profile;

pub mod copeland;
pub mod covering;
pub mod elimination;
pub mod scoring;
pub mod solutions;
pub mod tournament;

pub use copeland::CopelandVariant;
pub use elimination::Elimination;

/// Anything that picks a subset from the universe of a profile.
pub trait Choice: Send + Sync {
    /// Choice from the whole universe of `p`.
    fn choose(&self, p: &Profile) -> AltSet;

    fn name(&self) -> String;

    /// Choice from `subset`, computed on the contraction of `p`.
    fn choose_from(&self, p: &Profile, subset: &AltSet) -> Result<AltSet> {
        Ok(self.choose(&p.contract(subset)?))
    }
}

impl<C: Choice + ?Sized> Choice for &C {
    fn choose(&self, p: &Profile) -> AltSet {
        (**self).choose(p)
    }
    fn name(&self) -> String {
        (**self).name()
    }
}

/// Canonical q for q-approval and k for k-stable sets in the catalog.
pub const CANONICAL_Q: usize = 2;
pub const CANONICAL_K: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Procedure {
    SimpleMajority,
    Plurality,
    InversePlurality,
    QApproval { q: usize },
    RunOff,
    Hare,
    Borda,
    Black,
    InverseBorda,
    Nanson,
    Coombs,
    MinimalDominant,
    MinimalUndominated,
    MinimalWeaklyStable,
    Fishburn,
    UncoveredI,
    UncoveredII,
    Richelson,
    CondorcetWinner,
    Core,
    KStable { k: usize },
    Threshold,
    Copeland1,
    Copeland2,
    Copeland3,
    SuperThreshold(ThresholdFn),
    Minimax,
    Simpson,
}

/// Optional parameters supplied alongside a procedure index or name.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub q: Option<usize>,
    pub k: Option<usize>,
    pub threshold: Option<ThresholdFn>,
}

const MNEMONICS: [&str; 28] = [
    "simple-majority",
    "plurality",
    "inverse-plurality",
    "q-approval",
    "run-off",
    "hare",
    "borda",
    "black",
    "inverse-borda",
    "nanson",
    "coombs",
    "min-dominant",
    "min-undominated",
    "min-weakly-stable",
    "fishburn",
    "uncovered-1",
    "uncovered-2",
    "richelson",
    "condorcet",
    "core",
    "k-stable",
    "threshold",
    "copeland-1",
    "copeland-2",
    "copeland-3",
    "super-threshold",
    "minimax",
    "simpson",
];

const TITLES: [&str; 28] = [
    "Simple majority rule",
    "Plurality rule",
    "Inverse plurality rule",
    "q-Approval rule",
    "Run-off procedure",
    "Hare procedure",
    "Borda rule",
    "Black procedure",
    "Inverse Borda procedure",
    "Nanson procedure",
    "Coombs procedure",
    "Minimal dominant set",
    "Minimal undominated set",
    "Minimal weakly stable set",
    "Fishburn rule",
    "Uncovered set I",
    "Uncovered set II",
    "Richelson rule",
    "Condorcet winner",
    "Core",
    "k-stable set",
    "Threshold rule",
    "Copeland rule 1",
    "Copeland rule 2",
    "Copeland rule 3",
    "Super-threshold rule",
    "Minimax procedure",
    "Simpson procedure",
];

impl Procedure {
    /// Procedure `index` (1..=28) with its parameter, defaulting to the
    /// canonical one. Parameters given to unparameterized procedures are
    /// rejected.
    pub fn from_index(index: usize, params: Params) -> Result<Self> {
        use Procedure::*;
        if !(1..=28).contains(&index) {
            return Err(Error::UnknownProcedure(index.to_string()));
        }
        let name = MNEMONICS[index - 1];
        let reject = |what: &str| Error::Parameter {
            proc: name.into(),
            msg: format!("does not take {what}"),
        };
        if params.q.is_some() && index != 4 {
            return Err(reject("q"));
        }
        if params.k.is_some() && index != 21 {
            return Err(reject("k"));
        }
        if params.threshold.is_some() && index != 26 {
            return Err(reject("a threshold"));
        }
        Ok(match index {
            1 => SimpleMajority,
            2 => Plurality,
            3 => InversePlurality,
            4 => {
                let q = params.q.unwrap_or(CANONICAL_Q);
                if q == 0 {
                    return Err(Error::Parameter {
                        proc: name.into(),
                        msg: "needs q >= 1".into(),
                    });
                }
                QApproval { q }
            }
            5 => RunOff,
            6 => Hare,
            7 => Borda,
            8 => Black,
            9 => InverseBorda,
            10 => Nanson,
            11 => Coombs,
            12 => MinimalDominant,
            13 => MinimalUndominated,
            14 => MinimalWeaklyStable,
            15 => Fishburn,
            16 => UncoveredI,
            17 => UncoveredII,
            18 => Richelson,
            19 => CondorcetWinner,
            20 => Core,
            21 => {
                let k = params.k.unwrap_or(CANONICAL_K);
                if k < 2 {
                    return Err(Error::Parameter {
                        proc: name.into(),
                        msg: "needs k > 1".into(),
                    });
                }
                KStable { k }
            }
            22 => Threshold,
            23 => Copeland1,
            24 => Copeland2,
            25 => Copeland3,
            26 => SuperThreshold(params.threshold.unwrap_or_default()),
            27 => Minimax,
            _ => Simpson,
        })
    }

    /// Canonical instance of procedure `index`.
    pub fn canonical(index: usize) -> Self {
        Self::from_index(index, Params::default()).expect("index in 1..=28")
    }

    pub fn all() -> impl Iterator<Item = Procedure> {
        (1..=28).map(Self::canonical)
    }

    /// Accepts an index or a mnemonic such as `borda` or `uncovered-1`.
    pub fn parse(s: &str, params: Params) -> Result<Self> {
        let s = s.trim();
        let index = match s.parse::<usize>() {
            Ok(i) => i,
            Err(_) => {
                let lower = s.to_ascii_lowercase();
                MNEMONICS
                    .iter()
                    .position(|m| *m == lower)
                    .ok_or_else(|| Error::UnknownProcedure(s.to_string()))?
                    + 1
            }
        };
        Self::from_index(index, params)
    }

    pub fn index(&self) -> usize {
        use Procedure::*;
        match self {
            SimpleMajority => 1,
            Plurality => 2,
            InversePlurality => 3,
            QApproval { .. } => 4,
            RunOff => 5,
            Hare => 6,
            Borda => 7,
            Black => 8,
            InverseBorda => 9,
            Nanson => 10,
            Coombs => 11,
            MinimalDominant => 12,
            MinimalUndominated => 13,
            MinimalWeaklyStable => 14,
            Fishburn => 15,
            UncoveredI => 16,
            UncoveredII => 17,
            Richelson => 18,
            CondorcetWinner => 19,
            Core => 20,
            KStable { .. } => 21,
            Threshold => 22,
            Copeland1 => 23,
            Copeland2 => 24,
            Copeland3 => 25,
            SuperThreshold(_) => 26,
            Minimax => 27,
            Simpson => 28,
        }
    }

    pub fn mnemonic(&self) -> &'static str {
        MNEMONICS[self.index() - 1]
    }

    pub fn title(&self) -> &'static str {
        TITLES[self.index() - 1]
    }

    /// Procedures that pick at most one alternative by construction.
    pub fn is_single_winner(&self) -> bool {
        matches!(
            self,
            Procedure::SimpleMajority
                | Procedure::RunOff
                | Procedure::Hare
                | Procedure::Coombs
                | Procedure::CondorcetWinner
        )
    }

    /// Procedures whose result depends on μ alone.
    pub fn is_majority_only(&self) -> bool {
        matches!(self.index(), 12..=21 | 23..=25)
    }

    /// Evaluates a μ-only procedure directly on a relation.
    pub fn choose_mu(&self, mu: &MajorityRelation) -> Option<AltSet> {
        use Procedure::*;
        Some(match *self {
            MinimalDominant => solutions::minimal_dominant(mu),
            MinimalUndominated => solutions::minimal_undominated(mu),
            MinimalWeaklyStable => solutions::minimal_weakly_stable(mu),
            Fishburn => covering::fishburn(mu),
            UncoveredI => covering::uncovered_lower(mu),
            UncoveredII => covering::uncovered_upper(mu),
            Richelson => covering::richelson(mu),
            CondorcetWinner => solutions::condorcet_winner(mu),
            Core => solutions::core(mu),
            KStable { k } => solutions::k_stable(mu, k),
            Copeland1 => copeland::copeland_mu(mu, CopelandVariant::One),
            Copeland2 => copeland::copeland_mu(mu, CopelandVariant::Two),
            Copeland3 => copeland::copeland_mu(mu, CopelandVariant::Three),
            _ => return None,
        })
    }
}

impl fmt::Display for Procedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Procedure::QApproval { q } => write!(f, "q-approval(q={q})"),
            Procedure::KStable { k } => write!(f, "k-stable(k={k})"),
            Procedure::SuperThreshold(t) => write!(f, "super-threshold(t={t})"),
            p => f.write_str(p.mnemonic()),
        }
    }
}

impl Choice for Procedure {
    fn choose(&self, p: &Profile) -> AltSet {
        use Procedure::*;
        match *self {
            SimpleMajority => scoring::simple_majority(p),
            Plurality => scoring::plurality(p),
            InversePlurality => scoring::inverse_plurality(p),
            QApproval { q } => scoring::q_approval(p, q),
            RunOff => elimination::run_off(p).chosen,
            Hare => elimination::hare(p).chosen,
            Borda => scoring::borda(p),
            Black => scoring::black(p),
            InverseBorda => elimination::inverse_borda(p).chosen,
            Nanson => elimination::nanson(p).chosen,
            Coombs => elimination::coombs(p).chosen,
            CondorcetWinner => scoring::condorcet_winner(p),
            Threshold => p.grade_table().threshold(),
            SuperThreshold(t) => p.grade_table().super_threshold(t),
            Copeland1 => copeland::copeland(p, CopelandVariant::One),
            Copeland2 => copeland::copeland(p, CopelandVariant::Two),
            Copeland3 => copeland::copeland(p, CopelandVariant::Three),
            Minimax => tournament::minimax(p),
            Simpson => tournament::simpson(p),
            _ => self
                .choose_mu(&p.majority_relation())
                .expect("majority-only procedure"),
        }
    }

    fn name(&self) -> String {
        self.to_string()
    }
}

/// Choose alternatives Pareto-dominated by at most q others, on the grade
/// table of the profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QPareto {
    pub q: usize,
}

impl Choice for QPareto {
    fn choose(&self, p: &Profile) -> AltSet {
        p.grade_table().q_pareto(self.q)
    }
    fn name(&self) -> String {
        format!("qpareto(q={})", self.q)
    }
}

/// `id` applied to the contraction of `p` onto `subset`.
pub fn apply(id: &Procedure, p: &Profile, subset: &AltSet) -> Result<AltSet> {
    id.choose_from(p, subset)
}

/// Local indices attaining the maximum of `v`.
pub(crate) fn argmax<T: PartialOrd + Copy>(v: &[T]) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    for (i, &x) in v.iter().enumerate() {
        match best.first() {
            None => best.push(i),
            Some(&b) if x > v[b] => {
                best.clear();
                best.push(i);
            }
            Some(&b) if x == v[b] => best.push(i),
            _ => {}
        }
    }
    best
}

pub(crate) fn argmin<T: PartialOrd + Copy>(v: &[T]) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    for (i, &x) in v.iter().enumerate() {
        match best.first() {
            None => best.push(i),
            Some(&b) if x < v[b] => {
                best.clear();
                best.push(i);
            }
            Some(&b) if x == v[b] => best.push(i),
            _ => {}
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip_and_names() {
        for i in 1..=28 {
            let p = Procedure::canonical(i);
            assert_eq!(p.index(), i);
            assert_eq!(
                Procedure::parse(p.mnemonic(), Params::default()).unwrap(),
                p
            );
        }
        assert_eq!(
            Procedure::parse("4", Params::default()).unwrap(),
            Procedure::QApproval { q: 2 }
        );
    }

    #[test]
    fn parameters_are_checked() {
        let q = Params {
            q: Some(3),
            ..Params::default()
        };
        assert_eq!(
            Procedure::from_index(4, q).unwrap(),
            Procedure::QApproval { q: 3 }
        );
        assert!(matches!(
            Procedure::from_index(7, q),
            Err(Error::Parameter { .. })
        ));
        let k1 = Params {
            k: Some(1),
            ..Params::default()
        };
        assert!(Procedure::from_index(21, k1).is_err());
        assert!(Procedure::from_index(0, Params::default()).is_err());
        assert!(Procedure::parse("dictator", Params::default()).is_err());
    }

    #[test]
    fn argmax_and_argmin_keep_ties() {
        assert_eq!(argmax(&[1, 3, 3, 0]), vec![1, 2]);
        assert_eq!(argmin(&[1, 3, 0, 0]), vec![2, 3]);
    }

    #[test]
    fn singleton_universe_is_chosen_by_all() {
        let p = Profile::from_rankings(&["a", "a", "a"]).unwrap();
        for proc in Procedure::all() {
            assert_eq!(proc.choose(&p), p.universe().all(), "{proc}");
        }
    }
}

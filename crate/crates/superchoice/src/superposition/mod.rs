//! Two-stage superposition: the first stage's choice becomes the second
//! stage's presented set.

use std::fmt;

use crate::altset::AltSet;
use crate::error::{Error, Result};
use crate::procedures::{Choice, Params, Procedure};
use crate::profile::Profile;

pub mod catalog;

pub use catalog::{catalog, classify, CatalogEntry, Expectation, Flag, Status};

/// Identifier 28·(i−1)+j of the superposition of procedure i then j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoStageId {
    first: u8,
    second: u8,
}

impl TwoStageId {
    pub fn new(first: usize, second: usize) -> Result<Self> {
        if !(1..=28).contains(&first) || !(1..=28).contains(&second) {
            return Err(Error::BadTwoStageId(28 * first.saturating_sub(1) + second));
        }
        Ok(TwoStageId {
            first: first as u8,
            second: second as u8,
        })
    }

    pub fn from_id(id: usize) -> Result<Self> {
        if !(1..=784).contains(&id) {
            return Err(Error::BadTwoStageId(id));
        }
        Self::new((id - 1) / 28 + 1, (id - 1) % 28 + 1)
    }

    pub fn id(self) -> usize {
        28 * (self.first as usize - 1) + self.second as usize
    }

    pub fn first(self) -> usize {
        self.first as usize
    }

    pub fn second(self) -> usize {
        self.second as usize
    }

    pub fn all() -> impl Iterator<Item = TwoStageId> {
        (1..=784).map(|id| Self::from_id(id).expect("id in range"))
    }

    /// Composition with canonical parameters for both stages.
    pub fn procedure(self) -> TwoStage {
        compose(
            Procedure::canonical(self.first()),
            Procedure::canonical(self.second()),
        )
    }
}

impl fmt::Display for TwoStageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

/// Both stage outputs of a superposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stages {
    pub first: AltSet,
    pub last: AltSet,
}

/// `first` then `second`, with an empty first-stage choice short-circuiting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoStage {
    pub first: Procedure,
    pub second: Procedure,
}

pub fn compose(first: Procedure, second: Procedure) -> TwoStage {
    TwoStage { first, second }
}

/// Composition from indices or mnemonics, with parameters routed to
/// whichever stage takes them.
pub fn compose_parsed(first: &str, second: &str, params: Params) -> Result<TwoStage> {
    let a = Procedure::parse(first, Params::default())?;
    let b = Procedure::parse(second, Params::default())?;
    let takes = |i: usize| a.index() == i || b.index() == i;
    for (given, i, what) in [
        (params.q.is_some(), 4, "q"),
        (params.k.is_some(), 21, "k"),
        (params.threshold.is_some(), 26, "a threshold"),
    ] {
        if given && !takes(i) {
            return Err(Error::Parameter {
                proc: format!("{a} -> {b}"),
                msg: format!("neither stage takes {what}"),
            });
        }
    }
    let route = |p: &Procedure| Params {
        q: params.q.filter(|_| p.index() == 4),
        k: params.k.filter(|_| p.index() == 21),
        threshold: params.threshold.filter(|_| p.index() == 26),
    };
    Ok(compose(
        Procedure::from_index(a.index(), route(&a))?,
        Procedure::from_index(b.index(), route(&b))?,
    ))
}

impl TwoStage {
    pub fn id(&self) -> TwoStageId {
        TwoStageId::new(self.first.index(), self.second.index()).expect("valid indices")
    }

    pub fn stages(&self, p: &Profile) -> Stages {
        let first = self.first.choose(p);
        let last = if first.is_empty() {
            first.clone()
        } else {
            let sub = p
                .contract(&first)
                .expect("first stage chooses from the universe");
            self.second.choose(&sub)
        };
        Stages { first, last }
    }
}

impl Choice for TwoStage {
    fn choose(&self, p: &Profile) -> AltSet {
        self.stages(p).last
    }

    fn name(&self) -> String {
        format!("{} -> {}", self.first, self.second)
    }
}

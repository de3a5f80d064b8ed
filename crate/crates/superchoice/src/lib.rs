//! Choice procedures, two-stage superpositions and axiom checks.

pub mod altset;
pub mod axioms;
pub mod bench;
pub mod error;
pub mod fixtures;
pub mod grades;
pub mod majority;
pub mod par;
pub mod procedures;
pub mod profile;
pub mod superposition;

pub use altset::{AltId, AltSet, Universe};
pub use axioms::{check_axiom, AxiomId, Counterexample, Verdict};
pub use error::{Error, Result};
pub use grades::{GradeTable, ThresholdFn};
pub use majority::{MajorityRelation, TournamentMatrix};
pub use par::Execution;
pub use procedures::{Choice, Params, Procedure, QPareto};
pub use profile::{Perturbation, Profile, RankTable};
pub use superposition::{compose, TwoStage, TwoStageId};

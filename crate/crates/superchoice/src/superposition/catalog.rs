//! The 784 two-stage procedures with their status and expected axiom flags.
//!
//! Flags are curated from the appendix arguments; each carries the paragraph
//! or block token it comes from. Anything not pinned there is `Unverified`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::OnceLock;

use super::TwoStageId;
use crate::axioms::AxiomId;
use crate::procedures::Procedure;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Regular,
    Degenerate(&'static str),
    /// Same choice as procedure `target`; `qualified` entries hold only when
    /// a single alternative is chosen.
    EquivalentTo {
        target: usize,
        qualified: bool,
    },
}

impl Status {
    pub fn is_regular(&self) -> bool {
        matches!(self, Status::Regular)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Regular => f.write_str("regular"),
            Status::Degenerate(r) => write!(f, "degenerate: {r}"),
            Status::EquivalentTo { target, qualified } => {
                write!(f, "equivalent: {}", Procedure::canonical(*target).title())?;
                if *qualified {
                    f.write_str(" (single chosen alternative)")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Expectation {
    Satisfies,
    Violates,
    Unverified,
}

impl Expectation {
    pub fn symbol(self) -> char {
        match self {
            Expectation::Satisfies => '+',
            Expectation::Violates => '-',
            Expectation::Unverified => '?',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flag {
    pub expect: Expectation,
    pub citation: Option<&'static str>,
}

impl Flag {
    const UNVERIFIED: Flag = Flag {
        expect: Expectation::Unverified,
        citation: None,
    };
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: TwoStageId,
    pub status: Status,
    pub flags: [Flag; 8],
}

impl CatalogEntry {
    pub fn flag(&self, axiom: AxiomId) -> Flag {
        self.flags[axiom.index()]
    }

    pub fn name(&self) -> String {
        format!(
            "{} -> {}",
            Procedure::canonical(self.id.first()).title(),
            Procedure::canonical(self.id.second()).title()
        )
    }
}

/// First stages that never choose more than one alternative.
const SINGLE_WINNER_FIRST: [usize; 5] = [1, 5, 6, 11, 19];
const EQUAL_BORDA: [usize; 6] = [231, 233, 234, 259, 261, 262];
const NO_OP_SECOND: [usize; 3] = [320, 348, 349];
const ALWAYS_EMPTY: usize = 553;
const CORE_TIED: [usize; 18] = [
    533, 539, 540, 541, 542, 544, 545, 546, 547, 548, 549, 550, 552, 555, 556, 557, 559, 560,
];

pub const NO_OP_REASON: &str = "second stage does not change the choice";

/// (id, equivalent procedure, holds only for single-alternative choices)
const EQUIVALENCES: [(usize, usize, bool); 25] = [
    (309, 19, false),
    (321, 13, false),
    (322, 14, false),
    (323, 15, false),
    (324, 16, false),
    (325, 17, false),
    (326, 18, false),
    (327, 19, false),
    (328, 20, false),
    (331, 23, false),
    (332, 24, false),
    (333, 25, false),
    (337, 20, true),
    (350, 14, false),
    (355, 19, false),
    (356, 20, false),
    (393, 20, true),
    (411, 20, true),
    (421, 20, true),
    (439, 20, true),
    (449, 20, true),
    (467, 20, true),
    (477, 20, true),
    (495, 20, true),
    (551, 19, false),
];

fn status_of(id: TwoStageId) -> Status {
    let n = id.id();
    if SINGLE_WINNER_FIRST.contains(&id.first()) {
        Status::Degenerate("first stage chooses at most one alternative")
    } else if EQUAL_BORDA.contains(&n) {
        Status::Degenerate("first stage leaves alternatives with equal Borda counts")
    } else if NO_OP_SECOND.contains(&n) {
        Status::Degenerate(NO_OP_REASON)
    } else if n == ALWAYS_EMPTY {
        Status::Degenerate("the choice is always empty")
    } else if CORE_TIED.contains(&n) {
        Status::Degenerate("first-stage alternatives are pairwise majority-tied")
    } else if let Some(&(_, target, qualified)) = EQUIVALENCES.iter().find(|e| e.0 == n) {
        Status::EquivalentTo { target, qualified }
    } else {
        Status::Regular
    }
}

use Expectation::{Satisfies as Y, Violates as N};

const ALL8: &str = "H C O ACA Mon1 Mon2 SM NC";

/// (ids, axioms, expectation, citation)
const RULES: &[(&str, &str, Expectation, &str)] = &[
    ("29", "H", N, "29.1"),
    ("29", "C", N, "29.2"),
    ("29", "O", N, "29.3"),
    ("29", "ACA", N, "29.4"),
    ("29", "Mon1", Y, "29.5"),
    ("29", "Mon2", Y, "29.6"),
    ("29", "SM", N, "29.7"),
    ("29", "NC", N, "29.8"),
    // plurality first
    ("30-32,35-36,40-56", "Mon1", Y, "30-46"),
    ("40,45,47,48", "C", N, "30-46"),
    ("40,47", "O", N, "30-46"),
    ("47,48", "H", N, "30-46"),
    ("48,54", "Mon2", N, "30-46"),
    ("50", "SM", N, "30-46"),
    // inverse plurality first
    ("57,75,76", "H", N, "57-84"),
    ("57,68,75", "O", N, "57-84"),
    ("68,73,75,76", "C", N, "57-84"),
    ("57-60,63,64,68-84", "Mon1", Y, "57-84"),
    ("76,82", "Mon2", N, "57-84"),
    ("78", "NC", N, "57-84"),
    // Borda first
    ("169,187,188", "H", N, "169-196"),
    ("169,180,187", "O", N, "169-196"),
    ("180,185,187,188", "C", N, "169-196"),
    ("169-196", "Mon1", Y, "169-196"),
    ("188,194", "Mon2", N, "169-196"),
    ("190", "NC", N, "169-196"),
    // Black first
    ("197-224", "H C O ACA SM NC", N, "197-224"),
    ("197-224", "Mon1", Y, "197-224"),
    ("198-200,203-214,216-224", "Mon2", N, "197-224"),
    ("197,201,202,215", "Mon2", Y, "197-224"),
    // minimal dominant set first
    ("310-319,330,334-336", "H C O ACA SM NC", N, "310-336"),
    ("310,311,315", "Mon1", N, "310.5"),
    ("312-314,316-319,330", "Mon1", N, "310-336"),
    ("334-336", "Mon1", Y, "310-336"),
    ("310-313,316-319,330,334-336", "Mon2", N, "310-336"),
    ("314,315", "Mon2", Y, "310-336"),
    // minimal undominated set first, remaining rows
    ("351-354,357,359-361", "H C O ACA Mon2 SM NC", N, "338-364"),
    ("351-354,357,359-361", "Mon1", Y, "338-364"),
    // minimal weakly stable set first
    ("365", "H", N, "365.1"),
    ("383,384", "H", N, "365-392"),
    ("365,376", "O", N, "365-392"),
    ("383", "C", N, "383.2"),
    ("376,381,384", "C", N, "365-392"),
    ("365-392", "Mon1 Mon2 NC", N, "365-392"),
    // Fishburn first
    ("412", "H", N, "412.1"),
    ("412", "C", N, "412.2"),
    ("404,409", "C", N, "394-420"),
    ("404", "O", N, "394-420"),
    ("394", "Mon1", N, "394.5"),
    ("409", "Mon1", N, "409.5"),
    ("395-403,405-407,412,414-420", "Mon1", N, "394-420"),
    ("412", "Mon2", N, "394-420"),
    ("393-420", "NC", N, "394-420"),
    // uncovered sets first
    ("440", "H", N, "440.1"),
    ("468", "H", N, "468.1"),
    ("465", "C", N, "465.2"),
    ("468", "C", N, "468.2"),
    ("422", "Mon1", N, "422.5"),
    ("465", "Mon1", N, "465.5"),
    ("468", "Mon1", N, "468.5"),
    // core first
    ("534-538,543,554,558", ALL8, N, "534-558"),
    // threshold first
    ("589-616", "Mon1", Y, "589-616"),
    ("589-616", "NC", N, "589-616"),
    // Copeland first
    (
        "617-620,623-624,628-648,651-652,656-676,679-680,684-700",
        "Mon1",
        Y,
        "617-700",
    ),
    (
        "621-622,625-627,649-650,653-655,677-678,681-683",
        "Mon1",
        N,
        "617-700",
    ),
    ("617-700", "NC", N, "617-700"),
    // super-threshold first
    ("701,719,720", "H", N, "701-728"),
    ("712,717,719,720", "C", N, "701-728"),
    ("712,717", "O", N, "701-728"),
    ("701,712,713,719,720", "Mon1", Y, "701-728"),
    ("702-711,714-718,721-728", "Mon1", N, "701-728"),
    ("701-728", "NC", N, "701-728"),
    // minimax and Simpson first
    (
        "729,740,741,747,748,757,768,769,775,776",
        "Mon1",
        Y,
        "729-784",
    ),
    (
        "730-739,742-746,749-756,758-767,770-774,777-784",
        "Mon1",
        N,
        "729-784",
    ),
];

/// Rows whose flags repeat another row's: (ids, offset to source, only
/// negative flags, citation).
const COPIES: &[(&str, usize, bool, &str)] = &[
    ("86-102", 56, false, "85-112"),
    ("338-347,358,362-364", 28, false, "338-364"),
    ("561-588", 196, true, "561-588"),
];

fn parse_ids(spec: &str) -> Vec<usize> {
    spec.split(',')
        .flat_map(|part| {
            let part = part.trim();
            match part.split_once('-') {
                Some((a, b)) => {
                    let (a, b): (usize, usize) = (a.parse().unwrap(), b.parse().unwrap());
                    (a..=b).collect::<Vec<_>>()
                }
                None => vec![part.parse().unwrap()],
            }
        })
        .collect()
}

/// A curation clash: two rules assign different expectations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub id: usize,
    pub axiom: AxiomId,
    pub citations: (&'static str, &'static str),
}

struct Built {
    entries: Vec<CatalogEntry>,
    conflicts: Vec<Conflict>,
}

fn assign(
    flags: &mut BTreeMap<(usize, AxiomId), Flag>,
    conflicts: &mut Vec<Conflict>,
    id: usize,
    axiom: AxiomId,
    flag: Flag,
) {
    match flags.get(&(id, axiom)) {
        Some(old) if old.expect != flag.expect => conflicts.push(Conflict {
            id,
            axiom,
            citations: (old.citation.unwrap_or(""), flag.citation.unwrap_or("")),
        }),
        Some(_) => {}
        None => {
            flags.insert((id, axiom), flag);
        }
    }
}

fn build() -> Built {
    let mut flags = BTreeMap::new();
    let mut conflicts = Vec::new();
    for &(ids, axioms, expect, citation) in RULES {
        for id in parse_ids(ids) {
            for a in axioms.split_whitespace() {
                let axiom: AxiomId = a.parse().expect("axiom code");
                let flag = Flag {
                    expect,
                    citation: Some(citation),
                };
                assign(&mut flags, &mut conflicts, id, axiom, flag);
            }
        }
    }
    for &(ids, offset, negative_only, citation) in COPIES {
        for id in parse_ids(ids) {
            for axiom in AxiomId::ALL {
                if let Some(src) = flags.get(&(id - offset, axiom)).copied() {
                    if negative_only && src.expect != Expectation::Violates {
                        continue;
                    }
                    let flag = Flag {
                        expect: src.expect,
                        citation: Some(citation),
                    };
                    assign(&mut flags, &mut conflicts, id, axiom, flag);
                }
            }
        }
    }
    // ACA implies H, so a heredity failure is an ACA failure.
    let h_fails: Vec<usize> = flags
        .iter()
        .filter(|((_, a), f)| *a == AxiomId::H && f.expect == Expectation::Violates)
        .map(|((id, _), _)| *id)
        .collect();
    for id in h_fails {
        let flag = Flag {
            expect: Expectation::Violates,
            citation: Some("ACA=>H"),
        };
        assign(&mut flags, &mut conflicts, id, AxiomId::Aca, flag);
    }
    let entries = TwoStageId::all()
        .map(|id| {
            let status = status_of(id);
            let mut row = [Flag::UNVERIFIED; 8];
            if !matches!(status, Status::Degenerate(_)) {
                for axiom in AxiomId::ALL {
                    if let Some(f) = flags.get(&(id.id(), axiom)) {
                        row[axiom.index()] = *f;
                    }
                }
            }
            CatalogEntry {
                id,
                status,
                flags: row,
            }
        })
        .collect();
    Built { entries, conflicts }
}

fn built() -> &'static Built {
    static CATALOG: OnceLock<Built> = OnceLock::new();
    CATALOG.get_or_init(build)
}

pub fn catalog() -> &'static [CatalogEntry] {
    &built().entries
}

pub fn classify(id: TwoStageId) -> &'static CatalogEntry {
    &catalog()[id.id() - 1]
}

/// Curation clashes found while building the catalog; empty when the rule
/// set is consistent.
pub fn curation_conflicts() -> &'static [Conflict] {
    &built().conflicts
}

/// Ids that curation rules mention but that are degenerate (and therefore
/// carry no flags).
pub fn flagged_degenerate_ids() -> Vec<usize> {
    let mut out: Vec<usize> = RULES
        .iter()
        .map(|r| r.0)
        .chain(COPIES.iter().map(|c| c.0))
        .flat_map(parse_ids)
        .filter(|&id| matches!(catalog()[id - 1].status, Status::Degenerate(_)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counts {
    pub total: usize,
    pub regular: usize,
    pub degenerate: usize,
    pub equivalent: usize,
}

pub fn counts() -> Counts {
    let mut c = Counts::default();
    for e in catalog() {
        c.total += 1;
        match e.status {
            Status::Regular => c.regular += 1,
            Status::Degenerate(_) => c.degenerate += 1,
            Status::EquivalentTo { .. } => c.equivalent += 1,
        }
    }
    c
}

/// Tab-separated export, one record per id:
///
/// `id  i  j  status  H  C  O  ACA  Mon1  Mon2  SM  NC  citations`
///
/// Flag cells are `+`, `-` or `?`. The citation cell lists `axiom:token`
/// pairs separated by `;`.
pub fn to_tsv() -> String {
    let mut out = String::from("id\ti\tj\tstatus");
    for a in AxiomId::ALL {
        write!(out, "\t{a}").unwrap();
    }
    out.push_str("\tcitations\n");
    for e in catalog() {
        write!(
            out,
            "{}\t{}\t{}\t{}",
            e.id.id(),
            e.id.first(),
            e.id.second(),
            e.status
        )
        .unwrap();
        for f in e.flags {
            write!(out, "\t{}", f.expect.symbol()).unwrap();
        }
        let cites: Vec<String> = AxiomId::ALL
            .iter()
            .filter_map(|&a| e.flag(a).citation.map(|c| format!("{a}:{c}")))
            .collect();
        writeln!(out, "\t{}", cites.join(";")).unwrap();
    }
    out
}

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// The eight normative conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    H,
    C,
    O,
    Aca,
    Mon1,
    Mon2,
    StrictMono,
    NonComp,
}

impl AxiomId {
    pub const ALL: [AxiomId; 8] = [
        AxiomId::H,
        AxiomId::C,
        AxiomId::O,
        AxiomId::Aca,
        AxiomId::Mon1,
        AxiomId::Mon2,
        AxiomId::StrictMono,
        AxiomId::NonComp,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn code(self) -> &'static str {
        match self {
            AxiomId::H => "H",
            AxiomId::C => "C",
            AxiomId::O => "O",
            AxiomId::Aca => "ACA",
            AxiomId::Mon1 => "Mon1",
            AxiomId::Mon2 => "Mon2",
            AxiomId::StrictMono => "SM",
            AxiomId::NonComp => "NC",
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for AxiomId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let l = s.trim().to_ascii_lowercase();
        Ok(match l.as_str() {
            "h" | "heredity" => AxiomId::H,
            "c" | "concordance" => AxiomId::C,
            "o" | "outcast" => AxiomId::O,
            "aca" => AxiomId::Aca,
            "mon1" => AxiomId::Mon1,
            "mon2" => AxiomId::Mon2,
            "sm" | "strictmono" | "strict-mono" => AxiomId::StrictMono,
            "nc" | "noncomp" | "non-comp" => AxiomId::NonComp,
            _ => return Err(Error::Config(format!("unknown axiom '{s}'"))),
        })
    }
}

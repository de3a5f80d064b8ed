//! Regression fixtures: a profile, grade table or majority matrix plus
//! `#@` directives naming the procedure and the documented values.
//!
//! ```text
//! #@ fixture 29.1 plurality then simple majority
//! #@ proc 2>1
//! #@ expect first_place = a:2 b:2 c:1
//! #@ expect stage1 = {a, b}
//! #@ expect choice = {b}
//! #@ expect choice[b,c] = {c}
//! #@ expect axiom[H] = violated
//! #@ improve c 1 2
//! #@ expect choice = {}
//! #@ reset
//! #@ verify Mon1 m=3 n=3
//! a b c
//! a c b
//! ...
//! ```
//!
//! The body format follows the extension: `.prof` profiles, `.grd` grade
//! tables, `.mu` majority matrices. Directives apply in order; `improve`
//! and `flip` change the current subject until `reset`.

use std::fmt;
use std::path::{Path, PathBuf};

use crate::altset::{AltSet, Universe};
use crate::axioms::{self, AxiomId, SearchConfig, Space, Verdict, Verification};
use crate::error::{Error, Result};
use crate::grades::{GradeTable, ThresholdFn};
use crate::majority::MajorityRelation;
use crate::procedures::{Choice, Params, Procedure};
use crate::profile::{Perturbation, Profile};
use crate::superposition::{compose_parsed, TwoStage};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureProc {
    Single(Procedure),
    Two(TwoStage),
    QPareto(usize),
}

impl FixtureProc {
    pub fn parse(spec: &str) -> Result<Self> {
        let mut toks = spec.split_whitespace();
        let head = toks
            .next()
            .ok_or_else(|| Error::Config("empty procedure".into()))?;
        let mut params = Params::default();
        for t in toks {
            let (k, v) = t
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected key=value, got `{t}`")))?;
            let num = || {
                v.parse::<usize>()
                    .map_err(|_| Error::Config(format!("bad value `{v}` for {k}")))
            };
            match k {
                "q" => params.q = Some(num()?),
                "k" => params.k = Some(num()?),
                "t" => params.threshold = Some(v.parse::<ThresholdFn>()?),
                _ => return Err(Error::Config(format!("unknown parameter `{k}`"))),
            }
        }
        if head.eq_ignore_ascii_case("qpareto") {
            return Ok(FixtureProc::QPareto(params.q.unwrap_or(0)));
        }
        match head.split_once('>') {
            Some((a, b)) => Ok(FixtureProc::Two(compose_parsed(a, b, params)?)),
            None => Ok(FixtureProc::Single(Procedure::parse(head, params)?)),
        }
    }

    fn as_choice(&self) -> &dyn Choice {
        match self {
            FixtureProc::Single(p) => p,
            FixtureProc::Two(t) => t,
            FixtureProc::QPareto(_) => self,
        }
    }
}

impl Choice for FixtureProc {
    fn choose(&self, p: &Profile) -> AltSet {
        match self {
            FixtureProc::QPareto(q) => p.grade_table().q_pareto(*q),
            other => other.as_choice().choose(p),
        }
    }

    fn name(&self) -> String {
        match self {
            FixtureProc::QPareto(q) => format!("qpareto(q={q})"),
            other => other.as_choice().name(),
        }
    }
}

/// The data a fixture is about.
#[derive(Clone, Debug)]
enum Subject {
    Profile(Profile),
    Grades(GradeTable),
    Majority(MajorityRelation),
}

impl Subject {
    fn universe(&self) -> &Universe {
        match self {
            Subject::Profile(p) => p.universe(),
            Subject::Grades(g) => g.universe(),
            Subject::Majority(m) => m.universe(),
        }
    }

    fn profile(&self) -> Result<Profile> {
        match self {
            Subject::Profile(p) => Ok(p.clone()),
            Subject::Majority(m) => Ok(m.realize()),
            Subject::Grades(_) => Err(Error::Config("grade tables have no profile".into())),
        }
    }

    fn profile_only(&self, what: &str) -> Result<&Profile> {
        match self {
            Subject::Profile(p) => Ok(p),
            _ => Err(Error::Config(format!("`{what}` needs a profile fixture"))),
        }
    }

    fn majority(&self) -> Result<MajorityRelation> {
        match self {
            Subject::Profile(p) => Ok(p.majority_relation()),
            Subject::Majority(m) => Ok(m.clone()),
            Subject::Grades(_) => Err(Error::Config(
                "grade tables have no majority relation".into(),
            )),
        }
    }

    fn grades(&self) -> Result<GradeTable> {
        match self {
            Subject::Profile(p) => Ok(p.grade_table()),
            Subject::Grades(g) => Ok(g.clone()),
            Subject::Majority(_) => Err(Error::Config("majority relations have no grades".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Directive {
    Proc(String),
    Expect {
        key: String,
        value: String,
    },
    Improve {
        label: String,
        criterion: usize,
        steps: usize,
    },
    Flip {
        winner: String,
        loser: String,
    },
    Reset,
    Verify(String),
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub path: Option<PathBuf>,
    subject: Subject,
    directives: Vec<(usize, Directive)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BodyKind {
    Profile,
    Grades,
    Majority,
}

impl Fixture {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let kind = match path.extension().and_then(|e| e.to_str()) {
            Some("prof") => BodyKind::Profile,
            Some("grd") => BodyKind::Grades,
            Some("mu") => BodyKind::Majority,
            _ => {
                return Err(Error::Config(format!(
                    "{}: unknown fixture extension",
                    path.display()
                )))
            }
        };
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("?");
        let mut f = Self::parse_as(&text, kind, stem)?;
        f.path = Some(path.to_path_buf());
        Ok(f)
    }

    pub fn parse_profile(text: &str, name: &str) -> Result<Self> {
        Self::parse_as(text, BodyKind::Profile, name)
    }

    fn parse_as(text: &str, kind: BodyKind, default_name: &str) -> Result<Self> {
        let mut name = default_name.to_string();
        let mut directives = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            let Some(rest) = line.trim().strip_prefix("#@") else {
                continue;
            };
            let rest = rest.trim();
            let (word, arg) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            let arg = arg.trim();
            let bad = |msg: &str| crate::error::parse_err(ln, msg.to_string());
            let d = match word {
                "fixture" => {
                    if !arg.is_empty() {
                        name = arg.to_string();
                    }
                    continue;
                }
                "proc" => Directive::Proc(arg.to_string()),
                "expect" => {
                    let (k, v) = arg
                        .split_once('=')
                        .ok_or_else(|| bad("expect needs key = value"))?;
                    Directive::Expect {
                        key: k.trim().to_string(),
                        value: v.trim().to_string(),
                    }
                }
                "improve" => {
                    let t: Vec<&str> = arg.split_whitespace().collect();
                    let [label, c, s] = t[..] else {
                        return Err(bad("improve needs: label criterion steps"));
                    };
                    let criterion: usize = c.parse().map_err(|_| bad("bad criterion"))?;
                    if criterion == 0 {
                        return Err(bad("criteria are numbered from 1"));
                    }
                    Directive::Improve {
                        label: label.to_string(),
                        criterion,
                        steps: s.parse().map_err(|_| bad("bad step count"))?,
                    }
                }
                "flip" => {
                    let t: Vec<&str> = arg.split_whitespace().collect();
                    let [w, l] = t[..] else {
                        return Err(bad("flip needs: winner loser"));
                    };
                    Directive::Flip {
                        winner: w.to_string(),
                        loser: l.to_string(),
                    }
                }
                "reset" => Directive::Reset,
                "verify" => Directive::Verify(arg.to_string()),
                other => return Err(bad(&format!("unknown directive `{other}`"))),
            };
            directives.push((ln, d));
        }
        let subject = match kind {
            BodyKind::Profile => Subject::Profile(Profile::parse(text)?),
            BodyKind::Grades => Subject::Grades(GradeTable::parse(text)?),
            BodyKind::Majority => Subject::Majority(MajorityRelation::parse(text)?),
        };
        Ok(Fixture {
            name,
            path: None,
            subject,
            directives,
        })
    }

    /// Recomputes every documented value.
    pub fn replay(&self) -> FixtureReport {
        let mut report = FixtureReport {
            name: self.name.clone(),
            path: self.path.clone(),
            checks: Vec::new(),
            error: None,
        };
        if let Err(e) = self.run(&mut report) {
            report.error = Some(e.to_string());
        }
        report
    }

    fn run(&self, report: &mut FixtureReport) -> Result<()> {
        let mut proc: Option<FixtureProc> = None;
        let mut subject = self.subject.clone();
        for (ln, d) in &self.directives {
            let at = |e: Error| Error::Config(format!("line {ln}: {e}"));
            match d {
                Directive::Proc(spec) => proc = Some(FixtureProc::parse(spec).map_err(at)?),
                Directive::Reset => subject = self.subject.clone(),
                Directive::Improve {
                    label,
                    criterion,
                    steps,
                } => {
                    let p = subject.profile_only("improve").map_err(at)?;
                    let target = p
                        .universe()
                        .find(label)
                        .ok_or_else(|| at(Error::UnknownAlternative(label.clone())))?;
                    let change = Perturbation::Improve {
                        target,
                        criterion: criterion - 1,
                        steps: *steps,
                    };
                    subject = Subject::Profile(p.improve(&change).map_err(at)?);
                }
                Directive::Flip { winner, loser } => {
                    let mu = subject.majority().map_err(at)?;
                    let u = mu.universe();
                    let w = u
                        .find(winner)
                        .ok_or_else(|| at(Error::UnknownAlternative(winner.clone())))?;
                    let l = u
                        .find(loser)
                        .ok_or_else(|| at(Error::UnknownAlternative(loser.clone())))?;
                    subject = Subject::Majority(mu.perturb(w, l).map_err(at)?);
                }
                Directive::Expect { key, value } => {
                    let actual = evaluate(&subject, proc.as_ref(), key).map_err(at)?;
                    let expected = normalize(&subject, key, value).map_err(at)?;
                    report.checks.push(Check {
                        line: *ln,
                        key: key.clone(),
                        pass: actual == expected,
                        expected,
                        actual,
                    });
                }
                Directive::Verify(spec) => {
                    let proc = proc
                        .as_ref()
                        .ok_or_else(|| at(Error::Config("verify before proc".into())))?;
                    let (want, got) = verify(proc, spec).map_err(at)?;
                    report.checks.push(Check {
                        line: *ln,
                        key: format!("verify {spec}"),
                        pass: want == got,
                        expected: want,
                        actual: got,
                    });
                }
            }
        }
        Ok(())
    }
}

fn verify(proc: &FixtureProc, spec: &str) -> Result<(String, String)> {
    let mut toks = spec.split_whitespace();
    let axiom: AxiomId = toks
        .next()
        .ok_or_else(|| Error::Config("verify needs an axiom".into()))?
        .parse()?;
    let (mut m, mut n) = (3..=3, 3..=3);
    let mut space = Space::Ordered;
    let mut want = "verified".to_string();
    for t in toks {
        let (k, v) = t
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("expected key=value, got `{t}`")))?;
        let range = |v: &str| -> Result<std::ops::RangeInclusive<usize>> {
            let bad = || Error::Config(format!("bad range `{v}`"));
            match v.split_once("..") {
                Some((a, b)) => Ok(a.parse().map_err(|_| bad())?..=b.parse().map_err(|_| bad())?),
                None => {
                    let x = v.parse().map_err(|_| bad())?;
                    Ok(x..=x)
                }
            }
        };
        match k {
            "m" => m = range(v)?,
            "n" => n = range(v)?,
            "space" => {
                space = match v {
                    "ordered" => Space::Ordered,
                    "multiset" => Space::Multiset,
                    "majority" => Space::Majority {
                        tournaments_only: false,
                    },
                    _ => return Err(Error::Config(format!("unknown space `{v}`"))),
                }
            }
            "expect" => want = v.to_string(),
            _ => return Err(Error::Config(format!("unknown verify option `{k}`"))),
        }
    }
    let cfg = SearchConfig::exhaustive(m, n).with_space(space);
    let got = match axioms::verify_bounded(proc, axiom, &cfg)? {
        Verification::Verified { .. } => "verified",
        Verification::Refuted(w) => {
            if !w.replay(proc) {
                return Err(Error::Config("witness does not replay".into()));
            }
            "refuted"
        }
        Verification::Partial { .. } => "partial",
    };
    Ok((want, got.to_string()))
}

/// `choice[a,b]` → ("choice", Some("a,b")).
fn split_key(key: &str) -> (&str, Option<&str>) {
    match key.split_once('[') {
        Some((k, rest)) => (k.trim(), Some(rest.trim_end_matches(']'))),
        None => (key.trim(), None),
    }
}

fn counts_text(u: &Universe, v: impl IntoIterator<Item = u64>) -> String {
    u.labels()
        .zip(v)
        .map(|(l, c)| format!("{l}:{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn classes_text(u: &Universe, classes: &[AltSet]) -> String {
    classes
        .iter()
        .map(|c| {
            c.iter()
                .map(|id| u.label_of(id))
                .collect::<Vec<_>>()
                .join(" ~ ")
        })
        .collect::<Vec<_>>()
        .join(" > ")
}

fn evaluate(subject: &Subject, proc: Option<&FixtureProc>, key: &str) -> Result<String> {
    let u = subject.universe().clone();
    let (base, arg) = split_key(key);
    let need_proc = || proc.ok_or_else(|| Error::Config(format!("`{key}` before proc")));
    match base {
        "choice" | "stage1" => {
            let proc = need_proc()?;
            let chosen = if let Subject::Grades(g) = subject {
                if arg.is_some() || base == "stage1" {
                    return Err(Error::Config("grade fixtures support only `choice`".into()));
                }
                match proc {
                    FixtureProc::QPareto(q) => g.q_pareto(*q),
                    FixtureProc::Single(Procedure::Threshold) => g.threshold(),
                    FixtureProc::Single(Procedure::SuperThreshold(t)) => g.super_threshold(*t),
                    _ => return Err(Error::Config("procedure needs a profile".into())),
                }
            } else {
                let mut p = subject.profile()?;
                if let Some(a) = arg {
                    p = p.contract(&u.parse_set(a)?)?;
                }
                match (base, proc) {
                    ("stage1", FixtureProc::Two(t)) => t.stages(&p).first,
                    ("stage1", _) => {
                        return Err(Error::Config("stage1 needs a two-stage procedure".into()))
                    }
                    _ => proc.choose(&p),
                }
            };
            Ok(u.format_set(&chosen))
        }
        "first_place" | "last_place" | "borda" => {
            let p = subject.profile_only(base)?;
            let p = match arg {
                Some(a) => p.contract(&u.parse_set(a)?)?,
                None => p.clone(),
            };
            let v: Vec<u64> = match base {
                "first_place" => p.first_place_counts().into_iter().map(u64::from).collect(),
                "last_place" => p.last_place_counts().into_iter().map(u64::from).collect(),
                _ => p.borda_counts(),
            };
            Ok(counts_text(p.universe(), v))
        }
        "grades" => {
            let g = subject.grades()?;
            Ok((0..g.m())
                .map(|x| {
                    let row: Vec<String> = g.row(x).iter().map(|v| v.to_string()).collect();
                    format!("{}:{}", u.label(x), row.join(","))
                })
                .collect::<Vec<_>>()
                .join(" "))
        }
        "threshold_order" => Ok(classes_text(&u, &subject.grades()?.threshold_classes())),
        "tournament" => {
            let t = subject.profile_only(base)?.tournament_matrix();
            Ok((0..t.m())
                .map(|x| {
                    let row: Vec<String> = (0..t.m())
                        .map(|y| {
                            if x == y {
                                "-".into()
                            } else {
                                t.get(x, y).to_string()
                            }
                        })
                        .collect();
                    format!("{}:{}", u.label(x), row.join(","))
                })
                .collect::<Vec<_>>()
                .join(" "))
        }
        "majority" => {
            let mu = subject.majority()?;
            let mu = match arg {
                Some(a) => mu.restrict(&u.parse_set(a)?)?,
                None => mu,
            };
            let v = mu.universe();
            Ok(mu
                .edges()
                .iter()
                .map(|&(x, y)| format!("{}>{}", v.label(x), v.label(y)))
                .collect::<Vec<_>>()
                .join(" "))
        }
        "upper_contour" | "lower_contour" => {
            let mu = subject.majority()?;
            let sets = if base == "upper_contour" {
                mu.upper_contour_sets()
            } else {
                mu.lower_contour_sets()
            };
            Ok(u.labels()
                .zip(&sets)
                .map(|(l, s)| format!("{l}:{}", u.format_set(s)))
                .collect::<Vec<_>>()
                .join(" "))
        }
        "weakly_stable_sets" => {
            let mu = subject.majority()?;
            let mu = match arg {
                Some(a) => mu.restrict(&u.parse_set(a)?)?,
                None => mu,
            };
            Ok(crate::procedures::solutions::weakly_stable_sets(&mu)
                .iter()
                .map(|s| u.format_set(s))
                .collect::<Vec<_>>()
                .join(" "))
        }
        "axiom" => {
            let proc = need_proc()?;
            let axiom: AxiomId = arg
                .ok_or_else(|| Error::Config("axiom key needs [name]".into()))?
                .parse()?;
            let verdict = match subject {
                Subject::Majority(mu) => axioms::check_axiom_mu(proc, axiom, mu),
                Subject::Profile(p) => axioms::check_axiom(proc, axiom, p),
                Subject::Grades(_) => {
                    return Err(Error::Config("axiom checks need a profile".into()))
                }
            };
            Ok(match verdict {
                Verdict::Holds => "holds".into(),
                Verdict::NotApplicable => "not-applicable".into(),
                Verdict::Violated(w) => {
                    if !w.replay(proc) {
                        return Err(Error::Config("witness does not replay".into()));
                    }
                    "violated".into()
                }
            })
        }
        "criteria" => Ok(subject.profile_only(base)?.n().to_string()),
        _ => Err(Error::Config(format!("unknown expectation `{key}`"))),
    }
}

/// Brings an expected value into the same canonical text as `evaluate`.
fn normalize(subject: &Subject, key: &str, value: &str) -> Result<String> {
    let u = subject.universe();
    let (base, _) = split_key(key);
    Ok(match base {
        "choice" | "stage1" => u.format_set(&u.parse_set(value)?),
        "threshold_order" => {
            let classes: Vec<AltSet> = value
                .split('>')
                .map(|c| u.parse_set(&c.replace('~', " ")))
                .collect::<Result<_>>()?;
            classes_text(u, &classes)
        }
        "upper_contour" | "lower_contour" => {
            let mut parts = Vec::new();
            for item in value.split('}').map(str::trim).filter(|s| !s.is_empty()) {
                let (l, set) = item
                    .split_once(':')
                    .ok_or_else(|| Error::Config(format!("bad contour entry `{item}`")))?;
                parts.push(format!("{}:{}", l.trim(), u.format_set(&u.parse_set(set)?)));
            }
            parts.join(" ")
        }
        "weakly_stable_sets" => value
            .split('}')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| u.parse_set(s).map(|set| u.format_set(&set)))
            .collect::<Result<Vec<_>>>()?
            .join(" "),
        "majority" => {
            let mut edges: Vec<(usize, usize, String)> = Vec::new();
            for e in value.split_whitespace() {
                let (a, b) = e
                    .split_once('>')
                    .ok_or_else(|| Error::Config(format!("bad edge `{e}`")))?;
                edges.push((u.local(a)?, u.local(b)?, e.to_string()));
            }
            edges.sort();
            edges.into_iter().map(|e| e.2).collect::<Vec<_>>().join(" ")
        }
        _ => value.split_whitespace().collect::<Vec<_>>().join(" "),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub line: usize,
    pub key: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureReport {
    pub name: String,
    pub path: Option<PathBuf>,
    pub checks: Vec<Check>,
    pub error: Option<String>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }
}

impl fmt::Display for FixtureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = self.checks.iter().filter(|c| c.pass).count();
        write!(
            f,
            "{:<6} {:<40} {}/{}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            ok,
            self.checks.len()
        )?;
        if let Some(e) = &self.error {
            write!(f, "\n       error: {e}")?;
        }
        for c in self.checks.iter().filter(|c| !c.pass) {
            write!(
                f,
                "\n       line {}: {}\n         expected {}\n         actual   {}",
                c.line, c.key, c.expected, c.actual
            )?;
        }
        Ok(())
    }
}

/// Fixture files in `dir`, sorted by name.
pub fn corpus(dir: &Path) -> Result<Vec<PathBuf>> {
    let rd =
        std::fs::read_dir(dir).map_err(|e| Error::Config(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            matches!(
                p.extension().and_then(|e| e.to_str()),
                Some("prof" | "grd" | "mu")
            )
        })
        .collect();
    files.sort_by_key(|p| natural_key(p));
    Ok(files)
}

fn natural_key(p: &Path) -> (Vec<u64>, String) {
    let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or("");
    let nums = stem
        .split(|c: char| !c.is_ascii_digit())
        .filter(|s| !s.is_empty())
        .filter_map(|s| s.parse().ok())
        .collect();
    (nums, stem.to_string())
}

/// Loads and replays every fixture under `dir`. Files that fail to parse
/// produce a failing report.
pub fn replay_fixtures(dir: &Path) -> Result<Vec<FixtureReport>> {
    Ok(corpus(dir)?
        .into_iter()
        .map(|path| match Fixture::load(&path) {
            Ok(f) => f.replay(),
            Err(e) => FixtureReport {
                name: path
                    .file_stem()
                    .and_then(|s| s.to_str())
                    .unwrap_or("?")
                    .to_string(),
                path: Some(path),
                checks: Vec::new(),
                error: Some(e.to_string()),
            },
        })
        .collect())
}

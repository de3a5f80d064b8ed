//! Grade tables and the grade-based rules: threshold, super-threshold, q-Pareto.

use std::cmp::Ordering;
use std::fmt;

use crate::altset::{AltSet, Universe};
use crate::error::{parse_err, Error, Result};
use crate::profile::{content_lines, Profile};

/// Integer grade per (alternative, criterion); higher is better.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradeTable {
    universe: Universe,
    k: usize,
    // alternative-major
    grades: Vec<i64>,
}

/// Threshold function for the super-threshold rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum ThresholdFn {
    /// Mean of the per-alternative grade sums over the presented set.
    #[default]
    Mean,
    /// A fixed threshold; `i64::MIN` admits everything.
    Constant(i64),
}

impl fmt::Display for ThresholdFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThresholdFn::Mean => f.write_str("mean"),
            ThresholdFn::Constant(i64::MIN) => f.write_str("-inf"),
            ThresholdFn::Constant(c) => write!(f, "{c}"),
        }
    }
}

impl std::str::FromStr for ThresholdFn {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean" => Ok(ThresholdFn::Mean),
            "-inf" => Ok(ThresholdFn::Constant(i64::MIN)),
            _ => s
                .parse()
                .map(ThresholdFn::Constant)
                .map_err(|_| Error::Config(format!("bad threshold `{s}`"))),
        }
    }
}

impl GradeTable {
    /// `rows[i][x]` is the grade of local alternative x under criterion i.
    pub fn new(universe: Universe, rows: &[Vec<i64>]) -> Result<Self> {
        let m = universe.len();
        if rows.is_empty() {
            return Err(Error::EmptyProfile);
        }
        let k = rows.len();
        let mut grades = vec![0; m * k];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Config(format!(
                    "criterion {} grades {} alternatives, expected {m}",
                    i + 1,
                    row.len()
                )));
            }
            for (x, &g) in row.iter().enumerate() {
                grades[x * k + i] = g;
            }
        }
        Ok(GradeTable {
            universe,
            k,
            grades,
        })
    }

    /// Grade m − rank + 1, best = m.
    pub fn from_profile(p: &Profile) -> Self {
        let (m, n) = (p.m(), p.n());
        let mut grades = vec![0; m * n];
        for i in 0..n {
            for (pos, &x) in p.order(i).iter().enumerate() {
                grades[x as usize * n + i] = (m - pos) as i64;
            }
        }
        GradeTable {
            universe: p.universe().clone(),
            k: n,
            grades,
        }
    }

    /// Header of labels, then one line of integer grades per criterion,
    /// aligned with the header.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or(Error::EmptyProfile)?;
        let cols: Vec<&str> = header.split_whitespace().collect();
        let universe =
            Universe::new(cols.iter().copied()).map_err(|e| parse_err(hline, e.to_string()))?;
        let order: Vec<usize> = cols.iter().map(|c| universe.local(c).unwrap()).collect();
        let mut rows = Vec::new();
        for (ln, line) in lines {
            let vals = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| parse_err(ln, format!("bad grade `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if vals.len() != cols.len() {
                return Err(parse_err(ln, format!("expected {} grades", cols.len())));
            }
            let mut row = vec![0; cols.len()];
            for (c, v) in vals.into_iter().enumerate() {
                row[order[c]] = v;
            }
            rows.push(row);
        }
        Self::new(universe, &rows)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn m(&self) -> usize {
        self.universe.len()
    }

    pub fn criteria(&self) -> usize {
        self.k
    }

    pub fn grade(&self, x: usize, i: usize) -> i64 {
        self.grades[x * self.k + i]
    }

    pub fn row(&self, x: usize) -> &[i64] {
        &self.grades[x * self.k..(x + 1) * self.k]
    }

    pub fn restrict(&self, subset: &AltSet) -> Result<Self> {
        let (universe, remap) = self.universe.restrict(subset)?;
        let mut grades = Vec::with_capacity(universe.len() * self.k);
        for (x, r) in remap.iter().enumerate() {
            if r.is_some() {
                grades.extend_from_slice(self.row(x));
            }
        }
        Ok(GradeTable {
            universe,
            k: self.k,
            grades,
        })
    }

    /// Ascending grades of x. Comparing these lexicographically (larger is
    /// better) is the same as comparing worst-grade count vectors
    /// (v₁, v₂, …) with smaller better.
    fn threshold_key(&self, x: usize) -> Vec<i64> {
        let mut v = self.row(x).to_vec();
        v.sort_unstable();
        v
    }

    /// Compares x and y under the threshold order; `Greater` means x is better.
    pub fn threshold_cmp(&self, x: usize, y: usize) -> Ordering {
        self.threshold_key(x).cmp(&self.threshold_key(y))
    }

    /// Worst-grade count vector (v₁, v₂, …) over the distinct grades of the table.
    pub fn worst_grade_counts(&self, x: usize) -> Vec<usize> {
        let mut scale: Vec<i64> = self.grades.clone();
        scale.sort_unstable();
        scale.dedup();
        scale
            .iter()
            .map(|g| self.row(x).iter().filter(|v| *v == g).count())
            .collect()
    }

    /// Equivalence classes of the threshold order, best first.
    pub fn threshold_classes(&self) -> Vec<AltSet> {
        let mut keyed: Vec<(Vec<i64>, usize)> =
            (0..self.m()).map(|x| (self.threshold_key(x), x)).collect();
        keyed.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut last: Option<&Vec<i64>> = None;
        for (key, x) in &keyed {
            if last == Some(key) {
                classes.last_mut().unwrap().push(*x);
            } else {
                classes.push(vec![*x]);
            }
            last = Some(key);
        }
        classes
            .into_iter()
            .map(|c| self.universe.from_locals(c))
            .collect()
    }

    /// Best class of the threshold order.
    pub fn threshold(&self) -> AltSet {
        let keys: Vec<Vec<i64>> = (0..self.m()).map(|x| self.threshold_key(x)).collect();
        let best = keys.iter().max().unwrap();
        self.universe
            .from_locals((0..self.m()).filter(|&x| &keys[x] == best))
    }

    pub fn grade_sums(&self) -> Vec<i64> {
        (0..self.m()).map(|x| self.row(x).iter().sum()).collect()
    }

    pub fn super_threshold(&self, t: ThresholdFn) -> AltSet {
        let sums = self.grade_sums();
        match t {
            ThresholdFn::Mean => {
                let total: i128 = sums.iter().map(|&s| s as i128).sum();
                let m = self.m() as i128;
                self.universe
                    .from_locals((0..self.m()).filter(|&x| sums[x] as i128 * m >= total))
            }
            ThresholdFn::Constant(c) => self
                .universe
                .from_locals((0..self.m()).filter(|&x| sums[x] >= c)),
        }
    }

    /// Super-threshold with an arbitrary set-dependent threshold computed
    /// from the grade sums of the presented alternatives.
    pub fn super_threshold_by(&self, t: impl Fn(&[i64]) -> f64) -> AltSet {
        let sums = self.grade_sums();
        let th = t(&sums);
        self.universe
            .from_locals((0..self.m()).filter(|&x| sums[x] as f64 >= th))
    }

    /// Number of alternatives Pareto-dominating x: at least as good under
    /// every criterion and better under one.
    pub fn pareto_dominators(&self, x: usize) -> usize {
        let rx = self.row(x);
        (0..self.m())
            .filter(|&y| {
                let ry = self.row(y);
                y != x && ry.iter().zip(rx).all(|(a, b)| a >= b) && ry != rx
            })
            .count()
    }

    /// Alternatives Pareto-dominated by at most q others.
    pub fn q_pareto(&self, q: usize) -> AltSet {
        self.universe
            .from_locals((0..self.m()).filter(|&x| self.pareto_dominators(x) <= q))
    }
}

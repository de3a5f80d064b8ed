//! Empirical complexity measurement: seeded random profiles, median wall
//! times over a size grid, log-log exponent fits and the complexity groups
//! of two-stage procedures.

use std::fmt;
use std::hint::black_box;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::altset::Universe;
use crate::par::{self, Execution};
use crate::procedures::Choice;
use crate::profile::Profile;
use crate::superposition::TwoStageId;

/// Uniform random linear orders, one per criterion.
pub fn generate_profile(m: usize, n: usize, seed: u64) -> Profile {
    assert!(m >= 1 && n >= 1, "profile needs m, n >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<u32> = (0..m as u32).collect();
    let mut flat = Vec::with_capacity(m * n);
    for _ in 0..n {
        order.shuffle(&mut rng);
        flat.extend_from_slice(&order);
    }
    Profile::from_flat(Universe::generated(m), flat)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComplexityGroup {
    Low,
    DependsOnFirstStage,
    Average,
    High,
}

impl fmt::Display for ComplexityGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexityGroup::Low => "low",
            ComplexityGroup::DependsOnFirstStage => "depends-on-first-stage",
            ComplexityGroup::Average => "average",
            ComplexityGroup::High => "high",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tier {
    /// Leaves at most n (or q·n, or one) alternatives.
    Narrowing,
    /// Cheap but may keep almost everything.
    Wide,
    Quadratic,
    Coombs,
    Heavy,
}

fn tier(index: usize) -> Tier {
    match index {
        1 | 2 | 4 | 5 | 6 | 19 | 22 => Tier::Narrowing,
        3 | 7 | 8 | 26 => Tier::Wide,
        9 | 10 | 20 | 23..=25 | 27 | 28 => Tier::Quadratic,
        11 => Tier::Coombs,
        _ => Tier::Heavy,
    }
}

/// Group of a (first, second) pair.
pub fn classify_group(id: TwoStageId) -> ComplexityGroup {
    use ComplexityGroup::*;
    let second = tier(id.second());
    match tier(id.first()) {
        Tier::Narrowing => Low,
        Tier::Wide => match second {
            Tier::Narrowing | Tier::Wide => Low,
            Tier::Quadratic | Tier::Coombs => DependsOnFirstStage,
            Tier::Heavy => High,
        },
        Tier::Quadratic => match second {
            Tier::Heavy => High,
            _ => Average,
        },
        Tier::Coombs => Average,
        Tier::Heavy => High,
    }
}

/// Representative pairs timed for the group ordering.
pub const LOW_REPRESENTATIVES: [(usize, usize); 4] = [(2, 16), (3, 19), (26, 22), (7, 2)];
pub const AVERAGE_REPRESENTATIVES: [(usize, usize); 2] = [(9, 1), (27, 28)];
pub const HIGH_FIRST_STAGE_REPRESENTATIVES: [(usize, usize); 4] =
    [(15, 7), (16, 7), (17, 7), (18, 7)];

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub m: usize,
    pub n: usize,
    pub median_secs: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fit {
    pub exponent: f64,
    /// Root-mean-square residual in natural-log units.
    pub residual: f64,
    pub points: usize,
}

pub const MIN_FIT_POINTS: usize = 5;

/// Least-squares slope of ln t against ln M. Cells with M = 1 are left out;
/// fewer than [`MIN_FIT_POINTS`] usable cells gives no fit.
pub fn fit_exponent(cells: &[Cell]) -> Option<Fit> {
    let pts: Vec<(f64, f64)> = cells
        .iter()
        .filter(|c| c.m > 1 && c.median_secs > 0.0)
        .map(|c| ((c.m as f64).ln(), c.median_secs.ln()))
        .collect();
    if pts.len() < MIN_FIT_POINTS {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let sse: f64 = pts.iter().map(|p| (p.1 - icpt - slope * p.0).powi(2)).sum();
    Some(Fit {
        exponent: slope,
        residual: (sse / k).sqrt(),
        points: pts.len(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchResult {
    pub name: String,
    pub id: String,
    pub cells: Vec<Cell>,
    pub fit: Option<Fit>,
    pub group: Option<ComplexityGroup>,
    /// Budget ran out before every cell was measured.
    pub partial: bool,
}

#[derive(Clone, Debug)]
pub struct MeasureConfig {
    pub grid: Vec<(usize, usize)>,
    pub trials: usize,
    pub seed: u64,
    pub budget: Duration,
}

impl MeasureConfig {
    /// M over `ms` at fixed n.
    pub fn sweep(ms: &[usize], n: usize) -> Self {
        MeasureConfig {
            grid: ms.iter().map(|&m| (m, n)).collect(),
            trials: 3,
            seed: 0,
            budget: Duration::from_secs(300),
        }
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials.max(1);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_budget(mut self, budget: Duration) -> Self {
        self.budget = budget;
        self
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        (v[k / 2 - 1] + v[k / 2]) / 2.0
    }
}

/// Median seconds of `proc` over `trials` fresh profiles of size (m, n).
/// Profiles are generated up front, timings run one at a time.
pub fn time_cell(proc: &dyn Choice, m: usize, n: usize, trials: usize, seed: u64) -> f64 {
    let seeds: Vec<u64> = (0..trials.max(1) as u64)
        .map(|t| seed ^ ((m as u64) << 32) ^ ((n as u64) << 16) ^ t)
        .collect();
    let profiles = par::map(&seeds, Execution::default(), |&s| generate_profile(m, n, s));
    let times = profiles
        .iter()
        .map(|p| {
            let start = Instant::now();
            black_box(proc.choose(black_box(p)));
            start.elapsed().as_secs_f64().max(1e-9)
        })
        .collect();
    median(times)
}

/// Times `proc` over the grid. `group` is attached as given; use
/// [`classify_group`] for two-stage ids.
pub fn measure(
    id: &str,
    proc: &dyn Choice,
    group: Option<ComplexityGroup>,
    cfg: &MeasureConfig,
) -> BenchResult {
    let start = Instant::now();
    let mut cells = Vec::new();
    let mut partial = false;
    for &(m, n) in &cfg.grid {
        if start.elapsed() > cfg.budget {
            partial = true;
            break;
        }
        cells.push(Cell {
            m,
            n,
            median_secs: time_cell(proc, m, n, cfg.trials, cfg.seed),
        });
    }
    BenchResult {
        name: proc.name(),
        id: id.to_string(),
        fit: fit_exponent(&cells),
        group,
        cells,
        partial,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupTiming {
    pub label: &'static str,
    pub timings: Vec<(TwoStageId, f64)>,
    pub median_secs: f64,
}

/// Median runtime of each representative set at one size, in the order
/// low, average, high-first-stage.
pub fn group_ordering(m: usize, n: usize, trials: usize, seed: u64) -> Vec<GroupTiming> {
    let sets: [(&'static str, &[(usize, usize)]); 3] = [
        ("low", &LOW_REPRESENTATIVES),
        ("average", &AVERAGE_REPRESENTATIVES),
        ("high-first-stage", &HIGH_FIRST_STAGE_REPRESENTATIVES),
    ];
    sets.iter()
        .map(|&(label, reps)| {
            let timings: Vec<(TwoStageId, f64)> = reps
                .iter()
                .map(|&(i, j)| {
                    let id = TwoStageId::new(i, j).expect("valid representative");
                    (id, time_cell(&id.procedure(), m, n, trials, seed))
                })
                .collect();
            let median_secs = median(timings.iter().map(|t| t.1).collect());
            GroupTiming {
                label,
                timings,
                median_secs,
            }
        })
        .collect()
}

/// Each group at least `factor` times slower than the one before.
pub fn separated(groups: &[GroupTiming], factor: f64) -> bool {
    groups
        .windows(2)
        .all(|w| w[1].median_secs >= factor * w[0].median_secs)
}

/// Tab-separated: id, M, n, median seconds, exponent, residual, group.
pub fn report(results: &[BenchResult]) -> String {
    let mut out = String::from("id\tname\tM\tn\tmedian_s\texponent\tresidual\tgroup\n");
    for r in results {
        let (e, res) = match r.fit {
            Some(f) => (format!("{:.3}", f.exponent), format!("{:.3}", f.residual)),
            None => ("-".into(), "-".into()),
        };
        let g = r.group.map_or("-".to_string(), |g| g.to_string());
        for c in &r.cells {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{:.6e}\t{e}\t{res}\t{g}\n",
                r.id, r.name, c.m, c.n, c.median_secs
            ));
        }
        if r.partial {
            out.push_str(&format!("# {} partial: budget exhausted\n", r.id));
        }
    }
    out
}

/// gnuplot data: one indexed block per result, columns M and seconds.
pub fn gnuplot_data(results: &[BenchResult]) -> String {
    let mut out = String::new();
    for (k, r) in results.iter().enumerate() {
        if k > 0 {
            out.push_str("\n\n");
        }
        out.push_str(&format!("# {} {}\n", r.id, r.name));
        for c in &r.cells {
            out.push_str(&format!("{} {:.9}\n", c.m, c.median_secs));
        }
    }
    out
}

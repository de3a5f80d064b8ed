//! `superchoice` command-line interface.
//!
//! Exit status: 0 on success, 1 when a violation turns up where none is
//! allowed or a fixture fails, 2 on usage and input errors.

use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use superchoice::axioms::{
    search_counterexample, verify_bounded, Mode, SearchConfig, SearchOutcome, Space, Verification,
    DEFAULT_BUDGET,
};
use superchoice::bench::{self, MeasureConfig};
use superchoice::fixtures::{replay_fixtures, FixtureProc};
use superchoice::superposition::catalog::{self, Expectation};
use superchoice::{
    check_axiom, AxiomId, Choice, GradeTable, MajorityRelation, Params, Procedure, Profile,
    TwoStageId, Verdict,
};

#[derive(Parser)]
#[command(
    name = "superchoice",
    version,
    about = "Choice procedures and their two-stage superpositions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply one procedure to a profile (or q-Pareto to a grade table).
    Choose(ChooseArgs),
    /// Apply a two-stage superposition and print both stages.
    Compose(ComposeArgs),
    /// Check one axiom for a two-stage procedure on a profile.
    Check(CheckArgs),
    /// Look for a counterexample to an axiom.
    Search(SearchArgs),
    /// Exhaustively verify an axiom over a bounded space.
    Verify(SearchArgs),
    /// Replay the fixture corpus.
    Fixtures(FixturesArgs),
    /// Measure runtimes and fit complexity exponents.
    Bench(BenchArgs),
    /// Export the 784-entry catalog, or the procedure table.
    Catalog(CatalogArgs),
}

#[derive(Args)]
struct Input {
    /// Profile file: labels, then one order per criterion. `.mu` files hold
    /// a majority matrix.
    #[arg(long, short = 'p')]
    profile: Option<PathBuf>,
    /// Grade table file (q-Pareto only).
    #[arg(long, conflicts_with = "profile")]
    grades: Option<PathBuf>,
}

#[derive(Args)]
struct ChooseArgs {
    #[command(flatten)]
    input: Input,
    /// Index 1..=28, mnemonic, `I>J`, or `qpareto`.
    #[arg(long)]
    proc: String,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Restrict to these alternatives, comma separated.
    #[arg(long, value_delimiter = ',')]
    subset: Option<Vec<String>>,
}

#[derive(Args)]
struct ComposeArgs {
    #[arg(long)]
    first: String,
    #[arg(long)]
    second: String,
    #[arg(long, short = 'p')]
    profile: PathBuf,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    axiom: AxiomId,
    /// Catalog id 1..=784 or `I>J`.
    #[arg(long = "two-stage")]
    two_stage: String,
    #[arg(long, short = 'p')]
    profile: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Ordered,
    Multiset,
    Majority,
    Tournament,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    axiom: AxiomId,
    /// Procedure spec: index, mnemonic or `I>J`.
    #[arg(
        long,
        conflicts_with = "two_stage",
        required_unless_present = "two_stage"
    )]
    proc: Option<String>,
    /// Catalog id 1..=784 or `I>J`.
    #[arg(long = "two-stage")]
    two_stage: Option<String>,
    /// Number of alternatives, `3` or `1..=4`.
    #[arg(long, default_value = "3")]
    m: String,
    /// Number of criteria, `3` or `1..=5`.
    #[arg(long, default_value = "3")]
    n: String,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "ordered")]
    space: SpaceArg,
    /// Random mode sample count.
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum number of profiles examined.
    #[arg(long, env = "SUPERCHOICE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct FixturesArgs {
    #[arg(long, default_value = "fixtures")]
    dir: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Procedure specs to time.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "borda,minimax,simpson,copeland-1"
    )]
    procs: Vec<String>,
    /// Values of M.
    #[arg(long, value_delimiter = ',', default_value = "250,500,1000,2000")]
    m: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Wall-clock budget per procedure, seconds.
    #[arg(long, default_value_t = 300)]
    budget_secs: u64,
    /// Also time the complexity-group representatives at this M.
    #[arg(long)]
    groups: Option<usize>,
    /// Write gnuplot data here.
    #[arg(long)]
    gnuplot: Option<PathBuf>,
}

#[derive(Args)]
struct CatalogArgs {
    /// Print the procedure index / mnemonic table instead.
    #[arg(long)]
    procedures: bool,
}

/// Writes to stdout; a closed pipe (`| head`) ends output quietly.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_profile(path: &Path) -> Result<Profile> {
    let text = read(path)?;
    let parsed = if path.extension().is_some_and(|e| e == "mu") {
        MajorityRelation::parse(&text).map(|mu| mu.realize())
    } else {
        Profile::parse(&text)
    };
    parsed.with_context(|| format!("malformed profile {}", path.display()))
}

fn parse_two_stage(spec: &str) -> Result<TwoStageId> {
    let spec = spec.trim();
    let id = match spec.split_once('>') {
        Some((a, b)) => {
            let a = Procedure::parse(a, Params::default())?;
            let b = Procedure::parse(b, Params::default())?;
            TwoStageId::new(a.index(), b.index())?
        }
        None => TwoStageId::from_id(
            spec.parse()
                .map_err(|_| anyhow!("two-stage id must be 1..=784 or I>J, got `{spec}`"))?,
        )?,
    };
    Ok(id)
}

fn proc_spec(head: &str, q: Option<usize>, k: Option<usize>) -> String {
    let mut s = head.trim().to_string();
    if let Some(q) = q {
        s.push_str(&format!(" q={q}"));
    }
    if let Some(k) = k {
        s.push_str(&format!(" k={k}"));
    }
    s
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| anyhow!("bad range `{s}`"))
    };
    let r = if let Some((a, b)) = s.split_once("..=") {
        num(a)?..=num(b)?
    } else if let Some((a, b)) = s.split_once('-') {
        num(a)?..=num(b)?
    } else {
        let v = num(s)?;
        v..=v
    };
    if r.is_empty() || *r.start() == 0 {
        bail!("range `{s}` must be nonempty and start at 1 or more");
    }
    Ok(r)
}

fn choose(a: ChooseArgs) -> Result<ExitCode> {
    let proc = FixtureProc::parse(&proc_spec(&a.proc, a.q, a.k))?;
    if let Some(path) = &a.input.grades {
        let FixtureProc::QPareto(q) = proc else {
            bail!("--grades only works with --proc qpareto");
        };
        let g = GradeTable::parse(&read(path)?)
            .with_context(|| format!("malformed grade table {}", path.display()))?;
        let g = match &a.subset {
            Some(labels) => g.restrict(&g.universe().parse_set(&labels.join(" "))?)?,
            None => g,
        };
        println!("{}", g.universe().format_set(&g.q_pareto(q)));
        return Ok(ExitCode::SUCCESS);
    }
    let path = a
        .input
        .profile
        .as_ref()
        .ok_or_else(|| anyhow!("one of --profile or --grades is required"))?;
    let p = load_profile(path)?;
    let p = match &a.subset {
        Some(labels) => p.contract(&p.universe().parse_set(&labels.join(" "))?)?,
        None => p,
    };
    println!("{}", p.universe().format_set(&proc.choose(&p)));
    Ok(ExitCode::SUCCESS)
}

fn compose(a: ComposeArgs) -> Result<ExitCode> {
    let two = superchoice::superposition::compose_parsed(
        &a.first,
        &a.second,
        Params {
            q: a.q,
            k: a.k,
            threshold: None,
        },
    )?;
    let p = load_profile(&a.profile)?;
    let st = two.stages(&p);
    let u = p.universe();
    println!("procedure {} ({})", two.id(), two.name());
    println!("stage1 {}", u.format_set(&st.first));
    println!("final {}", u.format_set(&st.last));
    Ok(ExitCode::SUCCESS)
}

fn check(a: CheckArgs) -> Result<ExitCode> {
    let id = parse_two_stage(&a.two_stage)?;
    let p = load_profile(&a.profile)?;
    let proc = id.procedure();
    let verdict = check_axiom(&proc, a.axiom, &p);
    let entry = catalog::classify(id);
    let flag = entry.flag(a.axiom);
    println!("procedure {id} ({})", entry.name());
    println!("catalog {} {}", a.axiom, flag.expect.symbol());
    match &verdict {
        Verdict::Holds => println!("verdict holds"),
        Verdict::NotApplicable => println!("verdict not-applicable"),
        Verdict::Violated(w) => {
            println!("verdict violated");
            println!("witness {}", w.describe());
        }
    }
    let forbidden = !verdict.holds() && flag.expect == Expectation::Satisfies;
    Ok(if forbidden {
        eprintln!("violation contradicts the catalog flag");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    })
}

fn search_setup(a: &SearchArgs) -> Result<(Box<dyn Choice>, SearchConfig)> {
    let proc: Box<dyn Choice> = match (&a.proc, &a.two_stage) {
        (Some(spec), _) => Box::new(FixtureProc::parse(spec)?),
        (None, Some(t)) => Box::new(parse_two_stage(t)?.procedure()),
        (None, None) => bail!("one of --proc or --two-stage is required"),
    };
    let (m, n) = (parse_range(&a.m)?, parse_range(&a.n)?);
    let cfg = match a.mode {
        ModeArg::Exhaustive => SearchConfig::exhaustive(m, n),
        ModeArg::Random => SearchConfig::random(m, n, a.samples, a.seed),
    };
    let space = match a.space {
        SpaceArg::Ordered => Space::Ordered,
        SpaceArg::Multiset => Space::Multiset,
        SpaceArg::Majority => Space::Majority {
            tournaments_only: false,
        },
        SpaceArg::Tournament => Space::Majority {
            tournaments_only: true,
        },
    };
    Ok((proc, cfg.with_space(space).with_budget(a.budget)))
}

fn describe_space(cfg: &SearchConfig) -> String {
    let mode = match cfg.mode {
        Mode::Exhaustive => "exhaustive".to_string(),
        Mode::Random { samples, seed } => format!("random samples={samples} seed={seed}"),
    };
    format!(
        "m={}..={} n={}..={} {:?} {mode}, {} profiles",
        cfg.m.start(),
        cfg.m.end(),
        cfg.n.start(),
        cfg.n.end(),
        cfg.space,
        cfg.space_size()
    )
}

fn search(a: SearchArgs) -> Result<ExitCode> {
    let (proc, cfg) = search_setup(&a)?;
    println!(
        "search {} for {}: {}",
        a.axiom,
        proc.name(),
        describe_space(&cfg)
    );
    match search_counterexample(proc.as_ref(), a.axiom, &cfg)? {
        SearchOutcome::Found { witness, examined } => {
            println!("found after {examined} profiles");
            println!(
                "replay {}",
                if witness.replay(proc.as_ref()) {
                    "ok"
                } else {
                    "FAILED"
                }
            );
            print!("{witness}");
        }
        SearchOutcome::Clean { examined } => println!("none in {examined} profiles"),
        SearchOutcome::Partial { examined, total } => {
            println!("partial: budget stopped after {examined} of {total} profiles")
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(a: SearchArgs) -> Result<ExitCode> {
    let (proc, cfg) = search_setup(&a)?;
    println!(
        "verify {} for {}: {}",
        a.axiom,
        proc.name(),
        describe_space(&cfg)
    );
    Ok(match verify_bounded(proc.as_ref(), a.axiom, &cfg)? {
        Verification::Verified { profiles } => {
            println!("verified on {profiles} profiles");
            ExitCode::SUCCESS
        }
        Verification::Refuted(w) => {
            println!("refuted");
            print!("{w}");
            ExitCode::FAILURE
        }
        Verification::Partial { examined, total } => {
            println!("partial: budget stopped after {examined} of {total} profiles");
            ExitCode::SUCCESS
        }
    })
}

fn fixtures(a: FixturesArgs) -> Result<ExitCode> {
    let reports = replay_fixtures(&a.dir)?;
    if reports.is_empty() {
        bail!("no fixtures in {}", a.dir.display());
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let mut t = String::new();
    for r in &reports {
        t.push_str(&format!("{r}\n"));
    }
    t.push_str(&format!("{} fixtures, {failed} failed\n", reports.len()));
    emit(&t);
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn bench_cmd(a: BenchArgs) -> Result<ExitCode> {
    let cfg = MeasureConfig::sweep(&a.m, a.n)
        .with_trials(a.trials)
        .with_seed(a.seed)
        .with_budget(Duration::from_secs(a.budget_secs));
    let mut results = Vec::new();
    for spec in &a.procs {
        let proc = FixtureProc::parse(spec)?;
        let group = match proc {
            FixtureProc::Two(t) => Some(bench::classify_group(t.id())),
            _ => None,
        };
        results.push(bench::measure(spec, &proc, group, &cfg));
    }
    emit(&bench::report(&results));
    if let Some(m) = a.groups {
        println!("# group medians at M={m} n={}", a.n);
        for g in bench::group_ordering(m, a.n, a.trials, a.seed) {
            println!("# {}\t{:.6e}", g.label, g.median_secs);
        }
    }
    if let Some(path) = &a.gnuplot {
        std::fs::write(path, bench::gnuplot_data(&results))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn catalog_cmd(a: CatalogArgs) -> Result<ExitCode> {
    if a.procedures {
        let mut t = String::from("index\tmnemonic\ttitle\n");
        for p in Procedure::all() {
            t.push_str(&format!("{}\t{}\t{}\n", p.index(), p.mnemonic(), p.title()));
        }
        emit(&t);
    } else {
        emit(&catalog::to_tsv());
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.command {
        Command::Choose(a) => choose(a),
        Command::Compose(a) => compose(a),
        Command::Check(a) => check(a),
        Command::Search(a) => search(a),
        Command::Verify(a) => verify(a),
        Command::Fixtures(a) => fixtures(a),
        Command::Bench(a) => bench_cmd(a),
        Command::Catalog(a) => catalog_cmd(a),
    };
    r.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}

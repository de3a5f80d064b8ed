//! Sequential versus parallel execution of the search and verification
//! paths.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use superchoice::axioms::{search_profiles, verify_bounded, SearchConfig, SearchOutcome, Space};
use superchoice::{compose, AxiomId, Choice, Execution, Procedure};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn verify_mon1(c: &mut Criterion) {
    let proc = compose(Procedure::Plurality, Procedure::SimpleMajority);
    let mut g = c.benchmark_group("verify_mon1_2>1_m3_n3");
    g.sample_size(10);
    for (name, exec) in MODES {
        let cfg = SearchConfig::exhaustive(3..=3, 3..=3).with_execution(exec);
        g.bench_function(name, |b| {
            b.iter(|| verify_bounded(&proc, AxiomId::Mon1, &cfg).unwrap())
        });
    }
    g.finish();
}

fn equivalence_scan(c: &mut Criterion) {
    let two = compose(Procedure::Core, Procedure::CondorcetWinner);
    let cw = Procedure::CondorcetWinner;
    let mut g = c.benchmark_group("equivalence_20>19_multiset");
    g.sample_size(10);
    for m in [3, 4] {
        for (name, exec) in MODES {
            let cfg = SearchConfig::exhaustive(m..=m, 5..=5)
                .with_space(Space::Multiset)
                .with_execution(exec);
            g.bench_with_input(BenchmarkId::new(name, m), &cfg, |b, cfg| {
                b.iter(|| {
                    let r = search_profiles(cfg, |p| (two.choose(p) != cw.choose(p)).then_some(()));
                    assert!(matches!(r, Ok(SearchOutcome::Clean { .. })));
                })
            });
        }
    }
    g.finish();
}

criterion_group!(benches, verify_mon1, equivalence_scan);
criterion_main!(benches);

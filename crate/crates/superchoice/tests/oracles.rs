//! Brute-force subset enumeration against the majority-relation solutions,
//! and size bounds on random profiles.

use superchoice::bench::generate_profile;
use superchoice::procedures::elimination;
use superchoice::{Choice, MajorityRelation, Params, Procedure, Profile, Universe};

/// Majority computed straight from the orders.
struct Mu {
    m: usize,
    beats: Vec<Vec<bool>>,
}

impl Mu {
    fn of(p: &Profile) -> Self {
        let m = p.m();
        let mut pos = vec![vec![0usize; m]; p.n()];
        for (i, row) in pos.iter_mut().enumerate() {
            for (r, &x) in p.order(i).iter().enumerate() {
                row[x as usize] = r;
            }
        }
        let mut beats = vec![vec![false; m]; m];
        for x in 0..m {
            for y in 0..m {
                let pro = pos.iter().filter(|r| r[x] < r[y]).count();
                let con = pos.iter().filter(|r| r[y] < r[x]).count();
                beats[x][y] = pro > con;
            }
        }
        Mu { m, beats }
    }

    fn b(&self, x: usize, y: usize) -> bool {
        self.beats[x][y]
    }

    fn members(&self, q: u32) -> impl Iterator<Item = usize> + '_ {
        (0..self.m).filter(move |x| q >> x & 1 == 1)
    }

    fn outside(&self, q: u32) -> impl Iterator<Item = usize> + '_ {
        (0..self.m).filter(move |x| q >> x & 1 == 0)
    }

    fn subsets(&self) -> impl Iterator<Item = u32> {
        1..(1u32 << self.m)
    }

    fn dominant(&self, q: u32) -> bool {
        self.members(q)
            .all(|x| self.outside(q).all(|y| self.b(x, y)))
    }

    fn undominated(&self, q: u32) -> bool {
        self.outside(q)
            .all(|y| self.members(q).all(|x| !self.b(y, x)))
    }

    fn weakly_stable(&self, q: u32) -> bool {
        self.outside(q).all(|y| {
            !self.members(q).any(|x| self.b(y, x)) || self.members(q).any(|z| self.b(z, y))
        })
    }

    fn k_stable(&self, q: u32, k: usize) -> bool {
        let mut reached = q;
        for _ in 0..k {
            let mut next = reached;
            for x in self.members(reached) {
                for y in 0..self.m {
                    if self.b(x, y) {
                        next |= 1 << y;
                    }
                }
            }
            reached = next;
        }
        reached == (1u32 << self.m) - 1
    }

    fn min_card_union(&self, pred: impl Fn(u32) -> bool) -> u32 {
        let hits: Vec<u32> = self.subsets().filter(|&q| pred(q)).collect();
        let best = hits.iter().map(|q| q.count_ones()).min().unwrap();
        hits.iter()
            .filter(|q| q.count_ones() == best)
            .fold(0, |a, q| a | q)
    }

    fn inclusion_min_union(&self, pred: impl Fn(u32) -> bool) -> u32 {
        let hits: Vec<u32> = self.subsets().filter(|&q| pred(q)).collect();
        hits.iter()
            .filter(|&&q| !hits.iter().any(|&r| r != q && r & q == r))
            .fold(0, |a, q| a | q)
    }

    fn dominators(&self, x: usize) -> u32 {
        (0..self.m)
            .filter(|&y| self.b(y, x))
            .fold(0, |a, y| a | 1 << y)
    }

    fn dominated(&self, x: usize) -> u32 {
        (0..self.m)
            .filter(|&y| self.b(x, y))
            .fold(0, |a, y| a | 1 << y)
    }

    fn uncovered(&self, covers: impl Fn(usize, usize) -> bool) -> u32 {
        (0..self.m)
            .filter(|&y| !(0..self.m).any(|x| x != y && covers(x, y)))
            .fold(0, |a, y| a | 1 << y)
    }
}

fn sub(a: u32, b: u32) -> bool {
    a & b == a
}

fn expected(mu: &Mu, proc: &Procedure) -> u32 {
    let (d, l) = (|x| mu.dominators(x), |x| mu.dominated(x));
    match proc {
        Procedure::CondorcetWinner => (0..mu.m)
            .filter(|&x| (0..mu.m).all(|y| y == x || mu.b(x, y)))
            .fold(0, |a, x| a | 1 << x),
        Procedure::Core => (0..mu.m).filter(|&x| d(x) == 0).fold(0, |a, x| a | 1 << x),
        Procedure::MinimalDominant => {
            let u = mu.min_card_union(|q| mu.dominant(q));
            // dominant sets are nested, so the smallest is unique
            assert_eq!(
                mu.subsets()
                    .filter(|&q| mu.dominant(q) && q.count_ones() == u.count_ones())
                    .count(),
                1
            );
            u
        }
        Procedure::MinimalUndominated => mu.inclusion_min_union(|q| mu.undominated(q)),
        Procedure::MinimalWeaklyStable => mu.min_card_union(|q| mu.weakly_stable(q)),
        Procedure::KStable { k } => mu.min_card_union(|q| mu.k_stable(q, *k)),
        Procedure::Fishburn => mu.uncovered(|x, y| sub(d(x), d(y)) && d(x) != d(y)),
        Procedure::UncoveredI => mu.uncovered(|x, y| mu.b(x, y) && sub(l(y), l(x))),
        Procedure::UncoveredII => mu.uncovered(|x, y| mu.b(x, y) && sub(d(x), d(y))),
        Procedure::Richelson => {
            mu.uncovered(|x, y| mu.b(x, y) && sub(d(x), d(y)) && sub(l(y), l(x)))
        }
        other => panic!("no oracle for {other}"),
    }
}

fn solution_procs() -> Vec<Procedure> {
    let mut v: Vec<Procedure> = [12, 13, 14, 15, 16, 17, 18, 19, 20]
        .into_iter()
        .map(Procedure::canonical)
        .collect();
    for k in [2, 3] {
        v.push(
            Procedure::from_index(
                21,
                Params {
                    k: Some(k),
                    ..Params::default()
                },
            )
            .unwrap(),
        );
    }
    v
}

fn check(p: &Profile, procs: &[Procedure]) {
    let mu = Mu::of(p);
    let u = p.universe();
    for proc in procs {
        let want = expected(&mu, proc);
        let want = u.from_locals((0..mu.m).filter(|x| want >> x & 1 == 1));
        let got = proc.choose(p);
        assert_eq!(
            got,
            want,
            "{proc}: got {} want {}\n{}",
            u.format_set(&got),
            u.format_set(&want),
            p.to_text()
        );
    }
}

/// Every asymmetric relation on up to four alternatives, realized as a
/// profile.
#[test]
fn all_small_relations() {
    let procs = solution_procs();
    let mut count = 0;
    for m in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..m)
            .flat_map(|x| (x + 1..m).map(move |y| (x, y)))
            .collect();
        for code in 0..3u32.pow(pairs.len() as u32) {
            let mut c = code;
            let mut edges = Vec::new();
            for &(x, y) in &pairs {
                match c % 3 {
                    1 => edges.push((x, y)),
                    2 => edges.push((y, x)),
                    _ => {}
                }
                c /= 3;
            }
            let mu = MajorityRelation::from_edges(Universe::generated(m), &edges).unwrap();
            let p = mu.realize();
            assert_eq!(Mu::of(&p).beats, {
                let mut b = vec![vec![false; m]; m];
                for &(x, y) in &edges {
                    b[x][y] = true;
                }
                b
            });
            check(&p, &procs);
            count += 1;
        }
    }
    assert_eq!(count, 1 + 3 + 27 + 729);
}

#[test]
fn random_small_profiles() {
    let procs = solution_procs();
    for s in 0..3000u64 {
        let m = 1 + (s % 5) as usize;
        let n = 1 + (s / 5 % 8) as usize;
        check(&generate_profile(m, n, s), &procs);
    }
}

#[test]
fn survivor_bounds() {
    let approvals: Vec<(usize, Procedure)> = (1..=3)
        .map(|q| {
            (
                q,
                Procedure::from_index(
                    4,
                    Params {
                        q: Some(q),
                        ..Params::default()
                    },
                )
                .unwrap(),
            )
        })
        .collect();
    let mut tie_free_runs = 0;
    for s in 0..10_000u64 {
        let m = 1 + (s % 8) as usize;
        let n = 1 + (s / 8 % 9) as usize;
        let p = generate_profile(m, n, s ^ 0x5eed);
        let size = |c: &dyn Choice| c.choose(&p).len();
        assert!(size(&Procedure::Plurality) <= n, "plurality, seed {s}");
        for (q, proc) in &approvals {
            assert!(size(proc) <= q * n, "{q}-approval, seed {s}");
        }
        assert!(
            size(&Procedure::SimpleMajority) <= 1,
            "simple majority, seed {s}"
        );
        assert!(
            size(&Procedure::CondorcetWinner) <= 1,
            "condorcet, seed {s}"
        );
        for (name, run) in [
            (
                "run-off",
                elimination::run_off as fn(&Profile) -> elimination::Elimination,
            ),
            ("hare", elimination::hare),
            ("coombs", elimination::coombs),
        ] {
            let e = run(&p);
            if e.tie_free {
                tie_free_runs += 1;
                assert!(e.chosen.len() <= 1, "{name}, seed {s}");
            }
        }
    }
    assert!(tie_free_runs > 10_000);
}

#[test]
fn elimination_matches_procedures() {
    for s in 0..500u64 {
        let p = generate_profile(1 + (s % 7) as usize, 1 + (s / 7 % 6) as usize, s);
        assert_eq!(
            elimination::run_off(&p).chosen,
            Procedure::RunOff.choose(&p)
        );
        assert_eq!(elimination::hare(&p).chosen, Procedure::Hare.choose(&p));
        assert_eq!(elimination::coombs(&p).chosen, Procedure::Coombs.choose(&p));
    }
}

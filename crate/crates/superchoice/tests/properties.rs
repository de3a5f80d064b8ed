use proptest::prelude::*;

use superchoice::bench::generate_profile;
use superchoice::{
    check_axiom, AltSet, AxiomId, Choice, MajorityRelation, Procedure, Profile, TwoStageId,
};

fn profile() -> impl Strategy<Value = Profile> {
    (1usize..=6, 1usize..=7, any::<u64>()).prop_map(|(m, n, s)| generate_profile(m, n, s))
}

fn small_profile() -> impl Strategy<Value = Profile> {
    (1usize..=4, 1usize..=5, any::<u64>()).prop_map(|(m, n, s)| generate_profile(m, n, s))
}

/// Procedures whose choice is never empty.
const NONEMPTY: [usize; 20] = [
    2, 3, 4, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 21, 23, 24, 25, 27,
];

/// Procedures that pick the Condorcet winner whenever there is one.
const CONDORCET_CONSISTENT: [usize; 15] =
    [8, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 23, 24, 25, 27];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn text_round_trip(p in profile()) {
        prop_assert!(Profile::parse(&p.to_text()).unwrap() == p);
        let mu = p.majority_relation();
        let back = MajorityRelation::parse(&mu.to_text()).unwrap();
        prop_assert_eq!(back.edges(), mu.edges());
    }

    #[test]
    fn realized_relation_is_reproduced(p in profile()) {
        let mu = p.majority_relation();
        prop_assert_eq!(mu.realize().majority_relation().edges(), mu.edges());
    }

    #[test]
    fn choices_within_universe(p in profile()) {
        let all = p.universe().all();
        for proc in Procedure::all() {
            let c = proc.choose(&p);
            prop_assert!(c.is_subset(&all), "{}", proc);
            if NONEMPTY.contains(&proc.index()) {
                prop_assert!(!c.is_empty(), "{} empty on\n{}", proc, p.to_text());
            }
        }
    }

    #[test]
    fn full_contraction_is_identity(p in profile()) {
        let q = p.contract(&p.universe().all()).unwrap();
        for proc in Procedure::all() {
            prop_assert_eq!(proc.choose(&q), proc.choose(&p));
        }
    }

    #[test]
    fn condorcet_winner_is_chosen(p in profile()) {
        let cw = Procedure::CondorcetWinner.choose(&p);
        prop_assert!(cw.is_subset(&Procedure::Core.choose(&p)));
        if !cw.is_empty() {
            for ix in CONDORCET_CONSISTENT {
                let proc = Procedure::canonical(ix);
                prop_assert_eq!(&proc.choose(&p), &cw, "{}", proc);
            }
        }
    }

    #[test]
    fn stages_nest(p in profile(), id in 1usize..=784) {
        let two = TwoStageId::from_id(id).unwrap().procedure();
        let st = two.stages(&p);
        prop_assert!(st.last.is_subset(&st.first));
        prop_assert!(st.first.is_subset(&p.universe().all()));
        prop_assert_eq!(&st.first, &two.first.choose(&p));
        prop_assert_eq!(&st.last, &two.choose(&p));
    }

    #[test]
    fn majority_rules_see_only_mu(p in profile()) {
        let realized = p.majority_relation().realize();
        for proc in Procedure::all().filter(|q| q.is_majority_only()) {
            let (a, b) = (proc.choose(&p), proc.choose(&realized));
            let u = p.universe();
            prop_assert_eq!(u.format_set(&a), realized.universe().format_set(&b), "{}", proc);
        }
    }

    #[test]
    fn witnesses_replay(p in small_profile(), id in 1usize..=784) {
        let two = TwoStageId::from_id(id).unwrap().procedure();
        for axiom in AxiomId::ALL {
            if let Some(w) = check_axiom(&two, axiom, &p).witness() {
                prop_assert!(w.replay(&two), "{} {}", id, axiom);
            }
        }
    }

    #[test]
    fn improving_a_chosen_alternative_keeps_it_for_scoring(p in small_profile()) {
        for proc in [Procedure::Plurality, Procedure::Borda] {
            let before = proc.choose(&p);
            for x in before.iter() {
                for mv in p.improvements(x) {
                    let after = proc.choose(&p.improve(&mv).unwrap());
                    prop_assert!(after.contains(x), "{} lost after {:?}", proc, mv);
                }
            }
        }
    }
}

#[test]
fn empty_choice_formats_as_braces() {
    let p = generate_profile(3, 2, 0);
    assert_eq!(p.universe().format_set(&AltSet::from_ids([])), "{}");
}

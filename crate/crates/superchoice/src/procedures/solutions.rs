//! Majority-relation solution concepts.
//!
//! Minimal weakly stable sets and k-stable sets are taken at minimum
//! cardinality: subsets are scanned by size and the union of all qualifying
//! sets of the first size that has any is returned.

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::altset::AltSet;
use crate::majority::MajorityRelation;

pub fn condorcet_winner(mu: &MajorityRelation) -> AltSet {
    let m = mu.m();
    mu.universe()
        .from_locals((0..m).filter(|&x| mu.lower(x).count_ones(..) == m - 1))
}

/// Alternatives no one beats.
pub fn core(mu: &MajorityRelation) -> AltSet {
    mu.universe()
        .from_locals((0..mu.m()).filter(|&x| mu.upper(x).is_clear()))
}

/// Smallest Q whose members each beat everything outside Q.
///
/// Such sets are nested, so the minimal one is unique. It contains every
/// alternative with the fewest dominators, and is the closure of one of
/// them under "add y unless every member beats y".
pub fn minimal_dominant(mu: &MajorityRelation) -> AltSet {
    let m = mu.m();
    let seed = (0..m)
        .min_by_key(|&x| mu.upper(x).count_ones(..))
        .expect("nonempty universe");
    let mut q = FixedBitSet::with_capacity(m);
    q.insert(seed);
    let mut beaten_by_all = mu.lower(seed).clone();
    loop {
        let mut missing = q.clone();
        missing.union_with(&beaten_by_all);
        missing.toggle_range(..);
        if missing.is_clear() {
            break;
        }
        for y in missing.ones() {
            beaten_by_all.intersect_with(mu.lower(y));
        }
        q.union_with(&missing);
    }
    mu.universe().from_bits(&q)
}

/// Union of the minimal sets closed under dominators: the strongly
/// connected components of μ that no outside alternative beats.
pub fn minimal_undominated(mu: &MajorityRelation) -> AltSet {
    let m = mu.m();
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(m, mu.edge_count());
    let nodes: Vec<_> = (0..m).map(|_| g.add_node(())).collect();
    for (x, y) in mu.edges() {
        g.add_edge(nodes[x], nodes[y], ());
    }
    let mut comp = vec![0; m];
    let sccs = tarjan_scc(&g);
    for (c, members) in sccs.iter().enumerate() {
        for v in members {
            comp[v.index()] = c;
        }
    }
    let mut source = vec![true; sccs.len()];
    for (x, y) in mu.edges() {
        if comp[x] != comp[y] {
            source[comp[y]] = false;
        }
    }
    mu.universe()
        .from_locals((0..m).filter(|&x| source[comp[x]]))
}

fn union_of<'a>(sets: impl Iterator<Item = &'a FixedBitSet>, m: usize) -> FixedBitSet {
    let mut u = FixedBitSet::with_capacity(m);
    for s in sets {
        u.union_with(s);
    }
    u
}

fn bits_of(members: &[usize], m: usize) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(m);
    for &x in members {
        b.insert(x);
    }
    b
}

/// Q is weakly stable iff every outside alternative beating a member of Q
/// is itself beaten by some member of Q.
pub fn is_weakly_stable(mu: &MajorityRelation, q: &[usize]) -> bool {
    let m = mu.m();
    let inside = bits_of(q, m);
    let mut threats = union_of(q.iter().map(|&x| mu.upper(x)), m);
    threats.difference_with(&inside);
    let answered = union_of(q.iter().map(|&z| mu.lower(z)), m);
    threats.is_subset(&answered)
}

/// Every alternative outside Q is reachable from Q by a μ-path of at most
/// k edges.
pub fn is_k_stable(mu: &MajorityRelation, q: &[usize], k: usize) -> bool {
    let m = mu.m();
    let mut reached = bits_of(q, m);
    let mut frontier = reached.clone();
    for _ in 0..k {
        let next = union_of(frontier.ones().map(|x| mu.lower(x)), m);
        let mut fresh = next;
        fresh.difference_with(&reached);
        if fresh.is_clear() {
            break;
        }
        reached.union_with(&fresh);
        frontier = fresh;
    }
    reached.count_ones(..) == m
}

/// All qualifying subsets of the smallest size for which any qualifies.
fn smallest_qualifying(mu: &MajorityRelation, ok: impl Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    let m = mu.m();
    for size in 1..=m {
        let found: Vec<Vec<usize>> = (0..m).combinations(size).filter(|q| ok(q)).collect();
        if !found.is_empty() {
            return found;
        }
    }
    unreachable!("the whole universe always qualifies")
}

pub fn weakly_stable_sets(mu: &MajorityRelation) -> Vec<AltSet> {
    smallest_qualifying(mu, |q| is_weakly_stable(mu, q))
        .into_iter()
        .map(|q| mu.universe().from_locals(q))
        .collect()
}

pub fn minimal_weakly_stable(mu: &MajorityRelation) -> AltSet {
    let sets = smallest_qualifying(mu, |q| is_weakly_stable(mu, q));
    mu.universe().from_locals(sets.into_iter().flatten())
}

pub fn k_stable_sets(mu: &MajorityRelation, k: usize) -> Vec<AltSet> {
    smallest_qualifying(mu, |q| is_k_stable(mu, q, k))
        .into_iter()
        .map(|q| mu.universe().from_locals(q))
        .collect()
}

pub fn k_stable(mu: &MajorityRelation, k: usize) -> AltSet {
    let sets = smallest_qualifying(mu, |q| is_k_stable(mu, q, k));
    mu.universe().from_locals(sets.into_iter().flatten())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu(labels: &str, edges: &str) -> MajorityRelation {
        let l: Vec<&str> = labels.split_whitespace().collect();
        MajorityRelation::from_edge_list(&l, edges).unwrap()
    }

    fn fmt(mu: &MajorityRelation, s: &AltSet) -> String {
        mu.universe().format_set(s)
    }

    fn six() -> MajorityRelation {
        mu("a b c d e f", "a>b a>f b>c c>a d>b e>d f>e")
    }

    fn eight() -> MajorityRelation {
        mu(
            "a b c d e f g h",
            "a>b a>d b>c b>d b>e c>a c>h d>c e>c f>e g>f h>g",
        )
    }

    #[test]
    fn weakly_stable_on_six_alternative_relation() {
        let m = six();
        assert_eq!(fmt(&m, &minimal_weakly_stable(&m)), "{a, c}");
        let abc = m
            .restrict(&m.universe().parse_set("a,b,c").unwrap())
            .unwrap();
        assert_eq!(fmt(&abc, &minimal_weakly_stable(&abc)), "{a, b, c}");
    }

    #[test]
    fn three_smallest_weakly_stable_sets() {
        let m = eight();
        let sets: Vec<String> = weakly_stable_sets(&m).iter().map(|s| fmt(&m, s)).collect();
        assert_eq!(sets, ["{a, b}", "{a, d}", "{b, c}"]);
        assert_eq!(fmt(&m, &minimal_weakly_stable(&m)), "{a, b, c, d}");
        let without_b = m
            .restrict(&m.universe().parse_set("a c d e f g h").unwrap())
            .unwrap();
        assert_eq!(
            fmt(&without_b, &minimal_weakly_stable(&without_b)),
            "{a, d}"
        );
    }

    #[test]
    fn five_alternative_weakly_stable_cases() {
        let m = mu("a b c d e", "a>b b>c c>d c>e d>a e>d");
        assert_eq!(fmt(&m, &minimal_weakly_stable(&m)), "{a, c}");
        let u = m.universe().clone();
        let no_e = m.restrict(&u.parse_set("a b c d").unwrap()).unwrap();
        assert_eq!(fmt(&no_e, &minimal_weakly_stable(&no_e)), "{a, b, c, d}");
        let no_a = m.restrict(&u.parse_set("b c d e").unwrap()).unwrap();
        assert_eq!(fmt(&no_a, &minimal_weakly_stable(&no_a)), "{b}");
    }

    #[test]
    fn core_and_winner() {
        let lin = mu("a b c", "b>a b>c a>c");
        assert_eq!(fmt(&lin, &core(&lin)), "{b}");
        assert_eq!(fmt(&lin, &condorcet_winner(&lin)), "{b}");
        let cyc = mu("a b c", "a>b b>c c>a");
        assert_eq!(fmt(&cyc, &condorcet_winner(&cyc)), "{}");
        assert_eq!(fmt(&cyc, &core(&cyc)), "{}");
        let tie = mu("a b c", "a>c");
        assert_eq!(fmt(&tie, &core(&tie)), "{a, b}");
    }

    #[test]
    fn dominant_and_undominated_sets() {
        let m = mu("a b c d", "a>b b>c c>a a>d b>d c>d");
        assert_eq!(fmt(&m, &minimal_dominant(&m)), "{a, b, c}");
        assert_eq!(fmt(&m, &minimal_undominated(&m)), "{a, b, c}");
        // a ties d; neither loses to anyone outside {a, d}
        let t = mu("a b c d", "a>b a>c d>b d>c b>c");
        assert_eq!(fmt(&t, &minimal_dominant(&t)), "{a, d}");
        assert_eq!(fmt(&t, &minimal_undominated(&t)), "{a, d}");
        let e = mu("a b c", "");
        assert_eq!(fmt(&e, &minimal_dominant(&e)), "{a, b, c}");
        assert_eq!(fmt(&e, &minimal_undominated(&e)), "{a, b, c}");
        // a>b, c tied with both: undominated singletons {a} and {c}
        let s = mu("a b c", "a>b");
        assert_eq!(fmt(&s, &minimal_undominated(&s)), "{a, c}");
        assert_eq!(fmt(&s, &minimal_dominant(&s)), "{a, b, c}");
    }

    #[test]
    fn k_stable_reaches_within_k() {
        let chain = mu("a b c d", "a>b b>c c>d");
        assert_eq!(fmt(&chain, &k_stable(&chain, 3)), "{a}");
        assert_eq!(k_stable_sets(&chain, 2).len(), 3);
        assert_eq!(fmt(&chain, &k_stable(&chain, 2)), "{a, b, c, d}");
        let none = mu("a b", "");
        assert_eq!(fmt(&none, &k_stable(&none, 2)), "{a, b}");
    }
}

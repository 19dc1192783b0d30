use proptest::prelude::*;

use graph_stability::bounds::{ub_es_lemma2, ub_vs_lemma1};
use graph_stability::codec::{encode_graph6, parse_graph6};
use graph_stability::invariants::{check_monotone_on_instance, check_spanning_monotone_on_instance, registry};
use graph_stability::stability::{edge_stability, vertex_stability};
use graph_stability::{
    disjoint_union, EdgeSet, ExtValue, Graph, InvariantId, Monotonicity, SearchPolicy, Stability, SubsetRange,
    VertexSet,
};

const MULTIPLICATIVE: [InvariantId; 4] = [
    InvariantId::IndependentSets,
    InvariantId::SpanningForests,
    InvariantId::Matchings,
    InvariantId::PerfectMatchings,
];
const MINING: [InvariantId; 3] = [InvariantId::MinDegree, InvariantId::Girth, InvariantId::MinComponentOrder];

fn graph(max_order: usize) -> impl Strategy<Value = Graph> {
    (0..=max_order).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(&e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn invariant() -> impl Strategy<Value = InvariantId> {
    proptest::sample::select(InvariantId::ALL.to_vec())
}

fn policy() -> SearchPolicy {
    SearchPolicy::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn multiplicative_invariants_multiply(a in graph(5), b in graph(5)) {
        let u = disjoint_union(&[a.clone(), b.clone()]).unwrap();
        for id in MULTIPLICATIVE {
            let f = id.descriptor();
            let product = f.evaluate(&a).unwrap().checked_mul(&f.evaluate(&b).unwrap()).unwrap();
            prop_assert_eq!(f.evaluate(&u).unwrap(), product, "{}", id);
        }
    }

    #[test]
    fn mining_invariants_take_minimum(a in graph(5), b in graph(5)) {
        let u = disjoint_union(&[a.clone(), b.clone()]).unwrap();
        for id in MINING {
            let f = id.descriptor();
            let least = f.evaluate(&a).unwrap().min(f.evaluate(&b).unwrap());
            prop_assert_eq!(f.evaluate(&u).unwrap(), least, "{}", id);
        }
    }

    #[test]
    fn vertex_witness_changes_the_value(g in graph(6), id in invariant()) {
        let f = id.descriptor();
        let Ok(base) = f.evaluate(&g) else { return Ok(()) };
        let r = vertex_stability(&g, f, &policy()).unwrap();
        match (r.value, r.witness) {
            (Stability::Finite(k), Some(x)) => {
                prop_assert_eq!(x.len(), k);
                prop_assert!(x != g.vertices());
                // an undefined value counts as a change under the default policy
                let after = f.evaluate(&g.delete_vertices(x).unwrap());
                prop_assert!(after.map_or(true, |v| v != base));
            }
            (Stability::Infinite, None) => {}
            other => prop_assert!(false, "inconsistent result {:?}", other),
        }
    }

    #[test]
    fn edge_witness_changes_the_value(g in graph(5), id in invariant()) {
        let f = id.descriptor();
        let Ok(base) = f.evaluate(&g) else { return Ok(()) };
        let r = edge_stability(&g, f, &policy()).unwrap();
        if let (Stability::Finite(k), Some(y)) = (r.value, r.witness.clone()) {
            prop_assert_eq!(y.len(), k);
            let after = f.evaluate(&g.delete_edges(&y).unwrap());
            prop_assert!(after.map_or(true, |v| v != base));
        } else {
            prop_assert_eq!(r.value, Stability::Infinite);
        }
    }

    #[test]
    fn allowing_full_deletion_never_raises_vs(g in graph(5), id in invariant()) {
        let f = id.descriptor();
        if f.evaluate(&g).is_err() { return Ok(()) }
        let proper = vertex_stability(&g, f, &policy()).unwrap().value;
        let all = vertex_stability(&g, f, &policy().with_range(SubsetRange::All)).unwrap().value;
        prop_assert!(all <= proper);
    }

    #[test]
    fn lemma1_holds_for_random_subsets(g in graph(5), id in invariant(), bits in any::<u64>()) {
        let x = VertexSet::from_mask(bits & g.vertices().mask());
        let f = id.descriptor();
        let r = ub_vs_lemma1(&g, x, f, &policy()).unwrap();
        if r.applicable {
            let actual = vertex_stability(&g, f, &policy()).unwrap().value;
            prop_assert_eq!(r.holds(actual), Some(true));
        }
    }

    #[test]
    fn lemma2_holds_for_random_subsets(g in graph(5), id in invariant(), bits in any::<u64>()) {
        let y: EdgeSet = g.edges().iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e).collect();
        let f = id.descriptor();
        let r = ub_es_lemma2(&g, &y, f, &policy()).unwrap();
        if r.applicable {
            let actual = edge_stability(&g, f, &policy()).unwrap().value;
            prop_assert_eq!(r.holds(actual), Some(true));
        }
    }

    #[test]
    fn graph6_round_trips(g in graph(20)) {
        let bytes = encode_graph6(&g).unwrap();
        let back = parse_graph6(&bytes).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(encode_graph6(&back).unwrap(), bytes);
    }

    #[test]
    fn boundary_splits_the_edge_set(g in graph(8), bits in any::<u64>()) {
        let u = VertexSet::from_mask(bits & g.vertices().mask());
        let boundary = g.boundary_edges(u).unwrap();
        let inside = g.induced_subgraph(u).unwrap().size();
        let outside = g.delete_vertices(u).unwrap().size();
        prop_assert_eq!(inside + outside + boundary.len(), g.size());
    }

    #[test]
    fn monotonicity_flags_hold_on_instances(g in graph(5)) {
        for f in registry() {
            if f.evaluate(&g).is_err() { continue }
            let cap = 1 << 20;
            if f.monotone_induced != Monotonicity::None {
                prop_assert!(check_monotone_on_instance(f, &g, f.monotone_induced, cap).unwrap(), "{}", f.name());
            }
            if f.monotone_spanning != Monotonicity::None {
                prop_assert!(check_spanning_monotone_on_instance(f, &g, f.monotone_spanning, cap).unwrap(), "{}", f.name());
            }
        }
    }

    #[test]
    fn values_are_never_negative_and_zero_only_where_declared(g in graph(5)) {
        for f in registry() {
            if let Ok(v) = f.evaluate(&g) {
                if v == ExtValue::zero() {
                    prop_assert!(f.can_be_zero, "{} is zero", f.name());
                }
            }
        }
    }
}

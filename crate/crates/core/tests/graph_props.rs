use std::collections::BTreeSet;

use lpa_core::graph::{parse_graph, AdmissiblePair, Graph, VertexId};
use lpa_core::random::{random_graph, GraphShape};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph(seed: u64, family_rate: f64) -> Graph {
    random_graph(&mut ChaCha8Rng::seed_from_u64(seed), GraphShape { family_rate, ..GraphShape::default() })
}

fn subset(g: &Graph, rng: &mut impl Rng) -> BTreeSet<VertexId> {
    g.vertices().filter(|_| rng.gen_bool(0.3)).collect()
}

/// Reachability by repeated relaxation over all edges and families.
fn reachable(g: &Graph, v: VertexId) -> BTreeSet<VertexId> {
    let mut seen = BTreeSet::from([v]);
    loop {
        let before = seen.len();
        for e in g.plain_edges() {
            if seen.contains(&g.source(e)) {
                seen.insert(g.range(e));
            }
        }
        for f in 0..g.family_count() {
            if seen.contains(&g.family_source(f)) {
                seen.insert(g.family_range(f));
            }
        }
        if seen.len() == before {
            return seen;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tree_contains_root_and_grows_with_edges(seed in any::<u64>(), s in 0usize..6, r in 0usize..6) {
        let g = graph(seed, 0.2);
        let n = g.vertex_count();
        let (s, r) = (VertexId(s % n), VertexId(r % n));
        let mut bigger = g.clone();
        bigger.add_edge("extra", s, r).unwrap();
        for v in g.vertices() {
            let t = g.tree(v);
            prop_assert!(t.contains(&v));
            prop_assert_eq!(&t, &reachable(&g, v));
            prop_assert!(t.is_subset(&bigger.tree(v)));
        }
    }

    #[test]
    fn line_points_and_laurent_vertices_are_disjoint(seed in any::<u64>()) {
        let g = graph(seed, 0.2);
        for v in g.vertices() {
            prop_assert!(!(g.is_line_point(v) && g.is_laurent_vertex(v)), "{}", g.vertex_name(v));
        }
    }

    #[test]
    fn closure_is_a_closure_operator(seed in any::<u64>()) {
        let g = graph(seed, 0.2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a5a);
        let x = subset(&g, &mut rng);
        let y: BTreeSet<VertexId> = x.union(&subset(&g, &mut rng)).copied().collect();
        let cx = g.hereditary_saturated_closure(&x);
        prop_assert!(x.is_subset(&cx));
        prop_assert_eq!(&g.hereditary_saturated_closure(&cx), &cx);
        prop_assert!(cx.is_subset(&g.hereditary_saturated_closure(&y)));
        prop_assert!(g.is_hereditary_saturated(&cx));
    }

    #[test]
    fn trivial_quotient_is_the_graph(seed in any::<u64>()) {
        let g = graph(seed, 0.2);
        let q = g.quotient_graph(&AdmissiblePair::trivial()).unwrap();
        prop_assert_eq!(&q.graph, &g);
        prop_assert!(q.vertex_map.iter().enumerate().all(|(i, v)| *v == Some(VertexId(i))));
        prop_assert!(q.primed_vertex.iter().all(Option::is_none));
    }

    #[test]
    fn display_round_trips(seed in any::<u64>()) {
        let g = graph(seed, 0.3);
        prop_assert_eq!(parse_graph(&g.to_string()).unwrap(), g);
    }
}

#[test]
fn condition_k_implies_condition_l() {
    for seed in 0..200 {
        let g = graph(seed, 0.0);
        if g.condition_k() {
            assert!(g.condition_l(), "seed {seed}: {g}");
        }
    }
}

use lpa_core::algebra::{Algebra, Element, Monomial};
use lpa_core::branching::{
    act, nvc_annihilator, vector_degree, vp_gradedness, BranchingSystem, InfinitePathSpec, ModuleVector, NvcSystem,
    PathSystem, Rationality,
};
use lpa_core::graph::{parse_graph, EdgeRef, Graph, Path, VertexClass, VertexId};
use lpa_core::random::{random_element, random_graph, random_monomial, GraphShape};
use lpa_core::Rational;
use num_traits::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DEPTH: usize = 24;

/// Every module the graph supports: `N_w` at sinks, `S_v∞` at infinite
/// emitters and `N_vc` at Laurent vertices.
fn systems(g: &Graph) -> Vec<Box<dyn BranchingSystem + '_>> {
    let mut out: Vec<Box<dyn BranchingSystem + '_>> = Vec::new();
    for v in g.vertices() {
        match g.classify(v) {
            VertexClass::Sink => out.push(Box::new(PathSystem::sink(g, v).unwrap())),
            VertexClass::InfiniteEmitter => out.push(Box::new(PathSystem::infinite_emitter(g, v).unwrap())),
            VertexClass::Regular => {}
        }
        if g.is_laurent_vertex(v) {
            out.push(Box::new(NvcSystem::new(g, v).unwrap()));
        }
    }
    out
}

fn graph(seed: u64) -> (Graph, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_graph(&mut rng, GraphShape { max_vertices: 5, max_edges: 7, family_rate: 0.2 });
    (g, rng)
}

fn ck2_defect(g: &Graph, v: VertexId, sample: u32) -> Element {
    let mut sum = Element::vertex(v).scale(&-Rational::one());
    for e in g.out_edges_sampled(v, sample) {
        sum = sum.add(&Element::from_monomial(Monomial::new(Path::edge(g, e), Path::edge(g, e)).unwrap()));
    }
    sum
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn action_respects_products(seed in any::<u64>()) {
        let (g, mut rng) = graph(seed);
        let alg = Algebra::new(&g);
        for b in systems(&g) {
            let symbols = b.symbols(4);
            for _ in 0..3 {
                let x = &symbols[rng.gen_range(0..symbols.len())];
                let m = ModuleVector::basis(x.clone());
                let p = random_element(&g, &mut rng, 2, 3, 2);
                let q = random_element(&g, &mut rng, 2, 3, 2);
                let pq = alg.normal_form(&alg.multiply(&p, &q).unwrap()).unwrap();
                let lhs = act(b.as_ref(), &pq, &m, DEPTH).unwrap();
                let inner = act(b.as_ref(), &q, &m, DEPTH).unwrap();
                prop_assert_eq!(lhs, act(b.as_ref(), &p, &inner, DEPTH).unwrap(), "{}", b.name());
            }
        }
    }

    #[test]
    fn action_is_graded(seed in any::<u64>()) {
        let (g, mut rng) = graph(seed);
        for b in systems(&g).into_iter().filter(|b| b.is_graded()) {
            for x in b.symbols(3) {
                let mono = random_monomial(&g, &mut rng, 2, 2);
                let image = act(b.as_ref(), &Element::from_monomial(mono.clone()), &ModuleVector::basis(x.clone()), DEPTH).unwrap();
                let n = b.degree(&x).unwrap();
                match vector_degree(b.as_ref(), &image) {
                    Some(None) => {}
                    Some(Some(d)) => prop_assert_eq!(d, n + mono.degree()),
                    None => prop_assert!(false, "mixed degrees in {}", b.name()),
                }
            }
        }
    }
}

#[test]
fn relations_act_as_zero() {
    for seed in 0..200 {
        let (g, _) = graph(seed);
        let mut edges: Vec<EdgeRef> = g.plain_edges().collect();
        for f in 0..g.family_count() {
            edges.extend((0..3).map(|i| EdgeRef::Member(f, i)));
        }
        for b in systems(&g) {
            for x in b.symbols(4) {
                let m = ModuleVector::basis(x.clone());
                for &e in &edges {
                    let ghost_edge = Algebra::new(&g).multiply(&Element::ghost(&g, e), &Element::edge(&g, e)).unwrap();
                    let rel = ghost_edge.sub(&Element::vertex(g.range(e)));
                    assert!(act(b.as_ref(), &rel, &m, DEPTH).unwrap().is_zero(), "seed {seed} {}", b.name());
                }
                for v in g.vertices() {
                    let acts = |a: &Element| act(b.as_ref(), a, &m, DEPTH).unwrap();
                    match g.classify(v) {
                        VertexClass::Regular => assert!(acts(&ck2_defect(&g, v, 1)).is_zero(), "seed {seed}"),
                        VertexClass::InfiniteEmitter
                            if b.in_vertex(&x, v) && !edges.iter().any(|&e| b.in_edge(&x, e)) =>
                        {
                            assert_eq!(acts(&Element::vertex(v)), m);
                            let finite_sum = ck2_defect(&g, v, 3).add(&Element::vertex(v));
                            assert!(acts(&finite_sum).is_zero(), "seed {seed}");
                        }
                        _ => {}
                    }
                }
            }
        }
    }
}

#[test]
fn annihilator_kills_the_module() {
    let mut checked = 0;
    for seed in 0..200 {
        let (g, _) = graph(seed);
        for u in g.laurent_vertices() {
            let pair = nvc_annihilator(&g, u).unwrap();
            let b = NvcSystem::new(&g, u).unwrap();
            for x in b.symbols(6) {
                for &w in &pair.h {
                    let image = act(&b, &Element::vertex(w), &ModuleVector::basis(x.clone()), DEPTH).unwrap();
                    assert!(image.is_zero(), "seed {seed}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn gradedness_matches_irrationality() {
    let r2 = parse_graph("vertex v\nedge a v v\nedge b v v").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut specs = Vec::new();
    for _ in 0..20 {
        let word = |rng: &mut ChaCha8Rng, n: usize| -> String {
            (0..n).map(|_| if rng.gen_bool(0.5) { "a" } else { "b" }).collect::<Vec<_>>().join(" ")
        };
        let (p, c) = (rng.gen_range(0..3), rng.gen_range(1..4));
        let prefix = if p == 0 { String::new() } else { word(&mut rng, p) };
        specs.push(format!("lasso {prefix} ; {}", word(&mut rng, c)));
    }
    specs.push("subst a -> a b, b -> b a seed a depth 64".into());
    specs.push("subst a -> a b, b -> a a seed a depth 64".into());
    specs.push("subst a -> a b, b -> a seed a depth 64".into());
    for text in &specs {
        let p = InfinitePathSpec::parse(&r2, text).unwrap();
        let graded = vp_gradedness(&r2, &p, 8).unwrap().is_graded();
        match p.rationality(&r2).unwrap() {
            Rationality::Irrational { .. } => assert!(graded, "{text}"),
            Rationality::Rational { .. } => assert!(!graded, "{text}"),
            Rationality::PossiblyRational { .. } => panic!("{text} undecided"),
        }
        assert_eq!(graded, !p.is_rational(&r2).unwrap(), "{text}");
    }
}

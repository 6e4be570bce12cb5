//! Seeded random graphs and elements for property checks.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{Element, Monomial};
use crate::graph::{Graph, Path, VertexId};
use crate::Rational;

#[derive(Debug, Clone, Copy)]
pub struct GraphShape {
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Chance that a vertex also gets an infinite family.
    pub family_rate: f64,
}

impl Default for GraphShape {
    fn default() -> Self {
        GraphShape { max_vertices: 6, max_edges: 10, family_rate: 0.0 }
    }
}

/// A graph with `1..=max_vertices` vertices `v0, v1, ...` and
/// `0..=max_edges` edges `e0, e1, ...` between uniformly chosen endpoints.
pub fn random_graph(rng: &mut impl Rng, shape: GraphShape) -> Graph {
    let mut g = Graph::new();
    let n = rng.gen_range(1..=shape.max_vertices.max(1));
    let vs: Vec<VertexId> = (0..n).map(|i| g.add_vertex(&format!("v{i}")).expect("fresh name")).collect();
    let m = rng.gen_range(0..=shape.max_edges);
    for i in 0..m {
        let s = *vs.choose(rng).unwrap();
        let r = *vs.choose(rng).unwrap();
        g.add_edge(&format!("e{i}"), s, r).expect("fresh name");
    }
    if shape.family_rate > 0.0 {
        for (i, &s) in vs.iter().enumerate() {
            if rng.gen_bool(shape.family_rate) {
                let r = *vs.choose(rng).unwrap();
                g.add_family(&format!("g{i}"), s, r).expect("fresh name");
            }
        }
    }
    g
}

/// A nonzero rational `p/q` with `|p| <= 3` and `1 <= q <= 2`.
pub fn random_coefficient(rng: &mut impl Rng) -> Rational {
    let p = loop {
        let p: i64 = rng.gen_range(-3..=3);
        if p != 0 {
            break p;
        }
    };
    Rational::new(BigInt::from(p), BigInt::from(rng.gen_range(1..=2i64)))
}

/// A path of at most `max_len` edges ending at `target`, grown backwards.
pub fn random_path_to(g: &Graph, rng: &mut impl Rng, target: VertexId, max_len: usize, sample: u32) -> Path {
    let len = rng.gen_range(0..=max_len);
    let mut p = Path::vertex(target);
    for _ in 0..len {
        let ins = g.in_edges_sampled(p.source(), sample);
        let Some(&e) = ins.choose(rng) else { break };
        p = p.prepend(g, e);
    }
    p
}

pub fn random_monomial(g: &Graph, rng: &mut impl Rng, max_len: usize, sample: u32) -> Monomial {
    let vs: Vec<VertexId> = g.vertices().collect();
    let r = *vs.choose(rng).expect("graph has a vertex");
    let alpha = random_path_to(g, rng, r, max_len, sample);
    let beta = random_path_to(g, rng, r, max_len, sample);
    Monomial { alpha, beta }
}

/// A sum of `1..=max_terms` random monomials with random coefficients.
pub fn random_element(g: &Graph, rng: &mut impl Rng, max_len: usize, max_terms: usize, sample: u32) -> Element {
    let mut a = Element::zero();
    for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
        a.add_term(random_monomial(g, rng, max_len, sample), random_coefficient(rng));
    }
    a
}

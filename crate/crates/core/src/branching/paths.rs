use super::{BranchingSystem, ModuleError, Symbol, DEFAULT_FAMILY_SAMPLE};
use crate::graph::{paths_ending_at, EdgeRef, Graph, Path, VertexClass, VertexId};

/// Finite paths ending at a fixed vertex, with `σ_e(q) = eq` and
/// `deg(q) = |q|`. At an infinite emitter this is `S_v∞`; at a sink, `N_w`.
#[derive(Debug, Clone)]
pub struct PathSystem<'g> {
    graph: &'g Graph,
    target: VertexId,
    sample: u32,
}

impl<'g> PathSystem<'g> {
    fn require(graph: &'g Graph, v: VertexId, expected: VertexClass) -> Result<Self, ModuleError> {
        let found = graph.classify(v);
        if found != expected {
            return Err(ModuleError::WrongVertexClass { vertex: graph.vertex_name(v).to_string(), expected, found });
        }
        Ok(PathSystem { graph, target: v, sample: DEFAULT_FAMILY_SAMPLE })
    }

    /// `S_v∞` of an infinite emitter.
    pub fn infinite_emitter(graph: &'g Graph, v: VertexId) -> Result<Self, ModuleError> {
        Self::require(graph, v, VertexClass::InfiniteEmitter)
    }

    /// `N_w` of a sink.
    pub fn sink(graph: &'g Graph, w: VertexId) -> Result<Self, ModuleError> {
        Self::require(graph, w, VertexClass::Sink)
    }

    pub fn with_family_sample(mut self, sample: u32) -> Self {
        self.sample = sample;
        self
    }

    pub fn target(&self) -> VertexId {
        self.target
    }
}

impl BranchingSystem for PathSystem<'_> {
    fn graph(&self) -> &Graph {
        self.graph
    }

    fn name(&self) -> String {
        let v = self.graph.vertex_name(self.target);
        match self.graph.classify(self.target) {
            VertexClass::Sink => format!("N_w({v})"),
            _ => format!("S_v∞({v})"),
        }
    }

    fn symbols(&self, depth: usize) -> Vec<Symbol> {
        paths_ending_at(self.graph, self.target, depth, self.sample).into_iter().map(Symbol::Path).collect()
    }

    fn size(&self, x: &Symbol) -> usize {
        match x {
            Symbol::Path(p) => p.len(),
            _ => 0,
        }
    }

    fn contains(&self, x: &Symbol) -> bool {
        matches!(x, Symbol::Path(p) if p.range() == self.target)
    }

    fn in_vertex(&self, x: &Symbol, v: VertexId) -> bool {
        matches!(x, Symbol::Path(p) if p.source() == v)
    }

    fn in_edge(&self, x: &Symbol, e: EdgeRef) -> bool {
        matches!(x, Symbol::Path(p) if p.first_edge() == Some(e))
    }

    fn sigma(&self, e: EdgeRef, x: &Symbol) -> Option<Symbol> {
        let Symbol::Path(p) = x else { return None };
        (p.source() == self.graph.range(e)).then(|| Symbol::Path(p.prepend(self.graph, e)))
    }

    fn sigma_inv(&self, e: EdgeRef, x: &Symbol) -> Option<Symbol> {
        let Symbol::Path(p) = x else { return None };
        if p.first_edge() != Some(e) {
            return None;
        }
        p.tail(self.graph).map(Symbol::Path)
    }

    fn degree(&self, x: &Symbol) -> Option<i64> {
        match x {
            Symbol::Path(p) => Some(p.len() as i64),
            _ => None,
        }
    }

    fn is_graded(&self) -> bool {
        true
    }

    fn generator(&self) -> Symbol {
        Symbol::Path(Path::vertex(self.target))
    }

    fn family_sample(&self) -> u32 {
        self.sample
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::branching::{act, validate, ModuleVector};
    use crate::graph::parse_graph;

    #[test]
    fn infinite_emitter_paths() {
        let g = parse_graph("vertex u\nvertex v\ninfinite-family g u v").unwrap();
        let s = PathSystem::infinite_emitter(&g, g.vertex("u").unwrap()).unwrap();
        assert_eq!(s.symbols(3).len(), 1);
        let alg = Algebra::new(&g);
        let m = act(&s, &alg.parse("u").unwrap(), &ModuleVector::basis(s.generator()), 3).unwrap();
        assert_eq!(m.display(&s), "u");
        assert!(validate(&s, 4).passed());
    }

    #[test]
    fn family_target() {
        let g = parse_graph("vertex u\nvertex v\ninfinite-family g u v\nedge h v u").unwrap();
        let v = g.vertex("v").unwrap();
        assert!(PathSystem::infinite_emitter(&g, v).is_err());
        let s = PathSystem::infinite_emitter(&g, g.vertex("u").unwrap()).unwrap();
        let names: Vec<String> = s.symbols(2).iter().map(|x| x.display(&g)).collect();
        assert_eq!(names, vec!["u", "h", "g[0].h", "g[1].h", "g[2].h"]);
        let alg = Algebra::new(&g);
        let h = ModuleVector::parse(&s, "h").unwrap();
        let out = act(&s, &alg.parse("g[1]").unwrap(), &h, 3).unwrap();
        assert_eq!(out.display(&s), "g[1].h");
        let out = act(&s, &alg.parse("g[1]*").unwrap(), &ModuleVector::parse(&s, "g[2].h").unwrap(), 3).unwrap();
        assert!(out.is_zero());
        assert!(validate(&s, 5).passed());
    }

    #[test]
    fn sink_paths() {
        let g = parse_graph("vertex v\nvertex w\nedge e v v\nedge f v w").unwrap();
        let n = PathSystem::sink(&g, g.vertex("w").unwrap()).unwrap();
        let names: Vec<String> = n.symbols(3).iter().map(|x| x.display(&g)).collect();
        assert_eq!(names, vec!["w", "f", "e.f", "e.e.f"]);
        assert!(validate(&n, 8).passed());
        assert!(PathSystem::sink(&g, g.vertex("v").unwrap()).is_err());
    }
}

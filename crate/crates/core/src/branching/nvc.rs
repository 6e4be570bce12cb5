use super::{BranchingSystem, ModuleError, Symbol, DEFAULT_FAMILY_SAMPLE};
use crate::graph::{paths_ending_at, EdgeRef, Graph, Path, VertexId};

/// The graded-simple, non-simple module `N_vc` of a Laurent vertex: basis
/// `pq*` with `s(q)` the base `v` of the exitless cycle `c`, graded by
/// `|p| - |q|`.
///
/// Since `c` has no exits, `q` is a prefix of `ccc...`, and a pair whose
/// paths end in the same edge equals the pair with that edge removed; such
/// pairs are stored reduced.
#[derive(Debug, Clone)]
pub struct NvcSystem<'g> {
    graph: &'g Graph,
    laurent: VertexId,
    base: VertexId,
    cycle: Vec<EdgeRef>,
    sample: u32,
}

impl<'g> NvcSystem<'g> {
    pub fn new(graph: &'g Graph, u: VertexId) -> Result<Self, ModuleError> {
        let witness =
            graph.laurent_witness(u).ok_or_else(|| ModuleError::NotLaurent(graph.vertex_name(u).to_string()))?;
        Ok(NvcSystem {
            graph,
            laurent: u,
            base: witness.cycle_base(),
            cycle: witness.cycle.edges().to_vec(),
            sample: DEFAULT_FAMILY_SAMPLE,
        })
    }

    pub fn with_family_sample(mut self, sample: u32) -> Self {
        self.sample = sample;
        self
    }

    pub fn base(&self) -> VertexId {
        self.base
    }

    /// The prefix of `ccc...` of length `n`.
    fn cycle_prefix(&self, n: usize) -> Path {
        let mut q = Path::vertex(self.base);
        for i in 0..n {
            q.push(self.graph, self.cycle[i % self.cycle.len()]);
        }
        q
    }

    fn reduce(&self, mut p: Path, mut q: Path) -> Symbol {
        while let (Some(a), Some(b)) = (p.last_edge(), q.last_edge()) {
            if a != b {
                break;
            }
            p = p.init(self.graph).unwrap();
            q = q.init(self.graph).unwrap();
        }
        Symbol::Pair { p, q }
    }

    fn initial_edge(&self, p: &Path, q: &Path) -> EdgeRef {
        p.first_edge().unwrap_or(self.cycle[q.len() % self.cycle.len()])
    }
}

impl BranchingSystem for NvcSystem<'_> {
    fn graph(&self) -> &Graph {
        self.graph
    }

    fn name(&self) -> String {
        format!("N_vc({})", self.graph.vertex_name(self.laurent))
    }

    fn symbols(&self, depth: usize) -> Vec<Symbol> {
        let mut out = Vec::new();
        for j in 0..=depth {
            let q = self.cycle_prefix(j);
            for p in paths_ending_at(self.graph, q.range(), depth - j, self.sample) {
                if p.is_vertex() || j == 0 || p.last_edge() != q.last_edge() {
                    out.push(Symbol::Pair { p, q: q.clone() });
                }
            }
        }
        out.sort_by(|a, b| self.size(a).cmp(&self.size(b)).then_with(|| a.cmp(b)));
        out
    }

    fn size(&self, x: &Symbol) -> usize {
        match x {
            Symbol::Pair { p, q } => p.len() + q.len(),
            _ => 0,
        }
    }

    fn contains(&self, x: &Symbol) -> bool {
        match x {
            Symbol::Pair { p, q } => {
                *q == self.cycle_prefix(q.len())
                    && p.range() == q.range()
                    && (p.is_vertex() || q.is_vertex() || p.last_edge() != q.last_edge())
            }
            _ => false,
        }
    }

    fn in_vertex(&self, x: &Symbol, v: VertexId) -> bool {
        matches!(x, Symbol::Pair { p, .. } if p.source() == v)
    }

    fn in_edge(&self, x: &Symbol, e: EdgeRef) -> bool {
        matches!(x, Symbol::Pair { p, q } if self.initial_edge(p, q) == e)
    }

    fn sigma(&self, e: EdgeRef, x: &Symbol) -> Option<Symbol> {
        let Symbol::Pair { p, q } = x else { return None };
        (p.source() == self.graph.range(e)).then(|| self.reduce(p.prepend(self.graph, e), q.clone()))
    }

    fn sigma_inv(&self, e: EdgeRef, x: &Symbol) -> Option<Symbol> {
        let Symbol::Pair { p, q } = x else { return None };
        if self.initial_edge(p, q) != e {
            return None;
        }
        Some(match p.tail(self.graph) {
            Some(rest) => Symbol::Pair { p: rest, q: q.clone() },
            None => {
                let mut longer = q.clone();
                longer.push(self.graph, e);
                Symbol::Pair { p: Path::vertex(self.graph.range(e)), q: longer }
            }
        })
    }

    fn degree(&self, x: &Symbol) -> Option<i64> {
        match x {
            Symbol::Pair { p, q } => Some(p.len() as i64 - q.len() as i64),
            _ => None,
        }
    }

    fn is_graded(&self) -> bool {
        true
    }

    fn generator(&self) -> Symbol {
        Symbol::Pair { p: Path::vertex(self.base), q: Path::vertex(self.base) }
    }

    fn family_sample(&self) -> u32 {
        self.sample
    }
}

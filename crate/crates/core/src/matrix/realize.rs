use std::collections::HashMap;

use serde::Serialize;

use super::{GradedMatrixAlgebra, MatrixElement, MatrixError};
use crate::algebra::{Element, Monomial};
use crate::graph::{Cycle, EdgeRef, Graph, Path, VertexClass, VertexId};
use crate::structure::{block_index_paths, categorically_noetherian, BlockBase, Certificate};
use crate::Rational;

/// Where every path of a block eventually runs: a sink or an exitless cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Terminal {
    Sink(VertexId),
    Cycle(Cycle),
}

#[derive(Debug, Clone)]
pub struct BlockRealization {
    pub algebra: GradedMatrixAlgebra,
    pub terminal: Terminal,
    /// `p_1, ..., p_n`, ordered by length and then by edge names.
    pub paths: Vec<Path>,
    index: HashMap<Path, usize>,
}

/// `p_i c^k p_j* -> e_ij(x^{k|c|})` on each block, extended linearly; for a
/// sink block `c` is absent and `p_i p_j* -> e_ij`.
#[derive(Debug, Clone)]
pub struct Realization<'g> {
    graph: &'g Graph,
    pub blocks: Vec<BlockRealization>,
    /// For a vertex on an exitless cycle: its block and the arc to the base.
    arcs: HashMap<VertexId, (usize, Vec<EdgeRef>)>,
    sinks: HashMap<VertexId, usize>,
}

fn check_row_finite(g: &Graph) -> Result<(), MatrixError> {
    match g.vertices().find(|&v| g.classify(v) == VertexClass::InfiniteEmitter) {
        Some(v) => Err(MatrixError::NotRowFinite(g.vertex_name(v).to_string())),
        None => Ok(()),
    }
}

fn check_no_exits(g: &Graph) -> Result<(), MatrixError> {
    for c in g.simple_cycles() {
        if c.exit(g).is_some() {
            return Err(MatrixError::CycleHasExit(c.path.display(g)));
        }
    }
    Ok(())
}

fn sinks(g: &Graph) -> Vec<VertexId> {
    g.vertices().filter(|&v| g.classify(v) == VertexClass::Sink).collect()
}

/// Finite acyclic graph with a single sink onto `M_n(K)(|p_1|, ..., |p_n|)`.
pub fn realize_acyclic(g: &Graph) -> Result<Realization<'_>, MatrixError> {
    check_row_finite(g)?;
    if !g.is_acyclic() {
        return Err(MatrixError::NotAcyclic);
    }
    let found = sinks(g);
    if found.len() != 1 {
        return Err(MatrixError::SinkCount(found.len()));
    }
    Realization::build(g, vec![Terminal::Sink(found[0])])
}

/// Comet graph onto `M_n(K[x^t, x^-t])(|p_1|, ..., |p_n|)` with `t = |c|`.
pub fn realize_comet(g: &Graph) -> Result<Realization<'_>, MatrixError> {
    check_row_finite(g)?;
    check_no_exits(g)?;
    if let Some(&w) = sinks(g).first() {
        return Err(MatrixError::NotComet(format!("`{}` is a sink", g.vertex_name(w))));
    }
    let cycles = g.cycles_without_exits();
    if cycles.len() != 1 {
        return Err(MatrixError::NotComet(format!("{} cycles without exits", cycles.len())));
    }
    Realization::build(g, cycles.into_iter().map(Terminal::Cycle).collect())
}

/// The block sum over sinks and exitless cycles, for graphs whose algebra
/// equals its graded socle. Every block must be finite.
pub fn realize_blocks(g: &Graph) -> Result<Realization<'_>, MatrixError> {
    check_row_finite(g)?;
    if let Some(Certificate::OutsideClosure { vertex }) = categorically_noetherian(g).certificate {
        return Err(MatrixError::NotNoetherian(vertex));
    }
    check_no_exits(g)?;
    let mut terminals: Vec<Terminal> = sinks(g).into_iter().map(Terminal::Sink).collect();
    terminals.extend(g.cycles_without_exits().into_iter().map(Terminal::Cycle));
    terminals.sort_by_key(|t| match t {
        Terminal::Sink(w) => *w,
        Terminal::Cycle(c) => c.base(),
    });
    Realization::build(g, terminals)
}

/// Splits `p` ending at the base of `c` as `q c^k` with `q` not ending in `c`.
fn strip_cycle(g: &Graph, p: &Path, c: &Path) -> (Path, i64) {
    let mut edges = p.edges().to_vec();
    let mut k = 0;
    while edges.len() >= c.len() && edges.ends_with(c.edges()) {
        edges.truncate(edges.len() - c.len());
        k += 1;
    }
    let q =
        if edges.is_empty() { Path::vertex(c.source()) } else { Path::from_edges(g, edges).expect("prefix of a path") };
    (q, k)
}

impl<'g> Realization<'g> {
    fn build(graph: &'g Graph, terminals: Vec<Terminal>) -> Result<Self, MatrixError> {
        let mut blocks = Vec::new();
        let mut arcs = HashMap::new();
        let mut sink_blocks = HashMap::new();
        for (b, terminal) in terminals.into_iter().enumerate() {
            let (target, cycle, base) = match &terminal {
                Terminal::Sink(w) => {
                    sink_blocks.insert(*w, b);
                    (*w, None, BlockBase::Field)
                }
                Terminal::Cycle(c) => {
                    let edges = c.path.edges();
                    for (i, &e) in edges.iter().enumerate() {
                        arcs.insert(graph.source(e), (b, if i == 0 { Vec::new() } else { edges[i..].to_vec() }));
                    }
                    (c.base(), Some(&c.path), BlockBase::Laurent { t: c.len() })
                }
            };
            let (paths, infinite) = block_index_paths(graph, target, cycle, 0);
            if infinite {
                return Err(MatrixError::InfiniteBlock(graph.vertex_name(target).to_string()));
            }
            let delta = paths.iter().map(|p| p.len() as i64).collect();
            let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
            let algebra = GradedMatrixAlgebra { base, n: paths.len(), delta };
            blocks.push(BlockRealization { algebra, terminal, paths, index });
        }
        Ok(Realization { graph, blocks, arcs, sinks: sink_blocks })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn algebras(&self) -> Vec<GradedMatrixAlgebra> {
        self.blocks.iter().map(|b| b.algebra.clone()).collect()
    }

    /// Replaces the shift vector of one block; used to check that the
    /// verifier notices a wrong grading.
    pub fn set_delta(&mut self, block: usize, delta: Vec<i64>) {
        self.blocks[block].algebra.delta = delta;
    }

    fn is_terminal(&self, v: VertexId) -> bool {
        self.sinks.contains_key(&v) || self.arcs.contains_key(&v)
    }

    /// Paths `δ` from `u` to the first sink or cycle vertex, so that
    /// `u = sum δδ*` by repeated CK-2.
    fn expansions(&self, u: VertexId) -> Vec<Path> {
        if self.is_terminal(u) {
            return vec![Path::vertex(u)];
        }
        let g = self.graph;
        let mut out = Vec::new();
        for e in g.out_edges(u) {
            for rest in self.expansions(g.range(e)) {
                out.push(Path::edge(g, e).concat(&rest));
            }
        }
        out
    }

    pub fn zero(&self) -> Vec<MatrixElement> {
        self.blocks.iter().map(|b| MatrixElement::zero(b.algebra.n)).collect()
    }

    fn add_monomial(&self, out: &mut [MatrixElement], m: &Monomial, k: &Rational) {
        let g = self.graph;
        for delta in self.expansions(m.alpha.range()) {
            let x = m.alpha.concat(&delta);
            let y = m.beta.concat(&delta);
            let z = delta.range();
            if let Some(&b) = self.sinks.get(&z) {
                let block = &self.blocks[b];
                out[b].add_to(block.index[&x], block.index[&y], k.clone(), 0);
                continue;
            }
            let (b, arc) = &self.arcs[&z];
            let block = &self.blocks[*b];
            let Terminal::Cycle(c) = &block.terminal else { unreachable!("arcs only index cycle blocks") };
            let arc = if arc.is_empty() {
                Path::vertex(z)
            } else {
                Path::from_edges(g, arc.clone()).expect("arc of a cycle")
            };
            let (p, kx) = strip_cycle(g, &x.concat(&arc), &c.path);
            let (q, ky) = strip_cycle(g, &y.concat(&arc), &c.path);
            out[*b].add_to(block.index[&p], block.index[&q], k.clone(), (kx - ky) * c.len() as i64);
        }
    }

    /// The image of `a`, one matrix per block.
    pub fn apply(&self, a: &Element) -> Vec<MatrixElement> {
        let mut out = self.zero();
        for (m, k) in a.terms() {
            self.add_monomial(&mut out, m, k);
        }
        out
    }

    pub fn report(&self) -> RealizationReport {
        let g = self.graph;
        RealizationReport {
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockReport {
                    algebra: b.algebra.clone(),
                    terminal: match &b.terminal {
                        Terminal::Sink(w) => g.vertex_name(*w).to_string(),
                        Terminal::Cycle(c) => c.path.display(g),
                    },
                    index_paths: b.paths.iter().map(|p| p.display(g)).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockReport {
    pub algebra: GradedMatrixAlgebra,
    pub terminal: String,
    pub index_paths: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RealizationReport {
    pub blocks: Vec<BlockReport>,
}

//! Finite directed multigraphs with optional infinite-emitter edge families.
//!
//! A graph carries ordinary edges plus *families*: a family `g` from `u` to
//! `v` stands for the countably many edges `g[0], g[1], ...`, all with source
//! `u` and range `v`. Vertices, edges and families are indexed in declaration
//! order, and every set-valued query answers in that order.

mod analysis;
mod format;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use analysis::{AdmissiblePair, Cycle, LaurentWitness, QuotientGraph};
pub use format::parse_graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: endpoint `{name}` is not a declared vertex")]
    DanglingEndpoint { line: usize, name: String },
    #[error("line {line}: duplicate identifier `{name}`")]
    DuplicateId { line: usize, name: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("vertex set is not hereditary and saturated")]
    NotHereditarySaturated,
    #[error("pair is not admissible: {0}")]
    Inadmissible(String),
    #[error("edges do not compose into a path: {0}")]
    NotAPath(String),
}

/// Index of a vertex in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexId(pub usize);

/// An edge of the graph: either a declared edge or member `i` of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeRef {
    Plain(usize),
    Member(usize, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexClass {
    Sink,
    Regular,
    InfiniteEmitter,
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexClass::Sink => "sink",
            VertexClass::Regular => "regular",
            VertexClass::InfiniteEmitter => "infinite-emitter",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub range: VertexId,
}

#[derive(Debug, Clone, Default)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Arrow>,
    families: Vec<Arrow>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
    out_families: Vec<Vec<usize>>,
    in_families: Vec<Vec<usize>>,
    names: HashMap<String, Name>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Name {
    Vertex(usize),
    Edge(usize),
    Family(usize),
}

/// Equality ignores the lookup tables, which are derived data.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges && self.families == other.families
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    fn claim(&mut self, name: &str, id: Name) -> Result<(), String> {
        if self.names.contains_key(name) {
            return Err(name.to_string());
        }
        self.names.insert(name.to_string(), id);
        Ok(())
    }

    /// Adds a vertex; fails with the offending name if it is already used.
    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId, String> {
        let id = self.vertices.len();
        self.claim(name, Name::Vertex(id))?;
        self.vertices.push(name.to_string());
        self.out_edges.push(Vec::new());
        self.in_edges.push(Vec::new());
        self.out_families.push(Vec::new());
        self.in_families.push(Vec::new());
        Ok(VertexId(id))
    }

    pub fn add_edge(&mut self, name: &str, source: VertexId, range: VertexId) -> Result<EdgeRef, String> {
        let id = self.edges.len();
        self.claim(name, Name::Edge(id))?;
        self.edges.push(Arrow { name: name.to_string(), source, range });
        self.out_edges[source.0].push(id);
        self.in_edges[range.0].push(id);
        Ok(EdgeRef::Plain(id))
    }

    pub fn add_family(&mut self, name: &str, source: VertexId, range: VertexId) -> Result<usize, String> {
        let id = self.families.len();
        self.claim(name, Name::Family(id))?;
        self.families.push(Arrow { name: name.to_string(), source, range });
        self.out_families[source.0].push(id);
        self.in_families[range.0].push(id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn family_count(&self) -> usize {
        self.families.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn plain_edges(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        (0..self.edges.len()).map(EdgeRef::Plain)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, GraphError> {
        match self.names.get(name) {
            Some(Name::Vertex(i)) => Ok(VertexId(*i)),
            _ => Err(GraphError::UnknownVertex(name.to_string())),
        }
    }

    /// Looks up a declared edge by name, or `g[i]` for a family member.
    pub fn edge(&self, name: &str) -> Result<EdgeRef, GraphError> {
        if let Some(Name::Edge(i)) = self.names.get(name) {
            return Ok(EdgeRef::Plain(*i));
        }
        if let Some(open) = name.find('[') {
            if let Some(inner) = name[open + 1..].strip_suffix(']') {
                if let (Some(Name::Family(f)), Ok(i)) = (self.names.get(&name[..open]), inner.parse::<u32>()) {
                    return Ok(EdgeRef::Member(*f, i));
                }
            }
        }
        Err(GraphError::UnknownEdge(name.to_string()))
    }

    pub fn family(&self, name: &str) -> Option<usize> {
        match self.names.get(name) {
            Some(Name::Family(f)) => Some(*f),
            _ => None,
        }
    }

    pub fn family_name(&self, f: usize) -> &str {
        &self.families[f].name
    }

    pub fn family_source(&self, f: usize) -> VertexId {
        self.families[f].source
    }

    pub fn family_range(&self, f: usize) -> VertexId {
        self.families[f].range
    }

    pub fn edge_name(&self, e: EdgeRef) -> String {
        match e {
            EdgeRef::Plain(i) => self.edges[i].name.clone(),
            EdgeRef::Member(f, i) => format!("{}[{}]", self.families[f].name, i),
        }
    }

    pub fn source(&self, e: EdgeRef) -> VertexId {
        match e {
            EdgeRef::Plain(i) => self.edges[i].source,
            EdgeRef::Member(f, _) => self.families[f].source,
        }
    }

    pub fn range(&self, e: EdgeRef) -> VertexId {
        match e {
            EdgeRef::Plain(i) => self.edges[i].range,
            EdgeRef::Member(f, _) => self.families[f].range,
        }
    }

    /// Whether `e` names an edge of this graph.
    pub fn contains_edge(&self, e: EdgeRef) -> bool {
        match e {
            EdgeRef::Plain(i) => i < self.edges.len(),
            EdgeRef::Member(f, _) => f < self.families.len(),
        }
    }

    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeRef> + '_ {
        self.out_edges[v.0].iter().map(|&i| EdgeRef::Plain(i))
    }

    pub fn in_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeRef> + '_ {
        self.in_edges[v.0].iter().map(|&i| EdgeRef::Plain(i))
    }

    pub fn out_families(&self, v: VertexId) -> &[usize] {
        &self.out_families[v.0]
    }

    pub fn in_families(&self, v: VertexId) -> &[usize] {
        &self.in_families[v.0]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_edges[v.0].len()
    }

    /// Outgoing edges with family members `0..sample` standing in for each family.
    pub fn out_edges_sampled(&self, v: VertexId, sample: u32) -> Vec<EdgeRef> {
        let mut out: Vec<EdgeRef> = self.out_edges(v).collect();
        for &f in self.out_families(v) {
            out.extend((0..sample).map(|i| EdgeRef::Member(f, i)));
        }
        out
    }

    /// Incoming edges with family members `0..sample` standing in for each family.
    pub fn in_edges_sampled(&self, v: VertexId, sample: u32) -> Vec<EdgeRef> {
        let mut inc: Vec<EdgeRef> = self.in_edges(v).collect();
        for &f in self.in_families(v) {
            inc.extend((0..sample).map(|i| EdgeRef::Member(f, i)));
        }
        inc
    }

    /// Ranges of every outgoing edge and family, without repetition.
    pub fn successors(&self, v: VertexId) -> BTreeSet<VertexId> {
        let mut s: BTreeSet<VertexId> = self.out_edges[v.0].iter().map(|&i| self.edges[i].range).collect();
        s.extend(self.out_families[v.0].iter().map(|&f| self.families[f].range));
        s
    }

    pub fn classify(&self, v: VertexId) -> VertexClass {
        if !self.out_families[v.0].is_empty() {
            VertexClass::InfiniteEmitter
        } else if self.out_edges[v.0].is_empty() {
            VertexClass::Sink
        } else {
            VertexClass::Regular
        }
    }

    pub fn classify_vertex(&self, name: &str) -> Result<VertexClass, GraphError> {
        Ok(self.classify(self.vertex(name)?))
    }

    pub fn is_regular(&self, v: VertexId) -> bool {
        self.classify(v) == VertexClass::Regular
    }

    pub fn is_row_finite(&self) -> bool {
        self.families.is_empty()
    }

    /// Number of edges emitted by `v`, saturating at `usize::MAX` for infinite emitters.
    pub fn emission(&self, v: VertexId) -> usize {
        if self.out_families[v.0].is_empty() {
            self.out_edges[v.0].len()
        } else {
            usize::MAX
        }
    }

    pub fn vertex_names(&self, set: &BTreeSet<VertexId>) -> Vec<String> {
        set.iter().map(|&v| self.vertex_name(v).to_string()).collect()
    }

    pub fn vertex_set(&self, names: &[&str]) -> Result<BTreeSet<VertexId>, GraphError> {
        names.iter().map(|n| self.vertex(n)).collect()
    }

    /// Builds a path from edge names, checking that consecutive edges compose.
    pub fn path_from_names(&self, names: &[&str]) -> Result<Path, GraphError> {
        let edges = names.iter().map(|n| self.edge(n)).collect::<Result<Vec<_>, _>>()?;
        Path::from_edges(self, edges)
    }
}

/// A finite path: a vertex (length 0) or a composable edge sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    source: VertexId,
    range: VertexId,
    edges: Vec<EdgeRef>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Self {
        Path { source: v, range: v, edges: Vec::new() }
    }

    pub fn edge(g: &Graph, e: EdgeRef) -> Self {
        Path { source: g.source(e), range: g.range(e), edges: vec![e] }
    }

    pub fn from_edges(g: &Graph, edges: Vec<EdgeRef>) -> Result<Self, GraphError> {
        let first = *edges.first().ok_or_else(|| GraphError::NotAPath("empty edge list".into()))?;
        for e in &edges {
            if !g.contains_edge(*e) {
                return Err(GraphError::NotAPath(format!("{e:?} is not an edge")));
            }
        }
        for w in edges.windows(2) {
            if g.range(w[0]) != g.source(w[1]) {
                return Err(GraphError::NotAPath(format!("{} then {}", g.edge_name(w[0]), g.edge_name(w[1]))));
            }
        }
        let last = *edges.last().unwrap();
        Ok(Path { source: g.source(first), range: g.range(last), edges })
    }

    /// Trusted constructor for callers that have already checked composability.
    pub(crate) fn from_parts(source: VertexId, range: VertexId, edges: Vec<EdgeRef>) -> Self {
        Path { source, range, edges }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn edges(&self) -> &[EdgeRef] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn last_edge(&self) -> Option<EdgeRef> {
        self.edges.last().copied()
    }

    pub fn first_edge(&self) -> Option<EdgeRef> {
        self.edges.first().copied()
    }

    /// `self` followed by `other`; requires `self.range() == other.source()`.
    pub fn concat(&self, other: &Path) -> Path {
        debug_assert_eq!(self.range, other.source);
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Path { source: self.source, range: other.range, edges }
    }

    pub fn push(&mut self, g: &Graph, e: EdgeRef) {
        debug_assert_eq!(self.range, g.source(e));
        self.edges.push(e);
        self.range = g.range(e);
    }

    /// Prepends `e`; requires `r(e) == self.source()`.
    pub fn prepend(&self, g: &Graph, e: EdgeRef) -> Path {
        debug_assert_eq!(g.range(e), self.source);
        let mut edges = Vec::with_capacity(self.edges.len() + 1);
        edges.push(e);
        edges.extend_from_slice(&self.edges);
        Path { source: g.source(e), range: self.range, edges }
    }

    /// Drops the first edge.
    pub fn tail(&self, g: &Graph) -> Option<Path> {
        let first = self.first_edge()?;
        Some(Path { source: g.range(first), range: self.range, edges: self.edges[1..].to_vec() })
    }

    /// Drops the last edge.
    pub fn init(&self, g: &Graph) -> Option<Path> {
        let last = self.last_edge()?;
        Some(Path { source: self.source, range: g.source(last), edges: self.edges[..self.edges.len() - 1].to_vec() })
    }

    /// If `self` is a prefix of `other`, returns the remainder of `other`.
    pub fn strip_prefix_of(&self, other: &Path) -> Option<Path> {
        if self.source != other.source || !other.edges.starts_with(&self.edges) {
            return None;
        }
        Some(Path { source: self.range, range: other.range, edges: other.edges[self.edges.len()..].to_vec() })
    }

    /// Vertices visited, starting with the source.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        let mut out = vec![self.source];
        out.extend(self.edges.iter().map(|&e| g.range(e)));
        out
    }

    pub fn is_closed(&self) -> bool {
        !self.edges.is_empty() && self.source == self.range
    }

    pub fn display(&self, g: &Graph) -> String {
        if self.edges.is_empty() {
            g.vertex_name(self.source).to_string()
        } else {
            self.edges.iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>().join(" ")
        }
    }

    pub fn edge_names(&self, g: &Graph) -> Vec<String> {
        self.edges.iter().map(|&e| g.edge_name(e)).collect()
    }
}

/// All paths of length at most `max_len` ending at `target`, shortest first.
pub fn paths_ending_at(g: &Graph, target: VertexId, max_len: usize, sample: u32) -> Vec<Path> {
    let mut out = vec![Path::vertex(target)];
    let mut frontier = vec![Path::vertex(target)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for e in g.in_edges_sampled(p.source(), sample) {
                next.push(p.prepend(g, e));
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// All paths of length at most `max_len` starting at `start`, shortest first.
pub fn paths_starting_at(g: &Graph, start: VertexId, max_len: usize, sample: u32) -> Vec<Path> {
    let mut out = vec![Path::vertex(start)];
    let mut frontier = vec![Path::vertex(start)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for e in g.out_edges_sampled(p.range(), sample) {
                let mut q = p.clone();
                q.push(g, e);
                next.push(q);
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

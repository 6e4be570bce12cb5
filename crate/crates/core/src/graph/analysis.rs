use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::{EdgeRef, Graph, GraphError, Path, VertexClass, VertexId};

/// A cycle (no repeated vertices) given as a closed path from its base.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    pub path: Path,
}

impl Cycle {
    pub fn base(&self) -> VertexId {
        self.path.source()
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    pub fn vertex_set(&self, g: &Graph) -> BTreeSet<VertexId> {
        self.path.edges().iter().map(|&e| g.source(e)).collect()
    }

    /// An edge leaving the cycle, if any. An infinite family at a cycle vertex
    /// always provides one.
    pub fn exit(&self, g: &Graph) -> Option<EdgeRef> {
        for &e in self.path.edges() {
            let s = g.source(e);
            if let Some(&f) = g.out_families(s).first() {
                let member = EdgeRef::Member(f, 0);
                return Some(if member == e { EdgeRef::Member(f, 1) } else { member });
            }
            if let Some(other) = g.out_edges(s).find(|&x| x != e) {
                return Some(other);
            }
        }
        None
    }
}

/// Witness that a vertex is Laurent: its tree is the vertex set of `mu`
/// followed by the exitless cycle `cycle` based at `r(mu)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentWitness {
    pub mu: Path,
    pub cycle: Path,
}

impl LaurentWitness {
    pub fn cycle_base(&self) -> VertexId {
        self.cycle.source()
    }

    pub fn period(&self) -> usize {
        self.cycle.len()
    }
}

/// Graded-ideal data `(H, S)` with `S` a set of breaking vertices of `H`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AdmissiblePair {
    pub h: BTreeSet<VertexId>,
    pub s: BTreeSet<VertexId>,
}

impl AdmissiblePair {
    pub fn new(h: BTreeSet<VertexId>, s: BTreeSet<VertexId>) -> Self {
        AdmissiblePair { h, s }
    }

    pub fn trivial() -> Self {
        AdmissiblePair { h: BTreeSet::new(), s: BTreeSet::new() }
    }
}

/// The quotient graph `E \ (H, S)` together with the correspondence to `E`.
#[derive(Debug, Clone)]
pub struct QuotientGraph {
    pub graph: Graph,
    /// Image of each original vertex outside `H`.
    pub vertex_map: Vec<Option<VertexId>>,
    /// The primed copy `v'` of each `v` in `B_H \ S`.
    pub primed_vertex: Vec<Option<VertexId>>,
    pub edge_map: Vec<Option<EdgeRef>>,
    pub primed_edge: Vec<Option<EdgeRef>>,
    pub family_map: Vec<Option<usize>>,
    pub primed_family: Vec<Option<usize>>,
}

impl Graph {
    /// `T(v)`: every vertex reachable from `v`, including `v`.
    pub fn tree(&self, v: VertexId) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([v]);
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            for y in self.successors(x) {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn tree_of(&self, name: &str) -> Result<BTreeSet<VertexId>, GraphError> {
        Ok(self.tree(self.vertex(name)?))
    }

    /// `u >= v`: there is a path from `u` to `v`.
    pub fn reaches(&self, u: VertexId, v: VertexId) -> bool {
        self.tree(u).contains(&v)
    }

    /// Whether some closed path passes through `v`.
    pub fn on_closed_path(&self, v: VertexId) -> bool {
        self.successors(v).into_iter().any(|y| self.reaches(y, v))
    }

    pub fn is_line_point(&self, v: VertexId) -> bool {
        self.tree(v).into_iter().all(|x| self.emission(x) < 2 && !self.on_closed_path(x))
    }

    pub fn line_points(&self) -> BTreeSet<VertexId> {
        self.vertices().filter(|&v| self.is_line_point(v)).collect()
    }

    /// Follows the unique outgoing edge from `v` until a vertex repeats. The
    /// vertex is Laurent exactly when every step is forced, since the walk
    /// then covers the whole tree and closes into an exitless cycle.
    pub fn laurent_witness(&self, v: VertexId) -> Option<LaurentWitness> {
        let mut order = vec![v];
        let mut edges = Vec::new();
        let mut current = v;
        loop {
            if self.classify(current) != VertexClass::Regular || self.out_degree(current) != 1 {
                return None;
            }
            let e = self.out_edges(current).next().unwrap();
            edges.push(e);
            current = self.range(e);
            if let Some(pos) = order.iter().position(|&x| x == current) {
                let mu = if pos == 0 { Path::vertex(v) } else { Path::from_parts(v, current, edges[..pos].to_vec()) };
                let cycle = Path::from_parts(current, current, edges[pos..].to_vec());
                return Some(LaurentWitness { mu, cycle });
            }
            order.push(current);
        }
    }

    pub fn is_laurent_vertex(&self, v: VertexId) -> bool {
        self.laurent_witness(v).is_some()
    }

    pub fn laurent_vertices(&self) -> BTreeSet<VertexId> {
        self.vertices().filter(|&v| self.is_laurent_vertex(v)).collect()
    }

    /// Every simple cycle, one rotation each, based at its least vertex.
    /// Parallel edges give distinct cycles; a family contributes its member 0.
    pub fn simple_cycles(&self) -> Vec<Cycle> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for s in 0..n {
            let start = VertexId(s);
            let mut on_path = vec![false; n];
            let mut stack = Vec::new();
            self.cycle_dfs(start, start, &mut on_path, &mut stack, &mut out);
        }
        out
    }

    fn representative_out_edges(&self, v: VertexId) -> Vec<EdgeRef> {
        self.out_edges_sampled(v, 1)
    }

    fn cycle_dfs(
        &self,
        start: VertexId,
        at: VertexId,
        on_path: &mut Vec<bool>,
        stack: &mut Vec<EdgeRef>,
        out: &mut Vec<Cycle>,
    ) {
        on_path[at.0] = true;
        for e in self.representative_out_edges(at) {
            let r = self.range(e);
            if r == start {
                stack.push(e);
                out.push(Cycle { path: Path::from_parts(start, start, stack.clone()) });
                stack.pop();
            } else if r > start && !on_path[r.0] {
                stack.push(e);
                self.cycle_dfs(start, r, on_path, stack, out);
                stack.pop();
            }
        }
        on_path[at.0] = false;
    }

    /// Exitless cycles, one per vertex set, based at the least vertex.
    pub fn cycles_without_exits(&self) -> Vec<Cycle> {
        let mut out: Vec<Cycle> = Vec::new();
        let mut covered = BTreeSet::new();
        for v in self.vertices() {
            if covered.contains(&v) {
                continue;
            }
            // v lies on an exitless cycle iff the forced walk from v returns to v.
            let Some(w) = self.laurent_witness(v) else { continue };
            if !w.mu.is_vertex() {
                continue;
            }
            let verts = w.cycle.vertices(self);
            covered.extend(verts.iter().copied());
            let base = *verts.iter().min().unwrap();
            out.push(Cycle { path: rotate_to(self, &w.cycle, base) });
        }
        out.sort();
        out
    }

    pub fn find_cycle(&self) -> Option<Cycle> {
        self.simple_cycles().into_iter().next()
    }

    pub fn is_acyclic(&self) -> bool {
        self.vertices().all(|v| !self.on_closed_path(v))
    }

    /// Condition (L): every cycle has an exit.
    pub fn condition_l(&self) -> bool {
        self.cycles_without_exits().is_empty()
    }

    /// Condition (K): every vertex on a closed path bases a second, different
    /// closed path. Decided by counting closed paths returning to `v` for the
    /// first time, with lengths capped at twice the vertex count.
    pub fn condition_k(&self) -> bool {
        self.condition_k_failure().is_none()
    }

    /// A vertex witnessing the failure of Condition (K), with its unique closed path.
    pub fn condition_k_failure(&self) -> Option<(VertexId, Path)> {
        let cap = 2 * self.vertex_count();
        for v in self.vertices() {
            if !self.on_closed_path(v) {
                continue;
            }
            let paths = self.return_paths(v, cap, 2);
            if paths.len() < 2 {
                return Some((v, paths.into_iter().next().expect("vertex lies on a closed path")));
            }
        }
        None
    }

    /// Closed paths based at `v` that do not pass through `v` in between,
    /// up to `cap` edges, stopping after `limit` are found. Each family
    /// contributes two members so that it always yields distinct paths.
    pub fn return_paths(&self, v: VertexId, cap: usize, limit: usize) -> Vec<Path> {
        let reaches_v: Vec<bool> = self.vertices().map(|x| self.reaches(x, v)).collect();
        let mut found = Vec::new();
        let mut stack = Vec::new();
        self.return_dfs(v, v, cap, limit, &reaches_v, &mut stack, &mut found);
        found
    }

    #[allow(clippy::too_many_arguments)]
    fn return_dfs(
        &self,
        base: VertexId,
        at: VertexId,
        cap: usize,
        limit: usize,
        reaches_base: &[bool],
        stack: &mut Vec<EdgeRef>,
        found: &mut Vec<Path>,
    ) {
        if stack.len() >= cap {
            return;
        }
        for e in self.out_edges_sampled(at, 2) {
            if found.len() >= limit {
                return;
            }
            let r = self.range(e);
            stack.push(e);
            if r == base {
                found.push(Path::from_parts(base, base, stack.clone()));
            } else if reaches_base[r.0] {
                self.return_dfs(base, r, cap, limit, reaches_base, stack, found);
            }
            stack.pop();
        }
    }

    pub fn is_hereditary(&self, h: &BTreeSet<VertexId>) -> bool {
        h.iter().all(|&v| self.successors(v).is_subset(h))
    }

    pub fn is_saturated(&self, h: &BTreeSet<VertexId>) -> bool {
        self.vertices().all(|v| h.contains(&v) || !self.is_regular(v) || !self.successors(v).is_subset(h))
    }

    pub fn is_hereditary_saturated(&self, h: &BTreeSet<VertexId>) -> bool {
        self.is_hereditary(h) && self.is_saturated(h)
    }

    /// Least hereditary saturated superset of `x`.
    pub fn hereditary_saturated_closure(&self, x: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
        let mut h = x.clone();
        loop {
            let before = h.len();
            let hereditary: Vec<VertexId> = h.iter().flat_map(|&v| self.successors(v)).collect();
            h.extend(hereditary);
            let saturated: Vec<VertexId> = self
                .vertices()
                .filter(|v| !h.contains(v) && self.is_regular(*v) && self.successors(*v).is_subset(&h))
                .collect();
            h.extend(saturated);
            if h.len() == before {
                return h;
            }
        }
    }

    /// `B_H`: infinite emitters outside `H` sending finitely many, but at
    /// least one, edges outside `H`.
    pub fn breaking_vertices(&self, h: &BTreeSet<VertexId>) -> Result<BTreeSet<VertexId>, GraphError> {
        if !self.is_hereditary_saturated(h) {
            return Err(GraphError::NotHereditarySaturated);
        }
        Ok(self
            .vertices()
            .filter(|v| !h.contains(v) && self.classify(*v) == VertexClass::InfiniteEmitter)
            .filter(|&v| {
                let family_out = self.out_families(v).iter().any(|&f| !h.contains(&self.family_range(f)));
                let plain_out = self.out_edges(v).filter(|&e| !h.contains(&self.range(e))).count();
                !family_out && plain_out > 0
            })
            .collect())
    }

    pub fn check_admissible(&self, pair: &AdmissiblePair) -> Result<BTreeSet<VertexId>, GraphError> {
        let bh = self
            .breaking_vertices(&pair.h)
            .map_err(|_| GraphError::Inadmissible("H is not hereditary and saturated".into()))?;
        if !pair.s.is_subset(&bh) {
            return Err(GraphError::Inadmissible("S is not contained in B_H".into()));
        }
        Ok(bh)
    }

    /// `E \ (H, S)`: drops `H` and every edge into it, and adds a primed sink
    /// `v'` with primed copies of the edges into `v`, for each `v` in `B_H \ S`.
    pub fn quotient_graph(&self, pair: &AdmissiblePair) -> Result<QuotientGraph, GraphError> {
        let bh = self.check_admissible(pair)?;
        let primed: BTreeSet<VertexId> = bh.difference(&pair.s).copied().collect();
        let mut q = Graph::new();
        let mut vertex_map = vec![None; self.vertex_count()];
        let mut primed_vertex = vec![None; self.vertex_count()];
        let fresh = |q: &Graph, base: &str| {
            let mut name = format!("{base}'");
            while self.names.contains_key(&name) || q.names.contains_key(&name) {
                name.push('\'');
            }
            name
        };
        for v in self.vertices().filter(|v| !pair.h.contains(v)) {
            vertex_map[v.0] = Some(q.add_vertex(self.vertex_name(v)).expect("names are unique"));
        }
        for &v in &primed {
            let name = fresh(&q, self.vertex_name(v));
            primed_vertex[v.0] = Some(q.add_vertex(&name).expect("fresh name"));
        }
        let mut edge_map = vec![None; self.edge_count()];
        let mut primed_edge = vec![None; self.edge_count()];
        for (i, arrow) in self.edges.iter().enumerate() {
            if let Some(r) = vertex_map[arrow.range.0] {
                let s = vertex_map[arrow.source.0].expect("hereditary H keeps sources of kept edges");
                edge_map[i] = Some(q.add_edge(&arrow.name, s, r).expect("names are unique"));
            }
        }
        for (i, arrow) in self.edges.iter().enumerate() {
            if let Some(r) = primed_vertex[arrow.range.0] {
                let s = vertex_map[arrow.source.0].expect("source outside H");
                let name = fresh(&q, &arrow.name);
                primed_edge[i] = Some(q.add_edge(&name, s, r).expect("fresh name"));
            }
        }
        let mut family_map = vec![None; self.family_count()];
        let mut primed_family = vec![None; self.family_count()];
        for (i, arrow) in self.families.iter().enumerate() {
            if let Some(r) = vertex_map[arrow.range.0] {
                let s = vertex_map[arrow.source.0].expect("source outside H");
                family_map[i] = Some(q.add_family(&arrow.name, s, r).expect("names are unique"));
            }
        }
        for (i, arrow) in self.families.iter().enumerate() {
            if let Some(r) = primed_vertex[arrow.range.0] {
                let s = vertex_map[arrow.source.0].expect("source outside H");
                let name = fresh(&q, &arrow.name);
                primed_family[i] = Some(q.add_family(&name, s, r).expect("fresh name"));
            }
        }
        Ok(QuotientGraph { graph: q, vertex_map, primed_vertex, edge_map, primed_edge, family_map, primed_family })
    }

    /// Every two vertices of `d` have a common successor inside `d`.
    pub fn downward_directed(&self, d: &BTreeSet<VertexId>) -> bool {
        let trees: Vec<(VertexId, BTreeSet<VertexId>)> = d.iter().map(|&v| (v, self.tree(v))).collect();
        trees.iter().all(|(_, tu)| trees.iter().all(|(_, tv)| d.iter().any(|w| tu.contains(w) && tv.contains(w))))
    }
}

fn rotate_to(g: &Graph, cycle: &Path, base: VertexId) -> Path {
    let edges = cycle.edges();
    let k = edges.iter().position(|&e| g.source(e) == base).expect("base lies on the cycle");
    let mut rotated = edges[k..].to_vec();
    rotated.extend_from_slice(&edges[..k]);
    Path::from_parts(base, base, rotated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn r1() -> Graph {
        parse_graph("vertex v\nedge e v v").unwrap()
    }
    fn toeplitz() -> Graph {
        parse_graph("vertex v\nvertex w\nedge e v v\nedge f v w").unwrap()
    }
    fn a4() -> Graph {
        parse_graph("vertex v1\nvertex v2\nvertex v3\nvertex v4\nedge e1 v1 v2\nedge e2 v2 v3\nedge e3 v3 v4").unwrap()
    }
    fn comet() -> Graph {
        parse_graph("vertex u\nvertex v\nedge g u v\nedge c v v").unwrap()
    }
    fn ie_loop() -> Graph {
        parse_graph("vertex u\nvertex v\ninfinite-family g u v\nedge l u u").unwrap()
    }
    fn set(g: &Graph, names: &[&str]) -> BTreeSet<VertexId> {
        g.vertex_set(names).unwrap()
    }

    #[test]
    fn trees() {
        let t = toeplitz();
        assert_eq!(t.tree_of("v").unwrap(), set(&t, &["v", "w"]));
        assert_eq!(t.tree_of("w").unwrap(), set(&t, &["w"]));
        let r = r1();
        assert_eq!(r.tree_of("v").unwrap(), set(&r, &["v"]));
        assert!(matches!(t.tree_of("z"), Err(GraphError::UnknownVertex(_))));
    }

    #[test]
    fn line_points() {
        let t = toeplitz();
        assert!(t.is_line_point(t.vertex("w").unwrap()));
        assert!(!t.is_line_point(t.vertex("v").unwrap()));
        let a = a4();
        assert!(a.is_line_point(a.vertex("v1").unwrap()));
        let ie = parse_graph("vertex u\nvertex v\ninfinite-family g u v").unwrap();
        assert!(!ie.is_line_point(ie.vertex("u").unwrap()));
        assert!(ie.is_line_point(ie.vertex("v").unwrap()));
    }

    #[test]
    fn laurent_vertices() {
        let r = r1();
        let w = r.laurent_witness(r.vertex("v").unwrap()).unwrap();
        assert!(w.mu.is_vertex());
        assert_eq!(w.cycle.display(&r), "e");
        let t = toeplitz();
        assert!(!t.is_laurent_vertex(t.vertex("v").unwrap()));
        assert!(!t.is_laurent_vertex(t.vertex("w").unwrap()));
        let c = comet();
        let w = c.laurent_witness(c.vertex("u").unwrap()).unwrap();
        assert_eq!(w.mu.display(&c), "g");
        assert_eq!(w.cycle.display(&c), "c");
    }

    #[test]
    fn exitless_cycles() {
        let r = r1();
        let cycles = r.cycles_without_exits();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].path.display(&r), "e");
        assert!(toeplitz().cycles_without_exits().is_empty());
        assert!(a4().cycles_without_exits().is_empty());
        let two = parse_graph("vertex x\nvertex y\nedge b y x\nedge a x y").unwrap();
        let cycles = two.cycles_without_exits();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].base(), two.vertex("x").unwrap());
        assert_eq!(cycles[0].path.display(&two), "a b");
    }

    #[test]
    fn conditions() {
        let t = toeplitz();
        assert!(t.condition_l());
        assert!(!t.condition_k());
        let r = r1();
        assert!(!r.condition_l());
        assert!(!r.condition_k());
        let a = a4();
        assert!(a.condition_l() && a.condition_k());
        let r2 = parse_graph("vertex v\nedge a v v\nedge b v v").unwrap();
        assert!(r2.condition_k());
    }

    #[test]
    fn closure() {
        let t = toeplitz();
        assert_eq!(t.hereditary_saturated_closure(&set(&t, &["w"])), set(&t, &["w"]));
        let a = a4();
        assert_eq!(a.hereditary_saturated_closure(&set(&a, &["v4"])), set(&a, &["v1", "v2", "v3", "v4"]));
        assert!(a.hereditary_saturated_closure(&BTreeSet::new()).is_empty());
    }

    #[test]
    fn breaking() {
        let g = ie_loop();
        assert_eq!(g.breaking_vertices(&set(&g, &["v"])).unwrap(), set(&g, &["u"]));
        let t = toeplitz();
        assert!(t.breaking_vertices(&set(&t, &["w"])).unwrap().is_empty());
        let ie = parse_graph("vertex u\nvertex v\ninfinite-family g u v").unwrap();
        assert!(ie.breaking_vertices(&BTreeSet::new()).unwrap().is_empty());
        assert_eq!(t.breaking_vertices(&set(&t, &["v"])), Err(GraphError::NotHereditarySaturated));
    }

    #[test]
    fn quotients() {
        let t = toeplitz();
        let q = t.quotient_graph(&AdmissiblePair::new(set(&t, &["w"]), BTreeSet::new())).unwrap();
        assert_eq!(q.graph, r1());
        assert_eq!(t.quotient_graph(&AdmissiblePair::trivial()).unwrap().graph, t);

        let g = ie_loop();
        let q = g.quotient_graph(&AdmissiblePair::new(set(&g, &["v"]), set(&g, &["u"]))).unwrap();
        assert_eq!(q.graph.to_string(), "vertex u\nedge l u u\n");
        let q = g.quotient_graph(&AdmissiblePair::new(set(&g, &["v"]), BTreeSet::new())).unwrap();
        assert_eq!(q.graph.to_string(), "vertex u\nvertex u'\nedge l u u\nedge l' u u'\n");

        let bad = AdmissiblePair::new(set(&t, &["v"]), BTreeSet::new());
        assert!(matches!(t.quotient_graph(&bad), Err(GraphError::Inadmissible(_))));
        let bad = AdmissiblePair::new(set(&t, &["w"]), set(&t, &["v"]));
        assert!(matches!(t.quotient_graph(&bad), Err(GraphError::Inadmissible(_))));
    }

    #[test]
    fn directedness() {
        let t = toeplitz();
        assert!(t.downward_directed(&set(&t, &["v", "w"])));
        let two = parse_graph("vertex a\nvertex b").unwrap();
        assert!(!two.downward_directed(&set(&two, &["a", "b"])));
        assert!(t.downward_directed(&set(&t, &["v"])));
    }

    #[test]
    fn simple_cycles_of_rose() {
        let r2 = parse_graph("vertex v\nedge a v v\nedge b v v").unwrap();
        assert_eq!(r2.simple_cycles().len(), 2);
        let two = parse_graph("vertex x\nvertex y\nedge a x y\nedge b y x\nedge c y x").unwrap();
        assert_eq!(two.simple_cycles().len(), 2);
    }
}

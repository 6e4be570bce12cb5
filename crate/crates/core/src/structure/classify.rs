use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::path_names;
use crate::graph::{EdgeRef, Graph, Path, VertexClass, VertexId};

/// Witness attached to a negative verdict; paths are edge-name arrays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Cycle {
        cycle: Vec<String>,
    },
    /// The only closed path at `vertex` that returns to it once.
    UniqueClosedPath {
        vertex: String,
        path: Vec<String>,
    },
    InfiniteEmitter {
        vertex: String,
    },
    /// `prefix` followed by `cycle` repeated forever never meets a line point
    /// or a Laurent vertex.
    AvoidingPath {
        vertex: String,
        prefix: Vec<String>,
        cycle: Vec<String>,
    },
    CycleExit {
        cycle: Vec<String>,
        exit: String,
    },
    OutsideClosure {
        vertex: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    /// For a positive fp verdict: every path of at least this length ends at
    /// a line point or a Laurent vertex.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
}

impl Verdict {
    fn yes() -> Self {
        Verdict { holds: true, certificate: None, bound: None }
    }

    fn no(certificate: Certificate) -> Self {
        Verdict { holds: false, certificate: Some(certificate), bound: None }
    }
}

fn closed(g: &Graph, names: &[String]) -> Option<Path> {
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let p = g.path_from_names(&refs).ok()?;
    (!p.is_vertex() && p.is_closed()).then_some(p)
}

fn good_set(g: &Graph) -> BTreeSet<VertexId> {
    g.vertices().filter(|&v| g.is_line_point(v) || g.is_laurent_vertex(v)).collect()
}

impl Certificate {
    /// Re-checks the witness against the graph from scratch.
    pub fn verify(&self, g: &Graph) -> bool {
        match self {
            Certificate::Cycle { cycle } => closed(g, cycle).is_some(),
            Certificate::UniqueClosedPath { vertex, path } => {
                let (Ok(v), Some(p)) = (g.vertex(vertex), closed(g, path)) else { return false };
                p.source() == v && g.return_paths(v, 2 * g.vertex_count(), 2).len() == 1
            }
            Certificate::InfiniteEmitter { vertex } => {
                g.vertex(vertex).is_ok_and(|v| g.classify(v) == VertexClass::InfiniteEmitter)
            }
            Certificate::AvoidingPath { vertex, prefix, cycle } => {
                let Ok(v) = g.vertex(vertex) else { return false };
                let Some(c) = closed(g, cycle) else { return false };
                let refs: Vec<&str> = prefix.iter().map(String::as_str).collect();
                let mu = match refs.is_empty() {
                    true => Path::vertex(v),
                    false => match g.path_from_names(&refs) {
                        Ok(p) => p,
                        Err(_) => return false,
                    },
                };
                if mu.source() != v || mu.range() != c.source() {
                    return false;
                }
                let good = good_set(g);
                mu.vertices(g).iter().chain(c.vertices(g).iter()).all(|x| !good.contains(x))
            }
            Certificate::CycleExit { cycle, exit } => {
                let (Some(c), Ok(x)) = (closed(g, cycle), g.edge(exit)) else { return false };
                !c.edges().contains(&x) && c.vertices(g).contains(&g.source(x))
            }
            Certificate::OutsideClosure { vertex } => {
                g.vertex(vertex).is_ok_and(|v| !g.hereditary_saturated_closure(&good_set(g)).contains(&v))
            }
        }
    }
}

/// Every one-sided ideal is graded iff the graph is acyclic.
pub fn every_one_sided_ideal_graded(g: &Graph) -> Verdict {
    match g.find_cycle() {
        None => Verdict::yes(),
        Some(c) => Verdict::no(Certificate::Cycle { cycle: path_names(g, &c.path) }),
    }
}

/// Every two-sided ideal is graded iff Condition (K) holds.
pub fn every_two_sided_ideal_graded(g: &Graph) -> Verdict {
    match g.condition_k_failure() {
        None => Verdict::yes(),
        Some((v, p)) => {
            Verdict::no(Certificate::UniqueClosedPath { vertex: g.vertex_name(v).to_string(), path: path_names(g, &p) })
        }
    }
}

fn first_infinite_emitter(g: &Graph) -> Option<VertexId> {
    g.vertices().find(|&v| g.classify(v) == VertexClass::InfiniteEmitter)
}

/// Shortest path from `from` to `to` using only vertices in `allowed`, with
/// at least one edge.
fn bfs_path(g: &Graph, from: VertexId, to: VertexId, allowed: &BTreeSet<VertexId>) -> Option<Vec<EdgeRef>> {
    let mut parent: BTreeMap<VertexId, (VertexId, EdgeRef)> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for e in g.out_edges(from).filter(|e| allowed.contains(&g.range(*e))) {
        let r = g.range(e);
        if r == to {
            return Some(vec![e]);
        }
        if let std::collections::btree_map::Entry::Vacant(slot) = parent.entry(r) {
            slot.insert((from, e));
            queue.push_back(r);
        }
    }
    while let Some(x) = queue.pop_front() {
        for e in g.out_edges(x).filter(|e| allowed.contains(&g.range(*e))) {
            let r = g.range(e);
            if r == to {
                let mut edges = vec![e];
                let mut at = x;
                while at != from {
                    let (p, pe) = parent[&at];
                    edges.push(pe);
                    at = p;
                }
                edges.reverse();
                return Some(edges);
            }
            if r != from && !parent.contains_key(&r) {
                parent.insert(r, (x, e));
                queue.push_back(r);
            }
        }
    }
    None
}

/// Every graded-simple module is finitely presented iff the graph is
/// row-finite and from every vertex all long enough paths end at a line point
/// or a Laurent vertex. Decided on the vertices outside that set: the
/// condition fails exactly when some path can stay outside forever, which in
/// a finite graph means reaching a cycle there.
pub fn all_graded_simples_fp(g: &Graph) -> Verdict {
    if let Some(v) = first_infinite_emitter(g) {
        return Verdict::no(Certificate::InfiniteEmitter { vertex: g.vertex_name(v).to_string() });
    }
    let good = good_set(g);
    let outside: BTreeSet<VertexId> = g.vertices().filter(|v| !good.contains(v)).collect();
    let looping: Vec<VertexId> = outside.iter().copied().filter(|&x| bfs_path(g, x, x, &outside).is_some()).collect();
    for &v in &outside {
        let target = looping.iter().copied().find(|&x| x == v || bfs_path(g, v, x, &outside).is_some());
        if let Some(x) = target {
            let prefix = if x == v { Vec::new() } else { bfs_path(g, v, x, &outside).unwrap() };
            let cycle = bfs_path(g, x, x, &outside).unwrap();
            let names = |edges: &[EdgeRef]| edges.iter().map(|&e| g.edge_name(e)).collect::<Vec<String>>();
            return Verdict::no(Certificate::AvoidingPath {
                vertex: g.vertex_name(v).to_string(),
                prefix: names(&prefix),
                cycle: names(&cycle),
            });
        }
    }
    // Longest stay outside the good set, computed bottom-up over the acyclic remainder.
    let mut stay: BTreeMap<VertexId, usize> = good.iter().map(|&v| (v, 0)).collect();
    while stay.len() < g.vertex_count() {
        for &v in &outside {
            if stay.contains_key(&v) {
                continue;
            }
            let succ = g.successors(v);
            if succ.iter().all(|s| stay.contains_key(s)) {
                let longest = succ.iter().map(|s| stay[s]).max().unwrap_or(0);
                stay.insert(v, longest + 1);
            }
        }
    }
    Verdict { holds: true, certificate: None, bound: Some(stay.values().copied().max().unwrap_or(0)) }
}

/// Graded self-injectivity for a finite graph: row-finite and no cycle has an exit.
pub fn graded_self_injective(g: &Graph) -> Verdict {
    if let Some(v) = first_infinite_emitter(g) {
        return Verdict::no(Certificate::InfiniteEmitter { vertex: g.vertex_name(v).to_string() });
    }
    for c in g.simple_cycles() {
        if let Some(x) = c.exit(g) {
            return Verdict::no(Certificate::CycleExit { cycle: path_names(g, &c.path), exit: g.edge_name(x) });
        }
    }
    Verdict::yes()
}

/// The same property through strongly connected components: every component
/// carrying an edge must be a single cycle (as many internal edges as
/// vertices) that no edge leaves.
pub fn self_injective_by_components(g: &Graph) -> bool {
    if first_infinite_emitter(g).is_some() {
        return false;
    }
    let trees: Vec<BTreeSet<VertexId>> = g.vertices().map(|v| g.tree(v)).collect();
    let mut seen = BTreeSet::new();
    for v in g.vertices() {
        if !seen.insert(v) {
            continue;
        }
        let component: BTreeSet<VertexId> = trees[v.0].iter().copied().filter(|&w| trees[w.0].contains(&v)).collect();
        seen.extend(component.iter().copied());
        let edges: Vec<EdgeRef> = component.iter().flat_map(|&x| g.out_edges(x)).collect();
        let internal = edges.iter().filter(|&&e| component.contains(&g.range(e))).count();
        if internal == 0 {
            continue;
        }
        if internal != component.len() || internal != edges.len() {
            return false;
        }
    }
    true
}

/// Categorically noetherian iff the hereditary saturated closure of the line
/// points and Laurent vertices is every vertex, i.e. `L` is its graded socle.
pub fn categorically_noetherian(g: &Graph) -> Verdict {
    let closure = g.hereditary_saturated_closure(&good_set(g));
    match g.vertices().find(|v| !closure.contains(v)) {
        None => Verdict::yes(),
        Some(v) => Verdict::no(Certificate::OutsideClosure { vertex: g.vertex_name(v).to_string() }),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub every_one_sided_ideal_graded: Verdict,
    pub every_two_sided_ideal_graded: Verdict,
    pub all_graded_simples_fp: Verdict,
    pub graded_self_injective: Verdict,
    pub categorically_noetherian: Verdict,
}

impl ClassificationReport {
    pub fn verdicts(&self) -> [(&'static str, &Verdict); 5] {
        [
            ("every_one_sided_ideal_graded", &self.every_one_sided_ideal_graded),
            ("every_two_sided_ideal_graded", &self.every_two_sided_ideal_graded),
            ("all_graded_simples_fp", &self.all_graded_simples_fp),
            ("graded_self_injective", &self.graded_self_injective),
            ("categorically_noetherian", &self.categorically_noetherian),
        ]
    }
}

pub fn classify(g: &Graph) -> ClassificationReport {
    ClassificationReport {
        every_one_sided_ideal_graded: every_one_sided_ideal_graded(g),
        every_two_sided_ideal_graded: every_two_sided_ideal_graded(g),
        all_graded_simples_fp: all_graded_simples_fp(g),
        graded_self_injective: graded_self_injective(g),
        categorically_noetherian: categorically_noetherian(g),
    }
}

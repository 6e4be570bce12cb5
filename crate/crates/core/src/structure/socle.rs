use std::collections::BTreeSet;

use serde::Serialize;

use super::path_names;
use crate::branching::DEFAULT_FAMILY_SAMPLE;
use crate::graph::{paths_ending_at, Cycle, Graph, Path, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BlockBase {
    /// The field of coefficients.
    Field,
    /// `K[x^t, x^-t]`.
    Laurent { t: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "size", rename_all = "kebab-case")]
pub enum IndexSet {
    Finite(usize),
    CountablyInfinite,
}

/// `M_Λ(A)(δ)` with `δ` the multiset of index path lengths. For an infinite
/// index set only the shifts of paths up to `bound` edges are listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixBlock {
    pub base: BlockBase,
    pub index: IndexSet,
    pub shifts: Vec<i64>,
    pub incomplete: bool,
    pub bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinePointClass {
    /// The sink every member's tree runs into.
    pub representative: VertexId,
    pub members: BTreeSet<VertexId>,
    pub block: MatrixBlock,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleBlock {
    pub cycle: Cycle,
    pub block: MatrixBlock,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocleDescriptor {
    pub line_point_classes: Vec<LinePointClass>,
    pub cycle_blocks: Vec<CycleBlock>,
    /// Line points and Laurent vertices.
    pub generating_vertices: BTreeSet<VertexId>,
}

/// Deterministic index order: by length, then by edge names.
fn sort_paths(g: &Graph, paths: &mut [Path]) {
    paths.sort_by_cached_key(|p| (p.len(), p.edge_names(g), p.source()));
}

/// Paths indexing the block at `target`: all paths ending there, or, for an
/// exitless cycle based at `target`, those not using every edge of the cycle.
/// The flag is set when the set is infinite, in which case only paths of at
/// most `bound` edges are returned.
pub(crate) fn block_index_paths(g: &Graph, target: VertexId, cycle: Option<&Path>, bound: usize) -> (Vec<Path>, bool) {
    let on_cycle: BTreeSet<VertexId> = cycle.map(|c| c.vertices(g).into_iter().collect()).unwrap_or_default();
    let ancestors: BTreeSet<VertexId> = g.vertices().filter(|&x| g.reaches(x, target)).collect();
    let looping = ancestors.iter().any(|&x| !on_cycle.contains(&x) && g.on_closed_path(x));
    let fed_by_family = (0..g.family_count()).any(|f| ancestors.contains(&g.family_range(f)));
    let infinite = looping || fed_by_family;
    let (max_len, sample) = if infinite { (bound, DEFAULT_FAMILY_SAMPLE) } else { (g.vertex_count(), 1) };
    let mut paths: Vec<Path> = paths_ending_at(g, target, max_len, sample)
        .into_iter()
        .filter(|p| match cycle {
            Some(c) => !c.edges().iter().all(|e| p.edges().contains(e)),
            None => true,
        })
        .collect();
    sort_paths(g, &mut paths);
    (paths, infinite)
}

fn block(base: BlockBase, paths: &[Path], infinite: bool, bound: usize) -> MatrixBlock {
    let shifts = paths.iter().map(|p| p.len() as i64).collect();
    let index = if infinite { IndexSet::CountablyInfinite } else { IndexSet::Finite(paths.len()) };
    MatrixBlock { base, index, shifts, incomplete: infinite, bound }
}

pub fn is_minimal_graded_left_ideal_vertex(g: &Graph, v: VertexId) -> bool {
    g.is_line_point(v) || g.is_laurent_vertex(v)
}

/// Block decomposition of the graded socle. Line points are grouped by the
/// sink their trees end in; each exitless cycle gives a Laurent block.
pub fn graded_socle(g: &Graph, bound: usize) -> SocleDescriptor {
    let line_points = g.line_points();
    let mut line_point_classes = Vec::new();
    for w in g.vertices().filter(|&w| g.out_degree(w) == 0 && g.out_families(w).is_empty()) {
        let members: BTreeSet<VertexId> = line_points.iter().copied().filter(|&u| g.reaches(u, w)).collect();
        let (paths, infinite) = block_index_paths(g, w, None, bound);
        line_point_classes.push(LinePointClass {
            representative: w,
            members,
            block: block(BlockBase::Field, &paths, infinite, bound),
        });
    }
    let mut cycle_blocks = Vec::new();
    for cycle in g.cycles_without_exits() {
        let (paths, infinite) = block_index_paths(g, cycle.base(), Some(&cycle.path), bound);
        let base = BlockBase::Laurent { t: cycle.len() };
        cycle_blocks.push(CycleBlock { block: block(base, &paths, infinite, bound), cycle });
    }
    let generating_vertices = g.vertices().filter(|&v| is_minimal_graded_left_ideal_vertex(g, v)).collect();
    SocleDescriptor { line_point_classes, cycle_blocks, generating_vertices }
}

#[derive(Debug, Clone, Serialize)]
pub struct LinePointReport {
    pub representative: String,
    pub members: Vec<String>,
    pub block: MatrixBlock,
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleReport {
    pub cycle: Vec<String>,
    pub base: String,
    pub block: MatrixBlock,
}

/// The descriptor with vertices and cycles by name.
#[derive(Debug, Clone, Serialize)]
pub struct SocleReport {
    pub line_point_classes: Vec<LinePointReport>,
    pub cycle_blocks: Vec<CycleReport>,
    pub generating_vertices: Vec<String>,
}

impl SocleDescriptor {
    pub fn report(&self, g: &Graph) -> SocleReport {
        SocleReport {
            line_point_classes: self
                .line_point_classes
                .iter()
                .map(|c| LinePointReport {
                    representative: g.vertex_name(c.representative).to_string(),
                    members: g.vertex_names(&c.members),
                    block: c.block.clone(),
                })
                .collect(),
            cycle_blocks: self
                .cycle_blocks
                .iter()
                .map(|c| CycleReport {
                    cycle: path_names(g, &c.cycle.path),
                    base: g.vertex_name(c.cycle.base()).to_string(),
                    block: c.block.clone(),
                })
                .collect(),
            generating_vertices: g.vertex_names(&self.generating_vertices),
        }
    }

    pub fn blocks(&self) -> impl Iterator<Item = &MatrixBlock> {
        self.line_point_classes.iter().map(|c| &c.block).chain(self.cycle_blocks.iter().map(|c| &c.block))
    }
}

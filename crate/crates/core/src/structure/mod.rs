//! Graded socle, graded ideals and the classification predicates.

mod classify;
mod ideals;
mod socle;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::graph::{AdmissiblePair, Graph, GraphError, Path};

pub use classify::{
    all_graded_simples_fp, categorically_noetherian, classify, every_one_sided_ideal_graded,
    every_two_sided_ideal_graded, graded_self_injective, self_injective_by_components, Certificate,
    ClassificationReport, Verdict,
};
pub use ideals::{
    graded_prime_ideals, hereditary_saturated_sets, make_vh, project_to_quotient, PrimeIdeal, PrimeKind,
    QuotientProjection, MAX_LATTICE_VERTICES,
};
pub(crate) use socle::block_index_paths;
pub use socle::{
    graded_socle, is_minimal_graded_left_ideal_vertex, BlockBase, CycleBlock, IndexSet, LinePointClass, MatrixBlock,
    SocleDescriptor, SocleReport,
};

#[derive(Debug, Error)]
pub enum StructureError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("`{0}` is not a breaking vertex of H")]
    NotBreaking(String),
    #[error("graph has {vertices} vertices; lattice enumeration is limited to {limit}")]
    TooLarge { vertices: usize, limit: usize },
}

/// `(H, S)` by vertex names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairNames {
    pub h: Vec<String>,
    pub s: Vec<String>,
}

impl PairNames {
    pub fn new(g: &Graph, pair: &AdmissiblePair) -> Self {
        PairNames { h: g.vertex_names(&pair.h), s: g.vertex_names(&pair.s) }
    }
}

pub(crate) fn path_names(g: &Graph, p: &Path) -> Vec<String> {
    p.edge_names(g)
}

//! Symbolic computation in Leavitt path algebras `L_Q(E)` of finite graphs.
//!
//! * [`graph`]: graphs, infinite-emitter families and the graph-theoretic
//!   predicates (line points, Laurent vertices, conditions (L) and (K),
//!   hereditary saturated closures, quotient graphs).
//! * [`algebra`]: exact arithmetic on elements `sum k αβ*` with a confluent
//!   normal form, grading, involution, corner isomorphisms and von Neumann
//!   regularity witnesses.
//! * [`branching`]: graded algebraic branching systems and the modules they
//!   induce, truncated to explicit depths.
//! * [`structure`]: graded socle, graded ideals and the classification
//!   predicates.
//! * [`matrix`]: graded matrix-ring realizations of acyclic and comet graphs
//!   and their block sums.

pub mod algebra;
pub mod branching;
pub mod graph;
pub mod laurent;
pub mod linalg;
pub mod matrix;
pub mod random;
pub mod structure;

pub use num_rational::BigRational as Rational;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] graph::GraphError),
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
    #[error(transparent)]
    Module(#[from] branching::ModuleError),
    #[error(transparent)]
    Structure(#[from] structure::StructureError),
    #[error(transparent)]
    Matrix(#[from] matrix::MatrixError),
}

/// Parses `p/q` or an integer into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    use num_bigint::BigInt;
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if den == BigInt::from(0) {
        return None;
    }
    Some(Rational::new(num, den))
}

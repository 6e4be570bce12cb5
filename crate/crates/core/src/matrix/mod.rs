//! Graded matrix rings `M_n(A)(δ)` over `K` or `K[x^t, x^-t]`, and explicit
//! graded isomorphisms from Leavitt path algebras onto block sums of them.

mod realize;
mod verify;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Degree};
use crate::laurent::LaurentPoly;
use crate::structure::BlockBase;
use crate::Rational;

pub use realize::{realize_acyclic, realize_blocks, realize_comet, BlockRealization, Realization, Terminal};
pub use verify::{verify_iso, IsoReport};

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("index ({i}, {j}) outside a {n} x {n} matrix")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("graph is not row-finite: `{0}` is an infinite emitter")]
    NotRowFinite(String),
    #[error("graph is not acyclic")]
    NotAcyclic,
    #[error("expected exactly one sink, found {0}")]
    SinkCount(usize),
    #[error("not a comet graph: {0}")]
    NotComet(String),
    #[error("cycle {0} has an exit")]
    CycleHasExit(String),
    #[error("`{0}` lies outside the hereditary saturated closure of the line points and Laurent vertices")]
    NotNoetherian(String),
    #[error("block at `{0}` has infinitely many index paths")]
    InfiniteBlock(String),
    #[error("matrix sizes differ: {0} and {1}")]
    SizeMismatch(usize, usize),
}

/// `M_n(A)(δ_1, ..., δ_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedMatrixAlgebra {
    pub base: BlockBase,
    pub n: usize,
    pub delta: Vec<i64>,
}

/// `deg(e_ij(x)) = deg(x) + δ_i - δ_j`, with 0-based `i`, `j`.
pub fn matrix_degree(i: usize, j: usize, d: i64, delta: &[i64]) -> Result<i64, MatrixError> {
    let n = delta.len();
    if i >= n || j >= n {
        return Err(MatrixError::IndexOutOfRange { i, j, n });
    }
    Ok(d + delta[i] - delta[j])
}

/// A dense square matrix of Laurent polynomials. Over the base `K` every
/// entry is a constant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixElement {
    pub n: usize,
    pub entries: Vec<Vec<LaurentPoly>>,
}

impl MatrixElement {
    pub fn zero(n: usize) -> Self {
        MatrixElement { n, entries: vec![vec![LaurentPoly::zero(); n]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i][i] = LaurentPoly::one();
        }
        m
    }

    /// `e_ij(p)`.
    pub fn unit(n: usize, i: usize, j: usize, p: LaurentPoly) -> Self {
        let mut m = Self::zero(n);
        m.entries[i][j] = p;
        m
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i][j]
    }

    pub fn add_to(&mut self, i: usize, j: usize, k: Rational, exp: i64) {
        self.entries[i][j].add_term(exp, k);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(LaurentPoly::is_zero)
    }

    fn check(&self, other: &Self) -> Result<(), MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::SizeMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check(other)?;
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.entries[i][j] = self.entries[i][j].add(&other.entries[i][j]);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check(other)?;
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !other.entries[k][j].is_zero() {
                        let p = self.entries[i][k].mul(&other.entries[k][j]);
                        out.entries[i][j] = out.entries[i][j].add(&p);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Transpose with `x -> x^-1` applied to every entry.
    pub fn conjugate_transpose(&self) -> Self {
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.entries[j][i] = self.entries[i][j].invert_variable();
            }
        }
        out
    }

    /// Degree under `δ`, where `x^m` has degree `m`.
    pub fn degree(&self, delta: &[i64]) -> Degree {
        let mut found = None;
        for i in 0..self.n {
            for j in 0..self.n {
                for exp in self.entries[i][j].exponents() {
                    let d = exp + delta[i] - delta[j];
                    match found {
                        None => found = Some(d),
                        Some(prev) if prev != d => return Degree::Mixed,
                        _ => {}
                    }
                }
            }
        }
        found.map_or(Degree::Any, Degree::Exactly)
    }

    /// The degree-`d` homogeneous component under `δ`.
    pub fn component(&self, d: i64, delta: &[i64]) -> Self {
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.entries[i][j] = self.entries[i][j].component(d - delta[i] + delta[j]);
            }
        }
        out
    }
}

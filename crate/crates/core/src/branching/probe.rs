//! Finite probes of (graded) simplicity.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{act_monomial, BranchingSystem, ModuleError, ModuleVector, Symbol};
use crate::algebra::{Algebra, Monomial};
use crate::linalg;
use crate::Rational;

const MAX_VECTORS: usize = 200_000;

#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    pub support_depth: usize,
    pub gen_depth: usize,
    pub vectors_checked: usize,
    /// Vectors no monomial sent to a nonzero multiple of the generator.
    pub resisting: Vec<String>,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.resisting.is_empty()
    }
}

fn monomials<B: BranchingSystem + ?Sized>(b: &B, gen_depth: usize) -> Vec<Monomial> {
    let alg = Algebra::new(b.graph());
    alg.basis_monomials(gen_depth, b.family_sample()).into_iter().filter(|m| m.total_len() <= gen_depth).collect()
}

fn image<B: BranchingSystem + ?Sized>(
    b: &B,
    m: &Monomial,
    x: &ModuleVector,
    depth: usize,
) -> Result<ModuleVector, ModuleError> {
    let mut out = ModuleVector::zero();
    for (s, k) in x.terms() {
        if let Some(y) = act_monomial(b, m, s, depth)? {
            out.add_term(y, k.clone());
        }
    }
    Ok(out)
}

/// Sign patterns `±1` with the first coefficient `+1`, over every non-empty
/// subset of `class`.
fn sign_vectors(class: &[Symbol]) -> Vec<ModuleVector> {
    let n = class.len();
    let mut out = Vec::new();
    for subset in 1u64..(1 << n) {
        let members: Vec<&Symbol> = (0..n).filter(|i| subset >> i & 1 == 1).map(|i| &class[i]).collect();
        for signs in 0u64..(1 << (members.len() - 1)) {
            let mut v = ModuleVector::zero();
            for (j, x) in members.iter().enumerate() {
                let negative = j > 0 && signs >> (j - 1) & 1 == 1;
                let k = if negative { -Rational::one() } else { Rational::one() };
                v.add_term((*x).clone(), k);
            }
            out.push(v);
        }
    }
    out
}

/// For every nonzero homogeneous vector with `±1` coefficients on symbols of
/// size at most `support_depth`, looks for a monomial `αβ*` with
/// `|α| + |β| <= gen_depth` sending it to a nonzero multiple of the
/// generator. Scalar multiples generate the same submodule, so the sign
/// patterns cover all directions up to scale that matter for the probe.
pub fn graded_simplicity_probe<B: BranchingSystem + ?Sized>(
    b: &B,
    support_depth: usize,
    gen_depth: usize,
) -> Result<ProbeReport, ModuleError> {
    let mut classes: BTreeMap<Option<i64>, Vec<Symbol>> = BTreeMap::new();
    for x in b.symbols(support_depth) {
        classes.entry(b.degree(&x)).or_default().push(x);
    }
    let mut total = 0usize;
    for class in classes.values() {
        let n = class.len().min(40) as u32;
        total = total.saturating_add(3usize.saturating_pow(n));
    }
    if total > MAX_VECTORS {
        return Err(ModuleError::ProbeTooLarge(MAX_VECTORS));
    }
    let generator = b.generator();
    let monos = monomials(b, gen_depth);
    let depth = support_depth + gen_depth + 1;
    let mut report = ProbeReport { support_depth, gen_depth, vectors_checked: 0, resisting: Vec::new() };
    for class in classes.values() {
        for v in sign_vectors(class) {
            report.vectors_checked += 1;
            let mut reached = false;
            for m in &monos {
                let w = image(b, m, &v, depth)?;
                if w.multiple_of(&generator).is_some_and(|k| !k.is_zero()) {
                    reached = true;
                    break;
                }
            }
            if !reached {
                report.resisting.push(v.display(b));
            }
        }
    }
    Ok(report)
}

/// Whether the generator lies in the span of `m · x` over monomials `m`
/// with `|α| + |β| <= gen_depth`, i.e. in a finite truncation of `L x`.
pub fn generates_generator<B: BranchingSystem + ?Sized>(
    b: &B,
    x: &ModuleVector,
    gen_depth: usize,
) -> Result<bool, ModuleError> {
    let depth = x.terms().map(|(s, _)| b.size(s)).max().unwrap_or(0) + gen_depth + 1;
    let mut images = Vec::new();
    for m in monomials(b, gen_depth) {
        let w = image(b, &m, x, depth)?;
        if !w.is_zero() {
            images.push(w.as_map().clone());
        }
    }
    let target = ModuleVector::basis(b.generator());
    Ok(linalg::in_span(&images, target.as_map()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::NvcSystem;
    use crate::graph::{parse_graph, VertexId};

    #[test]
    fn loop_module_is_graded_simple() {
        let g = parse_graph("vertex v\nedge e v v").unwrap();
        let n = NvcSystem::new(&g, VertexId(0)).unwrap();
        let report = graded_simplicity_probe(&n, 3, 6).unwrap();
        assert!(report.passed());
        assert_eq!(report.vectors_checked, 7);
    }

    #[test]
    fn loop_module_is_not_simple() {
        let g = parse_graph("vertex v\nedge e v v").unwrap();
        let n = NvcSystem::new(&g, VertexId(0)).unwrap();
        let x = ModuleVector::parse(&n, "v*v + e*v").unwrap();
        assert!(!generates_generator(&n, &x, 6).unwrap());
        let y = ModuleVector::parse(&n, "e*v").unwrap();
        assert!(generates_generator(&n, &y, 6).unwrap());
    }

    #[test]
    fn comet_module_is_graded_simple() {
        let g = parse_graph("vertex u\nvertex v\nedge g u v\nedge c v v").unwrap();
        let n = NvcSystem::new(&g, VertexId(0)).unwrap();
        assert!(graded_simplicity_probe(&n, 3, 6).unwrap().passed());
    }
}

//! Witnesses `y` with `a y a = a` for homogeneous `a`.

use std::collections::BTreeSet;

use super::{Algebra, AlgebraError, Degree, Element, Monomial};
use crate::graph::{paths_starting_at, EdgeRef, VertexId};
use crate::linalg;

fn family_sample(a: &Element) -> u32 {
    let top = a
        .terms()
        .flat_map(|(m, _)| m.alpha.edges().iter().chain(m.beta.edges()))
        .filter_map(|e| match e {
            EdgeRef::Member(_, i) => Some(*i),
            EdgeRef::Plain(_) => None,
        })
        .max();
    top.map_or(1, |i| i + 2)
}

/// Basis monomials `γδ*` of degree `degree` with `s(γ)` in `left`, `s(δ)` in
/// `right` and `|γ|, |δ| <= bound`.
fn candidates(
    alg: &Algebra,
    left: &BTreeSet<VertexId>,
    right: &BTreeSet<VertexId>,
    degree: i64,
    bound: usize,
    sample: u32,
) -> Vec<Monomial> {
    let g = alg.graph();
    let mut out = Vec::new();
    for &x in left {
        let from_x = paths_starting_at(g, x, bound, sample);
        for &z in right {
            let from_z = paths_starting_at(g, z, bound, sample);
            for p in &from_x {
                for q in &from_z {
                    if p.range() == q.range() && p.len() as i64 - q.len() as i64 == degree {
                        let m = Monomial { alpha: p.clone(), beta: q.clone() };
                        if alg.is_basis_monomial(&m) {
                            out.push(m);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Searches for `y` of degree `-deg(a)` built from paths of length at most
/// `length_bound` with `a y a = a`, trying bounds `1, 2, ...` in turn. Every
/// returned witness has been checked exactly; `None` only means that no
/// witness exists within the bound.
pub fn vnr_witness(alg: &Algebra, a: &Element, length_bound: usize) -> Result<Option<Element>, AlgebraError> {
    alg.check(a)?;
    let a = alg.normal_form(a)?;
    let degree = match a.raw_degree() {
        Degree::Any => return Ok(Some(Element::zero())),
        Degree::Exactly(d) => d,
        Degree::Mixed => return Err(AlgebraError::NotHomogeneous),
    };
    let lefts: BTreeSet<VertexId> = a.terms().map(|(m, _)| m.left_vertex()).collect();
    let rights: BTreeSet<VertexId> = a.terms().map(|(m, _)| m.right_vertex()).collect();
    let sample = family_sample(&a);
    let mut tried = 0;
    for bound in 1..=length_bound.max(1) {
        let cands = candidates(alg, &rights, &lefts, -degree, bound, sample);
        if cands.len() == tried {
            continue;
        }
        tried = cands.len();
        let mut columns = Vec::with_capacity(cands.len());
        for m in &cands {
            let y = Element::from_monomial(m.clone());
            let aya = alg.normal_form(&alg.mul(&alg.mul(&a, &y), &a))?;
            columns.push(aya.as_map().clone());
        }
        let Some(coeffs) = linalg::solve(&columns, a.as_map()) else { continue };
        let mut y = Element::zero();
        for (m, k) in cands.into_iter().zip(coeffs) {
            y.add_term(m, k);
        }
        let check = alg.normal_form(&alg.mul(&alg.mul(&a, &y), &a))?;
        if check == a {
            return Ok(Some(y));
        }
    }
    Ok(None)
}

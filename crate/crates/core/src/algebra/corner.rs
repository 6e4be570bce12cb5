//! Corners at line points (`vLv = K v`) and at Laurent vertices
//! (`uLu = K[x^n, x^-n]`, `n` the length of the exitless cycle).

use num_traits::Zero;

use super::{Algebra, AlgebraError, Element, Monomial};
use crate::graph::{LaurentWitness, VertexId};
use crate::laurent::LaurentPoly;
use crate::Rational;

/// The graded isomorphism `uLu -> K[x^n, x^-n]` sending `u` to 1 and the
/// cycle to `x^n`.
#[derive(Debug, Clone)]
pub struct LaurentCornerIso {
    pub vertex: VertexId,
    pub witness: LaurentWitness,
}

fn corner(alg: &Algebra, v: VertexId, a: &Element) -> Result<Element, AlgebraError> {
    let p = Element::vertex(v);
    alg.normal_form(&alg.mul(&alg.mul(&p, a), &p))
}

impl LaurentCornerIso {
    pub fn new(alg: &Algebra, u: VertexId) -> Result<Self, AlgebraError> {
        let g = alg.graph();
        let witness = g.laurent_witness(u).ok_or_else(|| AlgebraError::NotLaurent(g.vertex_name(u).to_string()))?;
        Ok(LaurentCornerIso { vertex: u, witness })
    }

    pub fn period(&self) -> usize {
        self.witness.period()
    }

    pub fn cycle_base(&self) -> VertexId {
        self.witness.cycle_base()
    }

    /// Evaluates a corner element of `u`, translated to the cycle base along
    /// the tail, or a corner element of the cycle base itself.
    pub fn evaluate(&self, alg: &Algebra, a: &Element) -> Result<LaurentPoly, AlgebraError> {
        let g = alg.graph();
        alg.check(a)?;
        let a = alg.normal_form(a)?;
        let base = self.cycle_base();
        let at_base = if corner(alg, self.vertex, &a)? == a {
            let mu = Element::from_monomial(Monomial::path(self.witness.mu.clone()));
            alg.normal_form(&alg.mul(&alg.mul(&mu.star(), &a), &mu))?
        } else if corner(alg, base, &a)? == a {
            a
        } else {
            return Err(AlgebraError::NotCorner(g.vertex_name(self.vertex).to_string()));
        };
        let cycle = self.witness.cycle.edges();
        let n = cycle.len();
        let is_cycle_power = |p: &crate::graph::Path| {
            p.source() == base && p.len().is_multiple_of(n) && p.edges().chunks(n).all(|c| c == cycle)
        };
        let mut out = LaurentPoly::zero();
        for (m, k) in at_base.terms() {
            let exp = if m.beta.is_vertex() && is_cycle_power(&m.alpha) {
                m.alpha.len() as i64
            } else if m.alpha.is_vertex() && is_cycle_power(&m.beta) {
                -(m.beta.len() as i64)
            } else {
                return Err(AlgebraError::CornerReduction(super::monomial_word(g, m)));
            };
            out.add_term(exp, k.clone());
        }
        Ok(out)
    }

    /// Inverse map on the base corner: `x^{kn} -> c^k`, `x^{-kn} -> (c*)^k`.
    pub fn lift(&self, alg: &Algebra, p: &LaurentPoly) -> Option<Element> {
        let g = alg.graph();
        let n = self.period() as i64;
        let mut out = Element::zero();
        for (exp, k) in p.terms() {
            if exp % n != 0 {
                return None;
            }
            let reps = (exp.abs() / n) as usize;
            let mut path = crate::graph::Path::vertex(self.cycle_base());
            for _ in 0..reps {
                for &e in self.witness.cycle.edges() {
                    path.push(g, e);
                }
            }
            let m = Monomial::path(path);
            out.add_term(if exp >= 0 { m } else { m.star() }, k.clone());
        }
        Some(out)
    }
}

/// The scalar `k` with `a = k v` in the corner `vLv` of a line point `v`.
pub fn line_point_corner(alg: &Algebra, v: VertexId, a: &Element) -> Result<Rational, AlgebraError> {
    let g = alg.graph();
    if !g.is_line_point(v) {
        return Err(AlgebraError::NotLinePoint(g.vertex_name(v).to_string()));
    }
    alg.check(a)?;
    let nf = alg.normal_form(a)?;
    if corner(alg, v, &nf)? != nf {
        return Err(AlgebraError::NotCorner(g.vertex_name(v).to_string()));
    }
    let unit = Monomial::vertex(v);
    let k = nf.coefficient(&unit);
    if nf.len() > usize::from(!k.is_zero()) {
        return Err(AlgebraError::CornerReduction(nf.display(g).to_string()));
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_graph, Graph};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn loop_corner() {
        let g = parse_graph("vertex v\nedge e v v").unwrap();
        let alg = Algebra::new(&g);
        let iso = LaurentCornerIso::new(&alg, g.vertex("v").unwrap()).unwrap();
        let eval = |s: &str| iso.evaluate(&alg, &alg.parse(s).unwrap()).unwrap();
        assert_eq!(eval("e e"), LaurentPoly::x_pow(2));
        assert_eq!(eval("v"), LaurentPoly::one());
        assert_eq!(eval("e*"), LaurentPoly::x_pow(-1));
        assert_eq!(eval("e e*"), LaurentPoly::one());
        assert_eq!(eval("2 e* e* - e"), LaurentPoly::monomial(q(2), -2).sub(&LaurentPoly::x_pow(1)));
        let back = iso.lift(&alg, &eval("e e* e - 3 e*")).unwrap();
        assert!(alg.equal(&back, &alg.parse("e - 3 e*").unwrap()).unwrap());
    }

    #[test]
    fn comet_corner_translates_along_tail() {
        let g = parse_graph("vertex u\nvertex v\nedge g u v\nedge c v v").unwrap();
        let alg = Algebra::new(&g);
        let iso = LaurentCornerIso::new(&alg, g.vertex("u").unwrap()).unwrap();
        assert_eq!(iso.evaluate(&alg, &alg.parse("c*").unwrap()).unwrap(), LaurentPoly::x_pow(-1));
        assert_eq!(iso.evaluate(&alg, &alg.parse("g c g*").unwrap()).unwrap(), LaurentPoly::x_pow(1));
        assert_eq!(iso.evaluate(&alg, &alg.parse("u").unwrap()).unwrap(), LaurentPoly::one());
        assert!(matches!(iso.evaluate(&alg, &alg.parse("g").unwrap()), Err(AlgebraError::NotCorner(_))));
    }

    #[test]
    fn non_laurent_rejected() {
        let g = parse_graph("vertex v\nvertex w\nedge e v v\nedge f v w").unwrap();
        let alg = Algebra::new(&g);
        assert!(matches!(LaurentCornerIso::new(&alg, g.vertex("v").unwrap()), Err(AlgebraError::NotLaurent(_))));
    }

    fn toeplitz() -> Graph {
        parse_graph("vertex v\nvertex w\nedge e v v\nedge f v w").unwrap()
    }

    #[test]
    fn line_point_scalars() {
        let g = toeplitz();
        let alg = Algebra::new(&g);
        let w = g.vertex("w").unwrap();
        assert_eq!(line_point_corner(&alg, w, &alg.parse("3 w").unwrap()).unwrap(), q(3));
        assert_eq!(line_point_corner(&alg, w, &alg.parse("f* f").unwrap()).unwrap(), q(1));
        assert_eq!(line_point_corner(&alg, w, &alg.parse("f* e e* f").unwrap()).unwrap(), q(0));
        assert_eq!(line_point_corner(&alg, w, &Element::zero()).unwrap(), q(0));
        assert!(line_point_corner(&alg, g.vertex("v").unwrap(), &alg.parse("v").unwrap()).is_err());
        assert!(line_point_corner(&alg, w, &alg.parse("f").unwrap()).is_err());
    }
}

//! Exact arithmetic in `L_Q(E)`.
//!
//! Elements are finite rational combinations of monomials `αβ*` with
//! `r(α) = r(β)`. Products of such monomials are again monomials or zero, so
//! the CK-1 relations are applied eagerly by [`Algebra::multiply`]. The CK-2
//! relations are applied by [`Algebra::normal_form`], which rewrites
//! `α'γ γ*β'*` into `α'β'* - sum_{f != γ} α'f f*β'*` whenever `γ` is the
//! chosen special edge at a regular vertex. Monomials free of that pattern
//! form a basis, which makes zero-testing decidable.

mod corner;
mod literal;
mod vnr;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{EdgeRef, Graph, Path, VertexId};
use crate::Rational;

pub use corner::{line_point_corner, LaurentCornerIso};
pub use literal::LiteralError;
pub use vnr::vnr_witness;

/// Rewrites allowed per normal-form computation before giving up.
pub const STEP_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("element does not belong to this graph's algebra: {0}")]
    GraphMismatch(String),
    #[error("normal form exceeded the budget of {0} rewrites")]
    StepBudget(usize),
    #[error("invalid special-edge choice: {0}")]
    InvalidChoice(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("`{0}` is not a Laurent vertex")]
    NotLaurent(String),
    #[error("`{0}` is not a line point")]
    NotLinePoint(String),
    #[error("element is not in the corner of `{0}`")]
    NotCorner(String),
    #[error("corner element does not reduce to a multiple of the vertex: {0}")]
    CornerReduction(String),
    #[error(transparent)]
    Literal(#[from] LiteralError),
}

/// The monomial `αβ*`, stored with `β` unstarred.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub alpha: Path,
    pub beta: Path,
}

impl Monomial {
    /// `None` when `r(α) != r(β)`, in which case `αβ*` is zero.
    pub fn new(alpha: Path, beta: Path) -> Option<Self> {
        (alpha.range() == beta.range()).then_some(Monomial { alpha, beta })
    }

    pub fn vertex(v: VertexId) -> Self {
        Monomial { alpha: Path::vertex(v), beta: Path::vertex(v) }
    }

    pub fn edge(g: &Graph, e: EdgeRef) -> Self {
        Monomial { alpha: Path::edge(g, e), beta: Path::vertex(g.range(e)) }
    }

    pub fn ghost(g: &Graph, e: EdgeRef) -> Self {
        Monomial { alpha: Path::vertex(g.range(e)), beta: Path::edge(g, e) }
    }

    pub fn path(p: Path) -> Self {
        let r = p.range();
        Monomial { alpha: p, beta: Path::vertex(r) }
    }

    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    pub fn star(&self) -> Self {
        Monomial { alpha: self.beta.clone(), beta: self.alpha.clone() }
    }

    /// The vertex `u` with `u · αβ* = αβ*`.
    pub fn left_vertex(&self) -> VertexId {
        self.alpha.source()
    }

    /// The vertex `u` with `αβ* · u = αβ*`.
    pub fn right_vertex(&self) -> VertexId {
        self.beta.source()
    }

    pub fn total_len(&self) -> usize {
        self.alpha.len() + self.beta.len()
    }

    fn belongs_to(&self, g: &Graph) -> bool {
        let check = |p: &Path| {
            p.source().0 < g.vertex_count()
                && if p.is_vertex() {
                    p.range() == p.source()
                } else {
                    Path::from_edges(g, p.edges().to_vec()).map(|q| &q == p).unwrap_or(false)
                }
        };
        check(&self.alpha) && check(&self.beta) && self.alpha.range() == self.beta.range()
    }
}

/// `(αβ*)(γδ*)` after CK-1: `αγ'δ*` if `γ = βγ'`, `α(δβ')*` if `β = γβ'`, else 0.
pub fn monomial_product(g: &Graph, x: &Monomial, y: &Monomial) -> Option<Monomial> {
    if let Some(rest) = x.beta.strip_prefix_of(&y.alpha) {
        return Some(Monomial { alpha: x.alpha.concat(&rest), beta: y.beta.clone() });
    }
    if let Some(rest) = y.alpha.strip_prefix_of(&x.beta) {
        return Some(Monomial { alpha: x.alpha.clone(), beta: y.beta.concat(&rest) });
    }
    let _ = g;
    None
}

/// Degree of an element: homogeneous of one degree, zero (any degree), or mixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Any,
    Exactly(i64),
    Mixed,
}

/// A finite rational combination of monomials; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Element::term(Rational::one(), m)
    }

    pub fn term(k: Rational, m: Monomial) -> Self {
        let mut e = Element::zero();
        e.add_term(m, k);
        e
    }

    pub fn vertex(v: VertexId) -> Self {
        Element::from_monomial(Monomial::vertex(v))
    }

    pub fn edge(g: &Graph, e: EdgeRef) -> Self {
        Element::from_monomial(Monomial::edge(g, e))
    }

    pub fn ghost(g: &Graph, e: EdgeRef) -> Self {
        Element::from_monomial(Monomial::ghost(g, e))
    }

    pub fn add_term(&mut self, m: Monomial, k: Rational) {
        if k.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(k);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += k;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn as_map(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Literal emptiness; use [`Algebra::is_zero`] to test equality to zero in the algebra.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, k) in &other.terms {
            out.add_term(m.clone(), k.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> Element {
        if k.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn star(&self) -> Element {
        Element { terms: self.terms.iter().map(|(m, c)| (m.star(), c.clone())).collect() }
    }

    /// Degree of the representation as written; see [`Algebra::degree`].
    pub fn raw_degree(&self) -> Degree {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => Degree::Any,
            Some(d) if degrees.all(|x| x == d) => Degree::Exactly(d),
            Some(_) => Degree::Mixed,
        }
    }

    /// Partition of the terms by `|α| - |β|`.
    pub fn homogeneous_components(&self) -> BTreeMap<i64, Element> {
        let mut out: BTreeMap<i64, Element> = BTreeMap::new();
        for (m, k) in &self.terms {
            out.entry(m.degree()).or_default().add_term(m.clone(), k.clone());
        }
        out
    }

    /// Largest `max(|α|, |β|)` over the terms.
    pub fn max_path_len(&self) -> usize {
        self.terms.keys().map(|m| m.alpha.len().max(m.beta.len())).max().unwrap_or(0)
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> ElementDisplay<'a> {
        ElementDisplay { element: self, graph: g }
    }
}

/// One special edge per regular vertex; CK-2 is oriented to eliminate `γ_v γ_v*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialEdgeChoice {
    special: Vec<Option<EdgeRef>>,
}

impl SpecialEdgeChoice {
    /// The first declared outgoing edge at each regular vertex.
    pub fn first(g: &Graph) -> Self {
        SpecialEdgeChoice {
            special: g.vertices().map(|v| if g.is_regular(v) { g.out_edges(v).next() } else { None }).collect(),
        }
    }

    /// The last declared outgoing edge at each regular vertex.
    pub fn last(g: &Graph) -> Self {
        SpecialEdgeChoice {
            special: g.vertices().map(|v| if g.is_regular(v) { g.out_edges(v).last() } else { None }).collect(),
        }
    }

    pub fn random(g: &Graph, rng: &mut impl Rng) -> Self {
        SpecialEdgeChoice {
            special: g
                .vertices()
                .map(|v| {
                    if g.is_regular(v) {
                        let edges: Vec<EdgeRef> = g.out_edges(v).collect();
                        edges.choose(rng).copied()
                    } else {
                        None
                    }
                })
                .collect(),
        }
    }

    /// Builds a choice from `(vertex, edge)` pairs, checked against `g`.
    pub fn from_pairs(g: &Graph, pairs: &[(VertexId, EdgeRef)]) -> Result<Self, AlgebraError> {
        let mut special = vec![None; g.vertex_count()];
        for &(v, e) in pairs {
            special[v.0] = Some(e);
        }
        let choice = SpecialEdgeChoice { special };
        choice.validate(g)?;
        Ok(choice)
    }

    pub fn validate(&self, g: &Graph) -> Result<(), AlgebraError> {
        if self.special.len() != g.vertex_count() {
            return Err(AlgebraError::InvalidChoice("wrong number of vertices".into()));
        }
        for v in g.vertices() {
            match (g.is_regular(v), self.special[v.0]) {
                (true, Some(e)) if g.contains_edge(e) && g.source(e) == v && matches!(e, EdgeRef::Plain(_)) => {}
                (false, None) => {}
                (true, _) => {
                    return Err(AlgebraError::InvalidChoice(format!(
                        "regular vertex `{}` needs an outgoing special edge",
                        g.vertex_name(v)
                    )))
                }
                (false, Some(_)) => {
                    return Err(AlgebraError::InvalidChoice(format!(
                        "`{}` is not regular and takes no special edge",
                        g.vertex_name(v)
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn special(&self, v: VertexId) -> Option<EdgeRef> {
        self.special[v.0]
    }
}

/// The algebra `L_Q(E)` of a graph together with a fixed normal-form basis.
#[derive(Debug, Clone)]
pub struct Algebra<'g> {
    graph: &'g Graph,
    choice: SpecialEdgeChoice,
}

impl<'g> Algebra<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Algebra { graph, choice: SpecialEdgeChoice::first(graph) }
    }

    pub fn with_choice(graph: &'g Graph, choice: SpecialEdgeChoice) -> Result<Self, AlgebraError> {
        choice.validate(graph)?;
        Ok(Algebra { graph, choice })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn choice(&self) -> &SpecialEdgeChoice {
        &self.choice
    }

    pub fn check(&self, a: &Element) -> Result<(), AlgebraError> {
        for m in a.terms.keys() {
            if !m.belongs_to(self.graph) {
                return Err(AlgebraError::GraphMismatch(format!("{m:?}")));
            }
        }
        Ok(())
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.add(b))
    }

    pub fn scale(&self, k: &Rational, a: &Element) -> Result<Element, AlgebraError> {
        self.check(a)?;
        Ok(a.scale(k))
    }

    /// Bilinear product with CK-1 applied; the result is not CK-2 normalized.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub(crate) fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (x, k) in &a.terms {
            for (y, l) in &b.terms {
                if let Some(m) = monomial_product(self.graph, x, y) {
                    out.add_term(m, k * l);
                }
            }
        }
        out
    }

    /// Product of a sequence, normalizing after each step.
    pub fn product(&self, factors: &[&Element]) -> Result<Element, AlgebraError> {
        let mut iter = factors.iter();
        let Some(first) = iter.next() else { return Ok(Element::zero()) };
        let mut acc = self.normal_form(first)?;
        for f in iter {
            acc = self.normal_form(&self.mul(&acc, f))?;
        }
        Ok(acc)
    }

    fn is_reducible(&self, m: &Monomial) -> bool {
        match (m.alpha.last_edge(), m.beta.last_edge()) {
            (Some(x), Some(y)) => x == y && self.choice.special(self.graph.source(x)) == Some(x),
            _ => false,
        }
    }

    /// `α'γγ*β'* -> α'β'* - sum_{f != γ} α'f (β'f)*`.
    fn rewrite(&self, m: &Monomial) -> Vec<(Monomial, bool)> {
        let g = self.graph;
        let gamma = m.alpha.last_edge().unwrap();
        let v = g.source(gamma);
        let alpha = m.alpha.init(g).unwrap();
        let beta = m.beta.init(g).unwrap();
        let mut out = Vec::with_capacity(g.out_degree(v));
        for f in g.out_edges(v).filter(|&f| f != gamma) {
            let mut a = alpha.clone();
            a.push(g, f);
            let mut b = beta.clone();
            b.push(g, f);
            out.push((Monomial { alpha: a, beta: b }, false));
        }
        out.push((Monomial { alpha, beta }, true));
        out
    }

    /// Whether a monomial is a normal-form basis element.
    pub fn is_basis_monomial(&self, m: &Monomial) -> bool {
        !self.is_reducible(m)
    }

    pub fn normal_form(&self, a: &Element) -> Result<Element, AlgebraError> {
        self.normal_form_by(a, |pending| pending.keys().next().cloned())
    }

    /// Normal form with the next redex drawn at random, used to test that the
    /// result does not depend on the rewrite order.
    pub fn normal_form_shuffled(&self, a: &Element, seed: u64) -> Result<Element, AlgebraError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.normal_form_by(a, |pending| {
            let keys: Vec<&Monomial> = pending.keys().collect();
            keys.choose(&mut rng).map(|m| (*m).clone())
        })
    }

    fn normal_form_by(
        &self,
        a: &Element,
        mut pick: impl FnMut(&BTreeMap<Monomial, Rational>) -> Option<Monomial>,
    ) -> Result<Element, AlgebraError> {
        let mut done = Element::zero();
        let mut pending = Element::zero();
        for (m, k) in &a.terms {
            if self.is_reducible(m) {
                pending.add_term(m.clone(), k.clone());
            } else {
                done.add_term(m.clone(), k.clone());
            }
        }
        let mut steps = 0usize;
        while let Some(m) = pick(&pending.terms) {
            let k = pending.terms.remove(&m).unwrap();
            steps += 1;
            if steps > STEP_BUDGET {
                return Err(AlgebraError::StepBudget(STEP_BUDGET));
            }
            for (n, positive) in self.rewrite(&m) {
                let c = if positive { k.clone() } else { -k.clone() };
                if self.is_reducible(&n) {
                    pending.add_term(n, c);
                } else {
                    done.add_term(n, c);
                }
            }
        }
        Ok(done)
    }

    pub fn is_zero(&self, a: &Element) -> Result<bool, AlgebraError> {
        Ok(self.normal_form(a)?.is_empty())
    }

    pub fn equal(&self, a: &Element, b: &Element) -> Result<bool, AlgebraError> {
        self.is_zero(&a.sub(b))
    }

    /// Degree of the normal form; [`Degree::Any`] for zero.
    pub fn degree(&self, a: &Element) -> Result<Degree, AlgebraError> {
        Ok(self.normal_form(a)?.raw_degree())
    }

    pub fn homogeneous_components(&self, a: &Element) -> Result<BTreeMap<i64, Element>, AlgebraError> {
        Ok(self.normal_form(a)?.homogeneous_components())
    }

    pub fn parse(&self, text: &str) -> Result<Element, AlgebraError> {
        Ok(literal::parse_element(self.graph, text)?)
    }

    /// Canonical literal of the normal form.
    pub fn format(&self, a: &Element) -> Result<String, AlgebraError> {
        Ok(self.normal_form(a)?.display(self.graph).to_string())
    }

    pub fn vertex(&self, name: &str) -> Result<Element, AlgebraError> {
        self.parse(name)
    }

    /// Every normal-form basis monomial with `|α|, |β| <= max_len`, family
    /// members drawn from `0..sample`.
    pub fn basis_monomials(&self, max_len: usize, sample: u32) -> Vec<Monomial> {
        let g = self.graph;
        let mut out = Vec::new();
        for v in g.vertices() {
            let ends = crate::graph::paths_ending_at(g, v, max_len, sample);
            for a in &ends {
                for b in &ends {
                    let m = Monomial { alpha: a.clone(), beta: b.clone() };
                    if self.is_basis_monomial(&m) {
                        out.push(m);
                    }
                }
            }
        }
        out.sort();
        out
    }
}

pub struct ElementDisplay<'a> {
    element: &'a Element,
    graph: &'a Graph,
}

pub(crate) fn monomial_word(g: &Graph, m: &Monomial) -> String {
    let mut parts: Vec<String> = m.alpha.edges().iter().map(|&e| g.edge_name(e)).collect();
    parts.extend(m.beta.edges().iter().rev().map(|&e| format!("{}*", g.edge_name(e))));
    if parts.is_empty() {
        g.vertex_name(m.alpha.source()).to_string()
    } else {
        parts.join(" ")
    }
}

/// Writes `terms` as `k word + ...`; coefficient 1 is omitted.
pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a Rational)>,
) -> fmt::Result {
    let mut first = true;
    for (word, k) in terms {
        let negative = k < &Rational::zero();
        let magnitude = if negative { -k.clone() } else { k.clone() };
        match (first, negative) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        if !magnitude.is_one() {
            write!(f, "{magnitude} ")?;
        }
        f.write_str(&word)?;
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.element.terms().map(|(m, k)| (monomial_word(self.graph, m), k)))
    }
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

    #[test]
    fn addition_and_scaling() {
        let g = toeplitz();
        let alg = Algebra::new(&g);
        let v = alg.parse("v").unwrap();
        assert!(alg.add(&v, &v.scale(&-Rational::one())).unwrap().is_empty());
        let e = alg.parse("e").unwrap();
        assert_eq!(alg.format(&e.add(&e)).unwrap(), "2 e");
        let x = alg.parse("v - f f*").unwrap();
        let ff = alg.parse("f f*").unwrap();
        assert_eq!(x.add(&ff), v);
    }

    #[test]
    fn ck1_products() {
        let g = r1();
        let alg = Algebra::new(&g);
        let p = alg.multiply(&alg.parse("e*").unwrap(), &alg.parse("e").unwrap()).unwrap();
        assert_eq!(p, alg.parse("v").unwrap());

        let t = toeplitz();
        let alg = Algebra::new(&t);
        let p = alg.multiply(&alg.parse("f*").unwrap(), &alg.parse("e").unwrap()).unwrap();
        assert!(p.is_empty());
        let p = alg.multiply(&alg.parse("e f f*").unwrap(), &alg.parse("f f*").unwrap()).unwrap();
        assert_eq!(p, alg.parse("e f f*").unwrap());
    }

    #[test]
    fn involution() {
        let t = parse_graph("vertex a\nvertex b\nvertex c\nedge e a b\nedge f b c\nedge g a c").unwrap();
        let alg = Algebra::new(&t);
        let x = alg.parse("2 e f g*").unwrap();
        assert_eq!(x.star().display(&t).to_string(), "2 g f* e*");
        assert!(alg.parse("v").is_err());
        let v = alg.parse("a").unwrap();
        assert_eq!(v.star(), v);
    }

    #[test]
    fn ck2_normal_forms() {
        let g = r1();
        let alg = Algebra::new(&g);
        assert_eq!(alg.format(&alg.parse("e e*").unwrap()).unwrap(), "v");
        let t = toeplitz();
        let alg = Algebra::new(&t);
        assert_eq!(alg.format(&alg.parse("e e* + f f*").unwrap()).unwrap(), "v");
        assert_eq!(alg.format(&alg.parse("v").unwrap()).unwrap(), "v");
        assert!(alg.is_zero(&alg.parse("e e* + f f* - v").unwrap()).unwrap());
        assert!(!alg.is_zero(&alg.parse("v").unwrap()).unwrap());
        assert!(alg.is_zero(&alg.parse("e* f").unwrap()).unwrap());
    }

    #[test]
    fn infinite_emitters_are_exempt_from_ck2() {
        let g = parse_graph("vertex u\nvertex v\ninfinite-family g u v").unwrap();
        let alg = Algebra::new(&g);
        let x = alg.parse("g[0] g[0]* + g[1] g[1]* - u").unwrap();
        assert!(!alg.is_zero(&x).unwrap());
        assert!(alg.is_zero(&alg.parse("g[0]* g[1]").unwrap()).unwrap());
        assert_eq!(alg.format(&alg.parse("g[2]* g[2]").unwrap()).unwrap(), "v");
    }

    #[test]
    fn degrees() {
        let g = parse_graph("vertex v\nvertex w\nedge e v w\nedge f v w").unwrap();
        let alg = Algebra::new(&g);
        assert_eq!(alg.degree(&alg.parse("e f*").unwrap()).unwrap(), Degree::Exactly(0));
        assert_eq!(alg.degree(&alg.parse("v + e").unwrap()).unwrap(), Degree::Mixed);
        assert_eq!(alg.degree(&Element::zero()).unwrap(), Degree::Any);
        let comps = alg.homogeneous_components(&alg.parse("v + 2 e + 3 e*").unwrap()).unwrap();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[&0].display(&g).to_string(), "v");
        assert_eq!(comps[&1].display(&g).to_string(), "2 e");
        assert_eq!(comps[&-1].display(&g).to_string(), "3 e*");
    }

    #[test]
    fn graph_mismatch_is_reported() {
        let g = r1();
        let t = toeplitz();
        let f = Algebra::new(&t).parse("f").unwrap();
        let alg = Algebra::new(&g);
        assert!(matches!(alg.multiply(&f, &f), Err(AlgebraError::GraphMismatch(_))));
        assert!(matches!(alg.add(&f, &f), Err(AlgebraError::GraphMismatch(_))));
    }

    #[test]
    fn special_edge_choice_validation() {
        let t = toeplitz();
        let v = t.vertex("v").unwrap();
        let w = t.vertex("w").unwrap();
        let e = t.edge("e").unwrap();
        let f = t.edge("f").unwrap();
        assert!(SpecialEdgeChoice::from_pairs(&t, &[(v, f)]).is_ok());
        assert!(SpecialEdgeChoice::from_pairs(&t, &[]).is_err());
        assert!(SpecialEdgeChoice::from_pairs(&t, &[(v, e), (w, f)]).is_err());
    }

    #[test]
    fn other_special_edge_gives_other_basis() {
        let t = toeplitz();
        let alg = Algebra::with_choice(&t, SpecialEdgeChoice::last(&t)).unwrap();
        assert_eq!(alg.format(&alg.parse("f f*").unwrap()).unwrap(), "v - e e*");
        assert_eq!(alg.format(&alg.parse("e e*").unwrap()).unwrap(), "e e*");
    }
}

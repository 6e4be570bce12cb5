//! Graded algebraic branching systems and the modules `M(X)` they induce.
//!
//! A branching system is a set `X` with subsets `X_v`, `X_e` and bijections
//! `σ_e: X_{r(e)} -> X_e`. Vertices act by projection, edges by `σ_e` and
//! ghost edges by `σ_e^{-1}`. All systems here have infinitely many symbols,
//! so every enumeration takes an explicit size bound and every action checks
//! that it stays within the requested depth.

mod infinite_path;
mod nvc;
mod paths;
mod probe;
mod vp;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element, Monomial};
use crate::graph::{AdmissiblePair, EdgeRef, Graph, GraphError, Path, VertexClass, VertexId};
use crate::{parse_rational, Rational};

pub use infinite_path::{tail_equivalent, InfinitePathSpec, Rationality};
pub use nvc::NvcSystem;
pub use paths::PathSystem;
pub use probe::{generates_generator, graded_simplicity_probe, ProbeReport};
pub use vp::{vp_finitely_presented, vp_gradedness, Gradedness, VpSystem};

/// Family members `0..DEFAULT_FAMILY_SAMPLE` stand in for each infinite family
/// when symbols are enumerated.
pub const DEFAULT_FAMILY_SAMPLE: u32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("`{0}` is not a Laurent vertex")]
    NotLaurent(String),
    #[error("`{vertex}` is a {found} vertex, expected {expected}")]
    WrongVertexClass { vertex: String, expected: VertexClass, found: VertexClass },
    #[error("invalid infinite path: {0}")]
    InvalidSpec(String),
    #[error("depth exhausted at symbol `{0}`; increase the depth")]
    DepthExhausted(String),
    #[error("infinite path is rational")]
    Rational,
    #[error("infinite path is not certified irrational")]
    NotCertifiedIrrational,
    #[error("`{0}` is not a basis symbol of this module")]
    BadSymbol(String),
    #[error("probe would enumerate more than {0} vectors")]
    ProbeTooLarge(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A basis element of a branching system.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// `p q*` with `s(q)` the base of the exitless cycle.
    Pair { p: Path, q: Path },
    /// A finite path ending at the distinguished vertex.
    Path(Path),
    /// The infinite path `prefix` followed by the tail of `p` after `state` edges.
    Tail { prefix: Path, state: usize },
}

pub(crate) fn path_word(g: &Graph, p: &Path) -> String {
    if p.is_vertex() {
        g.vertex_name(p.source()).to_string()
    } else {
        p.edge_names(g).join(".")
    }
}

fn parse_path_word(g: &Graph, word: &str) -> Result<Path, ModuleError> {
    if let Ok(v) = g.vertex(word) {
        return Ok(Path::vertex(v));
    }
    let names: Vec<&str> = word.split('.').collect();
    Ok(g.path_from_names(&names)?)
}

impl Symbol {
    /// Canonical text: `p*q`, a path word, or `word@state`; path words join
    /// edge names with `.` and a vertex stands for a path of length zero.
    pub fn display(&self, g: &Graph) -> String {
        match self {
            Symbol::Pair { p, q } => format!("{}*{}", path_word(g, p), path_word(g, q)),
            Symbol::Path(p) => path_word(g, p),
            Symbol::Tail { prefix, state } => {
                let word = if prefix.is_vertex() { String::new() } else { path_word(g, prefix) };
                format!("{word}@{state}")
            }
        }
    }

    /// Inverse of [`Symbol::display`]; `@n` alone needs `tail_source` to
    /// place the empty prefix.
    pub fn parse(
        g: &Graph,
        text: &str,
        tail_source: impl Fn(usize) -> Option<VertexId>,
    ) -> Result<Symbol, ModuleError> {
        let bad = || ModuleError::BadSymbol(text.to_string());
        if let Some((word, state)) = text.split_once('@') {
            let state: usize = state.parse().map_err(|_| bad())?;
            let prefix = if word.is_empty() {
                Path::vertex(tail_source(state).ok_or_else(bad)?)
            } else {
                parse_path_word(g, word)?
            };
            return Ok(Symbol::Tail { prefix, state });
        }
        if let Some((p, q)) = text.split_once('*') {
            return Ok(Symbol::Pair { p: parse_path_word(g, p)?, q: parse_path_word(g, q)? });
        }
        Ok(Symbol::Path(parse_path_word(g, text)?))
    }
}

/// An `E`-algebraic branching system, enumerable by symbol size.
pub trait BranchingSystem {
    fn graph(&self) -> &Graph;

    /// Short description, e.g. `N_vc(v)`.
    fn name(&self) -> String;

    /// All symbols of size at most `depth`, sorted.
    fn symbols(&self, depth: usize) -> Vec<Symbol>;

    fn size(&self, x: &Symbol) -> usize;

    /// Whether `x` is a canonical symbol of this system.
    fn contains(&self, x: &Symbol) -> bool;

    fn in_vertex(&self, x: &Symbol, v: VertexId) -> bool;

    fn in_edge(&self, x: &Symbol, e: EdgeRef) -> bool;

    /// `σ_e(x)`, or `None` when `x` is not in `X_{r(e)}`.
    fn sigma(&self, e: EdgeRef, x: &Symbol) -> Option<Symbol>;

    /// `σ_e^{-1}(x)`, or `None` when `x` is not in `X_e`.
    fn sigma_inv(&self, e: EdgeRef, x: &Symbol) -> Option<Symbol>;

    fn degree(&self, x: &Symbol) -> Option<i64>;

    fn is_graded(&self) -> bool;

    /// The distinguished symbol generating the module.
    fn generator(&self) -> Symbol;

    fn family_sample(&self) -> u32;

    fn parse_symbol(&self, text: &str) -> Result<Symbol, ModuleError> {
        let x = Symbol::parse(self.graph(), text, |_| None)?;
        if self.contains(&x) {
            Ok(x)
        } else {
            Err(ModuleError::BadSymbol(text.to_string()))
        }
    }
}

/// A finite rational combination of basis symbols; zeros are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModuleVector {
    terms: BTreeMap<Symbol, Rational>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(x: Symbol) -> Self {
        let mut m = Self::zero();
        m.add_term(x, Rational::one());
        m
    }

    pub fn add_term(&mut self, x: Symbol, k: Rational) {
        if k.is_zero() {
            return;
        }
        let slot = self.terms.entry(x.clone()).or_insert_with(Rational::zero);
        *slot += k;
        if slot.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Symbol, &Rational)> {
        self.terms.iter()
    }

    pub fn as_map(&self) -> &BTreeMap<Symbol, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, x: &Symbol) -> Rational {
        self.terms.get(x).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, k) in &other.terms {
            out.add_term(x.clone(), k.clone());
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Self::zero();
        for (x, c) in &self.terms {
            out.add_term(x.clone(), c * k);
        }
        out
    }

    /// The scalar `k` with `self = k x`, if there is one.
    pub fn multiple_of(&self, x: &Symbol) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(x).cloned(),
            _ => None,
        }
    }

    pub fn display<'a, B: BranchingSystem + ?Sized>(&'a self, b: &'a B) -> String {
        struct Terms<'a, B: ?Sized>(&'a ModuleVector, &'a B);
        impl<B: BranchingSystem + ?Sized> fmt::Display for Terms<'_, B> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let g = self.1.graph();
                crate::algebra::write_terms(f, self.0.terms.iter().map(|(x, k)| (x.display(g), k)))
            }
        }
        Terms(self, b).to_string()
    }

    /// Parses `k sym + k sym - ...`, with `+`/`-` separated by whitespace.
    pub fn parse<B: BranchingSystem + ?Sized>(b: &B, text: &str) -> Result<Self, ModuleError> {
        let bad = || ModuleError::BadSymbol(text.to_string());
        let mut out = Self::zero();
        if text.trim() == "0" {
            return Ok(out);
        }
        let mut sign = Rational::one();
        let mut coefficient: Option<Rational> = None;
        let mut expect_term = true;
        let mut started = false;
        for token in text.split_whitespace() {
            if token == "+" || token == "-" {
                if expect_term && (started || coefficient.is_some() || token == "+") {
                    return Err(bad());
                }
                sign = if token == "-" { -Rational::one() } else { Rational::one() };
                expect_term = true;
                started = true;
                continue;
            }
            if !expect_term {
                return Err(bad());
            }
            if coefficient.is_none() {
                if let Some(k) = parse_rational(token) {
                    coefficient = Some(k);
                    continue;
                }
            }
            let x = b.parse_symbol(token)?;
            let k = coefficient.take().unwrap_or_else(Rational::one);
            out.add_term(x, &sign * k);
            expect_term = false;
            started = true;
        }
        if expect_term {
            return Err(bad());
        }
        Ok(out)
    }
}

/// Outcome of one validation check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub condition: &'static str,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub system: String,
    pub depth: usize,
    pub symbols: usize,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !matches!(c.outcome, Outcome::Fail(_)))
    }

    pub fn first_violation(&self) -> Option<&Check> {
        self.checks.iter().find(|c| matches!(c.outcome, Outcome::Fail(_)))
    }

    pub fn outcome(&self, condition: &str) -> Option<&Outcome> {
        self.checks.iter().find(|c| c.condition == condition).map(|c| &c.outcome)
    }
}

pub const DISJOINT: &str = "(1) disjointness";
pub const SATURATED: &str = "saturation";
pub const EDGE_IN_SOURCE: &str = "(2) X_e inside X_s(e)";
pub const COVERED: &str = "(3) X_v covered by X_e";
pub const BIJECTIVE: &str = "(4) sigma_e bijective";
pub const DEGREE_SHIFT: &str = "(5) degree shift";

/// Plain edges and the sampled members of every family.
pub fn edge_universe(g: &Graph, sample: u32) -> Vec<EdgeRef> {
    let mut out: Vec<EdgeRef> = g.plain_edges().collect();
    for f in 0..g.family_count() {
        out.extend((0..sample).map(|i| EdgeRef::Member(f, i)));
    }
    out
}

/// Checks conditions (1)-(4), saturation and, for graded systems, (5) on
/// every symbol of size at most `depth`. Condition (3) is required at
/// regular vertices: sinks emit nothing and infinite emitters carry no CK-2
/// relation.
pub fn validate<B: BranchingSystem + ?Sized>(b: &B, depth: usize) -> ValidationReport {
    let g = b.graph();
    let xs = b.symbols(depth);
    let edges = edge_universe(g, b.family_sample());
    let show = |x: &Symbol| x.display(g);
    let mut checks = Vec::new();

    let vertex_sets: Vec<Vec<VertexId>> =
        xs.iter().map(|x| g.vertices().filter(|&v| b.in_vertex(x, v)).collect()).collect();
    let edge_sets: Vec<Vec<EdgeRef>> =
        xs.iter().map(|x| edges.iter().copied().filter(|&e| b.in_edge(x, e)).collect()).collect();

    let disjoint = xs.iter().zip(&vertex_sets).zip(&edge_sets).find_map(|((x, vs), es)| {
        if vs.len() > 1 {
            Some(format!("{} lies in X_{} and X_{}", show(x), g.vertex_name(vs[0]), g.vertex_name(vs[1])))
        } else if es.len() > 1 {
            Some(format!("{} lies in X_{} and X_{}", show(x), g.edge_name(es[0]), g.edge_name(es[1])))
        } else {
            None
        }
    });
    checks.push(Check { condition: DISJOINT, outcome: disjoint.map_or(Outcome::Pass, Outcome::Fail) });

    let unsaturated = xs.iter().zip(&vertex_sets).find(|(_, vs)| vs.is_empty());
    checks.push(Check {
        condition: SATURATED,
        outcome: unsaturated.map_or(Outcome::Pass, |(x, _)| Outcome::Fail(format!("{} lies in no X_v", show(x)))),
    });

    let outside = xs.iter().zip(&edge_sets).find_map(|(x, es)| {
        es.iter()
            .find(|&&e| !b.in_vertex(x, g.source(e)))
            .map(|&e| format!("{} in X_{} but not in X_{}", show(x), g.edge_name(e), g.vertex_name(g.source(e))))
    });
    checks.push(Check { condition: EDGE_IN_SOURCE, outcome: outside.map_or(Outcome::Pass, Outcome::Fail) });

    let uncovered = xs.iter().zip(&vertex_sets).zip(&edge_sets).find_map(|((x, vs), es)| {
        let &v = vs.first()?;
        (g.is_regular(v) && !es.iter().any(|&e| g.source(e) == v))
            .then(|| format!("{} in X_{} but in no X_e with s(e) = {}", show(x), g.vertex_name(v), g.vertex_name(v)))
    });
    checks.push(Check { condition: COVERED, outcome: uncovered.map_or(Outcome::Pass, Outcome::Fail) });

    checks.push(Check { condition: BIJECTIVE, outcome: check_bijections(b, &xs, &edges) });

    let degree = if !b.is_graded() {
        Outcome::Skipped("no degree map".into())
    } else {
        let mut failure = None;
        'outer: for &e in &edges {
            for x in xs.iter().filter(|x| b.in_vertex(x, g.range(e))) {
                let (Some(y), Some(dx)) = (b.sigma(e, x), b.degree(x)) else { continue };
                if b.degree(&y) != Some(dx + 1) {
                    failure = Some(format!("deg({}) != deg({}) + 1", show(&y), show(x)));
                    break 'outer;
                }
            }
        }
        failure.map_or(Outcome::Pass, Outcome::Fail)
    };
    checks.push(Check { condition: DEGREE_SHIFT, outcome: degree });

    ValidationReport { system: b.name(), depth, symbols: xs.len(), checks }
}

fn check_bijections<B: BranchingSystem + ?Sized>(b: &B, xs: &[Symbol], edges: &[EdgeRef]) -> Outcome {
    let g = b.graph();
    let show = |x: &Symbol| x.display(g);
    for &e in edges {
        let name = g.edge_name(e);
        let mut seen: HashMap<Symbol, &Symbol> = HashMap::new();
        for x in xs.iter().filter(|x| b.in_vertex(x, g.range(e))) {
            let Some(y) = b.sigma(e, x) else {
                return Outcome::Fail(format!("sigma_{name} undefined at {}", show(x)));
            };
            if !b.in_edge(&y, e) {
                return Outcome::Fail(format!("sigma_{name}({}) = {} is not in X_{name}", show(x), show(&y)));
            }
            if let Some(other) = seen.insert(y.clone(), x) {
                return Outcome::Fail(format!("sigma_{name} sends {} and {} to {}", show(other), show(x), show(&y)));
            }
            if b.sigma_inv(e, &y).as_ref() != Some(x) {
                return Outcome::Fail(format!("sigma_{name}^-1 does not invert sigma_{name} at {}", show(x)));
            }
        }
        for y in xs.iter().filter(|y| b.in_edge(y, e)) {
            match b.sigma_inv(e, y) {
                Some(x) if b.in_vertex(&x, g.range(e)) && b.sigma(e, &x).as_ref() == Some(y) => {}
                _ => return Outcome::Fail(format!("{} in X_{name} has no preimage under sigma_{name}", show(y))),
            }
        }
    }
    Outcome::Pass
}

fn checked<B: BranchingSystem + ?Sized>(b: &B, x: Symbol, depth: usize) -> Result<Symbol, ModuleError> {
    if b.size(&x) > depth {
        Err(ModuleError::DepthExhausted(x.display(b.graph())))
    } else {
        Ok(x)
    }
}

/// `αβ* · x` by rules (I)-(III).
pub fn act_monomial<B: BranchingSystem + ?Sized>(
    b: &B,
    m: &Monomial,
    x: &Symbol,
    depth: usize,
) -> Result<Option<Symbol>, ModuleError> {
    if !b.in_vertex(x, m.beta.source()) {
        return Ok(None);
    }
    let mut x = x.clone();
    for &e in m.beta.edges() {
        match b.sigma_inv(e, &x) {
            Some(y) => x = checked(b, y, depth)?,
            None => return Ok(None),
        }
    }
    for &e in m.alpha.edges().iter().rev() {
        match b.sigma(e, &x) {
            Some(y) => x = checked(b, y, depth)?,
            None => return Ok(None),
        }
    }
    Ok(b.in_vertex(&x, m.alpha.source()).then_some(x))
}

/// The module action of `a` on `m`; fails loudly if any intermediate symbol
/// exceeds `depth`.
pub fn act<B: BranchingSystem + ?Sized>(
    b: &B,
    a: &Element,
    m: &ModuleVector,
    depth: usize,
) -> Result<ModuleVector, ModuleError> {
    Algebra::new(b.graph()).check(a)?;
    let mut out = ModuleVector::zero();
    for (mono, k) in a.terms() {
        for (x, l) in m.terms() {
            if let Some(y) = act_monomial(b, mono, x, depth)? {
                out.add_term(y, k * l);
            }
        }
    }
    Ok(out)
}

/// Degree of a vector: `Ok(None)` for zero, an error for mixed degrees.
pub fn vector_degree<B: BranchingSystem + ?Sized>(b: &B, m: &ModuleVector) -> Option<Option<i64>> {
    let degrees: BTreeSet<Option<i64>> = m.terms().map(|(x, _)| b.degree(x)).collect();
    match degrees.len() {
        0 => Some(None),
        1 => degrees.into_iter().next().unwrap().map(Some),
        _ => None,
    }
}

/// Classes (i)-(iii) of an infinite emitter by the number of its edges
/// landing in `N(v) = {u : u >= v}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EmitterClass {
    /// No edge returns to `N(v)`.
    NoReturn,
    /// Finitely many (and at least one) edges return.
    FiniteReturn,
    /// Infinitely many edges return.
    InfiniteReturn,
}

impl fmt::Display for EmitterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EmitterClass::NoReturn => "(i)",
            EmitterClass::FiniteReturn => "(ii)",
            EmitterClass::InfiniteReturn => "(iii)",
        })
    }
}

pub fn infinite_emitter_class(g: &Graph, v: VertexId) -> Result<EmitterClass, ModuleError> {
    let found = g.classify(v);
    if found != VertexClass::InfiniteEmitter {
        return Err(ModuleError::WrongVertexClass {
            vertex: g.vertex_name(v).to_string(),
            expected: VertexClass::InfiniteEmitter,
            found,
        });
    }
    let above: BTreeSet<VertexId> = g.vertices().filter(|&u| g.reaches(u, v)).collect();
    if g.out_families(v).iter().any(|&f| above.contains(&g.family_range(f))) {
        return Ok(EmitterClass::InfiniteReturn);
    }
    let count = g.out_edges(v).filter(|&e| above.contains(&g.range(e))).count();
    Ok(if count == 0 { EmitterClass::NoReturn } else { EmitterClass::FiniteReturn })
}

/// `(H(v), ∅)` with `H(v)` the vertices that do not reach the cycle base `v`
/// of the Laurent vertex `u`.
pub fn nvc_annihilator(g: &Graph, u: VertexId) -> Result<AdmissiblePair, ModuleError> {
    let witness = g.laurent_witness(u).ok_or_else(|| ModuleError::NotLaurent(g.vertex_name(u).to_string()))?;
    let v = witness.cycle_base();
    let h: BTreeSet<VertexId> = g.vertices().filter(|&w| !g.reaches(w, v)).collect();
    debug_assert!(g.is_hereditary_saturated(&h));
    let pair = AdmissiblePair::new(h, BTreeSet::new());
    g.check_admissible(&pair)?;
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    #[test]
    fn emitter_classes() {
        let ie = parse_graph("vertex u\nvertex v\ninfinite-family g u v").unwrap();
        let u = ie.vertex("u").unwrap();
        assert_eq!(infinite_emitter_class(&ie, u).unwrap(), EmitterClass::NoReturn);
        let ie_loop = parse_graph("vertex u\nvertex v\ninfinite-family g u v\nedge l u u").unwrap();
        assert_eq!(infinite_emitter_class(&ie_loop, u).unwrap(), EmitterClass::FiniteReturn);
        let self_family = parse_graph("vertex u\ninfinite-family g u u").unwrap();
        assert_eq!(infinite_emitter_class(&self_family, u).unwrap(), EmitterClass::InfiniteReturn);
        assert!(infinite_emitter_class(&ie, ie.vertex("v").unwrap()).is_err());
    }

    #[test]
    fn annihilator_pairs() {
        let g = parse_graph("vertex v\nvertex z\nedge e v v").unwrap();
        let pair = nvc_annihilator(&g, g.vertex("v").unwrap()).unwrap();
        assert_eq!(g.vertex_names(&pair.h), vec!["z"]);
        assert!(pair.s.is_empty());
        let r1 = parse_graph("vertex v\nedge e v v").unwrap();
        assert!(nvc_annihilator(&r1, VertexId(0)).unwrap().h.is_empty());
        let comet = parse_graph("vertex u\nvertex v\nedge g u v\nedge c v v").unwrap();
        assert!(nvc_annihilator(&comet, VertexId(0)).unwrap().h.is_empty());
        let t = parse_graph("vertex v\nvertex w\nedge e v v\nedge f v w").unwrap();
        assert!(matches!(nvc_annihilator(&t, VertexId(0)), Err(ModuleError::NotLaurent(_))));
    }

    #[test]
    fn symbol_text() {
        let g = parse_graph("vertex u\nvertex v\nedge g u v\nedge c v v").unwrap();
        let x = Symbol::Pair { p: g.path_from_names(&["g", "c"]).unwrap(), q: Path::vertex(VertexId(1)) };
        assert_eq!(x.display(&g), "g.c*v");
        assert_eq!(Symbol::parse(&g, "g.c*v", |_| None).unwrap(), x);
        let t = Symbol::Tail { prefix: Path::vertex(VertexId(1)), state: 0 };
        assert_eq!(t.display(&g), "@0");
        assert_eq!(Symbol::parse(&g, "@0", |_| Some(VertexId(1))).unwrap(), t);
    }
}

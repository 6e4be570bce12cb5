use serde::Serialize;

use super::{validate, BranchingSystem, InfinitePathSpec, ModuleError, Rationality, Symbol, ValidationReport};
use super::{DEFAULT_FAMILY_SAMPLE, DEGREE_SHIFT};
use crate::graph::{paths_ending_at, EdgeRef, Graph, Path, VertexId};

/// Edges materialized for substitution words.
const WORD_HORIZON: usize = 1024;

/// Chen's module `V_[p]`: infinite paths tail-equivalent to `p`.
///
/// The tails of `p` are the states of an automaton: state `n` is the path
/// after its first `n` edges, reading the edge at position `n` leads to
/// state `n + 1`, and for a lasso `μ ccc...` the last cycle state loops back
/// to state `|μ|`. Distinct states are distinct tails, so every path in
/// `[p]` is uniquely `w` followed by a state, with `w` as short as possible.
#[derive(Debug, Clone)]
pub struct VpSystem<'g> {
    graph: &'g Graph,
    spec: InfinitePathSpec,
    edges: Vec<EdgeRef>,
    loop_to: Option<usize>,
    graded: bool,
    sample: u32,
}

impl<'g> VpSystem<'g> {
    pub fn new(graph: &'g Graph, spec: &InfinitePathSpec) -> Result<Self, ModuleError> {
        spec.validate(graph)?;
        let (edges, loop_to) = match spec.normalized_lasso(graph) {
            Some((mu, c)) => {
                let mut edges = mu.edges().to_vec();
                edges.extend_from_slice(c.edges());
                (edges, Some(mu.len()))
            }
            None => (spec.prefix(graph, WORD_HORIZON)?, None),
        };
        let graded = matches!(spec.rationality(graph)?, Rationality::Irrational { .. });
        Ok(VpSystem { graph, spec: spec.clone(), edges, loop_to, graded, sample: DEFAULT_FAMILY_SAMPLE })
    }

    pub fn with_family_sample(mut self, sample: u32) -> Self {
        self.sample = sample;
        self
    }

    pub fn spec(&self) -> &InfinitePathSpec {
        &self.spec
    }

    fn states(&self) -> usize {
        self.edges.len()
    }

    fn next(&self, n: usize) -> Option<usize> {
        if n + 1 < self.edges.len() {
            Some(n + 1)
        } else {
            self.loop_to
        }
    }

    fn state_source(&self, n: usize) -> VertexId {
        self.graph.source(self.edges[n])
    }

    /// The state `t` with `next(t) = n` entered by `e`, if any.
    fn predecessor(&self, n: usize, e: EdgeRef) -> Option<usize> {
        if n > 0 && self.edges[n - 1] == e {
            return Some(n - 1);
        }
        let last = self.edges.len() - 1;
        (self.loop_to == Some(n) && self.edges[last] == e).then_some(last)
    }

    fn canonical(&self, mut prefix: Path, mut state: usize) -> Symbol {
        while let Some(e) = prefix.last_edge() {
            match self.predecessor(state, e) {
                Some(t) => {
                    prefix = prefix.init(self.graph).unwrap();
                    state = t;
                }
                None => break,
            }
        }
        Symbol::Tail { prefix, state }
    }

    fn first_edge(&self, x: &Symbol) -> Option<EdgeRef> {
        match x {
            Symbol::Tail { prefix, state } => prefix.first_edge().or_else(|| self.edges.get(*state).copied()),
            _ => None,
        }
    }

    fn source(&self, x: &Symbol) -> Option<VertexId> {
        match x {
            Symbol::Tail { prefix, .. } => Some(prefix.source()),
            _ => None,
        }
    }

    /// The symbol of `p` itself.
    pub fn base_point(&self) -> Symbol {
        Symbol::Tail { prefix: Path::vertex(self.state_source(0)), state: 0 }
    }

    /// The symbol of the periodic tail `ccc...` of a lasso.
    pub fn periodic_point(&self) -> Option<Symbol> {
        let n = self.loop_to?;
        Some(Symbol::Tail { prefix: Path::vertex(self.state_source(n)), state: n })
    }
}

impl BranchingSystem for VpSystem<'_> {
    fn graph(&self) -> &Graph {
        self.graph
    }

    fn name(&self) -> String {
        format!("V_[p]({})", self.spec.describe(self.graph))
    }

    fn symbols(&self, depth: usize) -> Vec<Symbol> {
        let mut out = Vec::new();
        for n in 0..self.states().min(depth + 1) {
            for w in paths_ending_at(self.graph, self.state_source(n), depth - n, self.sample) {
                if w.last_edge().is_none_or(|e| self.predecessor(n, e).is_none()) {
                    out.push(Symbol::Tail { prefix: w, state: n });
                }
            }
        }
        out.sort_by(|a, b| self.size(a).cmp(&self.size(b)).then_with(|| a.cmp(b)));
        out
    }

    fn size(&self, x: &Symbol) -> usize {
        match x {
            Symbol::Tail { state, .. } if *state >= self.states() => usize::MAX,
            Symbol::Tail { prefix, state } => prefix.len() + state,
            _ => 0,
        }
    }

    fn contains(&self, x: &Symbol) -> bool {
        match x {
            Symbol::Tail { prefix, state } => {
                *state < self.states()
                    && prefix.range() == self.state_source(*state)
                    && prefix.last_edge().is_none_or(|e| self.predecessor(*state, e).is_none())
            }
            _ => false,
        }
    }

    fn in_vertex(&self, x: &Symbol, v: VertexId) -> bool {
        self.source(x) == Some(v)
    }

    fn in_edge(&self, x: &Symbol, e: EdgeRef) -> bool {
        self.first_edge(x) == Some(e)
    }

    fn sigma(&self, e: EdgeRef, x: &Symbol) -> Option<Symbol> {
        let Symbol::Tail { prefix, state } = x else { return None };
        (prefix.source() == self.graph.range(e)).then(|| self.canonical(prefix.prepend(self.graph, e), *state))
    }

    fn sigma_inv(&self, e: EdgeRef, x: &Symbol) -> Option<Symbol> {
        let Symbol::Tail { prefix, state } = x else { return None };
        if self.first_edge(x) != Some(e) {
            return None;
        }
        match prefix.tail(self.graph) {
            Some(rest) => Some(Symbol::Tail { prefix: rest, state: *state }),
            None => {
                // Past the materialized word: report as a state beyond the horizon.
                let next = self.next(*state).unwrap_or(self.states());
                let source = if next < self.states() { self.state_source(next) } else { self.graph.range(e) };
                Some(Symbol::Tail { prefix: Path::vertex(source), state: next })
            }
        }
    }

    /// `|w| - n` for `w` followed by state `n`, on irrational paths only.
    fn degree(&self, x: &Symbol) -> Option<i64> {
        match x {
            Symbol::Tail { prefix, state } if self.graded => Some(prefix.len() as i64 - *state as i64),
            _ => None,
        }
    }

    fn is_graded(&self) -> bool {
        self.graded
    }

    fn generator(&self) -> Symbol {
        self.base_point()
    }

    fn family_sample(&self) -> u32 {
        self.sample
    }

    fn parse_symbol(&self, text: &str) -> Result<Symbol, ModuleError> {
        let x = Symbol::parse(self.graph, text, |n| (n < self.states()).then(|| self.state_source(n)))?;
        if self.contains(&x) {
            Ok(x)
        } else {
            Err(ModuleError::BadSymbol(text.to_string()))
        }
    }
}

/// Whether `V_[p]` admits a grading.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Gradedness {
    /// Irrational path: `deg = |w| - n` satisfies condition (5).
    Graded { rationality: Rationality, validation: ValidationReport },
    /// Rational path `ccc...`: `c` fixes the point, forcing `deg = deg + |c|`.
    NotGradable { point: String, cycle: Vec<String>, cycle_length: usize, certificate: String },
    /// The period scan found a period; nothing is claimed.
    Undecided { rationality: Rationality },
}

impl Gradedness {
    pub fn is_graded(&self) -> bool {
        matches!(self, Gradedness::Graded { .. })
    }
}

pub fn vp_gradedness(g: &Graph, spec: &InfinitePathSpec, depth: usize) -> Result<Gradedness, ModuleError> {
    let system = VpSystem::new(g, spec)?;
    let rationality = spec.rationality(g)?;
    match rationality {
        Rationality::Rational { cycle } => {
            let point = system.periodic_point().expect("lasso has a periodic tail");
            let n = cycle.len();
            Ok(Gradedness::NotGradable {
                point: point.display(g),
                cycle,
                cycle_length: n,
                certificate: format!("deg(p) = deg(cp) = deg(p) + |c| with |c| = {n}"),
            })
        }
        Rationality::Irrational { .. } => {
            let validation = validate(&system, depth);
            if !validation.passed() {
                let detail = validation.first_violation().map(|c| format!("{c:?}")).unwrap_or_default();
                return Err(ModuleError::InvalidSpec(format!("degree map failed validation: {detail}")));
            }
            debug_assert!(validation.outcome(DEGREE_SHIFT).is_some());
            Ok(Gradedness::Graded { rationality, validation })
        }
        Rationality::PossiblyRational { .. } => Ok(Gradedness::Undecided { rationality }),
    }
}

/// Whether `V_[p]` is finitely presented: some vertex of `p` must be a line
/// point. Returns the verdict and its reason.
pub fn vp_finitely_presented(g: &Graph, spec: &InfinitePathSpec) -> Result<(bool, String), ModuleError> {
    match spec.rationality(g)? {
        Rationality::Rational { .. } => return Err(ModuleError::Rational),
        Rationality::PossiblyRational { .. } => return Err(ModuleError::NotCertifiedIrrational),
        Rationality::Irrational { .. } => {}
    }
    let edges = spec.prefix(g, spec.window())?;
    let mut seen = std::collections::BTreeSet::new();
    for &e in &edges {
        seen.insert(g.source(e));
    }
    if let Some(&v) = seen.iter().find(|&&v| g.is_line_point(v)) {
        return Ok((true, format!("vertex `{}` on p is a line point", g.vertex_name(v))));
    }
    let names: Vec<String> = seen.iter().map(|&v| g.vertex_name(v).to_string()).collect();
    Ok((
        false,
        format!("no line point on p; its vertices {{{}}} all lie on cycles of a finite graph", names.join(", ")),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::branching::{act, ModuleVector, BIJECTIVE, COVERED, DISJOINT};
    use crate::graph::parse_graph;

    fn rose() -> Graph {
        parse_graph("vertex v\nedge a v v\nedge b v v").unwrap()
    }

    #[test]
    fn loop_lasso_symbols() {
        let g = parse_graph("vertex v\nedge e v v").unwrap();
        let spec = InfinitePathSpec::parse(&g, "lasso v ; e").unwrap();
        let vp = VpSystem::new(&g, &spec).unwrap();
        assert_eq!(vp.symbols(6).len(), 1);
        assert!(!vp.is_graded());
        let report = validate(&vp, 6);
        assert!(report.passed());
        assert_eq!(report.outcome(DEGREE_SHIFT), Some(&super::super::Outcome::Skipped("no degree map".into())));
        let alg = Algebra::new(&g);
        let p = ModuleVector::basis(vp.base_point());
        assert_eq!(act(&vp, &alg.parse("e").unwrap(), &p, 4).unwrap(), p);
        assert_eq!(act(&vp, &alg.parse("e*").unwrap(), &p, 4).unwrap(), p);
    }

    #[test]
    fn rose_lasso_validates() {
        let g = rose();
        let spec = InfinitePathSpec::parse(&g, "lasso a ; a b").unwrap();
        let vp = VpSystem::new(&g, &spec).unwrap();
        let report = validate(&vp, 6);
        for c in [DISJOINT, COVERED, BIJECTIVE] {
            assert_eq!(report.outcome(c), Some(&super::super::Outcome::Pass));
        }
    }

    #[test]
    fn thue_morse_graded() {
        let g = rose();
        let spec = InfinitePathSpec::parse(&g, "subst a -> ab, b -> ba seed a depth 64").unwrap();
        let vp = VpSystem::new(&g, &spec).unwrap();
        assert!(vp.is_graded());
        assert!(validate(&vp, 8).passed());
        let x = vp.parse_symbol("a@3").unwrap();
        assert_eq!(vp.degree(&x), Some(-2));
        assert!(vp.parse_symbol("b@3").is_err());
    }

    #[test]
    fn gradedness_dichotomy() {
        let g = parse_graph("vertex v\nedge e v v").unwrap();
        let spec = InfinitePathSpec::parse(&g, "lasso v ; e").unwrap();
        match vp_gradedness(&g, &spec, 6).unwrap() {
            Gradedness::NotGradable { cycle_length, .. } => assert_eq!(cycle_length, 1),
            other => panic!("{other:?}"),
        }
        let r2 = rose();
        let spec = InfinitePathSpec::parse(&r2, "lasso v ; a b").unwrap();
        assert!(matches!(vp_gradedness(&r2, &spec, 6).unwrap(), Gradedness::NotGradable { cycle_length: 2, .. }));
        let tm = InfinitePathSpec::parse(&r2, "subst a -> ab, b -> ba seed a depth 64").unwrap();
        assert!(vp_gradedness(&r2, &tm, 10).unwrap().is_graded());
    }

    #[test]
    fn finite_presentation() {
        let g = rose();
        let tm = InfinitePathSpec::parse(&g, "subst a -> ab, b -> ba seed a depth 64").unwrap();
        let (fp, reason) = vp_finitely_presented(&g, &tm).unwrap();
        assert!(!fp);
        assert!(reason.starts_with("no line point on p"));
        let r1 = parse_graph("vertex v\nedge e v v").unwrap();
        let lasso = InfinitePathSpec::parse(&r1, "lasso v ; e").unwrap();
        assert_eq!(vp_finitely_presented(&r1, &lasso), Err(ModuleError::Rational));
    }
}

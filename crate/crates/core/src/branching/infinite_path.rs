//! Finitely described infinite paths: lassos `μ ccc...` and fixed points of
//! edge substitutions.
//!
//! Text forms:
//!
//! ```text
//! lasso <prefix-word> ; <cycle-word>
//! subst a -> a b, b -> b a seed a depth 64
//! ```
//!
//! Words are whitespace-separated edge ids; a vertex id (or nothing) stands
//! for an empty prefix. A substitution image may also be written as a run of
//! one-letter edge ids (`a -> ab`).

use std::collections::BTreeMap;

use serde::Serialize;

use super::ModuleError;
use crate::graph::{EdgeRef, Graph, Path};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InfinitePathSpec {
    Lasso { prefix: Path, cycle: Path },
    Substitution { rules: BTreeMap<EdgeRef, Vec<EdgeRef>>, seed: EdgeRef, check_depth: usize },
}

/// What is known about the rationality of an infinite path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Rationality {
    /// Tail-equivalent to `ccc...`; the primitive cycle is recorded by edge ids.
    Rational { cycle: Vec<String> },
    /// No preperiod and period up to `depth` fits a prefix of length `window`.
    Irrational { depth: usize, window: usize },
    /// A period fits the examined window; rationality is not established.
    PossiblyRational { preperiod: usize, period: usize, window: usize },
}

fn invalid(msg: impl Into<String>) -> ModuleError {
    ModuleError::InvalidSpec(msg.into())
}

/// Smallest `d` dividing `len` with `word` invariant under rotation by `d`.
fn primitive_period(word: &[EdgeRef]) -> usize {
    let n = word.len();
    (1..=n).find(|&d| n.is_multiple_of(d) && (0..n).all(|i| word[i] == word[(i + d) % n])).unwrap_or(n)
}

impl InfinitePathSpec {
    pub fn lasso(g: &Graph, prefix: Path, cycle: Path) -> Result<Self, ModuleError> {
        let spec = InfinitePathSpec::Lasso { prefix, cycle };
        spec.validate(g)?;
        Ok(spec)
    }

    pub fn substitution(
        g: &Graph,
        rules: BTreeMap<EdgeRef, Vec<EdgeRef>>,
        seed: EdgeRef,
        check_depth: usize,
    ) -> Result<Self, ModuleError> {
        let spec = InfinitePathSpec::Substitution { rules, seed, check_depth };
        spec.validate(g)?;
        Ok(spec)
    }

    pub fn parse(g: &Graph, text: &str) -> Result<Self, ModuleError> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("lasso") {
            let (prefix, cycle) = rest.split_once(';').ok_or_else(|| invalid("lasso needs `;`"))?;
            let cycle_names: Vec<&str> = cycle.split_whitespace().collect();
            if cycle_names.is_empty() {
                return Err(invalid("empty cycle"));
            }
            let cycle = g.path_from_names(&cycle_names)?;
            let prefix_names: Vec<&str> = prefix.split_whitespace().collect();
            let prefix = match prefix_names.as_slice() {
                [] => Path::vertex(cycle.source()),
                [v] if g.vertex(v).is_ok() => Path::vertex(g.vertex(v)?),
                names => g.path_from_names(names)?,
            };
            return Self::lasso(g, prefix, cycle);
        }
        if let Some(rest) = text.strip_prefix("subst") {
            let (rules_text, tail) = rest.split_once(" seed ").ok_or_else(|| invalid("subst needs `seed`"))?;
            let fields: Vec<&str> = tail.split_whitespace().collect();
            let (seed, depth) = match fields.as_slice() {
                [seed, "depth", n] => (*seed, n.parse::<usize>().map_err(|_| invalid("bad depth"))?),
                _ => return Err(invalid("expected `seed <edge> depth <n>`")),
            };
            let mut rules = BTreeMap::new();
            for rule in rules_text.split(',') {
                let (lhs, rhs) = rule.split_once("->").ok_or_else(|| invalid(format!("bad rule `{rule}`")))?;
                let lhs = g.edge(lhs.trim())?;
                rules.insert(lhs, parse_image(g, rhs)?);
            }
            return Self::substitution(g, rules, g.edge(seed)?, depth);
        }
        Err(invalid("expected `lasso` or `subst`"))
    }

    pub fn validate(&self, g: &Graph) -> Result<(), ModuleError> {
        match self {
            InfinitePathSpec::Lasso { prefix, cycle } => {
                if cycle.is_vertex() || !cycle.is_closed() {
                    return Err(invalid("cycle must be a closed path of positive length"));
                }
                if prefix.range() != cycle.source() {
                    return Err(invalid(format!(
                        "no infinite path: prefix ends at `{}` but the cycle is based at `{}`",
                        g.vertex_name(prefix.range()),
                        g.vertex_name(cycle.source())
                    )));
                }
                Ok(())
            }
            InfinitePathSpec::Substitution { rules, seed, check_depth } => {
                if *check_depth == 0 {
                    return Err(invalid("depth must be positive"));
                }
                if rules.values().any(Vec::is_empty) {
                    return Err(invalid("substitution images must be non-empty"));
                }
                let image = rules.get(seed).cloned().unwrap_or_else(|| vec![*seed]);
                if image.first() != Some(seed) || image.len() < 2 {
                    return Err(invalid("the seed's image must start with the seed and be longer than it"));
                }
                let word = self.prefix(g, self.window())?;
                for w in word.windows(2) {
                    if g.range(w[0]) != g.source(w[1]) {
                        return Err(invalid(format!("{} then {} is not a path", g.edge_name(w[0]), g.edge_name(w[1]))));
                    }
                }
                Ok(())
            }
        }
    }

    /// Length of the prefix examined by the period scan.
    pub fn window(&self) -> usize {
        match self {
            InfinitePathSpec::Lasso { .. } => 0,
            InfinitePathSpec::Substitution { check_depth, .. } => 16 * check_depth.max(&4),
        }
    }

    /// The first `n` edges.
    pub fn prefix(&self, g: &Graph, n: usize) -> Result<Vec<EdgeRef>, ModuleError> {
        let _ = g;
        match self {
            InfinitePathSpec::Lasso { prefix, cycle } => {
                let mut out: Vec<EdgeRef> = prefix.edges().iter().take(n).copied().collect();
                while out.len() < n {
                    out.extend(cycle.edges().iter().take(n - out.len()));
                }
                Ok(out)
            }
            InfinitePathSpec::Substitution { rules, seed, .. } => {
                let mut word = vec![*seed];
                while word.len() < n {
                    let next: Vec<EdgeRef> =
                        word.iter().flat_map(|e| rules.get(e).cloned().unwrap_or_else(|| vec![*e])).collect();
                    if next.len() <= word.len() {
                        return Err(invalid("substitution does not grow"));
                    }
                    word = next;
                }
                word.truncate(n);
                Ok(word)
            }
        }
    }

    /// Minimal lasso form: shortest prefix and a primitive cycle.
    pub fn normalized_lasso(&self, g: &Graph) -> Option<(Path, Path)> {
        let InfinitePathSpec::Lasso { prefix, cycle } = self else { return None };
        let period = primitive_period(cycle.edges());
        let mut c: Vec<EdgeRef> = cycle.edges()[..period].to_vec();
        let mut mu = prefix.clone();
        while let Some(last) = mu.last_edge() {
            if last != *c.last().unwrap() {
                break;
            }
            mu = mu.init(g).unwrap();
            c.rotate_right(1);
        }
        let c = Path::from_edges(g, c).expect("rotation of a cycle is a cycle");
        Some((mu, c))
    }

    pub fn rationality(&self, g: &Graph) -> Result<Rationality, ModuleError> {
        if let Some((_, c)) = self.normalized_lasso(g) {
            return Ok(Rationality::Rational { cycle: c.edge_names(g) });
        }
        let InfinitePathSpec::Substitution { check_depth, .. } = self else { unreachable!() };
        let depth = *check_depth;
        let window = self.window();
        let word = self.prefix(g, window)?;
        for preperiod in 0..=depth {
            for period in 1..=depth {
                if preperiod + period >= window {
                    continue;
                }
                if (preperiod..window - period).all(|i| word[i] == word[i + period]) {
                    return Ok(Rationality::PossiblyRational { preperiod, period, window });
                }
            }
        }
        Ok(Rationality::Irrational { depth, window })
    }

    /// False only for paths certified irrational up to their check depth.
    pub fn is_rational(&self, g: &Graph) -> Result<bool, ModuleError> {
        Ok(!matches!(self.rationality(g)?, Rationality::Irrational { .. }))
    }

    pub fn describe(&self, g: &Graph) -> String {
        match self {
            InfinitePathSpec::Lasso { prefix, cycle } => {
                format!("lasso {} ; {}", prefix.display(g), cycle.edge_names(g).join(" "))
            }
            InfinitePathSpec::Substitution { rules, seed, check_depth } => {
                let rules: Vec<String> = rules
                    .iter()
                    .map(|(l, r)| {
                        let image: Vec<String> = r.iter().map(|&e| g.edge_name(e)).collect();
                        format!("{} -> {}", g.edge_name(*l), image.join(" "))
                    })
                    .collect();
                format!("subst {} seed {} depth {}", rules.join(", "), g.edge_name(*seed), check_depth)
            }
        }
    }
}

fn parse_image(g: &Graph, rhs: &str) -> Result<Vec<EdgeRef>, ModuleError> {
    let words: Vec<&str> = rhs.split_whitespace().collect();
    if words.len() == 1 && g.edge(words[0]).is_err() {
        return words[0].chars().map(|c| Ok(g.edge(&c.to_string())?)).collect();
    }
    words.iter().map(|w| Ok(g.edge(w)?)).collect()
}

/// Whether two infinite paths share a tail. Lasso pairs are decided exactly;
/// otherwise shifts up to `depth` are compared over a window of `16 depth`
/// edges.
pub fn tail_equivalent(
    g: &Graph,
    p: &InfinitePathSpec,
    q: &InfinitePathSpec,
    depth: usize,
) -> Result<bool, ModuleError> {
    if let (Some((_, c)), Some((_, d))) = (p.normalized_lasso(g), q.normalized_lasso(g)) {
        let (c, d) = (c.edges(), d.edges());
        return Ok(c.len() == d.len() && (0..c.len()).any(|r| (0..c.len()).all(|i| c[(i + r) % c.len()] == d[i])));
    }
    let window = 16 * depth.max(1);
    let a = p.prefix(g, depth + window)?;
    let b = q.prefix(g, depth + window)?;
    Ok((0..=depth).any(|m| (0..=depth).any(|n| a[m..m + window] == b[n..n + window])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn rose() -> Graph {
        parse_graph("vertex v\nedge a v v\nedge b v v").unwrap()
    }

    #[test]
    fn thue_morse_is_irrational() {
        let g = rose();
        let tm = InfinitePathSpec::parse(&g, "subst a -> ab, b -> ba seed a depth 64").unwrap();
        let word = tm.prefix(&g, 8).unwrap();
        let names: Vec<String> = word.iter().map(|&e| g.edge_name(e)).collect();
        assert_eq!(names.concat(), "abbabaab");
        assert_eq!(tm.rationality(&g).unwrap(), Rationality::Irrational { depth: 64, window: 1024 });
        assert!(!tm.is_rational(&g).unwrap());
    }

    #[test]
    fn periodic_substitution_is_flagged() {
        let g = rose();
        let s = InfinitePathSpec::parse(&g, "subst a -> a b seed a depth 8").unwrap();
        assert!(matches!(s.rationality(&g).unwrap(), Rationality::PossiblyRational { preperiod: 1, period: 1, .. }));
        assert!(s.is_rational(&g).unwrap());
    }

    #[test]
    fn lassos_are_rational_and_normalized() {
        let g = parse_graph("vertex v\nedge e v v").unwrap();
        let p = InfinitePathSpec::parse(&g, "lasso v ; e").unwrap();
        let q = InfinitePathSpec::parse(&g, "lasso e e ; e e").unwrap();
        assert!(p.is_rational(&g).unwrap());
        let (mu, c) = q.normalized_lasso(&g).unwrap();
        assert!(mu.is_vertex());
        assert_eq!(c.len(), 1);
        assert!(tail_equivalent(&g, &p, &q, 4).unwrap());
    }

    #[test]
    fn lasso_rotation() {
        let g = rose();
        let p = InfinitePathSpec::parse(&g, "lasso b ; a b").unwrap();
        let (mu, c) = p.normalized_lasso(&g).unwrap();
        assert!(mu.is_vertex());
        assert_eq!(c.edge_names(&g), vec!["b", "a"]);
        let q = InfinitePathSpec::parse(&g, "lasso ; a b").unwrap();
        assert!(tail_equivalent(&g, &p, &q, 4).unwrap());
        let r = InfinitePathSpec::parse(&g, "lasso ; a").unwrap();
        assert!(!tail_equivalent(&g, &p, &r, 4).unwrap());
    }

    #[test]
    fn invalid_specs() {
        let t = parse_graph("vertex v\nvertex w\nedge e v v\nedge f v w").unwrap();
        assert!(InfinitePathSpec::parse(&t, "lasso f ; e").is_err());
        assert!(InfinitePathSpec::parse(&t, "lasso ; f").is_err());
        let g = rose();
        assert!(InfinitePathSpec::parse(&g, "subst a -> ba seed a depth 8").is_err());
        assert!(InfinitePathSpec::parse(&g, "walk a").is_err());
    }

    #[test]
    fn substitution_tail_shift() {
        let g = rose();
        let tm = InfinitePathSpec::parse(&g, "subst a -> ab, b -> ba seed a depth 16").unwrap();
        let pd = InfinitePathSpec::parse(&g, "subst a -> ab, b -> aa seed a depth 16").unwrap();
        assert!(tail_equivalent(&g, &tm, &tm, 4).unwrap());
        assert!(!tail_equivalent(&g, &tm, &pd, 4).unwrap());
    }
}

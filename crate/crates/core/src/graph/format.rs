//! Line-oriented text format:
//!
//! ```text
//! # the Toeplitz graph
//! vertex v
//! vertex w
//! edge e v v
//! edge f v w
//! infinite-family g v w
//! ```

use std::fmt;

use super::{Graph, GraphError};

/// Identifiers start with a letter or `_` and continue with letters, digits, `_` or `'`.
pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

enum Line<'a> {
    Vertex(&'a str),
    Edge(&'a str, &'a str, &'a str),
    Family(&'a str, &'a str, &'a str),
}

fn parse_line(line: &str, number: usize) -> Result<Option<Line<'_>>, GraphError> {
    let content = line.split('#').next().unwrap_or("").trim();
    if content.is_empty() {
        return Ok(None);
    }
    let fields: Vec<&str> = content.split_whitespace().collect();
    let syntax = |message: String| GraphError::Syntax { line: number, message };
    for id in &fields[1..] {
        if !is_identifier(id) {
            return Err(syntax(format!("invalid identifier `{id}`")));
        }
    }
    match (fields[0], fields.len()) {
        ("vertex", 2) => Ok(Some(Line::Vertex(fields[1]))),
        ("edge", 4) => Ok(Some(Line::Edge(fields[1], fields[2], fields[3]))),
        ("infinite-family", 4) => Ok(Some(Line::Family(fields[1], fields[2], fields[3]))),
        ("vertex", _) => Err(syntax("expected `vertex <id>`".into())),
        ("edge", _) => Err(syntax("expected `edge <id> <src> <dst>`".into())),
        ("infinite-family", _) => Err(syntax("expected `infinite-family <name> <src> <dst>`".into())),
        (kw, _) => Err(syntax(format!("unknown keyword `{kw}`"))),
    }
}

/// Parses the graph text format. Vertices may be declared after the edges
/// that mention them; identifiers share a single namespace.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        if let Some(line) = parse_line(raw, i + 1)? {
            lines.push((i + 1, line));
        }
    }
    let mut g = Graph::new();
    for (number, line) in &lines {
        if let Line::Vertex(name) = line {
            g.add_vertex(name).map_err(|name| GraphError::DuplicateId { line: *number, name })?;
        }
    }
    for (number, line) in &lines {
        let (name, src, dst, family) = match line {
            Line::Vertex(_) => continue,
            Line::Edge(n, s, d) => (n, s, d, false),
            Line::Family(n, s, d) => (n, s, d, true),
        };
        let endpoint =
            |x: &str| g.vertex(x).map_err(|_| GraphError::DanglingEndpoint { line: *number, name: x.to_string() });
        let (s, d) = (endpoint(src)?, endpoint(dst)?);
        let added = if family { g.add_family(name, s, d).map(|_| ()) } else { g.add_edge(name, s, d).map(|_| ()) };
        added.map_err(|name| GraphError::DuplicateId { line: *number, name })?;
    }
    Ok(g)
}

/// Canonical serialization: vertices, then edges, then families, each in
/// declaration order.
impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "vertex {v}")?;
        }
        for e in &self.edges {
            writeln!(f, "edge {} {} {}", e.name, self.vertices[e.source.0], self.vertices[e.range.0])?;
        }
        for fam in &self.families {
            writeln!(f, "infinite-family {} {} {}", fam.name, self.vertices[fam.source.0], self.vertices[fam.range.0])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexClass;

    #[test]
    fn parses_loop_graph() {
        let g = parse_graph("vertex v\nedge e v v").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 1);
        let v = g.vertex("v").unwrap();
        assert_eq!(g.classify(v), VertexClass::Regular);
    }

    #[test]
    fn parses_toeplitz_graph() {
        let g = parse_graph("vertex v\nvertex w\nedge e v v\nedge f v w").unwrap();
        assert_eq!(g.classify_vertex("w").unwrap(), VertexClass::Sink);
        assert_eq!(g.classify_vertex("v").unwrap(), VertexClass::Regular);
        assert_eq!(g.out_degree(g.vertex("v").unwrap()), 2);
    }

    #[test]
    fn parses_infinite_family() {
        let g = parse_graph("vertex u\nvertex v\ninfinite-family g u v").unwrap();
        assert_eq!(g.classify_vertex("u").unwrap(), VertexClass::InfiniteEmitter);
        assert_eq!(g.classify_vertex("v").unwrap(), VertexClass::Sink);
        assert!(!g.is_row_finite());
        let member = g.edge("g[7]").unwrap();
        assert_eq!(g.edge_name(member), "g[7]");
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let g = parse_graph("# comment\n\nvertex v # trailing\nedge e v v\n").unwrap();
        assert_eq!(g.to_string(), "vertex v\nedge e v v\n");
    }

    #[test]
    fn syntax_error_reports_line() {
        let err = parse_graph("vertex v\nedge e v\n").unwrap_err();
        assert!(matches!(err, GraphError::Syntax { line: 2, .. }));
        let err = parse_graph("vertex v\nloop e v\n").unwrap_err();
        assert!(matches!(err, GraphError::Syntax { line: 2, .. }));
    }

    #[test]
    fn dangling_endpoint_is_rejected() {
        let err = parse_graph("vertex v\nedge e v w\n").unwrap_err();
        assert_eq!(err, GraphError::DanglingEndpoint { line: 2, name: "w".into() });
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let err = parse_graph("vertex v\nvertex v\n").unwrap_err();
        assert_eq!(err, GraphError::DuplicateId { line: 2, name: "v".into() });
        let err = parse_graph("vertex v\nedge e v v\nedge e v v\n").unwrap_err();
        assert!(matches!(err, GraphError::DuplicateId { line: 3, .. }));
        let err = parse_graph("vertex v\nedge v v v\n").unwrap_err();
        assert!(matches!(err, GraphError::DuplicateId { line: 2, .. }));
    }

    #[test]
    fn canonical_text_round_trips() {
        let text = "vertex u\nvertex v\nedge a u v\nedge b v v\ninfinite-family g u v\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.to_string(), text);
        assert_eq!(parse_graph(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn identifiers() {
        assert!(is_identifier("v1"));
        assert!(is_identifier("u'"));
        assert!(!is_identifier("1v"));
        assert!(!is_identifier("e*"));
        assert!(!is_identifier("g[0]"));
    }
}

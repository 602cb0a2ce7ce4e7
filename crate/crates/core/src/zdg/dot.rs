use std::fmt::Write;

use super::Digraph;

/// Graphviz DOT text. Node lines come in index order, edge lines in
/// lexicographic `(u, v)` order. When `sizes` is given each label gets a
/// ` /<size>` suffix.
pub fn export_dot(g: &Digraph, names: Option<&[String]>, sizes: Option<&[usize]>) -> String {
    let mut out = String::from("digraph zdg {\n");
    for v in 0..g.vcount() {
        let mut label = match names {
            Some(names) => escape(&names[v]),
            None => v.to_string(),
        };
        if let Some(sizes) = sizes {
            let _ = write!(label, " /{}", sizes[v]);
        }
        let _ = writeln!(out, "  v{v} [label=\"{label}\"];");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  v{u} -> v{v};");
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_dot() {
        let g = Digraph::from_edges(2, &[(0, 0), (0, 1), (1, 0)]);
        assert_eq!(
            export_dot(&g, None, None),
            "digraph zdg {\n  v0 [label=\"0\"];\n  v1 [label=\"1\"];\n  v0 -> v0;\n  v0 -> v1;\n  v1 -> v0;\n}\n"
        );
    }

    #[test]
    fn single_vertex_without_edges() {
        let g = Digraph::from_edges(1, &[]);
        assert_eq!(export_dot(&g, None, None), "digraph zdg {\n  v0 [label=\"0\"];\n}\n");
    }

    #[test]
    fn sizes_and_names() {
        let g = Digraph::from_edges(2, &[(0, 0), (0, 1), (1, 0)]);
        let names = vec!["0".to_string(), "a".to_string()];
        let dot = export_dot(&g, Some(&names), Some(&[1, 2]));
        assert!(dot.contains("  v1 [label=\"a /2\"];\n"));
    }
}

//! JSON and DOT serialization for graphs and colourings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::colouring::Colouring;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// On-disk graph schema: `{"n": int, "edges": [[i,j],...], "label": str}`,
/// each edge listed once with `i < j`.
#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    label: String,
}

pub fn graph_to_json(g: &Graph) -> String {
    let file = GraphFile {
        n: g.n(),
        edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        label: g.label().unwrap_or_default().to_string(),
    };
    serde_json::to_string(&file).expect("graph serializes")
}

pub fn graph_from_json(text: &str) -> Result<Graph> {
    let file: GraphFile = serde_json::from_str(text)?;
    let edges: Vec<(usize, usize)> = file.edges.iter().map(|e| (e[0], e[1])).collect();
    let mut g = Graph::from_edges(file.n, &edges)?;
    if !file.label.is_empty() {
        g.set_label(Some(file.label));
    }
    Ok(g)
}

pub fn write_graph(path: &std::path::Path, g: &Graph) -> Result<()> {
    std::fs::write(path, graph_to_json(g) + "\n")?;
    Ok(())
}

pub fn read_graph(path: &std::path::Path) -> Result<Graph> {
    graph_from_json(&std::fs::read_to_string(path)?)
}

#[derive(Debug, Serialize, Deserialize)]
struct ColouringFile {
    n: usize,
    colours: Vec<usize>,
    num_colours: usize,
}

/// `{"n": int, "colours": [int,...], "num_colours": int}`
pub fn colouring_to_json(c: &Colouring) -> String {
    let file = ColouringFile {
        n: c.len(),
        colours: c.colours().to_vec(),
        num_colours: c.num_colours(),
    };
    serde_json::to_string(&file).expect("colouring serializes")
}

pub fn colouring_from_json(text: &str) -> Result<Colouring> {
    let file: ColouringFile = serde_json::from_str(text)?;
    if file.colours.len() != file.n {
        return Err(Error::input(format!(
            "colouring lists {} colours for n = {}",
            file.colours.len(),
            file.n
        )));
    }
    let c = Colouring::new(file.colours)?;
    if c.num_colours() != file.num_colours {
        return Err(Error::input(format!(
            "num_colours is {} but the colours use {}",
            file.num_colours,
            c.num_colours()
        )));
    }
    Ok(c)
}

pub fn write_colouring(path: &std::path::Path, c: &Colouring) -> Result<()> {
    std::fs::write(path, colouring_to_json(c) + "\n")?;
    Ok(())
}

pub fn read_colouring(path: &std::path::Path) -> Result<Colouring> {
    colouring_from_json(&std::fs::read_to_string(path)?)
}

/// Fill colours indexed by colour id (wrapping after eight).
pub const PALETTE: [&str; 8] = [
    "#4c72b0", "#c44e52", "#55a868", "#dd8452", "#8172b3", "#937860", "#da8bc3", "#8c8c8c",
];

/// Graphviz `graph` text; vertices are filled by colour id when a colouring
/// is given.
pub fn write_dot(g: &Graph, colouring: Option<&Colouring>) -> Result<String> {
    if let Some(c) = colouring {
        if c.len() != g.n() {
            return Err(Error::input(format!(
                "colouring covers {} vertices, graph has {}",
                c.len(),
                g.n()
            )));
        }
    }
    let mut out = String::new();
    let name = g.label().unwrap_or("G").replace('"', "'");
    writeln!(out, "graph \"{name}\" {{").unwrap();
    writeln!(out, "  node [shape=circle, style=filled, fillcolor=white];").unwrap();
    for v in 0..g.n() {
        match colouring {
            Some(c) => {
                let fill = PALETTE[c.colour(v) % PALETTE.len()];
                writeln!(out, "  {v} [label=\"v{v}\", fillcolor=\"{fill}\"];").unwrap();
            }
            None => writeln!(out, "  {v} [label=\"v{v}\"];").unwrap(),
        }
    }
    for (i, j) in g.edges() {
        writeln!(out, "  {i} -- {j};").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn malformed_json_reports_line() {
        let err = graph_from_json("{\n  \"n\": 3,\n  \"edges\": [[0,1],\n}").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            graph_from_json(r#"{"n":2,"edges":[[0,2]],"label":""}"#),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            graph_from_json(r#"{"n":2,"edges":[[1,1]],"label":""}"#),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn dot_colours_vertices() {
        let g = Graph::complete(2).with_label("K2");
        let c = Colouring::new(vec![0, 1]).unwrap();
        let dot = write_dot(&g, Some(&c)).unwrap();
        assert!(dot.starts_with("graph \"K2\" {"));
        assert!(dot.contains(&format!("0 [label=\"v0\", fillcolor=\"{}\"]", PALETTE[0])));
        assert!(dot.contains(&format!("1 [label=\"v1\", fillcolor=\"{}\"]", PALETTE[1])));
        assert!(dot.contains("0 -- 1;"));
        assert!(write_dot(&g, Some(&Colouring::new(vec![0]).unwrap())).is_err());
    }

    #[test]
    fn colouring_schema_checks() {
        let c = colouring_from_json(r#"{"n":3,"colours":[0,1,0],"num_colours":2}"#).unwrap();
        assert_eq!(c.num_colours(), 2);
        assert!(colouring_from_json(r#"{"n":2,"colours":[0,1,0],"num_colours":2}"#).is_err());
        assert!(colouring_from_json(r#"{"n":3,"colours":[0,1,0],"num_colours":3}"#).is_err());
        assert!(colouring_from_json(r#"{"n":2,"colours":[0,2],"num_colours":3}"#).is_err());
    }
}

//! Quiver files (JSON) and Graphviz export.
//!
//! Two JSON shapes are read:
//!
//! ```json
//! {"vertices": [1, 2, 3], "frozen": [[1, 11]], "arrows": [[1, 2, 1], [2, 3, 4]]}
//! {"labels": [1, 2], "b_matrix": [[0, 1], [-1, 0]]}
//! ```
//!
//! Output always uses the first shape, arrows sorted by `(src, dst)`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{Quiver, Vertex};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    frozen: Vec<(Vertex, Vertex)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    arrows: Option<Vec<(Vertex, Vertex, i64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b_matrix: Option<Vec<Vec<i64>>>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Reads either JSON shape.
pub fn quiver_from_json(text: &str) -> Result<Quiver> {
    let file: QuiverFile = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let q = match (file.vertices, file.arrows, file.labels, file.b_matrix) {
        (Some(vertices), arrows, None, None) => {
            Quiver::from_arrows(vertices, &arrows.unwrap_or_default())?
        }
        (None, None, Some(labels), Some(rows)) => Quiver::from_b_matrix(&labels, &rows)?,
        _ => {
            return Err(parse_err(
                "expected either \"vertices\" with \"arrows\", or \"labels\" with \"b_matrix\"",
            ))
        }
    };
    if file.frozen.is_empty() {
        Ok(q)
    } else {
        q.with_frame(file.frozen)
    }
}

fn to_file(q: &Quiver) -> QuiverFile {
    QuiverFile {
        vertices: Some(q.labels().to_vec()),
        frozen: q.frame().to_vec(),
        arrows: Some(q.arrows()),
        labels: None,
        b_matrix: None,
    }
}

/// Canonical single-line JSON.
pub fn quiver_to_json(q: &Quiver) -> String {
    serde_json::to_string(&to_file(q)).expect("plain data serializes")
}

/// Canonical JSON as a value, for embedding in reports.
pub fn quiver_to_value(q: &Quiver) -> serde_json::Value {
    serde_json::to_value(to_file(q)).expect("plain data serializes")
}

/// Graphviz source: frozen vertices are boxes, multiplicities above one
/// label their edge.
pub fn to_dot(q: &Quiver, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", name.replace('"', "\\\"")).unwrap();
    for &v in q.labels() {
        let shape = if q.is_frozen(v) { "box" } else { "circle" };
        writeln!(out, "  {v} [shape={shape}];").unwrap();
    }
    for (s, t, m) in q.arrows() {
        if m > 1 {
            writeln!(out, "  {s} -> {t} [label=\"{m}\"];").unwrap();
        } else {
            writeln!(out, "  {s} -> {t};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

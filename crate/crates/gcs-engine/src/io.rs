use std::collections::BTreeMap;
use std::fmt::Write;
use std::str::FromStr;

use exact_arith::{ArithError, Ring};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::{ExtendedSeed, GQuiver, GcsError, Monomial};

#[derive(Serialize, Deserialize)]
struct VertexRec {
    id: usize,
    label: String,
    frozen: bool,
    multiplicity: u32,
}

#[derive(Serialize, Deserialize)]
struct EdgeRec {
    from: usize,
    to: usize,
    count: u32,
}

#[derive(Serialize, Deserialize)]
struct SeedFile {
    vertices: Vec<VertexRec>,
    edges: Vec<EdgeRec>,
    strings: BTreeMap<usize, Vec<Monomial>>,
    values: Vec<String>,
}

pub fn seed_to_json<T: Ring>(s: &ExtendedSeed<T>) -> Value {
    let q = &s.quiver;
    let file = SeedFile {
        vertices: q
            .vertices()
            .iter()
            .enumerate()
            .map(|(id, v)| VertexRec {
                id,
                label: v.label.clone(),
                frozen: v.frozen,
                multiplicity: v.mult,
            })
            .collect(),
        edges: q
            .edges()
            .map(|(from, to, count)| EdgeRec { from, to, count })
            .collect(),
        strings: s.strings.clone(),
        values: s.values.iter().map(|v| v.to_string()).collect(),
    };
    serde_json::to_value(file).expect("seed serializes")
}

pub fn seed_from_json<T>(v: &Value) -> Result<ExtendedSeed<T>, GcsError>
where
    T: Ring + FromStr<Err = ArithError>,
{
    let file: SeedFile =
        serde_json::from_value(v.clone()).map_err(|e| GcsError::Invalid(e.to_string()))?;
    let mut q = GQuiver::new();
    for (pos, rec) in file.vertices.iter().enumerate() {
        if rec.id != pos {
            return Err(GcsError::Invalid(format!("vertex ids must be 0..n, got {}", rec.id)));
        }
        q.add_vertex(rec.label.clone(), rec.frozen, rec.multiplicity);
    }
    for e in &file.edges {
        if e.from >= q.len() || e.to >= q.len() || e.from == e.to {
            return Err(GcsError::Invalid(format!("bad edge {} -> {}", e.from, e.to)));
        }
        q.add_edges(e.from, e.to, e.count);
    }
    let values = file
        .values
        .iter()
        .map(|s| s.parse())
        .collect::<Result<Vec<T>, _>>()?;
    let mut seed = ExtendedSeed::new(q, values)?;
    for (k, st) in file.strings {
        seed.set_string(k, st)?;
    }
    Ok(seed)
}

/// Graphviz rendering: frozen vertices as boxes, special vertices doubled
/// with their multiplicity in the label.
pub fn to_dot(q: &GQuiver) -> String {
    let mut out = String::from("digraph Q {\n");
    for (i, v) in q.vertices().iter().enumerate() {
        let (shape, label) = if v.frozen {
            ("box", v.label.clone())
        } else if v.mult > 1 {
            ("doublecircle", format!("{} (d={})", v.label, v.mult))
        } else {
            ("ellipse", v.label.clone())
        };
        writeln!(out, "  v{i} [label=\"{label}\", shape={shape}];").unwrap();
    }
    for (i, j, c) in q.edges() {
        if c == 1 {
            writeln!(out, "  v{i} -> v{j};").unwrap();
        } else {
            writeln!(out, "  v{i} -> v{j} [label=\"{c}\"];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

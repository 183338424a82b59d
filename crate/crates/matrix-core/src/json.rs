use std::str::FromStr;

use exact_arith::{ArithError, Ring};
use serde_json::{json, Value};

use crate::{MatrixError, RingMatrix};

/// `{ "rows": r, "cols": c, "entries": [[scalar-string, ...], ...] }`
pub fn matrix_to_json<T: Ring>(m: &RingMatrix<T>) -> Value {
    let entries: Vec<Vec<String>> = (1..=m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

pub fn matrix_from_json<T>(v: &Value) -> Result<RingMatrix<T>, MatrixError>
where
    T: Ring + FromStr<Err = ArithError>,
{
    let bad = |what: &str| MatrixError::Json(what.to_string());
    let rows = v["rows"].as_u64().ok_or_else(|| bad("missing rows"))? as usize;
    let cols = v["cols"].as_u64().ok_or_else(|| bad("missing cols"))? as usize;
    let entries = v["entries"].as_array().ok_or_else(|| bad("missing entries"))?;
    if entries.len() != rows {
        return Err(bad("entries has the wrong number of rows"));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in entries {
        let row = row.as_array().ok_or_else(|| bad("row is not an array"))?;
        if row.len() != cols {
            return Err(bad("row has the wrong length"));
        }
        for x in row {
            let s = match x {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                _ => return Err(bad("entry is not a string")),
            };
            data.push(s.parse::<T>()?);
        }
    }
    RingMatrix::new(rows, cols, data)
}

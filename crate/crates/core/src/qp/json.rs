//! JSON form of a [`QPAlgebra`]. Structure constants are sparse quadruples
//! `[i, j, k, "value"]`; `P` is sparse triples `[row, col, "value"]`.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use super::{CommAlgebra, QPAlgebra, Sparse, MAX_DIM};
use crate::error::{Error, Result};
use crate::scalars::{Matrix, Scalar};

pub const SCHEMA: &str = "qpalg/1";

fn quads(table: &[Sparse], dim: usize) -> Value {
    let mut out = Vec::new();
    for (ij, v) in table.iter().enumerate() {
        for (k, c) in v {
            out.push(json!([ij / dim, ij % dim, k, c.to_string()]));
        }
    }
    Value::Array(out)
}

/// Pretty-printed JSON with sorted keys.
pub fn export_json(a: &QPAlgebra) -> String {
    let dim = a.dim();
    let p = a.p_matrix();
    let mut p_entries = Vec::new();
    for r in 0..dim {
        for c in 0..dim {
            let v = p.get(r, c);
            if !v.is_zero() {
                p_entries.push(json!([r, c, v.to_string()]));
            }
        }
    }
    let unit: Vec<Value> = a
        .unit()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| json!([k, c.to_string()]))
        .collect();
    let doc = json!({
        "schema": SCHEMA,
        "dimension": dim,
        "labels": a.labels(),
        "parity": a.parity(),
        "unit": unit,
        "product": quads(a.mul_table(), dim),
        "bracket": quads(a.bracket_table(), dim),
        "p": p_entries,
        "metadata": a.meta(),
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    schema: String,
    dimension: usize,
    labels: Vec<String>,
    parity: Vec<u8>,
    unit: Vec<(usize, Scalar)>,
    product: Vec<(usize, usize, usize, Scalar)>,
    bracket: Vec<(usize, usize, usize, Scalar)>,
    p: Vec<(usize, usize, Scalar)>,
    #[serde(default)]
    metadata: BTreeMap<String, Value>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn table(entries: Vec<(usize, usize, usize, Scalar)>, dim: usize, what: &str) -> Result<Vec<Sparse>> {
    let mut map: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
    for (i, j, k, c) in entries {
        if i >= dim || j >= dim || k >= dim {
            return Err(bad(format!("{what} entry ({i},{j},{k}) outside dimension {dim}")));
        }
        if map.insert((i, j, k), c).is_some() {
            return Err(bad(format!("duplicate {what} entry ({i},{j},{k})")));
        }
    }
    let mut t = vec![Vec::new(); dim * dim];
    for ((i, j, k), c) in map {
        if !c.is_zero() {
            t[i * dim + j].push((k, c));
        }
    }
    Ok(t)
}

pub fn import_json(text: &str) -> Result<QPAlgebra> {
    let doc: Doc = serde_json::from_str(text).map_err(|e| bad(format!("invalid algebra JSON: {e}")))?;
    if doc.schema != SCHEMA {
        return Err(bad(format!("unsupported schema {:?}", doc.schema)));
    }
    let dim = doc.dimension;
    if dim > MAX_DIM {
        return Err(Error::Size(format!("dimension {dim} exceeds {MAX_DIM}")));
    }
    if doc.labels.len() != dim || doc.parity.len() != dim {
        return Err(bad("labels and parity must have one entry per basis vector"));
    }
    if doc.parity.iter().any(|&p| p > 1) {
        return Err(bad("parity entries must be 0 or 1"));
    }
    let mut unit = vec![Scalar::zero(); dim];
    for (k, c) in doc.unit {
        if k >= dim {
            return Err(bad(format!("unit index {k} outside dimension {dim}")));
        }
        unit[k] = c;
    }
    let mut p = Matrix::zeros(dim, dim);
    for (r, c, v) in doc.p {
        if r >= dim || c >= dim {
            return Err(bad(format!("P entry ({r},{c}) outside dimension {dim}")));
        }
        p.set(r, c, v);
    }
    let comm = CommAlgebra::new(doc.labels, doc.parity, unit, table(doc.product, dim, "product")?)?;
    let mut a = QPAlgebra::new(comm, table(doc.bracket, dim, "bracket")?, p)?;
    for (k, v) in doc.metadata {
        a = a.with_meta(&k, v);
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::k1;
    use super::*;

    #[test]
    fn round_trip() {
        let a = k1().with_meta("family", json!("K"));
        let text = export_json(&a);
        assert!(text.contains("\"schema\": \"qpalg/1\""));
        let b = import_json(&text).unwrap();
        assert_eq!(a, b);
        assert_eq!(export_json(&b), text);
    }

    #[test]
    fn rejects_malformed() {
        let good = export_json(&k1());
        let cases = [
            good.replace("qpalg/1", "qpalg/2"),
            good.replace("\"dimension\": 2", "\"dimension\": 3"),
            "{}".to_string(),
            "[".to_string(),
            good.replace("\"1/2\"", "\"1/0\""),
        ];
        for c in cases {
            assert!(import_json(&c).is_err(), "{c}");
        }
    }
}

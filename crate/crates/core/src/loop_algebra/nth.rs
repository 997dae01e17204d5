//! n-th products of the conformal algebra generated by A:
//! `a₍₀₎b = ∂(P(a)·b) + {a,b} + ⟨a,b⟩`, `a₍₁₎b = P(a)·b + a·P(b)`, and
//! `a₍ₙ₎b = 0` for `n ≥ 2`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::qp::{bilinear, compress, matrix_columns, Acc, CheckResult, QPAlgebra, Sparse, Violation, SCHEMA};
use crate::scalars::{Matrix, Scalar};

/// The products of one ordered basis pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NthProductEntry {
    pub a: usize,
    pub b: usize,
    /// Coefficient of `∂` in `a₍₀₎b`.
    pub zero_d: Sparse,
    /// The part of `a₍₀₎b` without `∂`.
    pub zero_plain: Sparse,
    pub first: Sparse,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NthProductTable {
    labels: Vec<String>,
    parity: Vec<u8>,
    zero_d: Vec<Sparse>,
    zero_plain: Vec<Sparse>,
    first: Vec<Sparse>,
    meta: BTreeMap<String, Value>,
}

/// Which component of the table differs first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionComparison {
    pub equal: bool,
    /// `(a, b, component)` of the first differing entry.
    pub first_difference: Option<(usize, usize, String)>,
}

pub fn nth_products(a: &QPAlgebra) -> NthProductTable {
    let dim = a.dim();
    let p = matrix_columns(a.p_matrix());
    let angle = a.angle_table();
    let mut zero_d = Vec::with_capacity(dim * dim);
    let mut zero_plain = Vec::with_capacity(dim * dim);
    let mut first = Vec::with_capacity(dim * dim);
    let one = Scalar::one();
    for i in 0..dim {
        let ei = vec![(i, one.clone())];
        for j in 0..dim {
            let ej = vec![(j, one.clone())];
            let pa_b = bilinear(a.mul_table(), dim, &p[i], &ej);
            let mut plain = Acc::new(dim);
            plain.add(&one, a.bracket_basis(i, j));
            plain.add(&one, &angle[i * dim + j]);
            let mut f = Acc::new(dim);
            f.add(&one, &pa_b);
            f.add_bilinear(&one, a.mul_table(), &ei, &p[j]);
            zero_d.push(pa_b);
            zero_plain.push(plain.finish());
            first.push(f.finish());
        }
    }
    let mut meta = BTreeMap::new();
    if let Some(spec) = a.meta().get("spec") {
        meta.insert("spec".to_string(), spec.clone());
    }
    meta.insert("basis".to_string(), json!(a.labels()));
    NthProductTable {
        labels: a.labels().to_vec(),
        parity: a.parity().to_vec(),
        zero_d,
        zero_plain,
        first,
        meta,
    }
}

/// Compares the tables of A and of its reduced form.
pub fn reduced_form_comparison(a: &QPAlgebra) -> ReductionComparison {
    let first_difference = nth_products(a).first_difference(&nth_products(&a.reduce()));
    ReductionComparison {
        equal: first_difference.is_none(),
        first_difference,
    }
}

impl NthProductTable {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn meta(&self) -> &BTreeMap<String, Value> {
        &self.meta
    }

    pub fn entry(&self, a: usize, b: usize) -> NthProductEntry {
        let k = a * self.dim() + b;
        NthProductEntry {
            a,
            b,
            zero_d: self.zero_d[k].clone(),
            zero_plain: self.zero_plain[k].clone(),
            first: self.first[k].clone(),
        }
    }

    /// `a₍ₙ₎b` on basis vectors as `(∂-part, plain part)`; zero for `n ≥ 2`.
    pub fn product(&self, n: u32, a: usize, b: usize) -> (Sparse, Sparse) {
        let k = a * self.dim() + b;
        match n {
            0 => (self.zero_d[k].clone(), self.zero_plain[k].clone()),
            1 => (Vec::new(), self.first[k].clone()),
            _ => (Vec::new(), Vec::new()),
        }
    }

    /// Bilinear extension to arbitrary vectors: `(∂-part of x₍₀₎y, plain part of x₍₀₎y, x₍₁₎y)`.
    pub fn products(&self, x: &Sparse, y: &Sparse) -> (Sparse, Sparse, Sparse) {
        let dim = self.dim();
        (
            bilinear(&self.zero_d, dim, x, y),
            bilinear(&self.zero_plain, dim, x, y),
            bilinear(&self.first, dim, x, y),
        )
    }

    /// `b₍₁₎a = (−1)^{p(a)p(b)} a₍₁₎b` for all basis pairs.
    pub fn first_product_symmetry(&self) -> CheckResult {
        let dim = self.dim();
        let mut violation = None;
        'scan: for a in 0..dim {
            for b in a..dim {
                let mut acc = Acc::new(dim);
                acc.add(&Scalar::one(), &self.first[b * dim + a]);
                acc.add(&-Scalar::sign(self.parity[a] * self.parity[b]), &self.first[a * dim + b]);
                let r = acc.finish();
                if !r.is_empty() {
                    violation = Some(Violation {
                        clause: "b(1)a - sign a(1)b".into(),
                        tuple: vec![a, b],
                        labels: vec![self.labels[a].clone(), self.labels[b].clone()],
                        residual: r,
                    });
                    break 'scan;
                }
            }
        }
        CheckResult {
            name: "first product symmetry".into(),
            violation,
        }
    }

    /// First entry where the two tables disagree, ignoring metadata.
    pub fn first_difference(&self, other: &NthProductTable) -> Option<(usize, usize, String)> {
        if self.dim() != other.dim() {
            return Some((0, 0, "dimension".into()));
        }
        let dim = self.dim();
        (0..dim * dim).find_map(|k| {
            let part = if self.zero_d[k] != other.zero_d[k] {
                "zero_d"
            } else if self.zero_plain[k] != other.zero_plain[k] {
                "zero_plain"
            } else if self.first[k] != other.first[k] {
                "first"
            } else {
                return None;
            };
            Some((k / dim, k % dim, part.to_string()))
        })
    }

    /// Whether the linear map `g` commutes with every product (and with `∂`).
    pub fn preserved_by(&self, g: &Matrix) -> Result<bool> {
        let dim = self.dim();
        if g.rows() != dim || g.cols() != dim {
            return Err(Error::Dimension(format!("expected a {dim}×{dim} matrix")));
        }
        let cols = matrix_columns(g);
        let apply = |v: &Sparse| compress(&g.mul_vec(&crate::qp::densify(v, dim)).expect("square"));
        for a in 0..dim {
            for b in 0..dim {
                let k = a * dim + b;
                let (d, p, f) = self.products(&cols[a], &cols[b]);
                if d != apply(&self.zero_d[k]) || p != apply(&self.zero_plain[k]) || f != apply(&self.first[k]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Deterministic JSON: nonzero entries only, ordered by `(a, b)`.
    pub fn to_json(&self) -> Value {
        let sparse = |v: &Sparse| -> Value { v.iter().map(|(i, c)| json!([i, c.to_string()])).collect() };
        let dim = self.dim();
        let entries: Vec<Value> = (0..dim * dim)
            .filter(|&k| !(self.zero_d[k].is_empty() && self.zero_plain[k].is_empty() && self.first[k].is_empty()))
            .map(|k| {
                json!({
                    "a": k / dim,
                    "b": k % dim,
                    "zero_d": sparse(&self.zero_d[k]),
                    "zero_plain": sparse(&self.zero_plain[k]),
                    "first": sparse(&self.first[k]),
                })
            })
            .collect();
        json!({
            "schema": SCHEMA,
            "kind": "nth_products",
            "labels": self.labels,
            "parity": self.parity,
            "entries": entries,
            "metadata": self.meta,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{standard_sweep, CatalogSpec};

    #[test]
    fn unit_products() {
        for spec in standard_sweep() {
            let a = spec.build().unwrap();
            let t = nth_products(&a);
            let u = compress(a.unit());
            let (d, plain, first) = t.products(&u, &u);
            assert_eq!(d, u, "{spec}");
            assert!(plain.is_empty(), "{spec}");
            assert_eq!(first, compress(&a.unit().iter().map(|c| c * &Scalar::int(2)).collect::<Vec<_>>()));
            assert!(t.first_product_symmetry().passed(), "{spec}");
            for i in 0..a.dim().min(4) {
                assert_eq!(t.product(2, i, 0), (vec![], vec![]));
            }
        }
    }

    #[test]
    fn reductions_agree() {
        for spec in ["S:2:alpha=1", "K:3", "CK6", "S_tilde:2"] {
            let a = spec.parse::<CatalogSpec>().unwrap().build().unwrap();
            let r = reduced_form_comparison(&a);
            assert!(r.equal, "{spec}: {:?}", r.first_difference);
        }
    }

    #[test]
    fn identity_and_scalings() {
        let a = CatalogSpec::k(2).build().unwrap();
        let t = nth_products(&a);
        assert!(t.preserved_by(&Matrix::identity(4)).unwrap());
        // ξ_i ↦ −ξ_i is an automorphism of K₂; ξ_1 ↦ 2ξ_1 is not.
        let neg = Matrix::diag(&[1, -1, -1, 1].map(Scalar::int));
        assert!(t.preserved_by(&neg).unwrap());
        let dbl = Matrix::diag(&[1, 2, 1, 2].map(Scalar::int));
        assert!(!t.preserved_by(&dbl).unwrap());
        assert!(t.preserved_by(&Matrix::identity(3)).is_err());
    }

    #[test]
    fn json_is_deterministic() {
        let a = CatalogSpec::ck6().build().unwrap();
        let x = serde_json::to_string(&nth_products(&a).to_json()).unwrap();
        let y = serde_json::to_string(&nth_products(&a).to_json()).unwrap();
        assert_eq!(x, y);
        assert!(x.contains("\"kind\":\"nth_products\""));
        assert!(x.contains("\"spec\":\"CK6\""));
    }
}

use rayon::prelude::*;
use serde::Serialize;

use super::checks::{CheckResult, Report, Violation};
use super::{compress, matrix_columns, Acc, QPAlgebra, Sparse};
use crate::error::{Error, Result};
use crate::scalars::{eigen, EigenOutcome, Matrix, Scalar, Vector};

/// A common eigenvector of `P` and `Q = ad(1)`: `Q v = χ v`, `P v = ω v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimaryElement {
    pub vector: Vector,
    pub chi: Scalar,
    pub omega: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PrimaryOutcome {
    Basis(Vec<PrimaryElement>),
    /// `operator` is `"P"` or `"Q"`.
    Obstructed { operator: String, reason: String },
}

impl PrimaryOutcome {
    pub fn basis(&self) -> Option<&[PrimaryElement]> {
        match self {
            PrimaryOutcome::Basis(b) => Some(b),
            PrimaryOutcome::Obstructed { .. } => None,
        }
    }
}

fn obstructed(operator: &str, outcome: &EigenOutcome) -> Option<PrimaryOutcome> {
    let reason = match outcome {
        EigenOutcome::NotSplit { unresolved_factor, .. } => {
            format!("minimal polynomial does not split over Q(i): factor {unresolved_factor}")
        }
        EigenOutcome::Split(r) if !r.diagonalizable => "not diagonalizable".to_string(),
        EigenOutcome::Split(_) => return None,
    };
    Some(PrimaryOutcome::Obstructed {
        operator: operator.to_string(),
        reason,
    })
}

fn normalized(v: Vector) -> Vector {
    match v.iter().find(|x| !x.is_zero()) {
        None => v,
        Some(lead) => {
            let inv = lead.inv().expect("nonzero");
            v.iter().map(|x| x * &inv).collect()
        }
    }
}

/// A simultaneous eigenbasis of `P` and `Q`, or the operator that prevents one.
pub fn primary_basis(a: &QPAlgebra) -> Result<PrimaryOutcome> {
    let p = a.p_matrix();
    let q = a.q_operator();
    if p.mul(&q)? != q.mul(p)? {
        return Err(Error::Internal("P and Q = ad(1) do not commute".into()));
    }
    let pe = eigen(p)?;
    if let Some(o) = obstructed("P", &pe) {
        return Ok(o);
    }
    let dim = a.dim();
    let mut out = Vec::with_capacity(dim);
    for ev in &pe.split().expect("split").eigenvalues {
        let vs = &ev.eigenvectors;
        let vmat = Matrix::from_columns(dim, vs)?;
        let k = vs.len();
        let mut cols = Vec::with_capacity(k);
        for v in vs {
            let qv = q.mul_vec(v)?;
            let coords = vmat
                .solve(&qv)?
                .ok_or_else(|| Error::Internal("Q leaves a P-eigenspace".into()))?;
            cols.push(coords);
        }
        let m = Matrix::from_columns(k, &cols)?;
        let qe = eigen(&m)?;
        if let Some(o) = obstructed("Q", &qe) {
            return Ok(o);
        }
        for qv in &qe.split().expect("split").eigenvalues {
            for w in &qv.eigenvectors {
                out.push(PrimaryElement {
                    vector: normalized(vmat.mul_vec(w)?),
                    chi: qv.value.clone(),
                    omega: ev.value.clone(),
                });
            }
        }
    }
    Ok(PrimaryOutcome::Basis(out))
}

fn eigen_residual(a: &QPAlgebra, q_cols: &[Sparse], v: &Sparse, chi: &Scalar, omega: &Scalar) -> Sparse {
    let dim = a.dim();
    let mut acc = Acc::new(dim);
    acc.add(&Scalar::one(), &a.p_sp(v));
    acc.add(&-omega, v);
    let mut residual = acc.finish();
    if residual.is_empty() {
        let mut acc = Acc::new(dim);
        acc.add(&Scalar::one(), &super::apply_sparse(q_cols, dim, v));
        acc.add(&-chi, v);
        residual = acc.finish();
    }
    residual
}

/// Closure of primary elements under `a₁·P(a₂)` and `{a₁,a₂} + ⟨a₁,a₂⟩`,
/// with the predicted eigenvalues, over all ordered pairs.
pub fn prim_closure(a: &QPAlgebra, prims: &[PrimaryElement]) -> Report {
    let dim = a.dim();
    let q_cols = matrix_columns(&a.q_operator());
    let xs: Vec<Sparse> = prims.iter().map(|p| compress(&p.vector)).collect();
    let pxs: Vec<Sparse> = xs.iter().map(|x| a.p_sp(x)).collect();
    let qxs: Vec<Sparse> = xs.iter().map(|x| super::apply_sparse(&q_cols, dim, x)).collect();
    let n = prims.len();
    let label = |i: usize| format!("primary {i}");
    let scan = |f: &(dyn Fn(usize, usize) -> Option<Sparse> + Sync)| -> Option<Violation> {
        (0..n).into_par_iter().find_map_first(|i| {
            (0..n).find_map(|j| {
                f(i, j).map(|residual| Violation {
                    clause: "eigenvalue arithmetic".into(),
                    tuple: vec![i, j],
                    labels: vec![label(i), label(j)],
                    residual,
                })
            })
        })
    };
    let product = scan(&|i, j| {
        let v = a.mul_sp(&xs[i], &pxs[j]);
        if v.is_empty() {
            return None;
        }
        let chi = &prims[i].chi + &prims[j].chi;
        let omega = &(&prims[i].omega + &prims[j].omega) - &Scalar::one();
        let r = eigen_residual(a, &q_cols, &v, &chi, &omega);
        (!r.is_empty()).then_some(r)
    });
    let bracket = scan(&|i, j| {
        let mut acc = Acc::new(dim);
        acc.add(&Scalar::one(), &a.bracket_sp(&xs[i], &xs[j]));
        acc.add_bilinear(&Scalar::one(), a.mul_table(), &qxs[i], &pxs[j]);
        acc.add_bilinear(&-Scalar::one(), a.mul_table(), &pxs[i], &qxs[j]);
        let v = acc.finish();
        if v.is_empty() {
            return None;
        }
        let chi = &prims[i].chi + &prims[j].chi;
        let omega = &prims[i].omega + &prims[j].omega;
        let r = eigen_residual(a, &q_cols, &v, &chi, &omega);
        (!r.is_empty()).then_some(r)
    });
    Report {
        checks: vec![
            CheckResult {
                name: "a1·P(a2)".into(),
                violation: product,
            },
            CheckResult {
                name: "{a1,a2}+<a1,a2>".into(),
                violation: bracket,
            },
        ],
    }
}

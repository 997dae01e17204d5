//! Coset grading of the loop algebra by primary data, and the twist exponents.

use serde::Serialize;

use super::{LoopAlgebra, LoopElement};
use crate::error::Result;
use crate::qp::{bilinear, compress, primary_basis, CheckResult, PrimaryOutcome, QPAlgebra, Sparse, Violation};
use crate::scalars::{eigen, Matrix, Scalar, Vector};

/// The twist `exp(2πi(P − Q))` on one primary element, stored additively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistData {
    pub vector: Vector,
    pub omega: Scalar,
    pub chi: Scalar,
    /// `ω − χ`.
    pub exponent: Scalar,
    /// Representative of `ω − χ + ℤ`.
    pub coset: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    /// `Q = ad(1)` is diagonalizable over ℚ(i).
    pub superconformal: bool,
    pub verdict: String,
    pub window: i64,
    /// Empty when no primary basis exists.
    pub twist: Vec<TwistData>,
    pub checks: Vec<CheckResult>,
}

impl GradingReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

fn label(i: usize, n: i64) -> String {
    format!("p{i}[{n}]")
}

fn violation(clause: &str, pts: &[(usize, i64)], residual: Sparse) -> Violation {
    Violation {
        clause: clause.into(),
        tuple: pts.iter().map(|p| p.0).collect(),
        labels: pts.iter().map(|&(i, n)| label(i, n)).collect(),
        residual,
    }
}

fn check(name: &str, violation: Option<Violation>) -> CheckResult {
    CheckResult {
        name: name.into(),
        violation,
    }
}

/// Primary data, superconformal verdict, and window checks of the coset
/// grading and of `[L_n, a_m] = (nω − m + χ) a_{n+m}`.
pub fn grading_and_twist(a: &QPAlgebra, window: i64) -> Result<GradingReport> {
    let w = window.max(0);
    let q = eigen(&a.q_operator())?;
    let q_diag = q.split().is_some_and(|r| r.diagonalizable);
    let prims = match primary_basis(a)? {
        PrimaryOutcome::Basis(b) => b,
        PrimaryOutcome::Obstructed { operator, reason } => {
            let verdict = if q_diag {
                format!("superconformal, but {operator} has no eigenbasis: {reason}")
            } else {
                format!("not superconformal over base field: {operator} {reason}")
            };
            return Ok(GradingReport {
                superconformal: q_diag,
                verdict,
                window: w,
                twist: Vec::new(),
                checks: Vec::new(),
            });
        }
    };
    let twist: Vec<TwistData> = prims
        .iter()
        .map(|p| {
            let exponent = &p.omega - &p.chi;
            TwistData {
                vector: p.vector.clone(),
                omega: p.omega.clone(),
                chi: p.chi.clone(),
                coset: exponent.mod_integers(),
                exponent,
            }
        })
        .collect();
    let dim = a.dim();
    let basis = Matrix::from_columns(dim, &prims.iter().map(|p| p.vector.clone()).collect::<Vec<_>>())?;
    let inv = basis.inverse()?;
    let coords = |v: &Sparse| -> Result<Vector> {
        let dense = crate::qp::densify(v, dim);
        inv.mul_vec(&dense)
    };
    let l = LoopAlgebra::new(a);
    let sp: Vec<Sparse> = prims.iter().map(|p| compress(&p.vector)).collect();

    let mut grading = None;
    'pairs: for i in 0..dim {
        for j in 0..dim {
            let u = coords(&bilinear(l.u_table(), dim, &sp[i], &sp[j]))?;
            let v = coords(&bilinear(l.v_table(), dim, &sp[i], &sp[j]))?;
            let b = coords(&bilinear(a.bracket_table(), dim, &sp[i], &sp[j]))?;
            let target = (&twist[i].coset + &twist[j].coset).mod_integers();
            for n in -w..=w {
                for m in -w..=w {
                    let bad: Sparse = (0..dim)
                        .filter(|&t| twist[t].coset != target)
                        .map(|t| (t, &(&(&Scalar::int(n) * &u[t]) - &(&Scalar::int(m) * &v[t])) + &b[t]))
                        .filter(|(_, c)| !c.is_zero())
                        .collect();
                    if !bad.is_empty() {
                        grading = Some(violation("coset", &[(i, n), (j, m)], bad));
                        break 'pairs;
                    }
                }
            }
        }
    }

    let unit = compress(a.unit());
    let tensor_scan = |modes: &[i64]| -> Option<Violation> {
        for (i, t) in twist.iter().enumerate() {
            for &n in modes {
                for m in -w..=w {
                    let got = l.bracket(&LoopElement::from_sparse(&unit, n), &LoopElement::from_sparse(&sp[i], m));
                    let c = &(&(&Scalar::int(n) * &t.omega) - &Scalar::int(m)) + &t.chi;
                    let want = LoopElement::from_sparse(&sp[i], n + m).scale(&c);
                    let r = got.sub(&want);
                    if !r.is_zero() {
                        return Some(violation("tensor", &[(i, m)], r.mode(n + m)));
                    }
                }
            }
        }
        None
    };
    let all: Vec<i64> = (-w..=w).collect();
    let checks = vec![
        check("coset grading", grading),
        check("L0 eigenvalue", tensor_scan(&[0])),
        check("T-covariance", tensor_scan(&[-1])),
        check("tensor module", tensor_scan(&all)),
    ];
    let verdict = if q_diag {
        "superconformal".to_string()
    } else {
        "not superconformal over base field".to_string()
    };
    Ok(GradingReport {
        superconformal: q_diag,
        verdict,
        window: w,
        twist,
        checks,
    })
}

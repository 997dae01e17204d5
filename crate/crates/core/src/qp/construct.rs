//! The three generic constructions of quasi-Poisson algebras.

use super::checks::{derivation_check, poisson_leibniz, verify_axioms, CheckResult};
use super::{basis_sparse, matrix_columns, Acc, CommAlgebra, QPAlgebra, Sparse};
use crate::error::{Error, Result};
use crate::scalars::{Matrix, Scalar};

fn reject(identity: &str, r: &CheckResult) -> Result<()> {
    match &r.violation {
        None => Ok(()),
        Some(v) => Err(Error::Construction(format!(
            "{identity} fails ({}) at {:?}",
            v.clause, v.labels
        ))),
    }
}

fn confirm(a: QPAlgebra) -> Result<QPAlgebra> {
    let report = verify_axioms(&a);
    if let Some(f) = report.failures().next() {
        reject(&f.name, f)?;
    }
    Ok(a)
}

fn square(m: &Matrix, dim: usize, what: &str) -> Result<()> {
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::Shape(format!("{what} is {}x{} in dimension {dim}", m.rows(), m.cols())));
    }
    Ok(())
}

fn zero_bracket(dim: usize) -> Vec<Sparse> {
    vec![Vec::new(); dim * dim]
}

/// `P = D + Id` is a derivation of the bracket.
fn p_derives_bracket(a: &QPAlgebra) -> Result<()> {
    let dim = a.dim();
    let table = a.bracket_table();
    let pc = a.p_columns();
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Acc::new(dim);
            acc.add(&Scalar::one(), &a.p_sp(a.bracket_basis(i, j)));
            acc.add_bilinear(&-Scalar::one(), table, &pc[i], &basis_sparse(j));
            acc.add_bilinear(&-Scalar::one(), table, &basis_sparse(i), &pc[j]);
            if !acc.finish().is_empty() {
                return Err(Error::Construction(format!(
                    "D + Id is not a derivation of the bracket at ({}, {})",
                    a.labels()[i],
                    a.labels()[j]
                )));
            }
        }
    }
    Ok(())
}

/// A Poisson superalgebra with an even derivation `D` of `·` such that
/// `D + Id` differentiates the bracket.
pub fn from_poisson(comm: CommAlgebra, bracket: Vec<Sparse>, d: &Matrix) -> Result<QPAlgebra> {
    let dim = comm.dim();
    square(d, dim, "D")?;
    let p = d.add(&Matrix::identity(dim))?;
    let a = QPAlgebra::new(comm, bracket, p)?;
    reject("D is a derivation of ·", &derivation_check(&a))?;
    reject("Poisson Leibniz rule", &poisson_leibniz(&a))?;
    p_derives_bracket(&a)?;
    confirm(a)
}

/// `{a, b} = a·D(b) − D(a)·b` with `P = D + Id`.
pub fn from_derivation(comm: CommAlgebra, d: &Matrix) -> Result<QPAlgebra> {
    let dim = comm.dim();
    square(d, dim, "D")?;
    let p = d.add(&Matrix::identity(dim))?;
    let probe = QPAlgebra::new(comm.clone(), zero_bracket(dim), p.clone())?;
    reject("D is a derivation of ·", &derivation_check(&probe))?;
    let dc = matrix_columns(d);
    let mul = comm.mul_table();
    let mut table = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Acc::new(dim);
            acc.add_bilinear(&Scalar::one(), mul, &basis_sparse(i), &dc[j]);
            acc.add_bilinear(&-Scalar::one(), mul, &dc[i], &basis_sparse(j));
            table.push(acc.finish());
        }
    }
    confirm(QPAlgebra::new(comm, table, p)?)
}

/// `⟨a, b⟩ = Q(a)·P(b) − P(a)·Q(b)` for commuting `P`, `Q` with `P` satisfying
/// QP3 and `Q(a·P(b)) = Q(a)·P(b) + a·PQ(b)`.
pub fn from_pq(comm: CommAlgebra, p: &Matrix, q: &Matrix) -> Result<QPAlgebra> {
    let dim = comm.dim();
    square(p, dim, "P")?;
    square(q, dim, "Q")?;
    if p.mul(q)? != q.mul(p)? {
        return Err(Error::Construction("PQ = QP fails".into()));
    }
    let probe = QPAlgebra::new(comm.clone(), zero_bracket(dim), p.clone())?;
    reject("QP3 for P", &derivation_check(&probe))?;
    let qc = matrix_columns(q);
    let pc = matrix_columns(p);
    let pqc = matrix_columns(&p.mul(q)?);
    let mul = comm.mul_table();
    let parity = comm.parity();
    for j in 0..dim {
        if qc[j].iter().any(|(k, _)| parity[*k] != parity[j]) {
            return Err(Error::Construction(format!("Q is not even at {}", comm.labels()[j])));
        }
    }
    for i in 0..dim {
        for j in 0..dim {
            let apb = super::bilinear(mul, dim, &basis_sparse(i), &pc[j]);
            let mut acc = Acc::new(dim);
            acc.add(&Scalar::one(), &super::apply_sparse(&qc, dim, &apb));
            acc.add_bilinear(&-Scalar::one(), mul, &qc[i], &pc[j]);
            acc.add_bilinear(&-Scalar::one(), mul, &basis_sparse(i), &pqc[j]);
            if !acc.finish().is_empty() {
                return Err(Error::Construction(format!(
                    "Q(a·P(b)) = Q(a)·P(b) + a·PQ(b) fails at ({}, {})",
                    comm.labels()[i],
                    comm.labels()[j]
                )));
            }
        }
    }
    let mut table = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Acc::new(dim);
            acc.add_bilinear(&Scalar::one(), mul, &qc[i], &pc[j]);
            acc.add_bilinear(&-Scalar::one(), mul, &pc[i], &qc[j]);
            table.push(acc.finish());
        }
    }
    confirm(QPAlgebra::new(comm, table, p.clone())?)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::k1;
    use super::*;

    fn lambda1() -> CommAlgebra {
        k1().comm().clone()
    }

    #[test]
    fn derivation_bracket_is_pq_bracket_with_q_minus_d() {
        let d = Matrix::diag(&[Scalar::zero(), Scalar::one()]);
        let a = from_derivation(lambda1(), &d).unwrap();
        let p = d.add(&Matrix::identity(2)).unwrap();
        let b = from_pq(lambda1(), &p, &d.scale(&-Scalar::one())).unwrap();
        assert_eq!(a.bracket_table(), b.bracket_table());
        assert_eq!(a.p_matrix(), b.p_matrix());
        // With Q = D the bracket comes out negated; ad(1) of that algebra is −D.
        let c = from_pq(lambda1(), &p, &d).unwrap();
        for (x, y) in a.bracket_table().iter().zip(c.bracket_table()) {
            let neg: Sparse = x.iter().map(|(k, v)| (*k, -v)).collect();
            assert_eq!(&neg, y);
        }
        assert_eq!(c.q_operator(), d.scale(&-Scalar::one()));
        assert_eq!(a.q_operator(), d);
    }

    #[test]
    fn poisson_k1() {
        let d = Matrix::diag(&[Scalar::zero(), Scalar::frac(-1, 2)]);
        let a = from_poisson(lambda1(), k1().bracket_table().to_vec(), &d).unwrap();
        assert_eq!(a, k1());
    }

    #[test]
    fn rejections() {
        // Not a derivation: D(1) ≠ 0.
        let bad = Matrix::diag(&[Scalar::one(), Scalar::zero()]);
        assert!(matches!(from_derivation(lambda1(), &bad), Err(Error::Construction(_))));
        // D + Id fails to differentiate {ξ,ξ} = 1 when D = 0 on ξ.
        let d0 = Matrix::zeros(2, 2);
        assert!(matches!(
            from_poisson(lambda1(), k1().bracket_table().to_vec(), &d0),
            Err(Error::Construction(_))
        ));
        // Odd-to-even Q.
        let q = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert!(matches!(
            from_pq(lambda1(), &Matrix::identity(2), &q),
            Err(Error::Construction(_))
        ));
    }
}

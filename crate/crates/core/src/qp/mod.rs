//! Quasi-Poisson superalgebras as structure-constant tables.
//!
//! Basis vectors are homogeneous. Both products are stored as a `dim × dim`
//! grid of sparse coordinate vectors, indexed `i * dim + j`.

mod checks;
mod construct;
mod json;
mod primary;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalars::{Matrix, Scalar, Vector};

pub use checks::{
    compatibility_check, derived_identities, derivation_check, ideal_probe, poisson_leibniz,
    qp3_check, verify_axioms, CheckResult, IdealProbe, Report, Violation,
};
pub use construct::{from_derivation, from_poisson, from_pq};
pub use json::{export_json, import_json, SCHEMA};
pub use primary::{primary_basis, prim_closure, PrimaryElement, PrimaryOutcome};

/// Sparse coordinate vector: `(index, value)` pairs, ascending, no zeros.
pub type Sparse = Vec<(usize, Scalar)>;

/// Largest dimension accepted from external input.
pub const MAX_DIM: usize = 1024;

pub fn compress(v: &[Scalar]) -> Sparse {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn densify(v: &Sparse, dim: usize) -> Vector {
    let mut out = vec![Scalar::zero(); dim];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

pub(crate) fn basis_sparse(i: usize) -> Sparse {
    vec![(i, Scalar::one())]
}

/// Dense accumulator for sums of sparse vectors.
pub(crate) struct Acc {
    v: Vec<Scalar>,
}

impl Acc {
    pub(crate) fn new(dim: usize) -> Acc {
        Acc {
            v: vec![Scalar::zero(); dim],
        }
    }

    pub(crate) fn add(&mut self, s: &Scalar, x: &Sparse) {
        for (i, c) in x {
            self.v[*i] += &(s * c);
        }
    }

    /// Adds `s · T(a, b)` for a bilinear table `T`.
    pub(crate) fn add_bilinear(&mut self, s: &Scalar, table: &[Sparse], a: &Sparse, b: &Sparse) {
        let dim = self.v.len();
        for (i, x) in a {
            for (j, y) in b {
                let entry = &table[i * dim + j];
                if entry.is_empty() {
                    continue;
                }
                let k = &(s * x) * y;
                self.add(&k, entry);
            }
        }
    }

    pub(crate) fn finish(self) -> Sparse {
        compress(&self.v)
    }
}

pub(crate) fn bilinear(table: &[Sparse], dim: usize, a: &Sparse, b: &Sparse) -> Sparse {
    let mut acc = Acc::new(dim);
    acc.add_bilinear(&Scalar::one(), table, a, b);
    acc.finish()
}

pub(crate) fn apply_sparse(cols: &[Sparse], dim: usize, a: &Sparse) -> Sparse {
    let mut acc = Acc::new(dim);
    for (j, c) in a {
        acc.add(c, &cols[*j]);
    }
    acc.finish()
}

pub(crate) fn matrix_columns(m: &Matrix) -> Vec<Sparse> {
    (0..m.cols()).map(|j| compress(&m.column(j))).collect()
}

/// A supercommutative unital algebra: basis, parities, unit and product table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommAlgebra {
    labels: Vec<String>,
    parity: Vec<u8>,
    unit: Vector,
    mul: Vec<Sparse>,
}

impl CommAlgebra {
    pub fn new(labels: Vec<String>, parity: Vec<u8>, unit: Vector, mul: Vec<Sparse>) -> Result<CommAlgebra> {
        let dim = labels.len();
        if parity.len() != dim || unit.len() != dim {
            return Err(Error::Shape(format!(
                "{dim} labels but {} parities and a unit of length {}",
                parity.len(),
                unit.len()
            )));
        }
        if parity.iter().any(|&p| p > 1) {
            return Err(Error::Shape("parities must be 0 or 1".into()));
        }
        check_table(&mul, dim, "product")?;
        Ok(CommAlgebra {
            labels,
            parity,
            unit,
            mul,
        })
    }

    /// Builds the product table from a function on basis pairs.
    pub fn from_fn(
        labels: Vec<String>,
        parity: Vec<u8>,
        unit: Vector,
        f: impl Fn(usize, usize) -> Result<Vector>,
    ) -> Result<CommAlgebra> {
        let mul = table_from_fn(labels.len(), f)?;
        CommAlgebra::new(labels, parity, unit, mul)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn mul_table(&self) -> &[Sparse] {
        &self.mul
    }

    /// `e_i · e_j`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &Sparse {
        &self.mul[i * self.dim() + j]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        densify(&bilinear(&self.mul, self.dim(), &compress(a), &compress(b)), self.dim())
    }
}

pub(crate) fn check_table(t: &[Sparse], dim: usize, what: &str) -> Result<()> {
    if t.len() != dim * dim {
        return Err(Error::Shape(format!(
            "{what} table has {} entries, expected {}",
            t.len(),
            dim * dim
        )));
    }
    for v in t {
        if v.iter().any(|(k, c)| *k >= dim || c.is_zero()) || v.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Shape(format!("malformed sparse entry in {what} table")));
        }
    }
    Ok(())
}

pub(crate) fn table_from_fn(dim: usize, f: impl Fn(usize, usize) -> Result<Vector>) -> Result<Vec<Sparse>> {
    let mut t = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let v = f(i, j)?;
            if v.len() != dim {
                return Err(Error::Shape(format!("product of length {} in dimension {dim}", v.len())));
            }
            t.push(compress(&v));
        }
    }
    Ok(t)
}

/// A quasi-Poisson superalgebra `(A, ·, {,}, P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPAlgebra {
    comm: CommAlgebra,
    bracket: Vec<Sparse>,
    p: Matrix,
    p_cols: Vec<Sparse>,
    meta: BTreeMap<String, serde_json::Value>,
}

impl QPAlgebra {
    pub fn new(comm: CommAlgebra, bracket: Vec<Sparse>, p: Matrix) -> Result<QPAlgebra> {
        let dim = comm.dim();
        check_table(&bracket, dim, "bracket")?;
        if p.rows() != dim || p.cols() != dim {
            return Err(Error::Shape(format!(
                "P is {}x{} in dimension {dim}",
                p.rows(),
                p.cols()
            )));
        }
        let p_cols = matrix_columns(&p);
        Ok(QPAlgebra {
            comm,
            bracket,
            p,
            p_cols,
            meta: BTreeMap::new(),
        })
    }

    pub fn from_fn(
        comm: CommAlgebra,
        bracket: impl Fn(usize, usize) -> Result<Vector>,
        p: Matrix,
    ) -> Result<QPAlgebra> {
        let b = table_from_fn(comm.dim(), bracket)?;
        QPAlgebra::new(comm, b, p)
    }

    pub fn comm(&self) -> &CommAlgebra {
        &self.comm
    }

    pub fn dim(&self) -> usize {
        self.comm.dim()
    }

    pub fn labels(&self) -> &[String] {
        self.comm.labels()
    }

    pub fn parity(&self) -> &[u8] {
        self.comm.parity()
    }

    pub fn unit(&self) -> &[Scalar] {
        self.comm.unit()
    }

    pub fn mul_table(&self) -> &[Sparse] {
        self.comm.mul_table()
    }

    pub fn bracket_table(&self) -> &[Sparse] {
        &self.bracket
    }

    pub fn p_matrix(&self) -> &Matrix {
        &self.p
    }

    pub(crate) fn p_columns(&self) -> &[Sparse] {
        &self.p_cols
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Sparse {
        self.comm.mul_basis(i, j)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Sparse {
        &self.bracket[i * self.dim() + j]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        self.comm.mul(a, b)
    }

    pub fn bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        densify(&bilinear(&self.bracket, self.dim(), &compress(a), &compress(b)), self.dim())
    }

    pub fn apply_p(&self, a: &[Scalar]) -> Vector {
        densify(&apply_sparse(&self.p_cols, self.dim(), &compress(a)), self.dim())
    }

    pub(crate) fn mul_sp(&self, a: &Sparse, b: &Sparse) -> Sparse {
        bilinear(self.comm.mul_table(), self.dim(), a, b)
    }

    pub(crate) fn bracket_sp(&self, a: &Sparse, b: &Sparse) -> Sparse {
        bilinear(&self.bracket, self.dim(), a, b)
    }

    pub(crate) fn p_sp(&self, a: &Sparse) -> Sparse {
        apply_sparse(&self.p_cols, self.dim(), a)
    }

    /// The same algebra with another bracket table.
    pub fn with_bracket(&self, bracket: Vec<Sparse>) -> Result<QPAlgebra> {
        let mut out = QPAlgebra::new(self.comm.clone(), bracket, self.p.clone())?;
        out.meta = self.meta.clone();
        Ok(out)
    }

    /// The same algebra with another operator `P`.
    pub fn with_p(&self, p: Matrix) -> Result<QPAlgebra> {
        let mut out = QPAlgebra::new(self.comm.clone(), self.bracket.clone(), p)?;
        out.meta = self.meta.clone();
        Ok(out)
    }

    /// Overwrites one bracket structure constant `{e_i, e_j}_k`.
    pub fn with_bracket_constant(&self, i: usize, j: usize, k: usize, value: Scalar) -> Result<QPAlgebra> {
        let dim = self.dim();
        if i >= dim || j >= dim || k >= dim {
            return Err(Error::Index(format!("({i},{j},{k}) outside dimension {dim}")));
        }
        let mut table = self.bracket.clone();
        let mut v = densify(&table[i * dim + j], dim);
        v[k] = value;
        table[i * dim + j] = compress(&v);
        self.with_bracket(table)
    }

    pub fn meta(&self) -> &BTreeMap<String, serde_json::Value> {
        &self.meta
    }

    pub fn with_meta(mut self, key: &str, value: serde_json::Value) -> QPAlgebra {
        self.meta.insert(key.to_string(), value);
        self
    }

    /// The matrix of `Q = ad(1)`.
    pub fn q_operator(&self) -> Matrix {
        let dim = self.dim();
        let unit = compress(self.unit());
        let cols: Vec<Vector> = (0..dim)
            .map(|j| densify(&self.bracket_sp(&unit, &basis_sparse(j)), dim))
            .collect();
        Matrix::from_columns(dim, &cols).expect("square by construction")
    }

    /// `⟨a, b⟩ = Q(a)·P(b) − P(a)·Q(b)`.
    pub fn angle_bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let q = self.q_operator();
        let qa = q.mul_vec(a).expect("dimension");
        let qb = q.mul_vec(b).expect("dimension");
        let lhs = self.mul(&qa, &self.apply_p(b));
        let rhs = self.mul(&self.apply_p(a), &qb);
        crate::scalars::sub_vectors(&lhs, &rhs)
    }

    /// Table of `⟨e_i, e_j⟩`.
    pub fn angle_table(&self) -> Vec<Sparse> {
        let dim = self.dim();
        let q_cols = matrix_columns(&self.q_operator());
        let mut t = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = Acc::new(dim);
                acc.add_bilinear(&Scalar::one(), self.mul_table(), &q_cols[i], &self.p_cols[j]);
                acc.add_bilinear(&-Scalar::one(), self.mul_table(), &self.p_cols[i], &q_cols[j]);
                t.push(acc.finish());
            }
        }
        t
    }

    /// `Ȧ`: the same algebra with bracket `{a,b} + ⟨a,b⟩`.
    pub fn reduce(&self) -> QPAlgebra {
        let dim = self.dim();
        let angle = self.angle_table();
        let table = (0..dim * dim)
            .map(|k| {
                let mut acc = Acc::new(dim);
                acc.add(&Scalar::one(), &self.bracket[k]);
                acc.add(&Scalar::one(), &angle[k]);
                acc.finish()
            })
            .collect();
        let out = self.with_bracket(table).expect("same shape");
        out.with_meta("reduced", serde_json::Value::Bool(true))
    }

    /// The bracket `s1·{,} + s2·⟨,⟩`.
    pub fn combined_bracket(&self, s1: &Scalar, s2: &Scalar) -> QPAlgebra {
        let dim = self.dim();
        let angle = self.angle_table();
        let table = (0..dim * dim)
            .map(|k| {
                let mut acc = Acc::new(dim);
                acc.add(s1, &self.bracket[k]);
                acc.add(s2, &angle[k]);
                acc.finish()
            })
            .collect();
        self.with_bracket(table).expect("same shape")
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::k1;
    use super::*;

    #[test]
    fn k1_q_vanishes_and_reduce_is_identity() {
        let a = k1();
        assert!(a.q_operator().is_zero());
        assert_eq!(a.reduce().bracket_table(), a.bracket_table());
        assert_eq!(a.reduce().reduce(), a.reduce());
    }

    #[test]
    fn combined_with_unit_weights_is_original() {
        let a = k1();
        let c = a.combined_bracket(&Scalar::one(), &Scalar::zero());
        assert_eq!(c.bracket_table(), a.bracket_table());
    }

    #[test]
    fn shape_errors() {
        let a = k1();
        assert!(matches!(a.with_p(Matrix::identity(3)), Err(Error::Shape(_))));
        assert!(matches!(
            CommAlgebra::new(vec!["a".into()], vec![0, 1], vec![Scalar::one()], vec![vec![]]),
            Err(Error::Shape(_))
        ));
    }
}

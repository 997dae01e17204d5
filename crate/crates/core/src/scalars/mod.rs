//! Exact arithmetic over the Gaussian rationals ℚ(i) and dense linear algebra.

pub mod eigen;
mod matrix;
mod poly;
mod rat;
mod scalar;

pub use eigen::{eigen, minimal_polynomial, EigenOutcome, EigenReport, Eigenvalue};
pub use matrix::{Echelon, Matrix};
pub use poly::Poly;
pub use scalar::Scalar;

/// Dense coordinate vector.
pub type Vector = Vec<Scalar>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_scaled(acc: &mut [Scalar], s: &Scalar, v: &[Scalar]) {
    if s.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += &(s * b);
        }
    }
}

pub fn scale_vector(s: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| s * x).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

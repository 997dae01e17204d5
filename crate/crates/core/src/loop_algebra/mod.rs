//! The loop algebra ℂ[t, t⁻¹] ⊗ A of a quasi-Poisson superalgebra, with
//!
//! `[a_n, b_m] = n (a·P(b))_{n+m} − m (P(a)·b)_{n+m} + {a, b}_{n+m}`.

mod grading;
mod jacobi;
mod nth;
mod virasoro;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::qp::{compress, QPAlgebra, Sparse};
use crate::scalars::Scalar;

pub use grading::{grading_and_twist, GradingReport, TwistData};
pub use jacobi::{jacobi_window_check, JacobiReport, JacobiWitness};
pub use nth::{nth_products, reduced_form_comparison, NthProductEntry, NthProductTable, ReductionComparison};
pub use virasoro::{virasoro_from_idempotent, VirasoroReport, VirasoroWitness};

/// A finite sum of `t^n ⊗ e_i`, keyed by `(basis index, mode)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LoopElement {
    terms: BTreeMap<(usize, i64), Scalar>,
}

impl LoopElement {
    pub fn zero() -> LoopElement {
        LoopElement::default()
    }

    /// `(e_i)_n`.
    pub fn basis(i: usize, n: i64) -> LoopElement {
        LoopElement::term(i, n, Scalar::one())
    }

    pub fn term(i: usize, n: i64, c: Scalar) -> LoopElement {
        let mut out = LoopElement::zero();
        out.add_term(i, n, &c);
        out
    }

    /// `v_n` for a coordinate vector `v` of A.
    pub fn from_vector(v: &[Scalar], n: i64) -> LoopElement {
        LoopElement::from_sparse(&compress(v), n)
    }

    pub fn from_sparse(v: &Sparse, n: i64) -> LoopElement {
        let mut out = LoopElement::zero();
        for (i, c) in v {
            out.add_term(*i, n, c);
        }
        out
    }

    pub fn add_term(&mut self, i: usize, n: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, n)).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, n));
        }
    }

    pub fn add_scaled(&mut self, s: &Scalar, other: &LoopElement) {
        for ((i, n), c) in &other.terms {
            self.add_term(*i, *n, &(s * c));
        }
    }

    pub fn scale(&self, s: &Scalar) -> LoopElement {
        let mut out = LoopElement::zero();
        out.add_scaled(s, self);
        out
    }

    pub fn sub(&self, other: &LoopElement) -> LoopElement {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), other);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64, &Scalar)> {
        self.terms.iter().map(|((i, n), c)| (*i, *n, c))
    }

    pub fn coeff(&self, i: usize, n: i64) -> Scalar {
        self.terms.get(&(i, n)).cloned().unwrap_or_default()
    }

    /// The component at mode `n` as a sparse vector of A.
    pub fn mode(&self, n: i64) -> Sparse {
        self.terms
            .iter()
            .filter(|((_, m), _)| *m == n)
            .map(|((i, _), c)| (*i, c.clone()))
            .collect()
    }

    /// Parity, if homogeneous and nonzero.
    pub fn parity(&self, a: &QPAlgebra) -> Option<u8> {
        let mut ps = self.terms.keys().map(|(i, _)| a.parity()[*i]);
        let first = ps.next()?;
        ps.all(|p| p == first).then_some(first)
    }

    pub fn display(&self, labels: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|((i, n), c)| format!("({c})*{}[{n}]", labels[*i]))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for LoopElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.terms.keys().map(|(i, _)| i + 1).max().unwrap_or(0);
        let labels: Vec<String> = (0..width).map(|i| format!("e{i}")).collect();
        f.write_str(&self.display(&labels))
    }
}

/// Precomputed tables `U_ij = e_i·P(e_j)` and `V_ij = P(e_i)·e_j` for fast
/// repeated brackets.
pub struct LoopAlgebra<'a> {
    a: &'a QPAlgebra,
    u: Vec<Sparse>,
    v: Vec<Sparse>,
}

impl<'a> LoopAlgebra<'a> {
    pub fn new(a: &'a QPAlgebra) -> LoopAlgebra<'a> {
        let dim = a.dim();
        let basis = |i: usize| vec![(i, Scalar::one())];
        let mut u = Vec::with_capacity(dim * dim);
        let mut v = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            let pi = a.p_sp(&basis(i));
            for j in 0..dim {
                u.push(a.mul_sp(&basis(i), &a.p_sp(&basis(j))));
                v.push(a.mul_sp(&pi, &basis(j)));
            }
        }
        LoopAlgebra { a, u, v }
    }

    pub fn algebra(&self) -> &QPAlgebra {
        self.a
    }

    pub(crate) fn u_table(&self) -> &[Sparse] {
        &self.u
    }

    pub(crate) fn v_table(&self) -> &[Sparse] {
        &self.v
    }

    /// `[(e_i)_n, (e_j)_m]` at mode `n + m`, as a vector of A.
    pub fn basis_bracket(&self, i: usize, n: i64, j: usize, m: i64) -> Sparse {
        let dim = self.a.dim();
        let k = i * dim + j;
        let mut acc = crate::qp::Acc::new(dim);
        acc.add(&Scalar::int(n), &self.u[k]);
        acc.add(&Scalar::int(-m), &self.v[k]);
        acc.add(&Scalar::one(), self.a.bracket_basis(i, j));
        acc.finish()
    }

    pub fn bracket(&self, x: &LoopElement, y: &LoopElement) -> LoopElement {
        let mut out = LoopElement::zero();
        for (i, n, c) in x.terms() {
            for (j, m, d) in y.terms() {
                let k = c * d;
                for (r, e) in self.basis_bracket(i, n, j, m) {
                    out.add_term(r, n + m, &(&k * &e));
                }
            }
        }
        out
    }
}

/// Bilinear extension of the loop bracket. Builds the product tables on each
/// call; use [`LoopAlgebra`] for repeated evaluation.
pub fn loop_bracket(a: &QPAlgebra, x: &LoopElement, y: &LoopElement) -> LoopElement {
    LoopAlgebra::new(a).bracket(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_k, build_w, CatalogSpec};
    use proptest::prelude::*;

    #[test]
    fn witt_from_w0() {
        let a = build_w(0).unwrap();
        let l = LoopAlgebra::new(&a);
        for n in -3..=3 {
            for m in -3..=3 {
                let got = l.bracket(&LoopElement::basis(0, n), &LoopElement::basis(0, m));
                assert_eq!(got, LoopElement::term(0, n + m, Scalar::int(n - m)));
            }
        }
    }

    #[test]
    fn k1_odd_generators() {
        let a = build_k(1).unwrap();
        let l = LoopAlgebra::new(&a);
        let got = l.bracket(&LoopElement::basis(1, 2), &LoopElement::basis(1, -5));
        assert_eq!(got, LoopElement::basis(0, -3));
    }

    #[test]
    fn l0_acts_by_mode_and_q() {
        let a = CatalogSpec::s(2, Scalar::frac(1, 2)).unwrap().build().unwrap();
        let l = LoopAlgebra::new(&a);
        let q = a.q_operator();
        let unit = LoopElement::from_vector(a.unit(), 0);
        for j in 0..a.dim() {
            for m in [-2, 0, 3] {
                let got = l.bracket(&unit, &LoopElement::basis(j, m));
                let mut want = LoopElement::term(j, m, Scalar::int(-m));
                want.add_scaled(&Scalar::one(), &LoopElement::from_vector(&q.column(j), m));
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn element_arithmetic() {
        let mut x = LoopElement::basis(1, 2);
        x.add_term(1, 2, &-Scalar::one());
        assert!(x.is_zero());
        let y = LoopElement::term(0, -1, Scalar::frac(1, 3));
        assert_eq!(y.scale(&Scalar::int(3)), LoopElement::basis(0, -1));
        assert_eq!(y.sub(&y), LoopElement::zero());
        assert_eq!(y.mode(-1), vec![(0, Scalar::frac(1, 3))]);
        assert_eq!(y.display(&["1".into()]), "(1/3)*1[-1]");
    }

    fn small_element(dim: usize) -> impl Strategy<Value = LoopElement> {
        prop::collection::vec((0..dim, -4i64..=4, -3i64..=3), 1..4).prop_map(|ts| {
            let mut out = LoopElement::zero();
            for (i, n, c) in ts {
                out.add_term(i, n, &Scalar::int(c));
            }
            out
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn super_antisymmetry(x in small_element(8), y in small_element(8)) {
            let a = CatalogSpec::s(2, Scalar::i()).unwrap().build().unwrap();
            prop_assume!(a.dim() == 8);
            let l = LoopAlgebra::new(&a);
            // Split into homogeneous parts so the sign is well defined.
            let split = |z: &LoopElement, p: u8| {
                let mut out = LoopElement::zero();
                for (i, n, c) in z.terms() {
                    if a.parity()[i] == p {
                        out.add_term(i, n, c);
                    }
                }
                out
            };
            for px in 0..2u8 {
                for py in 0..2u8 {
                    let (xs, ys) = (split(&x, px), split(&y, py));
                    let lhs = l.bracket(&xs, &ys);
                    let rhs = l.bracket(&ys, &xs).scale(&-Scalar::sign(px * py));
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

use serde_json::json;

use super::{lambda_coords, lambda_comm};
use crate::error::Result;
use crate::grassmann::{check_n, degree, monomials, GrassmannElement};
use crate::qp::QPAlgebra;
use crate::scalars::{Matrix, Scalar};

/// `{f, g} = Σ (f)∂*_i ∂_i(g)` on Λ(N).
pub(crate) fn poisson(f: &GrassmannElement, g: &GrassmannElement) -> Result<GrassmannElement> {
    let mut out = GrassmannElement::zero(f.n());
    for i in 1..=f.n() {
        out = out.add(&f.right_deriv(i)?.mul(&g.left_deriv(i)?)?)?;
    }
    Ok(out)
}

/// `1 − k/2` on monomials of degree `k`.
pub(crate) fn k_weight(k: usize) -> Scalar {
    Scalar::frac(2 - k as i64, 2)
}

/// Λ(N) with the Poisson bracket and `P = Id − ½ Σ ξ_i ∂_i`; basis in monomial order.
pub fn build_k(n: usize) -> Result<QPAlgebra> {
    check_n(n)?;
    let mons = monomials(n);
    let comm = lambda_comm(n, &mons)?;
    let dim = mons.len();
    let bracket = |i: usize, j: usize| -> Result<Vec<Scalar>> {
        let f = GrassmannElement::term(n, mons[i], Scalar::one());
        let g = GrassmannElement::term(n, mons[j], Scalar::one());
        lambda_coords(&poisson(&f, &g)?, &mons, dim)
    };
    let p = Matrix::diag(&mons.iter().map(|m| k_weight(degree(*m))).collect::<Vec<_>>());
    Ok(QPAlgebra::from_fn(comm, bracket, p)?
        .with_meta("family", json!("K"))
        .with_meta("N", json!(n))
        .with_meta("basis", json!("monomials of Λ(N) by degree, then lexicographic")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qp::{poisson_leibniz, verify_axioms};

    #[test]
    fn examples() {
        let k1 = build_k(1).unwrap();
        assert_eq!(k1.bracket_basis(1, 1), &vec![(0, Scalar::one())]);
        let k2 = build_k(2).unwrap();
        assert_eq!(k2.labels(), ["1", "x1", "x2", "x1x2"]);
        assert!(k2.p_matrix().get(3, 3).is_zero());
        let k0 = build_k(0).unwrap();
        assert_eq!(k0.dim(), 1);
        assert!(k0.bracket_basis(0, 0).is_empty());
        assert_eq!(k0.p_matrix(), &Matrix::identity(1));
    }

    #[test]
    fn matches_hand_written_k1() {
        let a = build_k(1).unwrap();
        let b = crate::qp::fixtures::k1();
        assert_eq!(a.mul_table(), b.mul_table());
        assert_eq!(a.bracket_table(), b.bracket_table());
        assert_eq!(a.p_matrix(), b.p_matrix());
    }

    #[test]
    fn poisson_up_to_four() {
        for n in 0..=4 {
            let a = build_k(n).unwrap();
            assert!(poisson_leibniz(&a).passed(), "K{n}");
        }
        for n in 0..=3 {
            assert!(verify_axioms(&build_k(n).unwrap()).passed(), "K{n}");
        }
    }
}

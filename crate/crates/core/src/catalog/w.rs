use serde_json::json;

use super::{lambda_coords, monomial_label};
use crate::error::Result;
use crate::grassmann::{check_n, degree, monomials, w_basis, GrassmannElement, Monomial, SuperDerivation};
use crate::qp::{CommAlgebra, QPAlgebra};
use crate::scalars::{unit_vector, Matrix, Scalar, Vector};

/// A basis vector of Λ(N) ⊕ W(N).
enum Elem {
    F(GrassmannElement),
    V(SuperDerivation),
}

fn parity(m: Monomial, is_vector: bool) -> u8 {
    ((degree(m) + is_vector as usize) % 2) as u8
}

/// Λ(N) ⊕ W(N): `f·η = fη`, `η·τ = 0`, `{η, f} = η(f)`, `{η, τ} = [η, τ]`, `P = Id ⊕ 0`.
pub fn build_w(n: usize) -> Result<QPAlgebra> {
    check_n(n)?;
    let mons = monomials(n);
    let wb = w_basis(n);
    let nf = mons.len();
    let dim = nf + wb.len();
    let mut elems = Vec::with_capacity(dim);
    let mut labels = Vec::with_capacity(dim);
    let mut par = Vec::with_capacity(dim);
    for &m in &mons {
        elems.push(Elem::F(GrassmannElement::term(n, m, Scalar::one())));
        labels.push(monomial_label(n, m));
        par.push(parity(m, false));
    }
    for &(m, i) in &wb {
        let eta = SuperDerivation::basis_element(n, m, i)?;
        labels.push(eta.to_string());
        elems.push(Elem::V(eta));
        par.push(parity(m, true));
    }
    let coords = |f: Option<&GrassmannElement>, v: Option<&SuperDerivation>| -> Result<Vector> {
        let mut out = match f {
            Some(f) => lambda_coords(f, &mons, nf)?,
            None => vec![Scalar::zero(); nf],
        };
        match v {
            Some(v) => out.extend(v.coordinates()),
            None => out.resize(dim, Scalar::zero()),
        }
        Ok(out)
    };
    let sign = |i: usize, j: usize| Scalar::sign(par[i] * par[j]);
    let comm = CommAlgebra::from_fn(labels, par.clone(), unit_vector(dim, 0), |i, j| {
        match (&elems[i], &elems[j]) {
            (Elem::F(f), Elem::F(g)) => coords(Some(&f.mul(g)?), None),
            (Elem::F(f), Elem::V(eta)) => coords(None, Some(&SuperDerivation::left_mul(f, eta)?)),
            (Elem::V(eta), Elem::F(f)) => {
                coords(None, Some(&SuperDerivation::left_mul(f, eta)?.scale(&sign(i, j))))
            }
            (Elem::V(_), Elem::V(_)) => Ok(vec![Scalar::zero(); dim]),
        }
    })?;
    let bracket = |i: usize, j: usize| -> Result<Vector> {
        match (&elems[i], &elems[j]) {
            (Elem::F(_), Elem::F(_)) => Ok(vec![Scalar::zero(); dim]),
            (Elem::V(eta), Elem::F(f)) => coords(Some(&eta.apply(f)?), None),
            (Elem::F(f), Elem::V(eta)) => coords(Some(&eta.apply(f)?.scale(&-sign(i, j))), None),
            (Elem::V(eta), Elem::V(tau)) => coords(None, Some(&eta.w_bracket(tau)?)),
        }
    };
    let p = Matrix::diag(
        &(0..dim)
            .map(|k| if k < nf { Scalar::one() } else { Scalar::zero() })
            .collect::<Vec<_>>(),
    );
    Ok(QPAlgebra::from_fn(comm, bracket, p)?
        .with_meta("family", json!("W"))
        .with_meta("N", json!(n))
        .with_meta(
            "basis",
            json!("monomials of Λ(N), then m∂_i by degree of m, then m, then i"),
        ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qp::{poisson_leibniz, verify_axioms};

    #[test]
    fn examples() {
        let w1 = build_w(1).unwrap();
        assert_eq!(w1.labels(), ["1", "x1", "d1", "x1d1"]);
        // {∂₁, ξ₁} = 1, ∂₁·∂₁ = 0
        assert_eq!(w1.bracket_basis(2, 1), &vec![(0, Scalar::one())]);
        assert!(w1.mul_basis(2, 2).is_empty());
        let w0 = build_w(0).unwrap();
        assert_eq!(w0.dim(), 1);
        assert_eq!(w0.p_matrix(), &Matrix::identity(1));
        assert_eq!(build_w(2).unwrap().dim(), 4 + 8);
    }

    #[test]
    fn axioms_and_leibniz() {
        for n in 0..=2 {
            assert!(verify_axioms(&build_w(n).unwrap()).passed(), "W{n}");
        }
        // With a single ∂ the rule survives exhaustively; two odd vector fields break it.
        assert!(poisson_leibniz(&build_w(1).unwrap()).passed());
        for n in 2..=3 {
            let v = poisson_leibniz(&build_w(n).unwrap()).violation.unwrap();
            assert_eq!(v.labels, ["x1", "d1", "d2"]);
        }
    }
}

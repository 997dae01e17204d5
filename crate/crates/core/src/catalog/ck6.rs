use serde_json::json;

use super::k::{k_weight, poisson};
use super::{index_of, monomial_label};
use crate::error::{Error, Result};
use crate::grassmann::{degree, hodge_dual, monomials, GrassmannElement, Monomial};
use crate::qp::{CommAlgebra, QPAlgebra};
use crate::scalars::{unit_vector, Matrix, Scalar, Vector};

pub const CK6_DIM: usize = 32;

/// Degree-3 monomials containing ξ₁, in monomial order; each labels one `m + i·m*`.
fn polar_monomials() -> Vec<Monomial> {
    monomials(6).into_iter().filter(|m| degree(*m) == 3 && m & 1 == 1).collect()
}

fn low_monomials() -> Vec<Monomial> {
    monomials(6).into_iter().filter(|m| degree(*m) <= 2).collect()
}

/// The 32 basis vectors as elements of Λ(6): monomials of degree ≤ 2, then `m + i·m*`.
pub fn ck6_basis_elements() -> Vec<GrassmannElement> {
    let mut out: Vec<GrassmannElement> = low_monomials()
        .into_iter()
        .map(|m| GrassmannElement::term(6, m, Scalar::one()))
        .collect();
    for m in polar_monomials() {
        let (s, c) = hodge_dual(m, 6).expect("N = 6");
        let mut e = GrassmannElement::term(6, m, Scalar::one());
        e = e.add(&GrassmannElement::term(6, c, &Scalar::i() * &Scalar::int(s as i64))).expect("same N");
        out.push(e);
    }
    out
}

struct Split {
    /// Coordinates on the CK₆ basis of the projection.
    plus: Vector,
    /// Whether anything in Λ⁻(6,3) or degree ≥ 4 was discarded.
    discarded: bool,
}

/// Decomposes `x ∈ Λ(6)` along CK₆ ⊕ Λ⁻(6,3) ⊕ Λ(6, ≥4).
fn split(x: &GrassmannElement, low: &[Monomial], polar: &[Monomial]) -> Result<Split> {
    let mut plus = vec![Scalar::zero(); CK6_DIM];
    let mut discarded = false;
    let half = Scalar::frac(1, 2);
    for (m, c) in x.terms() {
        match degree(m) {
            0..=2 => plus[index_of(low, m)?] = c.clone(),
            3 => {}
            _ => discarded |= !c.is_zero(),
        }
    }
    for (k, &m) in polar.iter().enumerate() {
        let (s, comp) = hodge_dual(m, 6)?;
        let a = x.coeff(m);
        // b is the coefficient along m* = s·comp.
        let b = &x.coeff(comp) * &Scalar::int(s as i64);
        let ib = &Scalar::i() * &b;
        let cp = &(&a - &ib) * &half;
        let cm = &(&a + &ib) * &half;
        plus[low.len() + k] = cp;
        discarded |= !cm.is_zero();
    }
    Ok(Split { plus, discarded })
}

/// Projects `{a, b}` of every pair of basis vectors (as elements of Λ(6)) onto
/// Λ⁻(6,3) ⊕ Λ(6, ≥4) and returns the pairs with a nonzero remainder.
pub fn ck6_closure_defects() -> Result<Vec<(usize, usize)>> {
    let low = low_monomials();
    let polar = polar_monomials();
    let basis = ck6_basis_elements();
    let mut out = Vec::new();
    for i in 0..CK6_DIM {
        for j in 0..CK6_DIM {
            if split(&poisson(&basis[i], &basis[j])?, &low, &polar)?.discarded {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// The Cheng-Kac quasi-Poisson algebra: K₆'s bracket restricted, the quotient
/// product twisted by φ = 2 on Λ⁺(6,3), and `P = Id − ½ Σ ξ_i ∂_i`.
pub fn build_ck6() -> Result<QPAlgebra> {
    let low = low_monomials();
    let polar = polar_monomials();
    let basis = ck6_basis_elements();
    let nl = low.len();
    let labels: Vec<String> = (0..CK6_DIM)
        .map(|k| if k < nl { monomial_label(6, low[k]) } else { basis[k].to_string() })
        .collect();
    let par: Vec<u8> = (0..CK6_DIM)
        .map(|k| if k < nl { (degree(low[k]) % 2) as u8 } else { 1 })
        .collect();
    // φ⁻¹ on basis vectors.
    let phi_inv = |k: usize| if k < nl { Scalar::one() } else { Scalar::frac(1, 2) };
    let comm = CommAlgebra::from_fn(labels, par, unit_vector(CK6_DIM, 0), |i, j| {
        let x = basis[i].mul(&basis[j])?.scale(&(&phi_inv(i) * &phi_inv(j)));
        let mut v = split(&x, &low, &polar)?.plus;
        for c in &mut v[nl..] {
            *c = &*c * &Scalar::int(2);
        }
        Ok(v)
    })?;
    let bracket = |i: usize, j: usize| -> Result<Vector> {
        let sp = split(&poisson(&basis[i], &basis[j])?, &low, &polar)?;
        if sp.discarded {
            return Err(Error::Construction(format!(
                "Poisson bracket of basis vectors {i} and {j} leaves CK6"
            )));
        }
        Ok(sp.plus)
    };
    let p = Matrix::diag(
        &(0..CK6_DIM)
            .map(|k| k_weight(if k < nl { degree(low[k]) } else { 3 }))
            .collect::<Vec<_>>(),
    );
    Ok(QPAlgebra::from_fn(comm, bracket, p)?
        .with_meta("family", json!("CK6"))
        .with_meta("N", json!(6))
        .with_meta("polarization", json!("+i"))
        .with_meta(
            "basis",
            json!("monomials of Λ(6) of degree ≤ 2, then m + i·m* for degree-3 m containing x1"),
        ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape() {
        let a = build_ck6().unwrap();
        assert_eq!(a.dim(), CK6_DIM);
        let counts: Vec<usize> = (0..=3)
            .map(|k| {
                let w = k_weight(k);
                (0..CK6_DIM).filter(|&i| *a.p_matrix().get(i, i) == w).count()
            })
            .collect();
        assert_eq!(counts, [1, 6, 15, 10]);
        assert_eq!(a.labels()[22], "x1x2x3 + i*x4x5x6");
    }

    #[test]
    fn closed_under_poisson_bracket() {
        assert!(ck6_closure_defects().unwrap().is_empty());
    }

    #[test]
    fn split_round_trips_basis() {
        let low = low_monomials();
        let polar = polar_monomials();
        for (k, e) in ck6_basis_elements().iter().enumerate() {
            let sp = split(e, &low, &polar).unwrap();
            assert!(!sp.discarded);
            let mut want = vec![Scalar::zero(); CK6_DIM];
            want[k] = Scalar::one();
            assert_eq!(sp.plus, want);
        }
        // m − i·m* is discarded whole.
        let m = polar[0];
        let (s, c) = hodge_dual(m, 6).unwrap();
        let minus = GrassmannElement::term(6, m, Scalar::one())
            .sub(&GrassmannElement::term(6, c, &Scalar::i() * &Scalar::int(s as i64)))
            .unwrap();
        let sp = split(&minus, &low, &polar).unwrap();
        assert!(sp.discarded);
        assert!(sp.plus.iter().all(|x| x.is_zero()));
    }
}

use serde_json::json;

use super::{lambda_coords, monomial_label};
use crate::error::{Error, Result};
use crate::grassmann::{
    check_n, degree, monomials, s_basis, top_monomial, GrassmannElement, Monomial,
    SuperDerivation,
};
use crate::qp::{CommAlgebra, QPAlgebra};
use crate::scalars::{unit_vector, Matrix, Scalar, Vector};

/// Λ°(N) ⊕ S(N) with the shared product and `P`.
pub(crate) struct SModel {
    n: usize,
    lam: Vec<Monomial>,
    sb: Vec<SuperDerivation>,
    /// For each S-basis vector, a W-coordinate where it is 1 and every other basis vector is 0.
    free: Vec<usize>,
    d: SuperDerivation,
    top: Monomial,
}

enum Elem<'a> {
    F(GrassmannElement),
    V(&'a SuperDerivation),
}

impl SModel {
    pub(crate) fn new(n: usize) -> Result<SModel> {
        check_n(n)?;
        let top = top_monomial(n);
        let lam: Vec<Monomial> = monomials(n).into_iter().filter(|m| *m != top).collect();
        let sb = s_basis(n)?;
        let coords: Vec<Vec<Scalar>> = sb.iter().map(|e| e.coordinates()).collect();
        let mut free = Vec::with_capacity(sb.len());
        for (k, ck) in coords.iter().enumerate() {
            let col = (0..ck.len())
                .find(|&c| {
                    ck[c] == Scalar::one()
                        && coords.iter().enumerate().all(|(j, cj)| j == k || cj[c].is_zero())
                })
                .ok_or_else(|| Error::Internal("S(N) basis has no free column".into()))?;
            free.push(col);
        }
        Ok(SModel {
            n,
            lam,
            sb,
            free,
            d: SuperDerivation::d(n)?,
            top,
        })
    }

    pub(crate) fn dim(&self) -> usize {
        self.lam.len() + self.sb.len()
    }

    fn nf(&self) -> usize {
        self.lam.len()
    }

    fn weight(&self, k: usize) -> Scalar {
        Scalar::frac((self.n - k) as i64, self.n as i64)
    }

    /// `P(f) = f + d(f)`, i.e. `(1 − k/N) f` in degree `k`.
    pub(crate) fn p_f(&self, f: &GrassmannElement) -> GrassmannElement {
        f.map_by_degree(|k| self.weight(k))
    }

    /// Inverse of `P` on Λ°(N).
    pub(crate) fn p_inv(&self, f: &GrassmannElement) -> Result<GrassmannElement> {
        if !f.coeff(self.top).is_zero() {
            return Err(Error::Singular("P⁻¹ applied to a top-degree component".into()));
        }
        Ok(f.map_by_degree(|k| if k == self.n { Scalar::zero() } else { self.weight(k).inv().expect("k < N") }))
    }

    /// `P(η) = [d, η]`.
    pub(crate) fn p_eta(&self, eta: &SuperDerivation) -> Result<SuperDerivation> {
        self.d.w_bracket(eta)
    }

    /// `f·η = fη − (−1)^{p(f)p(η)} P⁻¹(η(f)) d` for homogeneous `f`, `η`.
    pub(crate) fn commult(&self, f: &GrassmannElement, eta: &SuperDerivation) -> Result<SuperDerivation> {
        if eta.is_zero() || f.is_zero() {
            return Ok(SuperDerivation::zero(self.n));
        }
        let s = sign_of(f.parity(), eta.parity());
        let g = self.p_inv(&eta.apply(f)?)?;
        SuperDerivation::left_mul(f, eta)?.sub(&SuperDerivation::left_mul(&g, &self.d)?.scale(&s))
    }

    /// Coordinates of `η ∈ S(N)` on the S basis; errors if `η ∉ S(N)`.
    pub(crate) fn s_coords(&self, eta: &SuperDerivation) -> Result<Vector> {
        let w = eta.coordinates();
        let c: Vector = self.free.iter().map(|&k| w[k].clone()).collect();
        let mut back = SuperDerivation::zero(self.n);
        for (b, x) in self.sb.iter().zip(&c) {
            if !x.is_zero() {
                back = back.add(&b.scale(x))?;
            }
        }
        if &back != eta {
            return Err(Error::Construction(format!("{eta} is not divergence free")));
        }
        Ok(c)
    }

    pub(crate) fn coords(&self, f: &GrassmannElement, eta: &SuperDerivation) -> Result<Vector> {
        let mut out = lambda_coords(f, &self.lam, self.nf())?;
        out.extend(self.s_coords(eta)?);
        Ok(out)
    }

    fn elems(&self) -> Vec<Elem<'_>> {
        let mut out: Vec<Elem> = self
            .lam
            .iter()
            .map(|&m| Elem::F(GrassmannElement::term(self.n, m, Scalar::one())))
            .collect();
        out.extend(self.sb.iter().map(Elem::V));
        out
    }

    fn parities(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self.lam.iter().map(|m| (degree(*m) % 2) as u8).collect();
        out.extend(self.sb.iter().map(|e| e.parity().expect("homogeneous basis")));
        out
    }

    fn comm(&self) -> Result<CommAlgebra> {
        let n = self.n;
        let mut labels: Vec<String> = self.lam.iter().map(|m| monomial_label(n, *m)).collect();
        labels.extend(self.sb.iter().map(|e| e.to_string()));
        let par = self.parities();
        let elems = self.elems();
        let zero_f = GrassmannElement::zero(n);
        let zero_v = SuperDerivation::zero(n);
        CommAlgebra::from_fn(labels, par.clone(), unit_vector(self.dim(), 0), |i, j| {
            match (&elems[i], &elems[j]) {
                (Elem::F(f), Elem::F(g)) => self.coords(&f.mul(g)?.without_top(), &zero_v),
                (Elem::F(f), Elem::V(eta)) => self.coords(&zero_f, &self.commult(f, eta)?),
                (Elem::V(eta), Elem::F(f)) => {
                    let s = Scalar::sign(par[i] * par[j]);
                    self.coords(&zero_f, &self.commult(f, eta)?.scale(&s))
                }
                (Elem::V(_), Elem::V(_)) => Ok(vec![Scalar::zero(); self.dim()]),
            }
        })
    }

    fn p_matrix(&self) -> Result<Matrix> {
        let nf = self.nf();
        let mut cols: Vec<Vector> = Vec::with_capacity(self.dim());
        for (k, m) in self.lam.iter().enumerate() {
            let mut v = vec![Scalar::zero(); self.dim()];
            v[k] = self.weight(degree(*m));
            cols.push(v);
        }
        for eta in &self.sb {
            let mut v = vec![Scalar::zero(); nf];
            v.extend(self.s_coords(&self.p_eta(eta)?)?);
            cols.push(v);
        }
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Assembles the algebra from a bracket on basis elements returning `(Λ° part, S part)`.
    fn assemble(
        &self,
        bracket: impl Fn(&Elem, &Elem, &Scalar) -> Result<(GrassmannElement, SuperDerivation)>,
    ) -> Result<QPAlgebra> {
        let comm = self.comm()?;
        let par = self.parities();
        let elems = self.elems();
        let table = |i: usize, j: usize| -> Result<Vector> {
            let (f, v) = bracket(&elems[i], &elems[j], &Scalar::sign(par[i] * par[j]))?;
            self.coords(&f, &v)
        };
        QPAlgebra::from_fn(comm, table, self.p_matrix()?)
    }
}

fn sign_of(a: Option<u8>, b: Option<u8>) -> Scalar {
    Scalar::sign(a.unwrap_or(0) * b.unwrap_or(0))
}

fn basis_note() -> serde_json::Value {
    json!("monomials of Λ°(N) by degree, then lexicographic; then the S(N) kernel basis by coefficient degree")
}

/// `{f, g} = c (f d(g) − d(f) g)` with the top component dropped.
fn ff(m: &SModel, c: &Scalar, f: &GrassmannElement, g: &GrassmannElement) -> Result<GrassmannElement> {
    let x = f.mul(&m.d.apply(g)?)?.sub(&m.d.apply(f)?.mul(g)?)?;
    Ok(x.without_top().scale(c))
}

/// Λ°(N) ⊕ S(N) with the α-dependent bracket.
pub fn build_s(n: usize, alpha: &Scalar) -> Result<QPAlgebra> {
    if n < 2 {
        return Err(Error::Spec(format!("S requires N ≥ 2, got N = {n}")));
    }
    let m = SModel::new(n)?;
    let a1 = alpha + &Scalar::one();
    let zf = GrassmannElement::zero(n);
    let zv = SuperDerivation::zero(n);
    let f_eta = |f: &GrassmannElement, eta: &SuperDerivation, s: &Scalar| -> Result<(GrassmannElement, SuperDerivation)> {
        let v = m.commult(f, &m.p_eta(eta)?)?.scale(&a1);
        let g = m.p_inv(&eta.apply(&m.p_f(f))?)?.scale(&-s);
        Ok((g, v))
    };
    let a = m.assemble(|x, y, s| match (x, y) {
        (Elem::F(f), Elem::F(g)) => Ok((ff(&m, &a1, f, g)?, zv.clone())),
        (Elem::F(f), Elem::V(eta)) => f_eta(f, eta, s),
        (Elem::V(eta), Elem::F(f)) => {
            let (g, v) = f_eta(f, eta, s)?;
            let t = -s;
            Ok((g.scale(&t), v.scale(&t)))
        }
        (Elem::V(eta), Elem::V(tau)) => Ok((zf.clone(), eta.w_bracket(tau)?)),
    })?;
    Ok(a.with_meta("family", json!("S"))
        .with_meta("N", json!(n))
        .with_meta("alpha", json!(alpha.to_string()))
        .with_meta("basis", basis_note()))
}

/// Λ°(N) ⊕ S(N) with the bracket attached to `F = 1 + ξ₁…ξ_N`.
pub fn build_s_tilde(n: usize) -> Result<QPAlgebra> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::Spec(format!("S_tilde requires even N ≥ 2, got N = {n}")));
    }
    let m = SModel::new(n)?;
    let one = Scalar::one();
    let top = GrassmannElement::term(n, m.top, one.clone());
    let one_minus_top = GrassmannElement::one(n).sub(&top)?;
    let zf = GrassmannElement::zero(n);
    let zv = SuperDerivation::zero(n);
    let f_eta = |f: &GrassmannElement, eta: &SuperDerivation, s: &Scalar| -> Result<(GrassmannElement, SuperDerivation)> {
        let v = m.commult(f, &m.p_eta(eta)?)?;
        let h = one_minus_top.mul(&m.p_f(f))?;
        let g = m.p_inv(&eta.apply(&h)?)?.scale(&-s);
        Ok((g, v))
    };
    let a = m.assemble(|x, y, s| match (x, y) {
        (Elem::F(f), Elem::F(g)) => Ok((ff(&m, &one, f, g)?, zv.clone())),
        (Elem::F(f), Elem::V(eta)) => f_eta(f, eta, s),
        (Elem::V(eta), Elem::F(f)) => {
            let (g, v) = f_eta(f, eta, s)?;
            let t = -s;
            Ok((g.scale(&t), v.scale(&t)))
        }
        (Elem::V(eta), Elem::V(tau)) => {
            let b = SuperDerivation::left_mul(&one_minus_top, &eta.w_bracket(tau)?)?;
            let b = b.sub(&SuperDerivation::left_mul(&eta.apply(&top)?, tau)?)?;
            let b = b.add(&SuperDerivation::left_mul(&tau.apply(&top)?, eta)?.scale(s))?;
            Ok((zf.clone(), b))
        }
    })?;
    Ok(a.with_meta("family", json!("S_tilde"))
        .with_meta("N", json!(n))
        .with_meta("basis", basis_note()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qp::{compatibility_check, derived_identities, verify_axioms};

    #[test]
    fn examples() {
        let a = build_s(2, &Scalar::zero()).unwrap();
        assert_eq!(a.dim(), 8);
        assert_eq!(&a.labels()[..3], ["1", "x1", "x2"]);
        assert_eq!(a.p_matrix().get(1, 1), &Scalar::frac(1, 2));
        assert!(matches!(build_s(1, &Scalar::zero()), Err(Error::Spec(_))));
        assert!(matches!(build_s_tilde(3), Err(Error::Spec(_))));
    }

    #[test]
    fn one_bracket_is_scaled_d() {
        // {1, g} = (α+1) d(g): on ξ₁ in N = 2 that is −(α+1)/2 ξ₁.
        for alpha in super::super::alpha_sample() {
            let a = build_s(2, &alpha).unwrap();
            let expect = -(&(&alpha + &Scalar::one()) * &Scalar::frac(1, 2));
            let want = if expect.is_zero() { vec![] } else { vec![(1, expect)] };
            assert_eq!(a.bracket_basis(0, 1), &want);
        }
    }

    #[test]
    fn product_lands_in_s_and_divergence_identities() {
        let m = SModel::new(3).unwrap();
        for &fm in &m.lam {
            let f = GrassmannElement::term(3, fm, Scalar::one());
            for eta in &m.sb {
                let prod = m.commult(&f, eta).unwrap();
                assert!(prod.divergence().unwrap().is_zero());
                // div(f η) = f div η + (−1)^{p p} η(f) with div η = 0
                let s = sign_of(f.parity(), eta.parity());
                let lhs = SuperDerivation::left_mul(&f, eta).unwrap().divergence().unwrap();
                assert_eq!(lhs, eta.apply(&f).unwrap().scale(&s));
            }
            // div(g d) = P(g)
            let gd = SuperDerivation::left_mul(&f, &m.d).unwrap();
            assert_eq!(gd.divergence().unwrap(), m.p_f(&f));
        }
    }

    #[test]
    fn tilde_shares_commutative_structure() {
        let t = build_s_tilde(2).unwrap();
        let s = build_s(2, &Scalar::frac(1, 2)).unwrap();
        assert_eq!(t.mul_table(), s.mul_table());
        assert_eq!(t.p_matrix(), s.p_matrix());
        // {f, g} carries no α, so it matches S_{2,0}.
        let s0 = build_s(2, &Scalar::zero()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(t.bracket_basis(i, j), s0.bracket_basis(i, j));
            }
        }
        // The vector-vector brackets differ from S_{2,0}'s.
        let differs = (3..8).any(|i| (3..8).any(|j| t.bracket_basis(i, j) != s0.bracket_basis(i, j)));
        assert!(differs);
    }

    #[test]
    fn small_cases_pass() {
        for alpha in super::super::alpha_sample() {
            let a = build_s(2, &alpha).unwrap();
            assert!(verify_axioms(&a).passed(), "S2 α={alpha}: {:?}", verify_axioms(&a).failures().next());
            assert!(derived_identities(&a).passed());
            assert!(compatibility_check(&a).passed());
        }
        let t = build_s_tilde(2).unwrap();
        assert!(verify_axioms(&t).passed(), "{:?}", verify_axioms(&t).failures().next());
    }
}

use crate::error::{Error, Result};
use crate::scalars::{Matrix, Scalar};

use super::element::{degree, indices, monomial_order, monomials, GrassmannElement, Monomial};

/// An element `Σ P_i ∂_i` of W(N), stored as its N coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuperDerivation {
    n: usize,
    comps: Vec<GrassmannElement>,
}

impl SuperDerivation {
    pub fn zero(n: usize) -> SuperDerivation {
        SuperDerivation {
            n,
            comps: vec![GrassmannElement::zero(n); n],
        }
    }

    /// `∂_i`.
    pub fn partial(n: usize, i: usize) -> Result<SuperDerivation> {
        SuperDerivation::basis_element(n, 0, i)
    }

    /// `m ∂_i` for a monomial `m`.
    pub fn basis_element(n: usize, m: Monomial, i: usize) -> Result<SuperDerivation> {
        if i == 0 || i > n {
            return Err(Error::Index(format!("∂_{i} outside 1..={n}")));
        }
        let mut out = SuperDerivation::zero(n);
        out.comps[i - 1] = GrassmannElement::term(n, m, Scalar::one());
        Ok(out)
    }

    pub fn from_components(comps: Vec<GrassmannElement>) -> Result<SuperDerivation> {
        let n = comps.len();
        if let Some(c) = comps.iter().find(|c| c.n() != n) {
            return Err(Error::Dimension(format!(
                "component in Λ({}) for a derivation of Λ({n})",
                c.n()
            )));
        }
        Ok(SuperDerivation { n, comps })
    }

    /// The Euler-type element `d = −(1/N) Σ ξ_i ∂_i`.
    pub fn d(n: usize) -> Result<SuperDerivation> {
        if n == 0 {
            return Err(Error::Spec("d needs at least one generator".into()));
        }
        let c = Scalar::frac(-1, n as i64);
        let comps = (1..=n)
            .map(|i| GrassmannElement::term(n, 1 << (i - 1), c.clone()))
            .collect();
        Ok(SuperDerivation { n, comps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `P_i`, 1-based.
    pub fn component(&self, i: usize) -> &GrassmannElement {
        &self.comps[i - 1]
    }

    pub fn components(&self) -> &[GrassmannElement] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(GrassmannElement::is_zero)
    }

    /// Parity `p(P_i) + 1`; `None` if mixed. Zero counts as even.
    pub fn parity(&self) -> Option<u8> {
        let mut p = None;
        for c in self.comps.iter().filter(|c| !c.is_zero()) {
            let q = (c.parity()? + 1) % 2;
            match p {
                None => p = Some(q),
                Some(x) if x != q => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(0))
    }

    pub fn parity_part(&self, p: u8) -> SuperDerivation {
        SuperDerivation {
            n: self.n,
            comps: self.comps.iter().map(|c| c.parity_part((p + 1) % 2)).collect(),
        }
    }

    fn same_n(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::Dimension(format!("W({}) against N = {n}", self.n)));
        }
        Ok(())
    }

    fn zip(&self, o: &SuperDerivation, f: impl Fn(&GrassmannElement, &GrassmannElement) -> Result<GrassmannElement>) -> Result<SuperDerivation> {
        self.same_n(o.n)?;
        let comps = self
            .comps
            .iter()
            .zip(&o.comps)
            .map(|(a, b)| f(a, b))
            .collect::<Result<_>>()?;
        Ok(SuperDerivation { n: self.n, comps })
    }

    pub fn add(&self, o: &SuperDerivation) -> Result<SuperDerivation> {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &SuperDerivation) -> Result<SuperDerivation> {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn scale(&self, s: &Scalar) -> SuperDerivation {
        SuperDerivation {
            n: self.n,
            comps: self.comps.iter().map(|c| c.scale(s)).collect(),
        }
    }

    pub fn neg(&self) -> SuperDerivation {
        self.scale(&-Scalar::one())
    }

    /// `f·η = Σ f P_i ∂_i`.
    pub fn left_mul(f: &GrassmannElement, eta: &SuperDerivation) -> Result<SuperDerivation> {
        eta.same_n(f.n())?;
        let comps = eta.comps.iter().map(|c| f.mul(c)).collect::<Result<_>>()?;
        Ok(SuperDerivation { n: eta.n, comps })
    }

    /// `η(f) = Σ P_i ∂_i(f)`.
    pub fn apply(&self, f: &GrassmannElement) -> Result<GrassmannElement> {
        self.same_n(f.n())?;
        let mut out = GrassmannElement::zero(self.n);
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&c.mul(&f.left_deriv(i + 1)?)?)?;
        }
        Ok(out)
    }

    /// Supercommutator `η∘τ − (−1)^{p(η)p(τ)} τ∘η`, extended bilinearly over parity parts.
    pub fn w_bracket(&self, tau: &SuperDerivation) -> Result<SuperDerivation> {
        self.same_n(tau.n)?;
        let mut out = SuperDerivation::zero(self.n);
        for pe in 0..2u8 {
            let e = self.parity_part(pe);
            if e.is_zero() {
                continue;
            }
            for pt in 0..2u8 {
                let t = tau.parity_part(pt);
                if t.is_zero() {
                    continue;
                }
                let s = Scalar::sign(pe * pt);
                // Component i is the bracket applied to ξ_i: η(τ(ξ_i)) ∓ τ(η(ξ_i)).
                let comps = (0..self.n)
                    .map(|i| {
                        let a = e.apply(&t.comps[i])?;
                        let b = t.apply(&e.comps[i])?;
                        a.sub(&b.scale(&s))
                    })
                    .collect::<Result<_>>()?;
                out = out.add(&SuperDerivation { n: self.n, comps })?;
            }
        }
        Ok(out)
    }

    /// `div(Σ P_i ∂_i) = −Σ (P_i)∂*_i`.
    pub fn divergence(&self) -> Result<GrassmannElement> {
        let mut out = GrassmannElement::zero(self.n);
        for (i, c) in self.comps.iter().enumerate() {
            out = out.sub(&c.right_deriv(i + 1)?)?;
        }
        Ok(out)
    }

    /// Coordinates on the monomial basis of W(N) (see [`w_basis`]).
    pub fn coordinates(&self) -> Vec<Scalar> {
        w_basis(self.n)
            .iter()
            .map(|(m, i)| self.comps[i - 1].coeff(*m))
            .collect()
    }

    pub fn from_coordinates(n: usize, coords: &[Scalar]) -> Result<SuperDerivation> {
        let basis = w_basis(n);
        if coords.len() != basis.len() {
            return Err(Error::Dimension(format!(
                "{} coordinates for W({n}) of dimension {}",
                coords.len(),
                basis.len()
            )));
        }
        let mut out = SuperDerivation::zero(n);
        for ((m, i), c) in basis.iter().zip(coords) {
            out.comps[i - 1].add_term(*m, c);
        }
        Ok(out)
    }
}

/// Monomial basis `m ∂_i` of W(N), ordered by degree of `m`, then `m`, then `i`.
pub fn w_basis(n: usize) -> Vec<(Monomial, usize)> {
    let mut out = Vec::with_capacity(n << n);
    for m in monomials(n) {
        for i in 1..=n {
            out.push((m, i));
        }
    }
    out
}

/// A basis of S(N) = ker div, one block per coefficient degree so that every
/// basis vector is homogeneous. Within a block the order follows the pivot-free
/// columns of the reduced echelon form, i.e. the leading monomial order.
pub fn s_basis(n: usize) -> Result<Vec<SuperDerivation>> {
    super::element::check_n(n)?;
    let basis = w_basis(n);
    let mons = monomials(n);
    let mut out = Vec::new();
    for k in 0..=n {
        let block: Vec<(Monomial, usize)> =
            basis.iter().copied().filter(|(m, _)| degree(*m) == k).collect();
        let targets: Vec<Monomial> = mons
            .iter()
            .copied()
            .filter(|m| k > 0 && degree(*m) == k - 1)
            .collect();
        let mut mat = Matrix::zeros(targets.len(), block.len());
        for (col, (m, i)) in block.iter().enumerate() {
            let div = SuperDerivation::basis_element(n, *m, *i)?.divergence()?;
            for (t, c) in div.terms() {
                let row = targets
                    .binary_search_by(|x| monomial_order(x, &t))
                    .map_err(|_| Error::Internal("divergence left its degree block".into()))?;
                mat.set(row, col, c.clone());
            }
        }
        for v in mat.kernel() {
            let mut eta = SuperDerivation::zero(n);
            for ((m, i), c) in block.iter().zip(&v) {
                eta.comps[i - 1].add_term(*m, c);
            }
            out.push(eta);
        }
    }
    Ok(out)
}

impl std::fmt::Display for SuperDerivation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (m, i) in w_basis(self.n) {
            let c = self.comps[i - 1].coeff(m);
            if c.is_zero() {
                continue;
            }
            let (neg, coeff) = super::text::coefficient_text(&c, true);
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let gens: String = indices(m).iter().map(|k| format!("x{k}")).collect();
            write!(f, "{coeff}{gens}d{i}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for SuperDerivation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::element::from_indices;
    use proptest::prelude::*;

    fn x(n: usize, idx: &[usize]) -> GrassmannElement {
        GrassmannElement::word(n, idx).unwrap()
    }

    fn md(n: usize, idx: &[usize], i: usize) -> SuperDerivation {
        SuperDerivation::basis_element(n, from_indices(idx), i).unwrap()
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(md(2, &[], 1).w_bracket(&md(2, &[1], 2)).unwrap(), md(2, &[], 2));
        assert!(md(2, &[], 1).w_bracket(&md(2, &[], 1)).unwrap().is_zero());
        let d = SuperDerivation::d(1).unwrap();
        assert!(d.w_bracket(&md(1, &[1], 1)).unwrap().is_zero());
    }

    #[test]
    fn divergence_examples() {
        assert_eq!(md(2, &[1], 1).divergence().unwrap(), GrassmannElement::constant(2, Scalar::int(-1)));
        assert!(md(2, &[1], 2).divergence().unwrap().is_zero());
    }

    #[test]
    fn d_scales_degree_k_by_minus_k_over_n() {
        let n = 4;
        let d = SuperDerivation::d(n).unwrap();
        for m in monomials(n) {
            let f = GrassmannElement::term(n, m, Scalar::one());
            let k = degree(m) as i64;
            assert_eq!(d.apply(&f).unwrap(), f.scale(&Scalar::frac(-k, n as i64)));
        }
    }

    #[test]
    fn s_basis_of_two_generators() {
        let b = s_basis(2).unwrap();
        let expected = vec![
            md(2, &[], 1),
            md(2, &[], 2),
            // ξ1∂1 − ξ2∂2 and the two off-diagonal terms, in pivot-free order
            md(2, &[1], 2),
            md(2, &[2], 1),
            md(2, &[1], 1).sub(&md(2, &[2], 2)).unwrap().neg(),
        ];
        assert_eq!(b.len(), 5);
        for e in &expected {
            let found = b.iter().any(|v| v == e || *v == e.neg());
            assert!(found, "missing {e}");
        }
    }

    #[test]
    fn s_dimensions() {
        for n in 1..=4usize {
            let expected = n * (1 << n) - ((1 << n) - 1);
            let b = s_basis(n).unwrap();
            assert_eq!(b.len(), expected, "N = {n}");
            for v in &b {
                assert!(v.divergence().unwrap().is_zero());
                assert!(v.parity().is_some());
            }
        }
    }

    #[test]
    fn s_acts_into_lambda_circle() {
        for n in 1..=3 {
            for eta in s_basis(n).unwrap() {
                for m in monomials(n) {
                    let f = GrassmannElement::term(n, m, Scalar::one());
                    assert!(eta.apply(&f).unwrap().in_lambda_circle());
                }
            }
        }
    }

    #[test]
    fn div_of_g_times_d_is_p() {
        let n = 3;
        let d = SuperDerivation::d(n).unwrap();
        for m in monomials(n) {
            let g = GrassmannElement::term(n, m, Scalar::frac(3, 7));
            let lhs = SuperDerivation::left_mul(&g, &d).unwrap().divergence().unwrap();
            let rhs = g.add(&d.apply(&g).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    fn element(n: usize) -> impl Strategy<Value = GrassmannElement> {
        proptest::collection::vec((0u32..(1 << n), -3i64..=3, 1i64..=3), 0..5).prop_map(move |ts| {
            let mut f = GrassmannElement::zero(n);
            for (m, a, b) in ts {
                f.add_term(m, &Scalar::frac(a, b));
            }
            f
        })
    }

    fn homogeneous(n: usize) -> impl Strategy<Value = SuperDerivation> {
        (proptest::collection::vec(element(n), n), 0u8..2).prop_map(|(cs, p)| {
            SuperDerivation::from_components(cs).unwrap().parity_part(p)
        })
    }

    fn any_derivation(n: usize) -> impl Strategy<Value = SuperDerivation> {
        proptest::collection::vec(element(n), n)
            .prop_map(|cs| SuperDerivation::from_components(cs).unwrap())
    }

    fn par(e: &SuperDerivation) -> u8 {
        e.parity().unwrap()
    }

    proptest! {
        #[test]
        fn integration_by_parts(f in element(3), g in element(3), i in 1usize..=3) {
            let lhs = f.mul(&g.left_deriv(i).unwrap()).unwrap().berezin();
            let rhs = f.right_deriv(i).unwrap().mul(&g).unwrap().berezin();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn divergence_of_bracket(e in homogeneous(3), t in homogeneous(3)) {
            let s = Scalar::sign(par(&e) * par(&t));
            let lhs = e.w_bracket(&t).unwrap().divergence().unwrap();
            let rhs = e.apply(&t.divergence().unwrap()).unwrap()
                .sub(&t.apply(&e.divergence().unwrap()).unwrap().scale(&s)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn bracket_acts_as_supercommutator(e in any_derivation(3), t in any_derivation(3), f in element(3)) {
            let mut expect = GrassmannElement::zero(3);
            for pe in 0..2u8 {
                for pt in 0..2u8 {
                    let (a, b) = (e.parity_part(pe), t.parity_part(pt));
                    let s = Scalar::sign(pe * pt);
                    let v = a.apply(&b.apply(&f).unwrap()).unwrap()
                        .sub(&b.apply(&a.apply(&f).unwrap()).unwrap().scale(&s)).unwrap();
                    expect = expect.add(&v).unwrap();
                }
            }
            prop_assert_eq!(e.w_bracket(&t).unwrap().apply(&f).unwrap(), expect);
        }

        #[test]
        fn super_skew_and_jacobi(a in homogeneous(3), b in homogeneous(3), c in homogeneous(3)) {
            let (pa, pb, pc) = (par(&a), par(&b), par(&c));
            let ab = a.w_bracket(&b).unwrap();
            let ba = b.w_bracket(&a).unwrap();
            prop_assert_eq!(ab.clone(), ba.scale(&Scalar::sign(pa * pb)).neg());
            let j = ab.w_bracket(&c).unwrap().scale(&Scalar::sign(pa * pc))
                .add(&b.w_bracket(&c).unwrap().w_bracket(&a).unwrap().scale(&Scalar::sign(pb * pa))).unwrap()
                .add(&c.w_bracket(&a).unwrap().w_bracket(&b).unwrap().scale(&Scalar::sign(pc * pb))).unwrap();
            prop_assert!(j.is_zero());
        }

        #[test]
        fn coordinates_round_trip(e in any_derivation(3)) {
            prop_assert_eq!(SuperDerivation::from_coordinates(3, &e.coordinates()).unwrap(), e);
        }
    }

    #[test]
    fn display() {
        let e = md(2, &[1], 1).sub(&md(2, &[2], 2)).unwrap().add(&md(2, &[], 2).scale(&Scalar::frac(1, 2))).unwrap();
        assert_eq!(e.to_string(), "1/2*d2 + x1d1 - x2d2");
        assert_eq!(SuperDerivation::zero(2).to_string(), "0");
    }

    #[test]
    fn mismatched_n_is_dimension_error() {
        assert!(matches!(
            md(2, &[], 1).apply(&x(3, &[1])),
            Err(Error::Dimension(_))
        ));
    }
}

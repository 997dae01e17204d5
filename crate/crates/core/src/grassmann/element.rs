use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// A monomial `ξ_{i1}…ξ_{ik}` (ascending indices) as a bitmask; bit `i-1` is `ξ_i`.
pub type Monomial = u32;

/// Hard ceiling imposed by the bitmask representation.
pub const HARD_MAX_GENERATORS: usize = 16;

/// Default cap on the number of odd generators.
pub const DEFAULT_MAX_GENERATORS: usize = 8;

pub fn degree(m: Monomial) -> usize {
    m.count_ones() as usize
}

/// Generator indices of `m`, ascending, 1-based.
pub fn indices(m: Monomial) -> Vec<usize> {
    (0..32).filter(|b| m & (1 << b) != 0).map(|b| b + 1).collect()
}

pub fn from_indices(idx: &[usize]) -> Monomial {
    idx.iter().fold(0, |m, &i| m | (1 << (i - 1)))
}

pub fn top_monomial(n: usize) -> Monomial {
    if n == 0 {
        0
    } else {
        (1u32 << n) - 1
    }
}

/// Sign of `a·b` after sorting into ascending order, or `None` when they share a generator.
pub fn product_sign(a: Monomial, b: Monomial) -> Option<i8> {
    if a & b != 0 {
        return None;
    }
    // Each generator of b must move left past every generator of a above it.
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(if swaps % 2 == 0 { 1 } else { -1 })
}

/// Deterministic basis order: by degree, then lexicographically on index lists.
pub fn monomial_order(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    degree(*a)
        .cmp(&degree(*b))
        .then_with(|| indices(*a).cmp(&indices(*b)))
}

/// All `2^n` monomials in basis order.
pub fn monomials(n: usize) -> Vec<Monomial> {
    let mut all: Vec<Monomial> = (0..(1u32 << n)).collect();
    all.sort_by(monomial_order);
    all
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n > HARD_MAX_GENERATORS {
        return Err(Error::Size(format!(
            "{n} generators exceeds the representation limit of {HARD_MAX_GENERATORS}"
        )));
    }
    Ok(())
}

/// An element of the Grassmann algebra Λ(N).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrassmannElement {
    n: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl GrassmannElement {
    pub fn zero(n: usize) -> GrassmannElement {
        GrassmannElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> GrassmannElement {
        GrassmannElement::term(n, 0, c)
    }

    pub fn one(n: usize) -> GrassmannElement {
        GrassmannElement::constant(n, Scalar::one())
    }

    /// `ξ_i`.
    pub fn generator(n: usize, i: usize) -> Result<GrassmannElement> {
        check_index(n, i)?;
        Ok(GrassmannElement::term(n, 1 << (i - 1), Scalar::one()))
    }

    pub fn term(n: usize, m: Monomial, c: Scalar) -> GrassmannElement {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        GrassmannElement { n, terms }
    }

    /// Product of generators in the given (possibly unsorted) order.
    pub fn word(n: usize, idx: &[usize]) -> Result<GrassmannElement> {
        let mut acc = GrassmannElement::one(n);
        for &i in idx {
            acc = acc.mul(&GrassmannElement::generator(n, i)?)?;
        }
        Ok(acc)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    /// Nonzero terms in storage (bitmask) order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Scalar)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    /// Nonzero terms in basis order.
    pub fn sorted_terms(&self) -> Vec<(Monomial, Scalar)> {
        let mut t: Vec<(Monomial, Scalar)> =
            self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        t.sort_by(|a, b| monomial_order(&a.0, &b.0));
        t
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn same_n(&self, o: &GrassmannElement) -> Result<()> {
        if self.n != o.n {
            return Err(Error::Dimension(format!(
                "Λ({}) against Λ({})",
                self.n, o.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &GrassmannElement) -> Result<GrassmannElement> {
        self.same_n(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &GrassmannElement) -> Result<GrassmannElement> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> GrassmannElement {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, s: &Scalar) -> GrassmannElement {
        if s.is_zero() {
            return GrassmannElement::zero(self.n);
        }
        GrassmannElement {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    /// The supercommutative product.
    pub fn mul(&self, o: &GrassmannElement) -> Result<GrassmannElement> {
        self.same_n(o)?;
        let mut out = GrassmannElement::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                if let Some(s) = product_sign(*a, *b) {
                    let c = ca * cb;
                    out.add_term(a | b, &if s > 0 { c } else { -c });
                }
            }
        }
        Ok(out)
    }

    /// Left derivation `∂_i`: moves `ξ_i` to the front, then deletes it.
    pub fn left_deriv(&self, i: usize) -> Result<GrassmannElement> {
        check_index(self.n, i)?;
        let bit = 1u32 << (i - 1);
        let mut out = GrassmannElement::zero(self.n);
        for (m, c) in &self.terms {
            if m & bit == 0 {
                continue;
            }
            let before = (m & (bit - 1)).count_ones();
            out.add_term(m & !bit, &if before % 2 == 0 { c.clone() } else { -c });
        }
        Ok(out)
    }

    /// Right derivation `(f)∂*_i`: moves `ξ_i` to the back, then deletes it.
    pub fn right_deriv(&self, i: usize) -> Result<GrassmannElement> {
        check_index(self.n, i)?;
        let bit = 1u32 << (i - 1);
        let mut out = GrassmannElement::zero(self.n);
        for (m, c) in &self.terms {
            if m & bit == 0 {
                continue;
            }
            let after = (m >> i).count_ones();
            out.add_term(m & !bit, &if after % 2 == 0 { c.clone() } else { -c });
        }
        Ok(out)
    }

    /// Berezin integral: the coefficient of `ξ_1…ξ_N`.
    pub fn berezin(&self) -> Scalar {
        self.coeff(top_monomial(self.n))
    }

    /// Membership in Λ°(N), the kernel of the Berezin integral.
    pub fn in_lambda_circle(&self) -> bool {
        self.berezin().is_zero()
    }

    /// Drops the top-degree component (projection onto Λ°(N)).
    pub fn without_top(&self) -> GrassmannElement {
        let mut out = self.clone();
        out.terms.remove(&top_monomial(self.n));
        out
    }

    /// Common parity of all monomials, `None` if mixed; zero counts as even.
    pub fn parity(&self) -> Option<u8> {
        let mut p = None;
        for m in self.terms.keys() {
            let q = (degree(*m) % 2) as u8;
            match p {
                None => p = Some(q),
                Some(x) if x != q => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(0))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.parity().is_some()
    }

    /// Component of the given parity.
    pub fn parity_part(&self, p: u8) -> GrassmannElement {
        GrassmannElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| (degree(**m) % 2) as u8 == p)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Component of the given degree.
    pub fn degree_part(&self, k: usize) -> GrassmannElement {
        GrassmannElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| degree(**m) == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Applies `c_k` to the degree-`k` component.
    pub fn map_by_degree(&self, f: impl Fn(usize) -> Scalar) -> GrassmannElement {
        let mut out = GrassmannElement::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(*m, &(c * &f(degree(*m))));
        }
        out
    }
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::Index(format!("generator ξ_{i} outside 1..={n}")));
    }
    Ok(())
}

/// Hodge dual of a monomial in Λ(6): the signed complement `s·m'` with `m·(s·m') = ξ_1…ξ_6`.
pub fn hodge_dual(m: Monomial, n: usize) -> Result<(i8, Monomial)> {
    if n != 6 {
        return Err(Error::Unsupported(format!(
            "Hodge dual is defined for N = 6 only, got N = {n}"
        )));
    }
    if m & !top_monomial(6) != 0 {
        return Err(Error::Index(format!("monomial {m:#b} is not in Λ(6)")));
    }
    let comp = top_monomial(6) & !m;
    let s = product_sign(m, comp).expect("complement is disjoint");
    Ok((s, comp))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, idx: &[usize]) -> GrassmannElement {
        GrassmannElement::word(n, idx).unwrap()
    }

    #[test]
    fn sign_rules() {
        assert_eq!(x(2, &[2, 1]), x(2, &[1, 2]).neg());
        assert!(x(2, &[1, 1]).is_zero());
        let lhs = x(3, &[3]).mul(&x(3, &[1, 2])).unwrap();
        assert_eq!(lhs, x(3, &[1, 2, 3]));
    }

    #[test]
    fn mismatched_n_is_dimension_error() {
        assert!(matches!(
            x(2, &[1]).mul(&x(3, &[1])),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn derivations_on_x1x2() {
        let f = x(2, &[1, 2]);
        assert_eq!(f.left_deriv(1).unwrap(), x(2, &[2]));
        assert_eq!(f.right_deriv(2).unwrap(), x(2, &[1]));
        assert_eq!(f.left_deriv(2).unwrap(), x(2, &[1]).neg());
        // ∂_i f = (-1)^{p(f)-1} (f)∂*_i with p(f) = 0
        assert_eq!(f.left_deriv(2).unwrap(), f.right_deriv(2).unwrap().neg());
        assert!(matches!(f.left_deriv(3), Err(Error::Index(_))));
        assert!(matches!(f.right_deriv(0), Err(Error::Index(_))));
    }

    #[test]
    fn berezin_examples() {
        assert_eq!(x(2, &[1, 2]).scale(&Scalar::int(3)).berezin(), Scalar::int(3));
        let f = GrassmannElement::one(2).add(&x(2, &[1])).unwrap();
        assert!(f.berezin().is_zero());
        assert!(f.in_lambda_circle());
    }

    #[test]
    fn hodge_examples() {
        let m123 = from_indices(&[1, 2, 3]);
        assert_eq!(hodge_dual(m123, 6).unwrap(), (1, from_indices(&[4, 5, 6])));
        // ξ2 · (−ξ1ξ3ξ4ξ5ξ6) = ξ1…ξ6
        assert_eq!(
            hodge_dual(from_indices(&[2]), 6).unwrap(),
            (-1, from_indices(&[1, 3, 4, 5, 6]))
        );
        assert!(matches!(hodge_dual(1, 4), Err(Error::Unsupported(_))));
    }

    #[test]
    fn hodge_defining_property_all_monomials() {
        let top = GrassmannElement::term(6, top_monomial(6), Scalar::one());
        for m in 0..64u32 {
            let (s, c) = hodge_dual(m, 6).unwrap();
            let lhs = GrassmannElement::term(6, m, Scalar::one())
                .mul(&GrassmannElement::term(6, c, Scalar::int(s as i64)))
                .unwrap();
            assert_eq!(lhs, top);
        }
    }

    fn all_monomials(n: usize) -> Vec<GrassmannElement> {
        monomials(n)
            .into_iter()
            .map(|m| GrassmannElement::term(n, m, Scalar::one()))
            .collect()
    }

    #[test]
    fn associative_and_supercommutative_exhaustive() {
        for n in 0..=4 {
            let b = all_monomials(n);
            for f in &b {
                for g in &b {
                    let pf = f.parity().unwrap();
                    let pg = g.parity().unwrap();
                    let fg = f.mul(g).unwrap();
                    let gf = g.mul(f).unwrap();
                    assert_eq!(fg, gf.scale(&Scalar::sign(pf * pg)));
                    for h in &b {
                        assert_eq!(
                            fg.mul(h).unwrap(),
                            f.mul(&g.mul(h).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn left_derivations_anticommute() {
        for n in 1..=4 {
            for f in all_monomials(n) {
                for i in 1..=n {
                    for j in 1..=n {
                        let a = f.left_deriv(j).unwrap().left_deriv(i).unwrap();
                        let b = f.left_deriv(i).unwrap().left_deriv(j).unwrap();
                        assert_eq!(a, b.neg(), "n={n} i={i} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn right_leibniz_exhaustive() {
        let n = 4;
        let b = all_monomials(n);
        for f in &b {
            for g in &b {
                let pg = g.parity().unwrap();
                for i in 1..=n {
                    let lhs = f.mul(g).unwrap().right_deriv(i).unwrap();
                    let rhs = f
                        .mul(&g.right_deriv(i).unwrap())
                        .unwrap()
                        .add(
                            &f.right_deriv(i)
                                .unwrap()
                                .mul(g)
                                .unwrap()
                                .scale(&Scalar::sign(pg)),
                        )
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

//! The five families K_N, W_N, S_{N,α}, S̃_N and CK₆.

mod ck6;
mod k;
mod s;
mod w;

use std::fmt;
use std::str::FromStr;

use serde_json::json;

use crate::error::{Error, Result};
use crate::grassmann::{
    degree, monomial_order, product_sign, GrassmannElement, Monomial, DEFAULT_MAX_GENERATORS,
    HARD_MAX_GENERATORS,
};
use crate::qp::{CommAlgebra, QPAlgebra};
use crate::scalars::{unit_vector, Scalar};

pub use ck6::{build_ck6, ck6_basis_elements, ck6_closure_defects, CK6_DIM};
pub use k::build_k;
pub use s::{build_s, build_s_tilde};
pub use w::build_w;

/// Position of `m` in a monomial-ordered list.
pub(crate) fn index_of(mons: &[Monomial], m: Monomial) -> Result<usize> {
    mons.binary_search_by(|x| monomial_order(x, &m))
        .map_err(|_| Error::Internal(format!("monomial {m:#b} outside the basis")))
}

pub(crate) fn monomial_label(n: usize, m: Monomial) -> String {
    GrassmannElement::term(n, m, Scalar::one()).to_string()
}

/// Coordinates of `f` on a monomial-ordered list.
pub(crate) fn lambda_coords(f: &GrassmannElement, mons: &[Monomial], dim: usize) -> Result<Vec<Scalar>> {
    let mut v = vec![Scalar::zero(); dim];
    for (m, c) in f.terms() {
        v[index_of(mons, m)?] = c.clone();
    }
    Ok(v)
}

/// Λ(N) itself, on the monomials `mons` (all of them, in order).
pub(crate) fn lambda_comm(n: usize, mons: &[Monomial]) -> Result<CommAlgebra> {
    let dim = mons.len();
    let labels = mons.iter().map(|m| monomial_label(n, *m)).collect();
    let parity = mons.iter().map(|m| (degree(*m) % 2) as u8).collect();
    CommAlgebra::from_fn(labels, parity, unit_vector(dim, 0), |i, j| {
        let mut v = vec![Scalar::zero(); dim];
        if let Some(s) = product_sign(mons[i], mons[j]) {
            v[index_of(mons, mons[i] | mons[j])?] = Scalar::int(s as i64);
        }
        Ok(v)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    K,
    W,
    S,
    STilde,
    CK6,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CatalogSpec {
    pub family: Family,
    pub n: usize,
    /// Only meaningful for `S`.
    pub alpha: Scalar,
}

impl CatalogSpec {
    pub fn new(family: Family, n: usize, alpha: Scalar) -> Result<CatalogSpec> {
        match family {
            Family::S if n < 2 => return Err(Error::Spec(format!("S requires N ≥ 2, got N = {n}"))),
            Family::STilde if n < 2 || n % 2 != 0 => {
                return Err(Error::Spec(format!("S_tilde requires even N ≥ 2, got N = {n}")))
            }
            Family::CK6 if n != 6 => return Err(Error::Spec("CK6 has N = 6".into())),
            _ => {}
        }
        if n > HARD_MAX_GENERATORS {
            return Err(Error::Size(format!("N = {n} exceeds {HARD_MAX_GENERATORS}")));
        }
        Ok(CatalogSpec { family, n, alpha })
    }

    pub fn k(n: usize) -> CatalogSpec {
        CatalogSpec::new(Family::K, n, Scalar::zero()).expect("valid")
    }

    pub fn w(n: usize) -> CatalogSpec {
        CatalogSpec::new(Family::W, n, Scalar::zero()).expect("valid")
    }

    pub fn s(n: usize, alpha: Scalar) -> Result<CatalogSpec> {
        CatalogSpec::new(Family::S, n, alpha)
    }

    pub fn s_tilde(n: usize) -> Result<CatalogSpec> {
        CatalogSpec::new(Family::STilde, n, Scalar::zero())
    }

    pub fn ck6() -> CatalogSpec {
        CatalogSpec::new(Family::CK6, 6, Scalar::zero()).expect("valid")
    }

    /// Builds the algebra, refusing generator counts above `max_n`.
    pub fn build_capped(&self, max_n: usize) -> Result<QPAlgebra> {
        if self.n > max_n {
            return Err(Error::Size(format!(
                "N = {} exceeds the generator cap {max_n}",
                self.n
            )));
        }
        let a = match self.family {
            Family::K => build_k(self.n)?,
            Family::W => build_w(self.n)?,
            Family::S => build_s(self.n, &self.alpha)?,
            Family::STilde => build_s_tilde(self.n)?,
            Family::CK6 => build_ck6()?,
        };
        Ok(a.with_meta("spec", json!(self.to_string())))
    }

    pub fn build(&self) -> Result<QPAlgebra> {
        self.build_capped(DEFAULT_MAX_GENERATORS)
    }
}

impl fmt::Display for CatalogSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::K => write!(f, "K:{}", self.n),
            Family::W => write!(f, "W:{}", self.n),
            Family::S => write!(f, "S:{}:alpha={}", self.n, self.alpha),
            Family::STilde => write!(f, "S_tilde:{}", self.n),
            Family::CK6 => write!(f, "CK6"),
        }
    }
}

impl FromStr for CatalogSpec {
    type Err = Error;

    /// `K:3`, `W:2`, `S:2:alpha=1/2` (α defaults to 0), `S_tilde:4`, `CK6`.
    fn from_str(s: &str) -> Result<CatalogSpec> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let bad = || Error::Parse(format!("unrecognized algebra spec {s:?}"));
        let family = match parts[0] {
            "K" => Family::K,
            "W" => Family::W,
            "S" => Family::S,
            "S_tilde" | "St" | "Stilde" => Family::STilde,
            "CK6" if parts.len() == 1 => return Ok(CatalogSpec::ck6()),
            _ => return Err(bad()),
        };
        let n: usize = parts
            .get(1)
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| Error::Parse(format!("bad generator count in {s:?}")))?;
        let mut alpha = Scalar::zero();
        match (family, parts.len()) {
            (_, 2) => {}
            (Family::S, 3) => {
                let v = parts[2].strip_prefix("alpha=").ok_or_else(bad)?;
                alpha = v.parse()?;
            }
            _ => return Err(bad()),
        }
        CatalogSpec::new(family, n, alpha)
    }
}

/// Every algebra in the verification sweep, smallest first.
pub fn standard_sweep() -> Vec<CatalogSpec> {
    let mut out = vec![CatalogSpec::k(1), CatalogSpec::k(2), CatalogSpec::k(3)];
    out.push(CatalogSpec::w(1));
    out.push(CatalogSpec::w(2));
    for n in [2, 3] {
        for alpha in alpha_sample() {
            out.push(CatalogSpec::s(n, alpha).expect("valid"));
        }
    }
    out.push(CatalogSpec::s_tilde(2).expect("valid"));
    out.push(CatalogSpec::s_tilde(4).expect("valid"));
    out.push(CatalogSpec::ck6());
    out
}

/// α values sampled for the S family: 0, 1, −1, 1/2, i.
pub fn alpha_sample() -> Vec<Scalar> {
    vec![Scalar::zero(), Scalar::one(), Scalar::int(-1), Scalar::frac(1, 2), Scalar::i()]
}

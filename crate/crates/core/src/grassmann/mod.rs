//! The Grassmann algebra Λ(N) and its derivation superalgebra W(N).

mod derivation;
mod element;
mod text;

pub use derivation::{s_basis, w_basis, SuperDerivation};
pub(crate) use element::check_n;
pub use element::{
    degree, from_indices, hodge_dual, indices, monomial_order, monomials, product_sign,
    top_monomial, GrassmannElement, Monomial, DEFAULT_MAX_GENERATORS, HARD_MAX_GENERATORS,
};

//! Witt subalgebras `{E_n}` from even idempotents with `P(E) = ωE`.

use serde::Serialize;

use super::{LoopAlgebra, LoopElement};
use crate::error::{Error, Result};
use crate::qp::{compress, QPAlgebra};
use crate::scalars::{is_zero_vector, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VirasoroWitness {
    pub n: i64,
    pub k: i64,
    /// `[E_n, E_k] − ω(n−k)E_{n+k} − {E,E}_{n+k}`.
    pub residual: LoopElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VirasoroReport {
    pub omega: Scalar,
    pub window: i64,
    /// `{E, E}`, which vanishes for even E in a Lie superalgebra.
    pub self_bracket: Vec<(usize, Scalar)>,
    pub witness: Option<VirasoroWitness>,
}

impl VirasoroReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    /// Exact Witt relations `[E_n, E_k] = (n−k)E_{n+k}` on the window.
    pub fn is_witt(&self) -> bool {
        self.passed() && self.omega.is_one() && self.self_bracket.is_empty()
    }
}

/// Validates `E` and checks `[E_n, E_k] = ω(n−k)E_{n+k} + {E,E}_{n+k}` for
/// `n, k ∈ [−W, W]`.
pub fn virasoro_from_idempotent(a: &QPAlgebra, e: &[Scalar], window: i64) -> Result<VirasoroReport> {
    if e.len() != a.dim() {
        return Err(Error::Dimension(format!("E has {} entries, algebra has dimension {}", e.len(), a.dim())));
    }
    if is_zero_vector(e) {
        return Err(Error::Spec("E = 0 has no eigenvalue ω".into()));
    }
    if e.iter().zip(a.parity()).any(|(c, p)| !c.is_zero() && *p == 1) {
        return Err(Error::Spec("E is not even".into()));
    }
    if a.mul(e, e) != e {
        return Err(Error::Spec("E is not idempotent".into()));
    }
    let pe = a.apply_p(e);
    let lead = e.iter().position(|c| !c.is_zero()).expect("nonzero");
    let omega = &pe[lead] / &e[lead];
    if pe.iter().zip(e).any(|(x, y)| *x != &omega * y) {
        return Err(Error::Spec("P(E) is not proportional to E".into()));
    }
    if omega.is_zero() {
        return Err(Error::Spec("P(E) = 0, so ω = 0".into()));
    }
    let self_bracket = compress(&a.bracket(e, e));
    let l = LoopAlgebra::new(a);
    let w = window.max(0);
    let mut witness = None;
    'scan: for n in -w..=w {
        for k in -w..=w {
            let got = l.bracket(&LoopElement::from_vector(e, n), &LoopElement::from_vector(e, k));
            let mut want = LoopElement::from_vector(e, n + k).scale(&(&omega * &Scalar::int(n - k)));
            want.add_scaled(&Scalar::one(), &LoopElement::from_sparse(&self_bracket, n + k));
            let residual = got.sub(&want);
            if !residual.is_zero() {
                witness = Some(VirasoroWitness { n, k, residual });
                break 'scan;
            }
        }
    }
    Ok(VirasoroReport {
        omega,
        window: w,
        self_bracket,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_k, standard_sweep};
    use crate::scalars::unit_vector;

    #[test]
    fn unit_gives_witt_everywhere() {
        for spec in standard_sweep() {
            let a = spec.build().unwrap();
            let r = virasoro_from_idempotent(&a, a.unit(), 3).unwrap();
            assert!(r.is_witt(), "{spec}");
        }
    }

    #[test]
    fn rejections() {
        let a = build_k(1).unwrap();
        let zero = vec![Scalar::zero(); 2];
        assert!(matches!(virasoro_from_idempotent(&a, &zero, 2), Err(Error::Spec(_))));
        let xi = unit_vector(2, 1);
        assert!(matches!(virasoro_from_idempotent(&a, &xi, 2), Err(Error::Spec(_))));
        let two = vec![Scalar::int(2), Scalar::zero()];
        assert!(matches!(virasoro_from_idempotent(&a, &two, 2), Err(Error::Spec(_))));
        assert!(matches!(virasoro_from_idempotent(&a, &[Scalar::one()], 2), Err(Error::Dimension(_))));
        let r = virasoro_from_idempotent(&a, a.unit(), 2).unwrap();
        assert_eq!(r.omega, Scalar::one());
    }
}

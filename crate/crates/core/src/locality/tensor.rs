//! Tensor modules `V(α, β)`: basis `v_k`, `k ∈ β + ℤ`, and
//! `L_n v_k = −(k + αn) v_{n+k}`.

use std::sync::Arc;

use serde::Serialize;

use super::oracle::{single, Combination, Key, TableOracle};
use crate::scalars::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorModule {
    pub alpha: Scalar,
    /// Representative of the coset β.
    pub beta: Scalar,
}

fn int(n: i64) -> Scalar {
    Scalar::int(n)
}

impl TensorModule {
    pub fn new(alpha: Scalar, beta: Scalar) -> TensorModule {
        TensorModule { alpha, beta }
    }

    /// Coefficient of `v_{β+k+n}` in `L_n v_{β+k}`.
    pub fn act(&self, n: i64, k: i64) -> Scalar {
        -(&(&self.beta + &int(k)) + &(&self.alpha * &int(n)))
    }

    /// `L_{n₁} ⋯ L_{n_r} v_{β+k}` as (coefficient, final offset); the
    /// rightmost operator acts first.
    pub fn apply(&self, ops: &[i64], k: i64) -> (Scalar, i64) {
        ops.iter().rev().fold((Scalar::one(), k), |(c, at), &n| (&c * &self.act(n, at), at + n))
    }

    /// First `(n, m, k)` in the window with
    /// `(n−m) L_{n+m} v_k ≠ L_n L_m v_k − L_m L_n v_k`.
    pub fn module_axioms(&self, window: i64) -> Option<(i64, i64, i64)> {
        let w = window;
        for n in -w..=w {
            for m in -w..=w {
                for k in -w..=w {
                    let lhs = &int(n - m) * &self.apply(&[n + m], k).0;
                    let rhs = &self.apply(&[n, m], k).0 - &self.apply(&[m, n], k).0;
                    if lhs != rhs {
                        return Some((n, m, k));
                    }
                }
            }
        }
        None
    }

    /// Smallest `N ≤ nmax` with `Σ_a (−1)^a C(N,a) L_{p+a} L_{q−a} = 0` on
    /// every `v_k`, for `p, q, k ∈ [−W, W]`.
    pub fn cuspidal_identity_order(&self, nmax: usize, window: i64) -> Option<usize> {
        let w = window;
        (0..=nmax).find(|&big_n| {
            let n = big_n as i64;
            (-w..=w).all(|p| {
                (-w..=w).all(|q| {
                    (-w..=w).all(|k| {
                        let total: Scalar = (0..=n)
                            .map(|a| {
                                let c = &Scalar::sign((a % 2) as u8) * &Scalar::binomial(&int(n), a as u32);
                                &c * &self.apply(&[p + a, q - a], k).0
                            })
                            .sum();
                        total.is_zero()
                    })
                })
            })
        })
    }

    /// Whether `L_n` maps `span{v_k : k ∈ offsets}` into itself for
    /// `n ∈ [−W, W]`.
    pub fn spans_submodule(&self, offsets: &[i64], window: i64) -> bool {
        offsets.iter().all(|&k| {
            (-window..=window).all(|n| self.act(n, k).is_zero() || offsets.contains(&(k + n)))
        })
    }

    /// The semidirect sum of the Witt algebra and `V(α, β)` as an oracle
    /// with distributions `L(z) = Σ L_n z^{−n−2}` and `v` on the coset
    /// `β − α`, where it is T-covariant.
    pub fn oracle(&self) -> TableOracle {
        let me = self.clone();
        let bracket = Arc::new(move |a: Key, b: Key| -> Combination {
            match (a.0, b.0) {
                (0, 0) => single(0, a.1 + b.1, int(a.1 - b.1)),
                (0, 1) => single(1, a.1 + b.1, me.act(a.1, b.1)),
                (1, 0) => single(1, a.1 + b.1, -me.act(b.1, a.1)),
                _ => Combination::new(),
            }
        });
        TableOracle::new("tensor_module", &["L", "v"], bracket)
            .with_distribution("L", Scalar::zero(), 0, Arc::new(|j| single(0, j - 1, Scalar::one())))
            .with_distribution("v", &self.beta - &self.alpha, 0, Arc::new(|j| single(1, j, Scalar::one())))
            .with_degree("L", "L", 1)
            .with_degree("L", "v", 1)
            .with_degree("v", "v", 0)
    }
}

/// The five `(α, β)` samples used in the module checks.
pub fn tensor_samples() -> Vec<TensorModule> {
    [
        (Scalar::frac(1, 2), Scalar::frac(1, 3)),
        (Scalar::zero(), Scalar::zero()),
        (Scalar::one(), Scalar::zero()),
        (Scalar::i(), Scalar::frac(1, 2)),
        (Scalar::int(-2), Scalar::gaussian(1, 4, 1, 5)),
    ]
    .into_iter()
    .map(|(a, b)| TensorModule::new(a, b))
    .collect()
}

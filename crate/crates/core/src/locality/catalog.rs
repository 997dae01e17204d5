//! Loop algebras of catalog algebras as bracket oracles.
//!
//! A primary element `a` with `P a = ωa`, `Q a = χa` gives the field
//! `x(z) = Σ_m a_m z^{−m−δ−1}` on the coset `δ = ω − χ`, so `x_{δ+j} = a_j`.
//! Expanding the loop bracket in `p = δ_a + j` along `p + q = S` gives
//! `[x_p, y_q] = (−S·P(a)·b + {a,b} + ⟨a,b⟩)_{S} + p·(a₍₁₎b)_{S−1}`, which is
//! what the n-th product table predicts.

use rayon::prelude::*;
use serde::Serialize;

use super::oracle::{add_into, BracketOracle, Combination, Distribution};
use super::order::extract_kth_products;
use crate::error::{Error, Result};
use crate::loop_algebra::{nth_products, LoopAlgebra};
use crate::qp::{compress, Acc, primary_basis, PrimaryOutcome, QPAlgebra, Sparse};
use crate::scalars::Scalar;

pub struct CatalogOracle {
    name: String,
    a: QPAlgebra,
    u: Vec<Sparse>,
    v: Vec<Sparse>,
    prims: Vec<Sparse>,
    dists: Vec<Distribution>,
}

fn at_mode(v: &Sparse, n: i64) -> Combination {
    v.iter().map(|(i, c)| ((*i, n), c.clone())).collect()
}

impl CatalogOracle {
    /// One distribution per primary basis element, named `p0, p1, …`.
    pub fn new(a: &QPAlgebra) -> Result<CatalogOracle> {
        let prims = match primary_basis(a)? {
            PrimaryOutcome::Basis(b) => b,
            PrimaryOutcome::Obstructed { operator, reason } => {
                return Err(Error::Spec(format!("no primary basis ({operator}: {reason})")))
            }
        };
        let l = LoopAlgebra::new(a);
        let (u, v) = (l.u_table().to_vec(), l.v_table().to_vec());
        let dists = prims
            .iter()
            .enumerate()
            .map(|(i, p)| Distribution {
                name: format!("p{i}"),
                coset: &p.omega - &p.chi,
                parity: p
                    .vector
                    .iter()
                    .zip(a.parity())
                    .find(|(c, _)| !c.is_zero())
                    .map_or(0, |(_, par)| *par),
            })
            .collect();
        let name = a
            .meta()
            .get("spec")
            .and_then(|s| s.as_str())
            .unwrap_or("algebra")
            .to_string();
        Ok(CatalogOracle {
            name,
            a: a.clone(),
            u,
            v,
            prims: prims.iter().map(|p| compress(&p.vector)).collect(),
            dists,
        })
    }

    pub fn primary(&self, x: usize) -> &Sparse {
        &self.prims[x]
    }

    /// `L₋₁`, the unit at mode −1.
    pub fn l_minus_one(&self) -> Combination {
        at_mode(&compress(self.a.unit()), -1)
    }

    fn loop_bracket(&self, x: &Sparse, n: i64, y: &Sparse, m: i64) -> Combination {
        let dim = self.a.dim();
        let mut acc = Acc::new(dim);
        acc.add_bilinear(&Scalar::int(n), &self.u, x, y);
        acc.add_bilinear(&Scalar::int(-m), &self.v, x, y);
        acc.add_bilinear(&Scalar::one(), self.a.bracket_table(), x, y);
        at_mode(&acc.finish(), n + m)
    }
}

impl BracketOracle for CatalogOracle {
    fn name(&self) -> &str {
        &self.name
    }

    fn distributions(&self) -> &[Distribution] {
        &self.dists
    }

    fn generator_labels(&self) -> Vec<String> {
        self.a.labels().to_vec()
    }

    fn component(&self, x: usize, j: i64) -> Combination {
        at_mode(&self.prims[x], j)
    }

    fn bracket(&self, x: usize, p: i64, y: usize, q: i64) -> Combination {
        self.loop_bracket(&self.prims[x], p, &self.prims[y], q)
    }

    fn bracket_elements(&self, a: &Combination, b: &Combination) -> Combination {
        let mut out = Combination::new();
        for ((i, n), c) in a {
            for ((j, m), d) in b {
                let r = self.loop_bracket(&vec![(*i, Scalar::one())], *n, &vec![(*j, Scalar::one())], *m);
                add_into(&mut out, &(c * d), &r);
            }
        }
        out
    }

    /// The loop bracket is linear in the modes.
    fn degree_bound(&self, _x: usize, _y: usize) -> Option<u32> {
        Some(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NthAgreement {
    pub pairs: usize,
    pub max_order: usize,
    pub all_certified: bool,
    /// First `(x, y, k, s)` where extraction and prediction differ.
    pub mismatch: Option<(usize, usize, usize, i64)>,
}

impl NthAgreement {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none() && self.all_certified
    }
}

/// Extracts k-th products of every ordered pair of primary fields from
/// loop-bracket windows and compares them with the n-th product table.
pub fn nth_products_agreement(a: &QPAlgebra, window: i64) -> Result<NthAgreement> {
    let o = CatalogOracle::new(a)?;
    let table = nth_products(a);
    let dim = a.dim();
    let results: Vec<Result<(usize, bool, Option<(usize, usize, usize, i64)>)>> = (0..dim * dim)
        .into_par_iter()
        .map(|xy| {
            let (x, y) = (xy / dim, xy % dim);
            let ext = extract_kth_products(&o, x, y, 4, window)?;
            let (d, plain, first) = table.products(o.primary(x), o.primary(y));
            let delta = &o.dists[x].coset + &o.dists[y].coset;
            let predict = |k: usize, s: i64| -> Combination {
                match k {
                    0 => {
                        let mut c = at_mode(&plain, s);
                        add_into(&mut c, &-(&delta + &Scalar::int(s)), &at_mode(&d, s));
                        c
                    }
                    1 => at_mode(&first, s + 1),
                    _ => Combination::new(),
                }
            };
            for k in 0..2 {
                let offsets = if k < ext.order { ext.offsets(k) } else { (-2 * window..=2 * window).collect() };
                for s in offsets {
                    if ext.component(k, s).expect("solved") != predict(k, s) {
                        return Ok((ext.order, ext.certified, Some((x, y, k, s))));
                    }
                }
            }
            Ok((ext.order, ext.certified, None))
        })
        .collect();
    let mut out = NthAgreement {
        pairs: dim * dim,
        max_order: 0,
        all_certified: true,
        mismatch: None,
    };
    for r in results {
        let (order, certified, mismatch) = r?;
        out.max_order = out.max_order.max(order);
        out.all_certified &= certified;
        if out.mismatch.is_none() {
            out.mismatch = mismatch;
        }
    }
    Ok(out)
}

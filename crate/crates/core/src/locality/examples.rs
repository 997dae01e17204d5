//! Bracket oracles for the standard examples, and the Heisenberg analysis.

use std::sync::Arc;

use serde::Serialize;

use super::oracle::{single, BasisBracket, BracketOracle, Combination, Key, TableOracle};
use super::order::{extract_kth_products, locality_order};
use crate::error::{Error, Result};
use crate::scalars::{Matrix, Scalar};

pub const EXAMPLE_NAMES: [&str; 4] = ["nonlocal_2_7", "heisenberg_5_5", "nonfinite_5_6", "witt"];

fn int(n: i64) -> Scalar {
    Scalar::int(n)
}

/// Extends a bracket given for `g1 ≤ g2` to all pairs of even generators.
fn antisymmetric(f: impl Fn(Key, Key) -> Combination + Send + Sync + 'static) -> BasisBracket {
    Arc::new(move |a: Key, b: Key| {
        if a.0 <= b.0 {
            f(a, b)
        } else {
            f(b, a).into_iter().map(|(k, c)| (k, -c)).collect()
        }
    })
}

fn witt(n: i64, m: i64) -> Combination {
    single(0, n + m, int(n - m))
}

/// `[L_n, L_m] = (n−m)L_{n+m}` with `L(z) = Σ L_n z^{−n−1}`.
pub fn witt_oracle() -> TableOracle {
    TableOracle::new("witt", &["L"], antisymmetric(|(_, n), (_, m)| witt(n, m)))
        .with_distribution("L", Scalar::zero(), 0, Arc::new(|j| single(0, j, Scalar::one())))
        .with_degree("L", "L", 1)
}

/// Generators `L, F, G`; distributions `L(z) = Σ L_n z^{−n−2}`, `F`, the
/// naive `Σ G_n z^{−n−1}` and the corrected `Σ n G_n z^{−n−1}`.
fn nonlocal_family() -> TableOracle {
    let bracket = antisymmetric(|(a, n), (b, m)| match (a, b) {
        (0, 0) => witt(n, m),
        (0, 1) => single(1, n + m, int(-(m + 2 * n))),
        (0, 2) => {
            let mut out = single(2, n + m, int(-(m + n)));
            if m == 0 {
                super::oracle::add_into(&mut out, &Scalar::one(), &single(1, n, int(n * n * n)));
            }
            out
        }
        _ => Combination::new(),
    });
    TableOracle::new("nonlocal_2_7", &["L", "F", "G"], bracket)
        .with_distribution("L", Scalar::zero(), 0, Arc::new(|j| single(0, j - 1, Scalar::one())))
        .with_distribution("F", Scalar::zero(), 0, Arc::new(|j| single(1, j, Scalar::one())))
        .with_distribution("G", Scalar::zero(), 0, Arc::new(|j| single(2, j, Scalar::one())))
        .with_distribution("G_tilde", Scalar::zero(), 0, Arc::new(|j| single(2, j, int(j))))
        .with_degree("L", "L", 1)
        .with_degree("L", "F", 1)
        .with_degree("L", "G_tilde", 2)
        .with_degree("F", "F", 0)
        .with_degree("F", "G_tilde", 0)
        .with_degree("G_tilde", "G_tilde", 0)
}

/// `[x_n, x_k] = n δ_{n,−k} c`; distributions `x`, `c(z) = c`, and
/// `y(z) = x''(z)`, so that `y_p = p(p−1) x_{p−2}`.
fn heisenberg() -> TableOracle {
    let bracket = antisymmetric(|(a, n), (b, m)| match (a, b) {
        (0, 0) if n == -m => single(1, 0, int(n)),
        _ => Combination::new(),
    });
    TableOracle::new("heisenberg_5_5", &["x", "c"], bracket)
        .with_fixed(1)
        .with_distribution("x", Scalar::zero(), 0, Arc::new(|j| single(0, j, Scalar::one())))
        .with_distribution(
            "c",
            Scalar::zero(),
            0,
            Arc::new(|j| if j == -1 { single(1, 0, Scalar::one()) } else { Combination::new() }),
        )
        .with_distribution("y", Scalar::zero(), 0, Arc::new(|j| single(0, j - 2, int(j * (j - 1)))))
}

/// Generators `L, U, V`; `U` and `V` live on the coset `−α`.
fn nonfinite(alpha: Scalar) -> TableOracle {
    let a = alpha.clone();
    let bracket = antisymmetric(move |(g, n), (h, m)| {
        let coeff = -(&int(m) + &(&a * &int(n)));
        match (g, h) {
            (0, 0) => witt(n, m),
            (0, 1) => single(1, n + m, coeff),
            (0, 2) => {
                let mut out = single(2, n + m, coeff);
                super::oracle::add_into(&mut out, &Scalar::one(), &single(1, n + m, int(n)));
                out
            }
            _ => Combination::new(),
        }
    });
    TableOracle::new("nonfinite_5_6", &["L", "U", "V"], bracket)
        .with_distribution("L", Scalar::zero(), 0, Arc::new(|j| single(0, j - 1, Scalar::one())))
        .with_distribution("U", -alpha.clone(), 0, Arc::new(|j| single(1, j, Scalar::one())))
        .with_distribution("V", -alpha, 0, Arc::new(|j| single(2, j, Scalar::one())))
        .with_degree("L", "L", 1)
        .with_degree("L", "U", 1)
        .with_degree("L", "V", 1)
        .with_degree("U", "U", 0)
        .with_degree("U", "V", 0)
        .with_degree("V", "V", 0)
}

/// `nonlocal_2_7`, `heisenberg_5_5`, `nonfinite_5_6` (α defaults to 0), `witt`.
pub fn example_oracle(name: &str, alpha: Option<Scalar>) -> Result<TableOracle> {
    match name {
        "nonlocal_2_7" => Ok(nonlocal_family()),
        "heisenberg_5_5" => Ok(heisenberg()),
        "nonfinite_5_6" => Ok(nonfinite(alpha.unwrap_or_default())),
        "witt" => Ok(witt_oracle()),
        _ => Err(Error::Spec(format!("unknown example {name:?}; expected one of {}", EXAMPLE_NAMES.join(", ")))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeisenbergAnalysis {
    pub xx_order: usize,
    pub yy_order: usize,
    /// `λ_j` with `(y₍ⱼ₎y)(z) = λ_j c`.
    pub lambdas: Vec<Scalar>,
    /// Mode range of the bracket comparison.
    pub range: (i64, i64),
    /// First `(n, k)` where `Σ_j C(n,j) λ_j δ_{n+k−j,−1}` differs from
    /// `5!·C(n,5)·δ_{n+k,4}`.
    pub bracket_mismatch: Option<(i64, i64)>,
    /// Kernel of `y_n ↦ n(n−1)x_{n−2}` on the range, as lists of modes.
    pub kernel: Vec<Vec<i64>>,
    /// Every kernel element brackets to zero with every `y_k` in range.
    pub kernel_central: bool,
}

impl HeisenbergAnalysis {
    pub fn passed(&self) -> bool {
        self.bracket_mismatch.is_none() && self.kernel == vec![vec![0], vec![1]] && self.kernel_central
    }
}

/// Rebuilds the bracket of the `y`-algebra from extracted k-th products and
/// compares it with `5!·C(n,5)·δ_{n+k,4}·c` for `n, k` in `range`.
pub fn heisenberg_analysis(range: (i64, i64)) -> Result<HeisenbergAnalysis> {
    let o = heisenberg();
    let (x, y) = (o.index_of("x").expect("x"), o.index_of("y").expect("y"));
    let xx_order = locality_order(&o, x, x, 4, 4)?
        .order()
        .ok_or_else(|| Error::Extraction("x is not local with itself".into()))?;
    let table = extract_kth_products(&o, y, y, 8, 6)?;
    let mut lambdas = Vec::with_capacity(table.order);
    for k in 0..table.order {
        for s in table.offsets(k) {
            let v = table.component(k, s).expect("solved");
            let ok = if s == -1 { v.is_empty() || v.keys().all(|key| *key == (1, 0)) } else { v.is_empty() };
            if !ok {
                return Err(Error::Extraction(format!("(y({k})y) at offset {s} is not a multiple of c at -1")));
            }
        }
        let at = table
            .component(k, -1)
            .ok_or_else(|| Error::Window(format!("offset -1 of the {k}-th product is outside the window")))?;
        lambdas.push(at.get(&(1, 0)).cloned().unwrap_or_default());
    }
    let l5 = int(120);
    let bracket = |n: i64, k: i64| -> Scalar {
        lambdas
            .iter()
            .enumerate()
            .filter(|(j, _)| n + k - *j as i64 == -1)
            .map(|(j, l)| &Scalar::binomial(&int(n), j as u32) * l)
            .sum()
    };
    let (lo, hi) = range;
    let mut bracket_mismatch = None;
    'scan: for n in lo..=hi {
        for k in lo..=hi {
            let want = if n + k == 4 { &l5 * &Scalar::binomial(&int(n), 5) } else { Scalar::zero() };
            if bracket(n, k) != want {
                bracket_mismatch = Some((n, k));
                break 'scan;
            }
        }
    }
    // σ(y_n) is the y-component itself, written in the x basis.
    let size = (hi - lo + 1) as usize;
    let images: Vec<Combination> = (lo..=hi).map(|n| o.component(y, n)).collect();
    let keys: Vec<Key> = images
        .iter()
        .flat_map(|c| c.keys().copied())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let rows: Vec<Vec<Scalar>> = keys
        .iter()
        .map(|key| images.iter().map(|c| c.get(key).cloned().unwrap_or_default()).collect())
        .collect();
    let rows = if rows.is_empty() { vec![vec![Scalar::zero(); size]] } else { rows };
    let kernel: Vec<Vec<i64>> = Matrix::from_rows(rows)?
        .kernel()
        .iter()
        .map(|v| (0..size).filter(|&i| !v[i].is_zero()).map(|i| lo + i as i64).collect())
        .collect();
    let kernel_central = kernel
        .iter()
        .flatten()
        .all(|&n| (lo..=hi).all(|k| bracket(n, k).is_zero()));
    Ok(HeisenbergAnalysis {
        xx_order,
        yy_order: table.order,
        lambdas,
        range,
        bracket_mismatch,
        kernel,
        kernel_central,
    })
}

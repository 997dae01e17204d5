//! Locality orders and k-th products from windows of bracket values.
//!
//! `x` and `y` are local of order `N` when `Δ^N_{p,q} [x_p, y_q] = 0`. On a
//! finite window this is evidence only, unless the oracle declares that the
//! bracket (with modes taken relative to `p + q`) is a polynomial of degree
//! ≤ d in `(p, q)`: then `Δ^N` of it is a polynomial of degree ≤ d on a grid
//! with `2W + 1 − N` points per axis, and `W ≥ d + N + 1` leaves more than
//! enough points for vanishing there to force vanishing everywhere.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::{json, Value};

use super::indexed::{Delta, IndexedFunction};
use super::oracle::{add_into, format_combination, BracketOracle, Combination, Key};
use crate::error::{Error, Result};
use crate::scalars::{Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Local { order: usize, certified: bool },
    NotLocal { up_to: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalityReport {
    pub x: String,
    pub y: String,
    pub window: i64,
    pub nmax: usize,
    pub degree_bound: Option<u32>,
    pub verdict: Verdict,
    /// For a non-local verdict: offsets `(p, q)` where `Δ^{nmax}` is nonzero.
    pub witness: Option<(i64, i64)>,
}

impl LocalityReport {
    pub fn order(&self) -> Option<usize> {
        match self.verdict {
            Verdict::Local { order, .. } => Some(order),
            Verdict::NotLocal { .. } => None,
        }
    }

    pub fn certified(&self) -> bool {
        matches!(self.verdict, Verdict::Local { certified: true, .. })
    }

    pub fn label(&self) -> String {
        match self.verdict {
            Verdict::Local { certified: true, .. } => "certified".into(),
            Verdict::Local { certified: false, .. } => "window evidence".into(),
            Verdict::NotLocal { up_to } => format!("not local up to {up_to}"),
        }
    }
}

fn check_pair<O: BracketOracle + ?Sized>(oracle: &O, x: usize, y: usize) -> Result<()> {
    let n = oracle.distributions().len();
    if x >= n || y >= n {
        return Err(Error::Index(format!("distribution index out of range (have {n})")));
    }
    Ok(())
}

/// `[x_p, y_q]` for offsets in `[−W, W]²`, modes relative to `p + q`.
fn relative_table<O: BracketOracle + ?Sized>(oracle: &O, x: usize, y: usize, w: i64) -> Result<IndexedFunction> {
    let mut raw = BTreeMap::new();
    let mut keys = BTreeSet::new();
    for p in -w..=w {
        for q in -w..=w {
            let v: BTreeMap<Key, Scalar> = oracle
                .bracket(x, p, y, q)
                .into_iter()
                .map(|((g, n), c)| if oracle.is_fixed(g) { ((g, n), c) } else { ((g, n - p - q), c) })
                .collect();
            keys.extend(v.keys().copied());
            raw.insert((p, q), v);
        }
    }
    let keys: Vec<Key> = keys.into_iter().collect();
    let d = oracle.distributions();
    IndexedFunction::new(vec![-w, -w], vec![w, w], vec![d[x].coset.clone(), d[y].coset.clone()], keys.len(), |pt| {
        let v = &raw[&(pt[0], pt[1])];
        keys.iter().map(|k| v.get(k).cloned().unwrap_or_default()).collect()
    })
}

/// Smallest `N ≤ nmax` with `Δ^N_{p,q}[x_p, y_q] = 0` on the window
/// `p, q ∈ [−W, W]`.
pub fn locality_order<O: BracketOracle + ?Sized>(
    oracle: &O,
    x: usize,
    y: usize,
    nmax: usize,
    window: i64,
) -> Result<LocalityReport> {
    check_pair(oracle, x, y)?;
    if window < 1 || 2 * window < nmax as i64 {
        return Err(Error::Window(format!("window {window} cannot resolve orders up to {nmax}; need 2W ≥ N_max")));
    }
    let degree_bound = oracle.degree_bound(x, y);
    let d = oracle.distributions();
    let mut g = relative_table(oracle, x, y, window)?;
    let mut verdict = Verdict::NotLocal { up_to: nmax };
    let mut witness = None;
    for n in 0..=nmax {
        if g.is_zero() {
            let certified = degree_bound.is_some_and(|deg| window >= deg as i64 + n as i64 + 1);
            verdict = Verdict::Local { order: n, certified };
            break;
        }
        if n == nmax {
            witness = g.first_nonzero().map(|(pt, _)| (pt[0], pt[1]));
            break;
        }
        g = g.delta(Delta::Pair(0, 1), 1)?;
    }
    Ok(LocalityReport {
        x: d[x].name.clone(),
        y: d[y].name.clone(),
        window,
        nmax,
        degree_bound,
        verdict,
        witness,
    })
}

/// Components `(x₍ₖ₎y)_{δ+s}` for `k < N`, keyed by the integer offset `s`,
/// where `δ = δ_x + δ_y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KthProductTable {
    pub x: String,
    pub y: String,
    pub order: usize,
    /// The order carries a degree-bound certificate.
    pub certified: bool,
    pub window: i64,
    pub coset: Scalar,
    x_coset: Scalar,
    products: Vec<BTreeMap<i64, Combination>>,
}

impl KthProductTable {
    /// `(x₍ₖ₎y)_{δ+s}`; zero for `k ≥ N`, `None` outside the solved range.
    pub fn component(&self, k: usize, s: i64) -> Option<Combination> {
        if k >= self.order {
            return Some(Combination::new());
        }
        self.products[k].get(&s).cloned()
    }

    /// Offsets `s` at which `x₍ₖ₎y` was solved.
    pub fn offsets(&self, k: usize) -> Vec<i64> {
        self.products.get(k).map_or(Vec::new(), |m| m.keys().copied().collect())
    }

    /// `Σ_k C(p, k) (x₍ₖ₎y)_{p+q−k}` at offsets `(p, q)`.
    pub fn synthesize(&self, p: i64, q: i64) -> Option<Combination> {
        let pp = &self.x_coset + &Scalar::int(p);
        let mut out = Combination::new();
        for k in 0..self.order {
            let c = self.products[k].get(&(p + q - k as i64))?;
            add_into(&mut out, &Scalar::binomial(&pp, k as u32), c);
        }
        Some(out)
    }

    pub fn to_json(&self, labels: &[String]) -> Value {
        let products: Vec<Value> = self
            .products
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let comps: Vec<Value> = m
                    .iter()
                    .filter(|(_, c)| !c.is_empty())
                    .map(|(s, c)| {
                        let terms: Vec<Value> =
                            c.iter().map(|((g, n), v)| json!([labels[*g], n, v.to_string()])).collect();
                        json!({"s": s, "value": terms})
                    })
                    .collect();
                json!({"k": k, "components": comps})
            })
            .collect();
        json!({
            "x": self.x,
            "y": self.y,
            "order": self.order,
            "certified": self.certified,
            "window": self.window,
            "coset": self.coset.to_string(),
            "products": products,
        })
    }
}

/// Solves `[x_p, y_q] = Σ_{k<N} C(p, k)(x₍ₖ₎y)_{p+q−k}` on every anti-diagonal
/// of the window with at least `N + 1` points, and checks the residual on
/// all of its points.
pub fn extract_kth_products<O: BracketOracle + ?Sized>(
    oracle: &O,
    x: usize,
    y: usize,
    nmax: usize,
    window: i64,
) -> Result<KthProductTable> {
    let report = locality_order(oracle, x, y, nmax, window)?;
    let n = report
        .order()
        .ok_or_else(|| Error::Extraction(format!("{} and {} are {}", report.x, report.y, report.label())))?;
    let d = oracle.distributions();
    let dx = d[x].coset.clone();
    let w = window;
    let mut products = vec![BTreeMap::new(); n];
    let labels = oracle.generator_labels();
    for s in -2 * w..=2 * w {
        let p_lo = (-w).max(s - w);
        let p_hi = w.min(s + w);
        let count = (p_hi - p_lo + 1) as usize;
        if count < n + 1 {
            continue;
        }
        let values: Vec<Combination> = (p_lo..=p_hi).map(|p| oracle.bracket(x, p, y, s - p)).collect();
        let point = |p: i64| &dx + &Scalar::int(p);
        let mut solved = vec![Combination::new(); n];
        if n > 0 {
            let rows: Vec<Vec<Scalar>> = (0..n)
                .map(|i| (0..n).map(|k| Scalar::binomial(&point(p_lo + i as i64), k as u32)).collect())
                .collect();
            let inv = Matrix::from_rows(rows)?.inverse()?;
            for (k, c) in solved.iter_mut().enumerate() {
                for (i, v) in values.iter().take(n).enumerate() {
                    add_into(c, inv.get(k, i), v);
                }
            }
        }
        for (i, v) in values.iter().enumerate() {
            let p = p_lo + i as i64;
            let mut r = v.clone();
            for (k, c) in solved.iter().enumerate() {
                add_into(&mut r, &-Scalar::binomial(&point(p), k as u32), c);
            }
            if !r.is_empty() {
                return Err(Error::Extraction(format!(
                    "[{}_{p}, {}_{}] leaves residual {}",
                    d[x].name,
                    d[y].name,
                    s - p,
                    format_combination(&r, &labels)
                )));
            }
        }
        for (k, c) in solved.into_iter().enumerate() {
            products[k].insert(s - k as i64, c);
        }
    }
    let certified = report.certified();
    Ok(KthProductTable {
        x: report.x,
        y: report.y,
        order: n,
        certified,
        window,
        coset: &dx + &d[y].coset,
        x_coset: dx,
        products,
    })
}

/// First offset `j ∈ [−W, W]` where `[t, x_{δ+j}] ≠ −(δ+j) x_{δ+j−1}`, with
/// the residual. With `t = L₋₁` this is T-covariance of `x`.
pub fn t_covariance<O: BracketOracle + ?Sized>(
    oracle: &O,
    t: &Combination,
    x: usize,
    window: i64,
) -> Option<(i64, Combination)> {
    let delta = &oracle.distributions()[x].coset;
    (-window..=window).find_map(|j| {
        let mut r = oracle.bracket_elements(t, &oracle.component(x, j));
        add_into(&mut r, &(delta + &Scalar::int(j)), &oracle.component(x, j - 1));
        (!r.is_empty()).then_some((j, r))
    })
}

//! Randomized exact checks of the discrete-derivative identities.
//!
//! Every suite draws its tables from a seeded ChaCha8 stream, so a given
//! `(cases, seed)` always produces the same report.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::indexed::{Delta, IndexedFunction};
use crate::error::Result;
use crate::scalars::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

fn rat(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

fn nonzero_rat(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let r = rat(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

fn coset(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::gaussian(rng.gen_range(-3..=3), rng.gen_range(1..=5), rng.gen_range(-2..=2), rng.gen_range(1..=3))
}

/// A random scalar table on the box `[-w, w]^vars`.
fn random_table(rng: &mut ChaCha8Rng, vars: usize, w: i64) -> Result<IndexedFunction> {
    let len = (2 * w + 1).pow(vars as u32) as usize;
    let values: Vec<Scalar> = (0..len).map(|_| rat(rng)).collect();
    IndexedFunction::scalar_cube(vars, w, |x| {
        let k = x.iter().fold(0i64, |k, t| k * (2 * w + 1) + (t + w));
        values[k as usize].clone()
    })
}

/// A random function of one integer argument on `[lo, hi]`.
fn random_sequence(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> impl Fn(i64) -> Scalar {
    let values: Vec<Scalar> = (lo..=hi).map(|_| rat(rng)).collect();
    move |t| values[(t - lo) as usize].clone()
}

fn mul(a: &Vec<Scalar>, b: &Vec<Scalar>) -> Vec<Scalar> {
    vec![&a[0] * &b[0]]
}

fn add(a: &Vec<Scalar>, b: &Vec<Scalar>) -> Vec<Scalar> {
    vec![&a[0] + &b[0]]
}

fn run(name: &str, cases: usize, seed: u64, mut case: impl FnMut(&mut ChaCha8Rng) -> Result<Option<String>>) -> Result<LemmaReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut first_failure = None;
    for i in 0..cases {
        if let Some(msg) = case(&mut rng)? {
            failures += 1;
            first_failure.get_or_insert(format!("case {i}: {msg}"));
        }
    }
    Ok(LemmaReport {
        name: name.into(),
        cases,
        failures,
        first_failure,
    })
}

/// (a) A polynomial of degree d on a coset dies under `Δ^{d+1}` (forward and
/// backward) but not under `Δ^d`.
pub fn polynomial_degree(cases: usize, seed: u64) -> Result<LemmaReport> {
    run("(a) polynomial degree", cases, seed, |rng| {
        let d = rng.gen_range(0..=4usize);
        let mut coeffs: Vec<Scalar> = (0..d).map(|_| rat(rng)).collect();
        coeffs.push(nonzero_rat(rng));
        let delta = coset(rng);
        let f = IndexedFunction::new(vec![-6], vec![6], vec![delta.clone()], 1, |x| {
            let p = &delta + &Scalar::int(x[0]);
            vec![coeffs.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * &p) + c)]
        })?;
        for variant in [Delta::Forward(0), Delta::Backward(0)] {
            if !f.delta(variant, d + 1)?.is_zero() {
                return Ok(Some(format!("{variant:?}^{} of a degree-{d} polynomial is nonzero", d + 1)));
            }
            if f.delta(variant, d)?.is_zero() {
                return Ok(Some(format!("{variant:?}^{d} of a degree-{d} polynomial vanishes")));
            }
        }
        Ok(None)
    })
}

/// (b) `Δ_{p,q}Δ_{q,r} = Δ_{q,r}Δ_{p,q}` on arbitrary three-variable tables.
pub fn commutation(cases: usize, seed: u64) -> Result<LemmaReport> {
    run("(b) commutation", cases, seed, |rng| {
        let f = random_table(rng, 3, 3)?;
        let lhs = f.delta(Delta::Pair(1, 2), 1)?.delta(Delta::Pair(0, 1), 1)?;
        let rhs = f.delta(Delta::Pair(0, 1), 1)?.delta(Delta::Pair(1, 2), 1)?;
        Ok((lhs != rhs).then(|| "orders disagree".to_string()))
    })
}

/// (c) `Δ(FG) = (ΔF)G + F(p+1, q−1)ΔG`.
pub fn product_rule(cases: usize, seed: u64) -> Result<LemmaReport> {
    run("(c) product rule", cases, seed, |rng| {
        let f = random_table(rng, 2, 3)?;
        let g = random_table(rng, 2, 3)?;
        let d = Delta::Pair(0, 1);
        let lhs = f.zip_with(&g, mul)?.delta(d, 1)?;
        let first = f.delta(d, 1)?.zip_with(&g, mul)?;
        let second = f.shift(&[1, -1])?.zip_with(&g.delta(d, 1)?, mul)?;
        let rhs = first.zip_with(&second, add)?;
        Ok((!lhs.agrees_with(&rhs)?).then(|| "product rule fails".to_string()))
    })
}

/// `Σ_{i<n} f_i(p+q) p^i`: killed by `Δ^n_{p,q}` because `p + q` is constant
/// along anti-diagonals.
fn anti_diagonal_polynomial(rng: &mut ChaCha8Rng, n: usize, w: i64, cosets: [Scalar; 2]) -> Result<IndexedFunction> {
    let fs: Vec<_> = (0..n).map(|_| random_sequence(rng, -2 * w, 2 * w)).collect();
    let dp = cosets[0].clone();
    IndexedFunction::new(vec![-w, -w], vec![w, w], cosets.to_vec(), 1, |x| {
        let p = &dp + &Scalar::int(x[0]);
        let v = fs
            .iter()
            .enumerate()
            .map(|(i, f)| &f(x[0] + x[1]) * &p.pow(i as u32))
            .sum();
        vec![v]
    })
}

/// (d) `Δ^N F = 0` and `Δ^K G = 0` imply `Δ^{N+K−1}(FG) = 0`.
pub fn degree_addition(cases: usize, seed: u64) -> Result<LemmaReport> {
    run("(d) degree addition", cases, seed, |rng| {
        let (n, k) = (rng.gen_range(1..=3usize), rng.gen_range(1..=3usize));
        let cosets = [coset(rng), coset(rng)];
        let f = anti_diagonal_polynomial(rng, n, 5, cosets.clone())?;
        let g = anti_diagonal_polynomial(rng, k, 5, cosets)?;
        let d = Delta::Pair(0, 1);
        if !f.delta(d, n)?.is_zero() || !g.delta(d, k)?.is_zero() {
            return Ok(Some("premise fails".into()));
        }
        let fg = f.zip_with(&g, mul)?;
        Ok((!fg.delta(d, n + k - 1)?.is_zero()).then(|| format!("Δ^{} (FG) ≠ 0 with N = {n}, K = {k}", n + k - 1)))
    })
}

/// `H(p + s, q)` on `(p, s, q) ∈ [−w, w]³` for an arbitrary table `H`.
fn shifted_table(rng: &mut ChaCha8Rng, w: i64) -> Result<IndexedFunction> {
    let h = random_table(rng, 2, 2 * w)?;
    IndexedFunction::scalar_cube(3, w, |x| h.get(&[x[0] + x[1], x[2]]).expect("in range")[0].clone())
}

/// (e) `Δ_{p,q} H(p+s, q) = Δ_{s,q} H(p+s, q)`.
pub fn shift_identity(cases: usize, seed: u64) -> Result<LemmaReport> {
    run("(e) shift identity", cases, seed, |rng| {
        let f = shifted_table(rng, 3)?;
        let lhs = f.delta(Delta::Pair(0, 2), 1)?;
        let rhs = f.delta(Delta::Pair(1, 2), 1)?;
        Ok((!lhs.agrees_with(&rhs)?).then(|| "Δ_{p,q} ≠ Δ_{s,q}".to_string()))
    })
}

/// (f) `Δ^N_{p,q}Δ^K_{s,q} H(p+s, q) = Δ^{N+K}_{p,q} H(p+s, q)`.
pub fn iterated_shift_identity(cases: usize, seed: u64) -> Result<LemmaReport> {
    run("(f) iterated shift identity", cases, seed, |rng| {
        let (n, k) = (rng.gen_range(0..=2usize), rng.gen_range(0..=2usize));
        let f = shifted_table(rng, 3)?;
        let lhs = f.delta(Delta::Pair(1, 2), k)?.delta(Delta::Pair(0, 2), n)?;
        let rhs = f.delta(Delta::Pair(0, 2), n + k)?;
        Ok((!lhs.agrees_with(&rhs)?).then(|| format!("fails for N = {n}, K = {k}")))
    })
}

fn first_vanishing(f: &IndexedFunction, d: Delta, limit: usize) -> Result<Option<usize>> {
    let mut g = f.clone();
    for k in 0..=limit {
        if g.is_zero() {
            return Ok(Some(k));
        }
        if k < limit {
            g = g.delta(d, 1)?;
        }
    }
    Ok(None)
}

/// If `Δ^N_{p,q} Σ_l p^l H_l(p+s, q) = 0` then each term is killed by some
/// power of `Δ_{p,q}`. Inputs: `H_l(u, q) = Σ_{j<J} h_lj(u+q) u^j` with
/// arbitrary `h_lj`.
pub fn decomposition(cases: usize, seed: u64) -> Result<LemmaReport> {
    const W: i64 = 5;
    run("dec", cases, seed, |rng| {
        let n = rng.gen_range(0..=2usize);
        let big_j = rng.gen_range(1..=2usize);
        let hs: Vec<Vec<_>> = (0..=n)
            .map(|_| (0..big_j).map(|_| random_sequence(rng, -4 * W, 4 * W)).collect())
            .collect();
        let term = |l: usize| {
            IndexedFunction::scalar_cube(3, W, |x| {
                let (p, s, q) = (x[0], x[1], x[2]);
                let u = p + s;
                let h: Scalar = hs[l]
                    .iter()
                    .enumerate()
                    .map(|(j, h)| &h(u + q) * &Scalar::int(u).pow(j as u32))
                    .sum();
                &Scalar::int(p).pow(l as u32) * &h
            })
        };
        let terms: Vec<IndexedFunction> = (0..=n).map(term).collect::<Result<_>>()?;
        let total = terms[1..].iter().try_fold(terms[0].clone(), |acc, t| acc.zip_with(t, add))?;
        let d = Delta::Pair(0, 2);
        let limit = (2 * W) as usize;
        let Some(big_n) = first_vanishing(&total, d, limit)? else {
            return Ok(Some("premise: the sum is not killed on the window".into()));
        };
        for (l, t) in terms.iter().enumerate() {
            match first_vanishing(t, d, limit)? {
                Some(k) if k <= big_n + 2 * n => {}
                other => return Ok(Some(format!("term {l}: vanishing order {other:?} with N = {big_n}"))),
            }
        }
        Ok(None)
    })
}

/// All seven suites with `cases` draws each.
pub fn all_suites(cases: usize, seed: u64) -> Result<Vec<LemmaReport>> {
    Ok(vec![
        polynomial_degree(cases, seed)?,
        commutation(cases, seed.wrapping_add(1))?,
        product_rule(cases, seed.wrapping_add(2))?,
        degree_addition(cases, seed.wrapping_add(3))?,
        shift_identity(cases, seed.wrapping_add(4))?,
        iterated_shift_identity(cases, seed.wrapping_add(5))?,
        decomposition(cases, seed.wrapping_add(6))?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_and_are_reproducible() {
        let a = all_suites(12, 7).unwrap();
        assert!(a.iter().all(LemmaReport::passed), "{a:?}");
        assert_eq!(a, all_suites(12, 7).unwrap());
    }

    #[test]
    fn a_false_identity_is_caught() {
        // Δ_{p,q} against Δ_{p,s} on H(p+s, q) is not an identity.
        let r = run("control", 20, 3, |rng| {
            let f = shifted_table(rng, 3)?;
            let lhs = f.delta(Delta::Pair(0, 2), 1)?;
            let rhs = f.delta(Delta::Pair(0, 1), 1)?;
            Ok((!lhs.agrees_with(&rhs)?).then(|| "differs".to_string()))
        })
        .unwrap();
        assert!(r.failures > 15);
    }
}

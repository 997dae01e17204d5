//! Exhaustive verifiers. Every check scans basis tuples in lexicographic order
//! and reports the first violation with its nonzero residual.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{basis_sparse, compress, matrix_columns, Acc, QPAlgebra, Sparse};
use crate::scalars::{Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: String,
    pub tuple: Vec<usize>,
    pub labels: Vec<String>,
    pub residual: Sparse,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub violation: Option<Violation>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

fn sign(p: u8) -> Scalar {
    Scalar::sign(p)
}

fn one() -> Scalar {
    Scalar::one()
}

fn minus() -> Scalar {
    -Scalar::one()
}

type Found = Option<(&'static str, Sparse)>;

fn violation(a: &QPAlgebra, tuple: Vec<usize>, found: (&str, Sparse)) -> Violation {
    Violation {
        clause: found.0.to_string(),
        labels: tuple.iter().map(|&i| a.labels()[i].clone()).collect(),
        tuple,
        residual: found.1,
    }
}

fn scan1(a: &QPAlgebra, f: impl Fn(usize) -> Found + Sync) -> Option<Violation> {
    (0..a.dim())
        .into_par_iter()
        .find_map_first(|i| f(i).map(|x| violation(a, vec![i], x)))
}

fn scan2(a: &QPAlgebra, f: impl Fn(usize, usize) -> Found + Sync) -> Option<Violation> {
    let dim = a.dim();
    (0..dim).into_par_iter().find_map_first(|i| {
        (0..dim).find_map(|j| f(i, j).map(|x| violation(a, vec![i, j], x)))
    })
}

fn scan3(a: &QPAlgebra, f: impl Fn(usize, usize, usize) -> Found + Sync) -> Option<Violation> {
    let dim = a.dim();
    (0..dim * dim).into_par_iter().find_map_first(|ij| {
        let (i, j) = (ij / dim, ij % dim);
        (0..dim).find_map(|k| f(i, j, k).map(|x| violation(a, vec![i, j, k], x)))
    })
}

fn nonzero(clause: &'static str, r: Sparse) -> Found {
    if r.is_empty() {
        None
    } else {
        Some((clause, r))
    }
}

fn check(name: &str, violation: Option<Violation>) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        violation,
    }
}

/// Parity-compatibility residual: the components of `v` of the wrong parity.
fn wrong_parity(a: &QPAlgebra, v: &Sparse, expected: u8) -> Sparse {
    v.iter()
        .filter(|(k, _)| a.parity()[*k] != expected)
        .cloned()
        .collect()
}

fn qp1(a: &QPAlgebra) -> Option<Violation> {
    let dim = a.dim();
    let par = a.parity();
    let unit = compress(a.unit());
    let mul = a.mul_table();
    let unit_parity = wrong_parity(a, &unit, 0);
    if !unit_parity.is_empty() {
        return Some(Violation {
            clause: "unit is even".into(),
            tuple: vec![],
            labels: vec![],
            residual: unit_parity,
        });
    }
    scan1(a, |i| {
        let mut acc = Acc::new(dim);
        acc.add_bilinear(&one(), mul, &unit, &basis_sparse(i));
        acc.add(&minus(), &basis_sparse(i));
        nonzero("1·a = a", acc.finish())
    })
    .or_else(|| {
        scan2(a, |i, j| {
            nonzero("product parity", wrong_parity(a, a.mul_basis(i, j), par[i] ^ par[j])).or_else(|| {
                let mut acc = Acc::new(dim);
                acc.add(&one(), a.mul_basis(i, j));
                acc.add(&-sign(par[i] * par[j]), a.mul_basis(j, i));
                nonzero("supercommutativity", acc.finish())
            })
        })
    })
    .or_else(|| {
        scan3(a, |i, j, k| {
            let mut acc = Acc::new(dim);
            acc.add_bilinear(&one(), mul, a.mul_basis(i, j), &basis_sparse(k));
            acc.add_bilinear(&minus(), mul, &basis_sparse(i), a.mul_basis(j, k));
            nonzero("associativity", acc.finish())
        })
    })
}

/// Super-antisymmetry and the Jacobi identity for a bracket table.
fn lie_violation(a: &QPAlgebra, table: &[Sparse]) -> Option<Violation> {
    let dim = a.dim();
    let par = a.parity();
    let at = |i: usize, j: usize| &table[i * dim + j];
    scan2(a, |i, j| {
        nonzero("bracket parity", wrong_parity(a, at(i, j), par[i] ^ par[j])).or_else(|| {
            let mut acc = Acc::new(dim);
            acc.add(&one(), at(i, j));
            acc.add(&sign(par[i] * par[j]), at(j, i));
            nonzero("super-antisymmetry", acc.finish())
        })
    })
    .or_else(|| {
        scan3(a, |i, j, k| {
            // {a,{b,c}} = {{a,b},c} + (−1)^{p(a)p(b)} {b,{a,c}}
            let mut acc = Acc::new(dim);
            acc.add_bilinear(&one(), table, &basis_sparse(i), at(j, k));
            acc.add_bilinear(&minus(), table, at(i, j), &basis_sparse(k));
            acc.add_bilinear(&-sign(par[i] * par[j]), table, &basis_sparse(j), at(i, k));
            nonzero("Jacobi", acc.finish())
        })
    })
}

fn p_even(a: &QPAlgebra) -> Option<Violation> {
    scan1(a, |j| nonzero("P is even", wrong_parity(a, &a.p_columns()[j], a.parity()[j])))
}

fn qp3(a: &QPAlgebra) -> Option<Violation> {
    let dim = a.dim();
    let mul = a.mul_table();
    let pc = a.p_columns();
    p_even(a).or_else(|| {
        scan2(a, |i, j| {
            // P(ab) = P(a)b + aP(b) − ab
            let mut acc = Acc::new(dim);
            acc.add(&one(), &a.p_sp(a.mul_basis(i, j)));
            acc.add_bilinear(&minus(), mul, &pc[i], &basis_sparse(j));
            acc.add_bilinear(&minus(), mul, &basis_sparse(i), &pc[j]);
            acc.add(&one(), a.mul_basis(i, j));
            nonzero("P(ab) = P(a)b + aP(b) - ab", acc.finish())
        })
    })
}

/// Table of `e_i · P(e_j)`.
fn mul_p_table(a: &QPAlgebra) -> Vec<Sparse> {
    let dim = a.dim();
    (0..dim * dim)
        .into_par_iter()
        .map(|ij| a.mul_sp(&basis_sparse(ij / dim), &a.p_columns()[ij % dim]))
        .collect()
}

fn qp4_with(a: &QPAlgebra, table: &[Sparse]) -> Option<Violation> {
    let dim = a.dim();
    let par = a.parity();
    let mul = a.mul_table();
    let pc = a.p_columns();
    let mp = mul_p_table(a);
    let p_of_bracket: Vec<Sparse> = table.par_iter().map(|v| a.p_sp(v)).collect();
    scan3(a, |i, j, k| {
        let s = sign(par[i] * par[j]);
        let ei = basis_sparse(i);
        let mut acc = Acc::new(dim);
        acc.add_bilinear(&one(), mul, &ei, &p_of_bracket[j * dim + k]);
        acc.add_bilinear(&minus(), table, &mp[i * dim + j], &basis_sparse(k));
        acc.add_bilinear(&-&s, table, &basis_sparse(j), &mp[i * dim + k]);
        acc.add_bilinear(&minus(), mul, &table[i * dim + j], &pc[k]);
        acc.add_bilinear(&s, mul, &pc[j], &table[i * dim + k]);
        nonzero("a·P({b,c}) compatibility", acc.finish())
    })
}

/// QP1–QP4, each exhaustive over basis tuples.
pub fn verify_axioms(a: &QPAlgebra) -> Report {
    Report {
        checks: vec![
            check("QP1", qp1(a)),
            check("QP2", lie_violation(a, a.bracket_table())),
            check("QP3", qp3(a)),
            check("QP4", qp4_with(a, a.bracket_table())),
        ],
    }
}

/// QP3 in its stated form.
pub fn qp3_check(a: &QPAlgebra) -> CheckResult {
    check("QP3", qp3(a))
}

/// `D = P − Id` is an even derivation of `·`, checked through `D` directly.
pub fn derivation_check(a: &QPAlgebra) -> CheckResult {
    let dim = a.dim();
    let d = a.p_matrix().sub(&Matrix::identity(dim)).expect("square");
    let dc = matrix_columns(&d);
    let mul = a.mul_table();
    let v = scan1(a, |j| nonzero("D is even", wrong_parity(a, &dc[j], a.parity()[j]))).or_else(|| {
        scan2(a, |i, j| {
            let mut acc = Acc::new(dim);
            for (k, c) in a.mul_basis(i, j) {
                acc.add(c, &dc[*k]);
            }
            acc.add_bilinear(&minus(), mul, &dc[i], &basis_sparse(j));
            acc.add_bilinear(&minus(), mul, &basis_sparse(i), &dc[j]);
            nonzero("D(ab) = D(a)b + aD(b)", acc.finish())
        })
    });
    check("D derivation", v)
}

/// The consequences of QP3/QP4 obtained by setting `a = 1`, `b = 1`, `c = 1`.
pub fn derived_identities(a: &QPAlgebra) -> Report {
    let dim = a.dim();
    let mul = a.mul_table();
    let table = a.bracket_table();
    let pc = a.p_columns();
    let unit = compress(a.unit());
    let q_cols = matrix_columns(&a.q_operator());
    let pbracket = scan2(a, |b, c| {
        // P{b,c} = {Pb,c} + {b,Pc} + Q(b)·P(c) − P(b)·Q(c)
        let mut acc = Acc::new(dim);
        acc.add(&one(), &a.p_sp(a.bracket_basis(b, c)));
        acc.add_bilinear(&minus(), table, &pc[b], &basis_sparse(c));
        acc.add_bilinear(&minus(), table, &basis_sparse(b), &pc[c]);
        acc.add_bilinear(&minus(), mul, &q_cols[b], &pc[c]);
        acc.add_bilinear(&one(), mul, &pc[b], &q_cols[c]);
        nonzero("P{b,c}", acc.finish())
    });
    let pad = scan1(a, |c| {
        let mut acc = Acc::new(dim);
        acc.add(&one(), &a.p_sp(&q_cols[c]));
        acc.add_bilinear(&minus(), table, &unit, &pc[c]);
        nonzero("P{1,c} = {1,Pc}", acc.finish())
    });
    let adiff = scan2(a, |i, j| {
        // {1, a·P(b)} = {1,a}·P(b) + a·{1,P(b)}
        let apb = a.mul_sp(&basis_sparse(i), &pc[j]);
        let mut acc = Acc::new(dim);
        acc.add_bilinear(&one(), table, &unit, &apb);
        acc.add_bilinear(&minus(), mul, &q_cols[i], &pc[j]);
        acc.add_bilinear(&minus(), mul, &basis_sparse(i), &a.bracket_sp(&unit, &pc[j]));
        nonzero("{1, a·P(b)}", acc.finish())
    });
    Report {
        checks: vec![check("Pbracket", pbracket), check("Pad", pad), check("adiff", adiff)],
    }
}

/// Seed for the sampled `(s1, s2)` combinations.
pub const COMBINATION_SEED: u64 = 0x5150_0001;

/// The cyclic compatibility identity between `{,}` and `⟨,⟩`, plus QP2 and QP4
/// for three seeded combinations `s1{,} + s2⟨,⟩`.
pub fn compatibility_check(a: &QPAlgebra) -> Report {
    let dim = a.dim();
    let par = a.parity();
    let table = a.bracket_table();
    let angle = a.angle_table();
    let cyclic = scan3(a, |i, j, k| {
        let mut acc = Acc::new(dim);
        for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
            let s = sign(par[x] * par[z]);
            acc.add_bilinear(&s, table, &angle[x * dim + y], &basis_sparse(z));
            acc.add_bilinear(&s, &angle, &table[x * dim + y], &basis_sparse(z));
        }
        nonzero("cyclic compatibility", acc.finish())
    });
    let mut checks = vec![check("compatible", cyclic)];
    let mut rng = ChaCha8Rng::seed_from_u64(COMBINATION_SEED);
    for n in 0..3 {
        let s1 = Scalar::frac(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        let s2 = Scalar::frac(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        let combo = a.combined_bracket(&s1, &s2);
        let label = format!("sample {n} (s1={s1}, s2={s2})");
        checks.push(check(&format!("{label} QP2"), lie_violation(&combo, combo.bracket_table())));
        checks.push(check(&format!("{label} QP4"), qp4_with(&combo, combo.bracket_table())));
    }
    Report { checks }
}

/// Poisson Leibniz rule `{a, b·c} = {a,b}·c + (−1)^{p(a)p(b)} b·{a,c}`.
pub fn poisson_leibniz(a: &QPAlgebra) -> CheckResult {
    let dim = a.dim();
    let par = a.parity();
    let mul = a.mul_table();
    let table = a.bracket_table();
    let v = scan3(a, |i, j, k| {
        let mut acc = Acc::new(dim);
        acc.add_bilinear(&one(), table, &basis_sparse(i), a.mul_basis(j, k));
        acc.add_bilinear(&minus(), mul, a.bracket_basis(i, j), &basis_sparse(k));
        acc.add_bilinear(&-sign(par[i] * par[j]), mul, &basis_sparse(j), a.bracket_basis(i, k));
        nonzero("Leibniz", acc.finish())
    });
    check("Poisson Leibniz", v)
}

/// Dimensions of the smallest subspaces containing each basis vector and
/// closed under `x ↦ x·b`, `x ↦ {x, b}` and `P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealProbe {
    pub generated: Vec<(String, usize)>,
    /// Every nonzero basis vector generates the whole space.
    pub no_proper_generated_ideal: bool,
}

struct Span {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Span {
    fn insert(&mut self, v: &Sparse, dim: usize) -> Option<Sparse> {
        let mut w = super::densify(v, dim);
        for (p, r) in &self.rows {
            let f = w[*p].clone();
            if !f.is_zero() {
                crate::scalars::add_scaled(&mut w, &-f, r);
            }
        }
        let p = w.iter().position(|x| !x.is_zero())?;
        let inv = w[p].inv().expect("nonzero");
        let w: Vec<Scalar> = w.iter().map(|x| x * &inv).collect();
        self.rows.push((p, w.clone()));
        Some(compress(&w))
    }
}

pub fn ideal_probe(a: &QPAlgebra) -> IdealProbe {
    let dim = a.dim();
    let generated: Vec<(String, usize)> = (0..dim)
        .into_par_iter()
        .map(|g| {
            let mut span = Span { rows: Vec::new() };
            let mut queue: Vec<Sparse> = span.insert(&basis_sparse(g), dim).into_iter().collect();
            while let Some(x) = queue.pop() {
                if span.rows.len() == dim {
                    break;
                }
                let mut images = vec![a.p_sp(&x)];
                for b in 0..dim {
                    images.push(a.mul_sp(&x, &basis_sparse(b)));
                    images.push(a.bracket_sp(&x, &basis_sparse(b)));
                }
                for y in images {
                    if let Some(r) = span.insert(&y, dim) {
                        queue.push(r);
                    }
                }
            }
            (a.labels()[g].clone(), span.rows.len())
        })
        .collect();
    let no_proper_generated_ideal = generated.iter().all(|(_, d)| *d == dim);
    IdealProbe {
        generated,
        no_proper_generated_ideal,
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{k1, lambda1};
    use super::*;

    #[test]
    fn k1_passes_everything() {
        let a = k1();
        assert!(verify_axioms(&a).passed());
        assert!(derived_identities(&a).passed());
        assert!(compatibility_check(&a).passed());
        assert!(poisson_leibniz(&a).passed());
    }

    #[test]
    fn k1_with_identity_p_fails_qp4_on_xi_triple() {
        let a = k1().with_p(Matrix::identity(2)).unwrap();
        let r = verify_axioms(&a);
        assert!(r.get("QP1").unwrap().passed());
        assert!(r.get("QP3").unwrap().passed());
        let v = r.get("QP4").unwrap().violation.clone().unwrap();
        // First tuple in basis order is (1, ξ, ξ): 1·{ξ,ξ} − ({ξ,ξ} + {ξ,ξ}) = −1
        assert_eq!(v.tuple, vec![0, 1, 1]);
        assert_eq!(v.residual, vec![(0, Scalar::int(-1))]);
    }

    #[test]
    fn qp3_and_derivation_agree() {
        for p in [
            Matrix::diag(&[Scalar::one(), Scalar::frac(1, 2)]),
            Matrix::diag(&[Scalar::int(2), Scalar::one()]),
            Matrix::identity(2),
            Matrix::from_i64(&[&[1, 1], &[0, 1]]),
        ] {
            let a = lambda1(Scalar::one(), p);
            assert_eq!(qp3_check(&a).passed(), derivation_check(&a).passed());
        }
    }

    #[test]
    fn broken_bracket_fails_qp2() {
        let a = k1().with_bracket_constant(0, 1, 1, Scalar::one()).unwrap();
        let v = verify_axioms(&a).get("QP2").unwrap().violation.clone().unwrap();
        assert_eq!(v.clause, "super-antisymmetry");
        assert_eq!(v.tuple, vec![0, 1]);
    }

    #[test]
    fn k1_ideals() {
        let probe = ideal_probe(&k1());
        assert!(probe.no_proper_generated_ideal);
    }
}

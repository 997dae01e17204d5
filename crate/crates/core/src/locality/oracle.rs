//! Lie superalgebras presented by a bracket on indexed basis elements, with
//! named formal distributions `x(z) = Σ_{p ∈ δ+ℤ} x_p z^{−p−1}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::scalars::Scalar;

/// Basis element `(generator, mode)` of the underlying Lie superalgebra.
pub type Key = (usize, i64);

/// Finite linear combination of basis elements; no zero coefficients.
pub type Combination = BTreeMap<Key, Scalar>;

pub fn add_into(acc: &mut Combination, s: &Scalar, x: &Combination) {
    for (k, c) in x {
        let slot = acc.entry(*k).or_insert_with(Scalar::zero);
        *slot += &(s * c);
        if slot.is_zero() {
            acc.remove(k);
        }
    }
}

pub fn single(g: usize, mode: i64, c: Scalar) -> Combination {
    if c.is_zero() {
        Combination::new()
    } else {
        BTreeMap::from([((g, mode), c)])
    }
}

pub fn format_combination(x: &Combination, labels: &[String]) -> String {
    if x.is_empty() {
        return "0".into();
    }
    x.iter()
        .map(|((g, n), c)| format!("({c})*{}[{n}]", labels[*g]))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Metadata of one distribution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Distribution {
    pub name: String,
    /// Components are indexed by `δ + j`, `j ∈ ℤ`.
    pub coset: Scalar,
    pub parity: u8,
}

/// A bracket oracle: components of named distributions and their brackets,
/// exact for every pair of integer offsets.
pub trait BracketOracle: Sync {
    fn name(&self) -> &str;
    fn distributions(&self) -> &[Distribution];
    fn generator_labels(&self) -> Vec<String>;
    /// Generators whose mode does not move with the bracket (central
    /// elements written without a mode).
    fn is_fixed(&self, _generator: usize) -> bool {
        false
    }
    /// `x_{δ_x + j}`.
    fn component(&self, x: usize, j: i64) -> Combination;
    /// `[x_{δ_x + p}, y_{δ_y + q}]`.
    fn bracket(&self, x: usize, p: i64, y: usize, q: i64) -> Combination;
    /// Bracket of arbitrary combinations.
    fn bracket_elements(&self, a: &Combination, b: &Combination) -> Combination;
    /// Declared bound `d`: `[x_p, y_q]`, written with modes relative to
    /// `p + q`, is a polynomial of total degree ≤ d in `(p, q)`.
    fn degree_bound(&self, x: usize, y: usize) -> Option<u32>;

    fn index_of(&self, name: &str) -> Option<usize> {
        self.distributions().iter().position(|d| d.name == name)
    }
}

pub type BasisBracket = Arc<dyn Fn(Key, Key) -> Combination + Send + Sync>;
pub type ComponentFn = Arc<dyn Fn(i64) -> Combination + Send + Sync>;

/// An oracle given by a bracket on basis elements and explicit components.
#[derive(Clone)]
pub struct TableOracle {
    name: String,
    generators: Vec<String>,
    fixed: Vec<bool>,
    bracket: BasisBracket,
    distributions: Vec<Distribution>,
    components: Vec<ComponentFn>,
    degrees: BTreeMap<(usize, usize), u32>,
}

impl TableOracle {
    pub fn new(name: &str, generators: &[&str], bracket: BasisBracket) -> TableOracle {
        TableOracle {
            name: name.into(),
            generators: generators.iter().map(|s| s.to_string()).collect(),
            fixed: vec![false; generators.len()],
            bracket,
            distributions: Vec::new(),
            components: Vec::new(),
            degrees: BTreeMap::new(),
        }
    }

    pub fn with_fixed(mut self, generator: usize) -> TableOracle {
        self.fixed[generator] = true;
        self
    }

    pub fn with_distribution(mut self, name: &str, coset: Scalar, parity: u8, component: ComponentFn) -> TableOracle {
        self.distributions.push(Distribution {
            name: name.into(),
            coset,
            parity,
        });
        self.components.push(component);
        self
    }

    /// Declares the degree bound for both orders of the pair.
    pub fn with_degree(mut self, x: &str, y: &str, d: u32) -> TableOracle {
        let (i, j) = (self.index_of(x).expect("known"), self.index_of(y).expect("known"));
        self.degrees.insert((i, j), d);
        self.degrees.insert((j, i), d);
        self
    }
}

impl BracketOracle for TableOracle {
    fn name(&self) -> &str {
        &self.name
    }

    fn distributions(&self) -> &[Distribution] {
        &self.distributions
    }

    fn generator_labels(&self) -> Vec<String> {
        self.generators.clone()
    }

    fn is_fixed(&self, generator: usize) -> bool {
        self.fixed[generator]
    }

    fn component(&self, x: usize, j: i64) -> Combination {
        (self.components[x])(j)
    }

    fn bracket(&self, x: usize, p: i64, y: usize, q: i64) -> Combination {
        self.bracket_elements(&self.component(x, p), &self.component(y, q))
    }

    fn bracket_elements(&self, a: &Combination, b: &Combination) -> Combination {
        let mut out = Combination::new();
        for (ka, ca) in a {
            for (kb, cb) in b {
                add_into(&mut out, &(ca * cb), &(self.bracket)(*ka, *kb));
            }
        }
        out
    }

    fn degree_bound(&self, x: usize, y: usize) -> Option<u32> {
        self.degrees.get(&(x, y)).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_cancel() {
        let mut x = single(0, 3, Scalar::int(2));
        add_into(&mut x, &Scalar::int(-2), &single(0, 3, Scalar::one()));
        assert!(x.is_empty());
        assert!(single(1, 0, Scalar::zero()).is_empty());
        let y = single(1, -2, Scalar::frac(1, 2));
        assert_eq!(format_combination(&y, &["a".into(), "b".into()]), "(1/2)*b[-2]");
    }
}

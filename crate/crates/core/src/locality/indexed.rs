//! Vector-valued functions on a box of integer offsets, with discrete
//! derivatives `Δ_i F(x) = F(x) − F(x + e_i)`, `Δ⁻_i F(x) = F(x) − F(x − e_i)`
//! and `Δ_{i,j} F(x) = F(x) − F(x + e_i − e_j)`.

use crate::error::{Error, Result};
use crate::scalars::{is_zero_vector, sub_vectors, Scalar, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Delta {
    Forward(usize),
    Backward(usize),
    Pair(usize, usize),
}

/// `F(δ + x)` for integer offsets `x` in `[lo, hi]` (inclusive, per variable).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedFunction {
    lo: Vec<i64>,
    hi: Vec<i64>,
    cosets: Vec<Scalar>,
    width: usize,
    values: Vec<Vector>,
}

impl IndexedFunction {
    pub fn new(
        lo: Vec<i64>,
        hi: Vec<i64>,
        cosets: Vec<Scalar>,
        width: usize,
        f: impl Fn(&[i64]) -> Vector,
    ) -> Result<IndexedFunction> {
        if lo.len() != hi.len() || lo.len() != cosets.len() || lo.is_empty() {
            return Err(Error::Shape("bounds and cosets must have one entry per variable".into()));
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::Window("empty window".into()));
        }
        let mut out = IndexedFunction {
            lo,
            hi,
            cosets,
            width,
            values: Vec::new(),
        };
        let mut values = Vec::with_capacity(out.len());
        for x in out.points() {
            let v = f(&x);
            if v.len() != width {
                return Err(Error::Dimension(format!("value at {x:?} has length {}, expected {width}", v.len())));
            }
            values.push(v);
        }
        out.values = values;
        Ok(out)
    }

    /// Scalar-valued table on the cube `[−w, w]^vars` with integer cosets.
    pub fn scalar_cube(vars: usize, w: i64, f: impl Fn(&[i64]) -> Scalar) -> Result<IndexedFunction> {
        IndexedFunction::new(vec![-w; vars], vec![w; vars], vec![Scalar::zero(); vars], 1, |x| vec![f(x)])
    }

    pub fn vars(&self) -> usize {
        self.lo.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn bounds(&self, i: usize) -> (i64, i64) {
        (self.lo[i], self.hi[i])
    }

    pub fn cosets(&self) -> &[Scalar] {
        &self.cosets
    }

    fn len(&self) -> usize {
        self.lo.iter().zip(&self.hi).map(|(l, h)| (h - l + 1) as usize).product()
    }

    /// All offsets in row-major order (last variable fastest).
    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for (l, h) in self.lo.iter().zip(&self.hi) {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (*l..=*h).map(move |t| {
                        let mut q = p.clone();
                        q.push(t);
                        q
                    })
                })
                .collect();
        }
        out
    }

    fn index(&self, x: &[i64]) -> Option<usize> {
        let mut k = 0usize;
        for i in 0..self.vars() {
            if x[i] < self.lo[i] || x[i] > self.hi[i] {
                return None;
            }
            k = k * (self.hi[i] - self.lo[i] + 1) as usize + (x[i] - self.lo[i]) as usize;
        }
        Some(k)
    }

    pub fn get(&self, x: &[i64]) -> Option<&Vector> {
        if x.len() != self.vars() {
            return None;
        }
        self.index(x).map(|k| &self.values[k])
    }

    /// The actual indices `δ + x`.
    pub fn point(&self, x: &[i64]) -> Vec<Scalar> {
        x.iter().zip(&self.cosets).map(|(o, d)| d + &Scalar::int(*o)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| is_zero_vector(v))
    }

    pub fn first_nonzero(&self) -> Option<(Vec<i64>, &Vector)> {
        self.points()
            .into_iter()
            .zip(&self.values)
            .find(|(_, v)| !is_zero_vector(v))
    }

    /// `G(x) = F(x + shift)`, on the offsets where that is defined.
    pub fn shift(&self, shift: &[i64]) -> Result<IndexedFunction> {
        let lo: Vec<i64> = self.lo.iter().zip(shift).map(|(l, s)| l - s).collect();
        let hi: Vec<i64> = self.hi.iter().zip(shift).map(|(h, s)| h - s).collect();
        let cosets = self.cosets.clone();
        IndexedFunction::new(lo, hi, cosets, self.width, |x| {
            let y: Vec<i64> = x.iter().zip(shift).map(|(a, s)| a + s).collect();
            self.get(&y).expect("in range").clone()
        })
    }

    /// The restriction to `[lo, hi]`, which must lie inside the window.
    pub fn restrict(&self, lo: &[i64], hi: &[i64]) -> Result<IndexedFunction> {
        if (0..self.vars()).any(|i| lo[i] < self.lo[i] || hi[i] > self.hi[i]) {
            return Err(Error::Window("restriction leaves the window".into()));
        }
        IndexedFunction::new(lo.to_vec(), hi.to_vec(), self.cosets.clone(), self.width, |x| {
            self.get(x).expect("in range").clone()
        })
    }

    /// Pointwise combination on the common window.
    pub fn zip_with(&self, other: &IndexedFunction, f: impl Fn(&Vector, &Vector) -> Vector) -> Result<IndexedFunction> {
        if self.vars() != other.vars() {
            return Err(Error::Shape("different numbers of variables".into()));
        }
        let lo: Vec<i64> = self.lo.iter().zip(&other.lo).map(|(a, b)| *a.max(b)).collect();
        let hi: Vec<i64> = self.hi.iter().zip(&other.hi).map(|(a, b)| *a.min(b)).collect();
        let width = f(&self.values[0], &other.values[0]).len();
        IndexedFunction::new(lo, hi, self.cosets.clone(), width, |x| {
            f(self.get(x).expect("in range"), other.get(x).expect("in range"))
        })
    }

    /// Whether `self` and `other` agree on their common window.
    pub fn agrees_with(&self, other: &IndexedFunction) -> Result<bool> {
        Ok(self.zip_with(other, |a, b| sub_vectors(a, b))?.is_zero())
    }

    pub fn delta(&self, variant: Delta, power: usize) -> Result<IndexedFunction> {
        let mut out = self.clone();
        for _ in 0..power {
            out = out.delta_once(variant)?;
        }
        Ok(out)
    }

    fn delta_once(&self, variant: Delta) -> Result<IndexedFunction> {
        let n = self.vars();
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        let mut step = vec![0i64; n];
        let check = |i: usize| {
            if i < n {
                Ok(())
            } else {
                Err(Error::Index(format!("variable {i} of {n}")))
            }
        };
        match variant {
            Delta::Forward(i) => {
                check(i)?;
                hi[i] -= 1;
                step[i] = 1;
            }
            Delta::Backward(i) => {
                check(i)?;
                lo[i] += 1;
                step[i] = -1;
            }
            Delta::Pair(i, j) => {
                check(i)?;
                check(j)?;
                if i == j {
                    return Err(Error::Spec("Δ_{i,j} needs two distinct variables".into()));
                }
                hi[i] -= 1;
                lo[j] += 1;
                step[i] = 1;
                step[j] = -1;
            }
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::Window(format!("window exhausted by {variant:?}")));
        }
        IndexedFunction::new(lo, hi, self.cosets.clone(), self.width, |x| {
            let y: Vec<i64> = x.iter().zip(&step).map(|(a, s)| a + s).collect();
            sub_vectors(self.get(x).expect("in range"), self.get(&y).expect("in range"))
        })
    }
}

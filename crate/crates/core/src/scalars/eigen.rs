//! Exact eigen-analysis over ℚ(i).
//!
//! The minimal polynomial is found exactly from the first linear relation
//! among `I, M, M², …`. Candidate roots of its squarefree part come from a
//! floating-point Aberth iteration and are only accepted after exact
//! evaluation confirms them; whatever is left unconfirmed is reported as a
//! factor that does not split over the base field.

use num_complex::Complex64;
use num_rational::BigRational;

use super::{Matrix, Poly, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenvalue {
    pub value: Scalar,
    pub algebraic_multiplicity: usize,
    /// Basis of the eigenspace; its length is the geometric multiplicity.
    pub eigenvectors: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenReport {
    pub minimal_polynomial: Poly,
    /// Sorted by real part, then imaginary part.
    pub eigenvalues: Vec<Eigenvalue>,
    pub diagonalizable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenOutcome {
    Split(EigenReport),
    /// The minimal polynomial has roots outside ℚ(i).
    NotSplit {
        minimal_polynomial: Poly,
        roots_found: Vec<Scalar>,
        unresolved_factor: Poly,
    },
}

impl EigenOutcome {
    pub fn split(&self) -> Option<&EigenReport> {
        match self {
            EigenOutcome::Split(r) => Some(r),
            EigenOutcome::NotSplit { .. } => None,
        }
    }
}

impl EigenReport {
    /// Eigenvectors as columns, grouped by eigenvalue.
    pub fn eigenbasis(&self) -> Result<Matrix> {
        let cols: Vec<Vec<Scalar>> = self
            .eigenvalues
            .iter()
            .flat_map(|e| e.eigenvectors.iter().cloned())
            .collect();
        let n = cols.first().map_or(0, Vec::len);
        Matrix::from_columns(n, &cols)
    }
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

/// Exact minimal polynomial (monic).
pub fn minimal_polynomial(m: &Matrix) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::Shape("minimal polynomial of a non-square matrix".into()));
    }
    let n = m.rows();
    // Reduced power vectors with their pivot, plus each one's expression in powers of m.
    let mut reduced: Vec<(usize, Vec<Scalar>, Vec<Scalar>)> = Vec::new();
    let mut power = Matrix::identity(n);
    for k in 0..=n {
        let mut v = flatten(&power);
        let mut combo = vec![Scalar::zero(); k + 1];
        combo[k] = Scalar::one();
        for (pivot, rv, rc) in &reduced {
            let f = v[*pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (a, b) in v.iter_mut().zip(rv) {
                if !b.is_zero() {
                    *a -= &(&f * b);
                }
            }
            for (a, b) in combo.iter_mut().zip(rc) {
                *a -= &(&f * b);
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => return Ok(Poly::new(combo).monic()),
            Some(p) => {
                let inv = v[p].inv()?;
                for x in v.iter_mut() {
                    *x = &*x * &inv;
                }
                for x in combo.iter_mut() {
                    *x = &*x * &inv;
                }
                reduced.push((p, v, combo));
            }
        }
        power = power.mul(m)?;
    }
    Err(Error::Internal("no linear relation among the first n+1 powers".into()))
}

fn to_c64_coeffs(p: &Poly) -> Vec<Complex64> {
    p.coeffs().iter().map(Scalar::to_c64).collect()
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dv = dv * z + v;
        v = v * z + a;
    }
    (v, dv)
}

/// Approximate roots of a monic polynomial by Aberth–Ehrlich iteration.
fn aberth(c: &[Complex64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    let radius = 1.0 + c[..d].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / d as f64))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for k in 0..d {
            let (v, dv) = horner(c, z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Continued-fraction convergents of `x` with denominators up to 10^9.
fn convergents(x: f64) -> Vec<BigRational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..40 {
        if !r.is_finite() || r.abs() > 1e15 {
            break;
        }
        let a = r.floor();
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > 1_000_000_000 {
            break;
        }
        out.push(BigRational::new(h2.into(), k2.into()));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-12 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

fn exact_candidate(p: &Poly, z: Complex64) -> Option<Scalar> {
    let re = convergents(z.re);
    let im = if z.im.abs() < 1e-9 {
        vec![BigRational::from_integer(0.into())]
    } else {
        convergents(z.im)
    };
    for r in re.iter().rev() {
        for i in im.iter().rev() {
            let cand = Scalar::from_big(r.clone(), i.clone());
            if p.eval(&cand).is_zero() {
                return Some(cand);
            }
        }
    }
    None
}

/// Roots of `p` in ℚ(i), each exactly verified, plus the cofactor that could
/// not be resolved (constant when `p` splits).
pub fn gaussian_rational_roots(p: &Poly) -> (Vec<Scalar>, Poly) {
    let mut rest = p.squarefree_part();
    let mut roots = Vec::new();
    loop {
        match rest.degree() {
            None | Some(0) => break,
            Some(1) => {
                let c = rest.coeffs();
                roots.push(-(&c[0] / &c[1]));
                rest = Poly::one();
                break;
            }
            Some(_) => {}
        }
        let approx = aberth(&to_c64_coeffs(&rest.monic()));
        let found = approx.into_iter().find_map(|z| exact_candidate(&rest, z));
        match found {
            Some(r) => {
                rest = rest.div_rem(&Poly::linear(&r)).0;
                roots.push(r);
            }
            None => break,
        }
    }
    roots.sort_by(scalar_order);
    (roots, rest.monic())
}

pub(crate) fn scalar_order(a: &Scalar, b: &Scalar) -> std::cmp::Ordering {
    a.re_big()
        .cmp(&b.re_big())
        .then_with(|| a.im_big().cmp(&b.im_big()))
}

/// Eigenvalues, multiplicities, eigenspaces and a diagonalizability verdict,
/// or a structured "does not split" outcome.
pub fn eigen(m: &Matrix) -> Result<EigenOutcome> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "eigen-analysis needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let minpoly = minimal_polynomial(m)?;
    let (roots, rest) = gaussian_rational_roots(&minpoly);
    if rest.degree().unwrap_or(0) > 0 {
        return Ok(EigenOutcome::NotSplit {
            minimal_polynomial: minpoly,
            roots_found: roots,
            unresolved_factor: rest,
        });
    }
    let mut eigenvalues = Vec::with_capacity(roots.len());
    let mut diagonalizable = true;
    for lambda in roots {
        let e = minpoly.multiplicity(&lambda);
        if e > 1 {
            diagonalizable = false;
        }
        let shifted = m.shift(&lambda)?;
        let eigenvectors = shifted.kernel();
        let algebraic_multiplicity = if e == 1 {
            eigenvectors.len()
        } else {
            shifted.pow(e as u32)?.kernel().len()
        };
        eigenvalues.push(Eigenvalue {
            value: lambda,
            algebraic_multiplicity,
            eigenvectors,
        });
    }
    Ok(EigenOutcome::Split(EigenReport {
        minimal_polynomial: minpoly,
        eigenvalues,
        diagonalizable,
    }))
}

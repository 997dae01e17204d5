use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat::Rat;
use crate::error::{Error, Result};

/// An exact Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: Rat,
    im: Rat,
}

impl Scalar {
    pub const ZERO: Scalar = Scalar {
        re: Rat::ZERO,
        im: Rat::ZERO,
    };
    pub const ONE: Scalar = Scalar {
        re: Rat::ONE,
        im: Rat::ZERO,
    };

    pub fn zero() -> Scalar {
        Scalar::ZERO
    }

    pub fn one() -> Scalar {
        Scalar::ONE
    }

    /// The imaginary unit.
    pub fn i() -> Scalar {
        Scalar {
            re: Rat::ZERO,
            im: Rat::ONE,
        }
    }

    pub fn int(n: i64) -> Scalar {
        Scalar {
            re: Rat::from_i64(n),
            im: Rat::ZERO,
        }
    }

    /// `num/den`; panics on a zero denominator (use `parse` for untrusted input).
    pub fn frac(num: i64, den: i64) -> Scalar {
        Scalar {
            re: Rat::new(num, den).expect("zero denominator"),
            im: Rat::ZERO,
        }
    }

    /// `(a/b) + (c/d)·i`.
    pub fn gaussian(a: i64, b: i64, c: i64, d: i64) -> Scalar {
        Scalar {
            re: Rat::new(a, b).expect("zero denominator"),
            im: Rat::new(c, d).expect("zero denominator"),
        }
    }

    pub fn from_big(re: BigRational, im: BigRational) -> Scalar {
        Scalar {
            re: Rat::from_big(re),
            im: Rat::from_big(im),
        }
    }

    pub fn re(&self) -> Scalar {
        Scalar {
            re: self.re.clone(),
            im: Rat::ZERO,
        }
    }

    pub fn im(&self) -> Scalar {
        Scalar {
            re: self.im.clone(),
            im: Rat::ZERO,
        }
    }

    pub fn re_big(&self) -> BigRational {
        self.re.to_big()
    }

    pub fn im_big(&self) -> BigRational {
        self.im.to_big()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True for rational integers.
    pub fn is_integer(&self) -> bool {
        self.im.is_zero() && self.re.is_integer()
    }

    /// The value as an `i64` when it is a small rational integer.
    pub fn as_i64(&self) -> Option<i64> {
        if self.im.is_zero() {
            self.re.as_i64()
        } else {
            None
        }
    }

    pub fn conj(&self) -> Scalar {
        Scalar {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    /// `|z|²`, always real.
    pub fn norm_sqr(&self) -> Scalar {
        Scalar {
            re: self.re.mul(&self.re).add(&self.im.mul(&self.im)),
            im: Rat::ZERO,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.im.is_zero() {
            let r = self.re.recip().ok_or(Error::DivisionByZero)?;
            return Ok(Scalar { re: r, im: Rat::ZERO });
        }
        let n = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let ninv = n.recip().ok_or(Error::DivisionByZero)?;
        Ok(Scalar {
            re: self.re.mul(&ninv),
            im: self.im.neg().mul(&ninv),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    /// Representative of `self + ℤ` whose real part lies in `[0, 1)`.
    pub fn mod_integers(&self) -> Scalar {
        Scalar {
            re: self.re.sub(&self.re.floor()),
            im: self.im.clone(),
        }
    }

    /// Approximate value, used only to seed exact searches.
    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `(-1)^k` for a parity bit.
    pub fn sign(k: u8) -> Scalar {
        if k & 1 == 0 {
            Scalar::one()
        } else {
            -Scalar::one()
        }
    }

    /// Generalized binomial `x(x-1)…(x-k+1)/k!`.
    pub fn binomial(x: &Scalar, k: u32) -> Scalar {
        let mut acc = Scalar::one();
        for j in 0..k {
            acc = &acc * &(x - &Scalar::int(j as i64));
            acc = &acc * &Scalar::frac(1, j as i64 + 1);
        }
        acc
    }

    /// Parses one signed term (`-3/2`, `2*i`, `-i`) with no sums; returns the
    /// value and the byte count consumed.
    pub fn parse_atom_prefix(s: &str) -> Result<(Scalar, usize)> {
        let (v, used, imag) = parse_signed_term(s.as_bytes(), 0)?;
        let value = if imag {
            Scalar { re: Rat::ZERO, im: v }
        } else {
            Scalar { re: v, im: Rat::ZERO }
        };
        Ok((value, used))
    }

    /// Parses the longest scalar prefix of `s`; returns the value and the byte count consumed.
    pub fn parse_prefix(s: &str) -> Result<(Scalar, usize)> {
        let b = s.as_bytes();
        let (first, mut pos, first_is_imag) = parse_signed_term(b, 0)?;
        if first_is_imag {
            return Ok((
                Scalar {
                    re: Rat::ZERO,
                    im: first,
                },
                pos,
            ));
        }
        let mut value = Scalar {
            re: first,
            im: Rat::ZERO,
        };
        if pos < b.len() && (b[pos] == b'+' || b[pos] == b'-') {
            if let Ok((im, end, true)) = parse_signed_term(b, pos) {
                value.im = im;
                pos = end;
            }
        }
        Ok((value, pos))
    }
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_digits(b: &[u8], mut pos: usize) -> Option<(BigInt, usize)> {
    let start = pos;
    while pos < b.len() && b[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == start {
        return None;
    }
    let text = std::str::from_utf8(&b[start..pos]).ok()?;
    Some((text.parse::<BigInt>().ok()?, pos))
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

/// One signed term: `[+-] rational`, `[+-] rational*i`, or `[+-] i`.
/// The flag reports whether the term was imaginary.
fn parse_signed_term(b: &[u8], mut pos: usize) -> Result<(Rat, usize, bool)> {
    let mut negative = false;
    if pos < b.len() && (b[pos] == b'+' || b[pos] == b'-') {
        negative = b[pos] == b'-';
        pos += 1;
    }
    if pos < b.len() && b[pos] == b'i' && (pos + 1 >= b.len() || !is_ident_char(b[pos + 1])) {
        let v = if negative { Rat::ONE.neg() } else { Rat::ONE };
        return Ok((v, pos + 1, true));
    }
    let (num, mut p) =
        parse_digits(b, pos).ok_or_else(|| parse_err(format!("expected a number at byte {pos}")))?;
    let mut den = BigInt::from(1);
    if p < b.len() && b[p] == b'/' {
        let (d, q) = parse_digits(b, p + 1)
            .ok_or_else(|| parse_err(format!("expected a denominator at byte {}", p + 1)))?;
        if d == BigInt::from(0) {
            return Err(parse_err("zero denominator"));
        }
        den = d;
        p = q;
    }
    let mut r = Rat::from_big(BigRational::new(num, den));
    if negative {
        r = r.neg();
    }
    if p + 1 < b.len() && b[p] == b'*' && b[p + 1] == b'i' && (p + 2 >= b.len() || !is_ident_char(b[p + 2]))
    {
        return Ok((r, p + 2, true));
    }
    Ok((r, p, false))
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scalar> {
        let t = s.trim();
        let (v, used) = Scalar::parse_prefix(t)?;
        if used != t.len() {
            return Err(parse_err(format!("trailing input in scalar {s:?}")));
        }
        Ok(v)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_text = |im: &Rat, with_plus: bool| -> String {
            let sign = if im.signum() < 0 {
                "-"
            } else if with_plus {
                "+"
            } else {
                ""
            };
            let mag = if im.signum() < 0 { im.neg() } else { im.clone() };
            if mag.is_one() {
                format!("{sign}i")
            } else {
                format!("{sign}{mag}*i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", im_text(&self.im, false)),
            (false, false) => write!(f, "{}{}", self.re, im_text(&self.im, true)),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Default for Scalar {
    fn default() -> Scalar {
        Scalar::ZERO
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar {
            re: self.re.add(&o.re),
            im: if self.im.is_zero() && o.im.is_zero() {
                Rat::ZERO
            } else {
                self.im.add(&o.im)
            },
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar {
            re: self.re.sub(&o.re),
            im: if self.im.is_zero() && o.im.is_zero() {
                Rat::ZERO
            } else {
                self.im.sub(&o.im)
            },
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar {
                re: self.re.mul(&o.re),
                im: Rat::ZERO,
            };
        }
        Scalar {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; see [`Scalar::checked_div`].
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        *self = &*self + &o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(it: I) -> Scalar {
        it.fold(Scalar::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn modulus_identity() {
        let a = Scalar::gaussian(1, 2, 1, 1);
        let b = Scalar::gaussian(1, 2, -1, 1);
        assert_eq!(&a * &b, Scalar::frac(5, 4));
    }

    #[test]
    fn inverse_of_i() {
        assert_eq!(Scalar::i().inv().unwrap(), -Scalar::i());
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert!(matches!(Scalar::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn text_forms() {
        for (text, want) in [
            ("1/2", Scalar::frac(1, 2)),
            ("-3", Scalar::int(-3)),
            ("i", Scalar::i()),
            ("-i", -Scalar::i()),
            ("2*i", Scalar::gaussian(0, 1, 2, 1)),
            ("1/2+3/4*i", Scalar::gaussian(1, 2, 3, 4)),
            ("1/2-i", Scalar::gaussian(1, 2, -1, 1)),
            ("4/6", Scalar::frac(2, 3)),
        ] {
            assert_eq!(text.parse::<Scalar>().unwrap(), want, "{text}");
        }
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("".parse::<Scalar>().is_err());
        assert!("1/2+".parse::<Scalar>().is_err());
        assert!("ix".parse::<Scalar>().is_err());
    }

    #[test]
    fn prefix_stops_before_generators() {
        let (v, used) = Scalar::parse_prefix("2*i*x1").unwrap();
        assert_eq!(v, Scalar::gaussian(0, 1, 2, 1));
        assert_eq!(used, 3);
        let (v, used) = Scalar::parse_prefix("3+x1").unwrap();
        assert_eq!(v, Scalar::int(3));
        assert_eq!(used, 1);
    }

    #[test]
    fn binomial_of_fraction() {
        // C(1/2, 2) = (1/2)(-1/2)/2
        assert_eq!(Scalar::binomial(&Scalar::frac(1, 2), 2), Scalar::frac(-1, 8));
        assert_eq!(Scalar::binomial(&Scalar::int(7), 5), Scalar::int(21));
        assert_eq!(Scalar::binomial(&Scalar::int(3), 5), Scalar::zero());
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
            .prop_map(|(a, b, c, d)| Scalar::gaussian(a, b, c, d))
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(x in arb_scalar()) {
            let back: Scalar = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn field_axioms(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), Scalar::one());
            }
        }

        #[test]
        fn large_products_stay_exact(a in 1i64..i64::MAX, b in 1i64..i64::MAX) {
            let x = Scalar::frac(a, b);
            let y = &(&x * &x) * &x;
            prop_assert_eq!(&(&y / &x) / &x, x);
        }
    }
}

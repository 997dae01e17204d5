//! Arbitrary-precision rationals with an inline fast path.
//!
//! Almost every number that shows up in the structure constants is a small
//! fraction, so values whose numerator and denominator fit in an `i64` are
//! kept inline and combined with `i128` intermediates. Anything larger
//! spills into a boxed `BigRational`. The representation is canonical: a
//! value is `Small` exactly when it fits, so derived equality and hashing
//! are sound.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
pub(crate) enum Rat {
    /// `den > 0`, `gcd(num, den) = 1`, `num != i64::MIN`.
    Small { num: i64, den: i64 },
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    pub(crate) const ZERO: Rat = Rat::Small { num: 0, den: 1 };
    pub(crate) const ONE: Rat = Rat::Small { num: 1, den: 1 };

    pub(crate) fn from_i64(n: i64) -> Rat {
        if n == i64::MIN {
            Rat::from_big(BigRational::from_integer(BigInt::from(n)))
        } else {
            Rat::Small { num: n, den: 1 }
        }
    }

    /// Builds `num/den` from 128-bit parts, reducing and demoting.
    fn from_i128(num: i128, den: i128) -> Rat {
        debug_assert!(den != 0);
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd_u128(n.unsigned_abs(), d as u128);
        if g > 1 {
            n /= g as i128;
            d /= g as i128;
        }
        if n > i64::MIN as i128 && n <= i64::MAX as i128 && d <= i64::MAX as i128 {
            Rat::Small {
                num: n as i64,
                den: d as i64,
            }
        } else {
            Rat::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))
        }
    }

    pub(crate) fn new(num: i64, den: i64) -> Option<Rat> {
        if den == 0 {
            None
        } else {
            Some(Rat::from_i128(num as i128, den as i128))
        }
    }

    pub(crate) fn from_big(r: BigRational) -> Rat {
        // BigRational constructors already reduce.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Rat::Small { num: n, den: d };
            }
        }
        Rat::Big(Box::new(r))
    }

    pub(crate) fn to_big(&self) -> BigRational {
        match self {
            Rat::Small { num, den } => {
                BigRational::new_raw(BigInt::from(*num), BigInt::from(*den))
            }
            Rat::Big(b) => (**b).clone(),
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        matches!(self, Rat::Small { num: 0, .. })
    }

    pub(crate) fn is_one(&self) -> bool {
        matches!(self, Rat::Small { num: 1, den: 1 })
    }

    pub(crate) fn is_integer(&self) -> bool {
        match self {
            Rat::Small { den, .. } => *den == 1,
            Rat::Big(b) => b.is_integer(),
        }
    }

    pub(crate) fn signum(&self) -> i32 {
        match self {
            Rat::Small { num, .. } => num.signum() as i32,
            Rat::Big(b) => {
                if b.is_negative() {
                    -1
                } else if b.is_zero() {
                    0
                } else {
                    1
                }
            }
        }
    }

    pub(crate) fn add(&self, other: &Rat) -> Rat {
        match (self, other) {
            (Rat::Small { num: a, den: b }, Rat::Small { num: c, den: d }) => {
                if b == d {
                    Rat::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    Rat::from_i128(
                        *a as i128 * *d as i128 + *c as i128 * *b as i128,
                        *b as i128 * *d as i128,
                    )
                }
            }
            _ => Rat::from_big(self.to_big() + other.to_big()),
        }
    }

    pub(crate) fn neg(&self) -> Rat {
        match self {
            Rat::Small { num, den } => Rat::Small {
                num: -num,
                den: *den,
            },
            Rat::Big(b) => Rat::from_big(-(**b).clone()),
        }
    }

    pub(crate) fn sub(&self, other: &Rat) -> Rat {
        self.add(&other.neg())
    }

    pub(crate) fn mul(&self, other: &Rat) -> Rat {
        match (self, other) {
            (Rat::Small { num: a, den: b }, Rat::Small { num: c, den: d }) => {
                if *a == 0 || *c == 0 {
                    return Rat::ZERO;
                }
                Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.to_big() * other.to_big()),
        }
    }

    /// `None` for zero.
    pub(crate) fn recip(&self) -> Option<Rat> {
        match self {
            Rat::Small { num: 0, .. } => None,
            Rat::Small { num, den } => Some(Rat::from_i128(*den as i128, *num as i128)),
            Rat::Big(b) => Some(Rat::from_big(b.recip())),
        }
    }

    pub(crate) fn floor(&self) -> Rat {
        match self {
            Rat::Small { num, den } => Rat::from_i64(num.div_floor(den)),
            Rat::Big(b) => Rat::from_big(b.floor()),
        }
    }

    pub(crate) fn to_f64(&self) -> f64 {
        match self {
            Rat::Small { num, den } => *num as f64 / *den as f64,
            Rat::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub(crate) fn as_i64(&self) -> Option<i64> {
        match self {
            Rat::Small { num, den: 1 } => Some(*num),
            _ => None,
        }
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Rat) -> bool {
        match (self, other) {
            (Rat::Small { num: a, den: b }, Rat::Small { num: c, den: d }) => a == c && b == d,
            (Rat::Big(a), Rat::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rat::Small { num, den } => {
                0u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
            Rat::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        match (self, other) {
            (Rat::Small { num: a, den: b }, Rat::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small { num, den: 1 } => write!(f, "{num}"),
            Rat::Small { num, den } => write!(f, "{num}/{den}"),
            Rat::Big(b) => {
                if b.denom().is_one() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

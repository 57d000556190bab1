//! Exact coefficient arithmetic over ℚ and prime fields 𝔽_p.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Validated prime field. The modulus must be a prime below 2^63.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= (1u64 << 63) || !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not a prime below 2^63")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod {
                value: n.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    /// Embeds a rational number. Fails in characteristic p when the
    /// denominator is divisible by p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Rat(q.clone())),
            Field::Prime(p) => {
                let pm = BigInt::from(*p);
                let num = ((q.numer() % &pm) + &pm) % &pm;
                let den = ((q.denom() % &pm) + &pm) % &pm;
                let num = Scalar::Mod { value: num.to_u64().unwrap(), modulus: *p };
                let den = Scalar::Mod { value: den.to_u64().unwrap(), modulus: *p };
                let inv = den
                    .inv()
                    .ok_or_else(|| Error::Invalid(format!("denominator {} vanishes mod {p}", q.denom())))?;
                Ok(num.mul(&inv))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Field::Rationals => "QQ".to_string(),
            Field::Prime(p) => format!("GF({p})"),
        }
    }
}

/// A field element. Prime-field elements carry their modulus so that
/// arithmetic needs no external context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => {
                let s = (*a as u128 + *b as u128) % *modulus as u128;
                Scalar::Mod { value: s as u64, modulus: *modulus }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => {
                let s = (*a as u128 * *b as u128) % *modulus as u128;
                Scalar::Mod { value: s as u64, modulus: *modulus }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Rat(a) => Some(Scalar::Rat(a.recip())),
            Scalar::Mod { value, modulus } => Some(Scalar::Mod {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            }),
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv().expect("division by zero scalar"))
    }

    /// Numerator/denominator view of a rational coefficient; prime-field
    /// elements report their least non-negative representative.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Rat(q) => q.clone(),
            Scalar::Mod { value, .. } => BigRational::from_integer(BigInt::from(*value)),
        }
    }

    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// Deterministic Miller–Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

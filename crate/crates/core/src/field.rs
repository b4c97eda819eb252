//! Exact scalar arithmetic over the rationals or a prime field.
//!
//! Every scalar is stored as a [`BigRational`]. In prime-field mode the
//! value is always a normalized integer in `0..p`, so equality and hashing
//! behave the same way in both modes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// The ground field of an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "characteristic")]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Default for Field {
    fn default() -> Self {
        Field::Rationals
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::InvalidField(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.normalize(Scalar::from_integer(BigInt::from(v)))
    }

    /// Brings an arbitrary rational into canonical form for this field.
    pub fn normalize(&self, x: Scalar) -> Scalar {
        match self {
            Field::Rationals => x,
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let num = x.numer().mod_floor(&p);
                let den = x.denom().mod_floor(&p);
                let den_inv = mod_inverse(&den, &p).expect("denominator divisible by the characteristic");
                Scalar::from_integer((num * den_inv).mod_floor(&p))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a + b,
            Field::Prime(p) => Scalar::from_integer((a.numer() + b.numer()).mod_floor(&BigInt::from(*p))),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a - b,
            Field::Prime(p) => Scalar::from_integer((a.numer() - b.numer()).mod_floor(&BigInt::from(*p))),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a * b,
            Field::Prime(p) => Scalar::from_integer((a.numer() * b.numer()).mod_floor(&BigInt::from(*p))),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rationals => -a,
            Field::Prime(p) => Scalar::from_integer((-a.numer()).mod_floor(&BigInt::from(*p))),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            Field::Rationals => Some(a.recip()),
            Field::Prime(p) => mod_inverse(a.numer(), &BigInt::from(*p)).map(Scalar::from_integer),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Parses `3`, `-2`, `5/7` into a field element.
    pub fn parse_scalar(&self, s: &str) -> Option<Scalar> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
            None => (s.parse::<BigInt>().ok()?, BigInt::one()),
        };
        if den.is_zero() {
            return None;
        }
        if let Field::Prime(p) = self {
            if (&den % BigInt::from(*p)).is_zero() {
                return None;
            }
        }
        Some(self.normalize(Scalar::new(num, den)))
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(p);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(p))
}

/// Renders a scalar as `n` or `n/d`.
pub fn scalar_to_string(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Divisors of `n` (absolute value), or `None` when `n` is too large to factor by trial division.
pub(crate) fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

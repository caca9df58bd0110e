//! Exact scalar fields: the rationals and prime fields GF(p).
//!
//! A [`Field`] is a small context object that owns the arithmetic; its
//! elements are plain values of [`Field::Elem`]. Prime fields carry their
//! modulus at runtime, so every matrix stores the field it lives over.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which field an object lives over, as written in input files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FieldSpecRepr {
    Name(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FieldSpec::Rationals => FieldSpecRepr::Name("Q".into()).serialize(s),
            FieldSpec::PrimeField(p) => FieldSpecRepr::Prime { fp: *p }.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match FieldSpecRepr::deserialize(d)? {
            FieldSpecRepr::Name(n) if n == "Q" => Ok(FieldSpec::Rationals),
            FieldSpecRepr::Name(n) => Err(serde::de::Error::custom(format!(
                "unknown field {n:?}, expected \"Q\" or {{\"Fp\": p}}"
            ))),
            FieldSpecRepr::Prime { fp } => Ok(FieldSpec::PrimeField(fp)),
        }
    }
}

/// Arithmetic of an exact field.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Parses the canonical string form (see [`Field::format`]).
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    /// Canonical string form: `"a/b"` or `"a"` over Q, a decimal in `[0, p)` over GF(p).
    fn format(&self, a: &Self::Elem) -> String;

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, &self.mul(a, b));
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }
}

/// The field of rational numbers with arbitrary-precision numerator and denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn mul_add_assign(&self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        if a.is_integer() && b.is_integer() && acc.is_integer() {
            let v = acc.numer() + a.numer() * b.numer();
            *acc = BigRational::from_integer(v);
        } else {
            *acc += a * b;
        }
    }

    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        match s.split_once('/') {
            None => s.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(BigRational::new(n, d))
            }
        }
    }

    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            // BigRational keeps the denominator positive and the fraction reduced.
            debug_assert!(a.denom().is_positive());
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// The prime field GF(p); elements are representatives in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

/// Largest supported modulus; products of two representatives must fit in a `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut q = 3;
    while q * q <= p {
        if p % q == 0 {
            return false;
        }
        q += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::InvalidInput(format!("modulus {p} exceeds {MAX_PRIME}")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let g = (*a as i64).extended_gcd(&(self.p as i64));
        debug_assert_eq!(g.gcd, 1);
        Some(self.reduce_i64(g.x))
    }

    fn parse(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid GF({}) element {s:?}", self.p));
        let int = |t: &str| t.trim().parse::<i64>().map(|v| self.reduce_i64(v)).map_err(|_| bad());
        match s.split_once('/') {
            None => int(s),
            Some((n, d)) => {
                let d = self.inv(&int(d)?).ok_or_else(bad)?;
                Ok(self.mul(&int(n)?, &d))
            }
        }
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

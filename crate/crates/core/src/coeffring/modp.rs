//! Arithmetic modulo the Mersenne prime `2^61 - 1`, the evaluated-mode
//! coefficient field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Copy, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fp(u64);

impl Fp {
    pub const MODULUS: u64 = (1 << 61) - 1;

    pub fn new(v: u64) -> Self {
        Fp(v % Self::MODULUS)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn from_bigint(c: &BigInt) -> Self {
        let m = BigInt::from(Self::MODULUS);
        let r = c.mod_floor(&m);
        Fp(r.to_u64().expect("reduced residue fits in u64"))
    }

    fn reduce128(x: u128) -> u64 {
        let p = Self::MODULUS as u128;
        let lo = x & p;
        let hi = x >> 61;
        let mut s = lo + hi;
        while s >= p {
            s -= p;
        }
        s as u64
    }

    pub fn pow_u64(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = Scalar::mul(&acc, &base);
            }
            base = Scalar::mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl Scalar for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        let s = self.0 + other.0;
        Fp(if s >= Self::MODULUS { s - Self::MODULUS } else { s })
    }
    fn sub(&self, other: &Self) -> Self {
        Fp(if self.0 >= other.0 { self.0 - other.0 } else { self.0 + Self::MODULUS - other.0 })
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(Self::reduce128(self.0 as u128 * other.0 as u128))
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { Self::MODULUS - self.0 })
    }
    fn inv(&self) -> Result<Self> {
        if self.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_u64(Self::MODULUS - 2))
    }
    fn from_int(v: i64) -> Self {
        if v >= 0 {
            Fp::new(v as u64)
        } else {
            Fp::new(v.unsigned_abs()).neg()
        }
    }
    fn from_ratio(r: &BigRational) -> Self {
        let den = Fp::from_bigint(r.denom());
        let inv = den.inv().expect("denominator divisible by the modulus");
        Fp::from_bigint(r.numer()).mul(&inv)
    }
    fn pow(&self, e: u32) -> Self {
        self.pow_u64(e as u64)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fp({})", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse() {
        let a = Fp::new(123456789);
        assert_eq!(a.mul(&a.inv().unwrap()), Fp::one());
        assert_eq!(Fp::from_int(-1).add(&Fp::one()), Fp::zero());
    }

    #[test]
    fn rational_embedding() {
        let half = Fp::from_ratio(&BigRational::new(1.into(), 2.into()));
        assert_eq!(half.add(&half), Fp::one());
        assert_eq!(Fp::from_bigint(&BigInt::from(-3)), Fp::from_int(-3));
    }
}

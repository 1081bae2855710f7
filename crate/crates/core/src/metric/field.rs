//! Exact fields: prime fields `F_p` (p ≤ 97) and the rationals.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rational::{rational_to_json, Rational};

pub trait Field: Clone + Debug + PartialEq {
    type E: Clone + Debug + PartialEq;

    fn describe(&self) -> String;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn from_i64(&self, v: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// Panics on zero.
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn to_json(&self, a: &Self::E) -> serde_json::Value;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }

    /// All nonzero elements, if the field is finite.
    fn units(&self) -> Option<Vec<Self::E>>;
}

pub const MAX_PRIME: u32 = 97;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    pub p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if !prime || p > MAX_PRIME {
            return Err(invalid(format!("{p} is not a prime at most {MAX_PRIME}")));
        }
        Ok(PrimeField { p })
    }
}

impl Field for PrimeField {
    type E = u32;

    fn describe(&self) -> String {
        format!("F_{}", self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u32) -> u32 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (a * b) % self.p
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(!(*a).is_multiple_of(self.p), "inverting zero in F_{}", self.p);
        // a^(p-2)
        let (mut base, mut e, mut acc) = (*a % self.p, self.p - 2, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
    fn is_zero(&self, a: &u32) -> bool {
        (*a).is_multiple_of(self.p)
    }
    fn to_json(&self, a: &u32) -> serde_json::Value {
        serde_json::Value::from(*a)
    }
    fn units(&self) -> Option<Vec<u32>> {
        Some((1..self.p).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalField;

impl Field for RationalField {
    type E = Rational;

    fn describe(&self) -> String {
        "Q".into()
    }
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Rational {
        assert!(!a.is_zero(), "inverting zero in Q");
        a.recip()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn to_json(&self, a: &Rational) -> serde_json::Value {
        rational_to_json(a)
    }
    fn units(&self) -> Option<Vec<Rational>> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverses() {
        let f = PrimeField::new(97).unwrap();
        for a in 1..97 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert!(PrimeField::new(91).is_err());
        assert!(PrimeField::new(101).is_err());
    }
}

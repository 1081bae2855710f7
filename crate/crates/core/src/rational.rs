//! Exact rationals, metric values and their JSON form.
//!
//! Rationals are written as `{"num": .., "den": ..}` with coprime integers and a
//! positive denominator. Integers that do not fit in an `i64` are written as
//! decimal strings so that huge carrier sizes survive a round trip.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = BigRational;

/// Tolerance used for floating point metrics (Hilbert-Schmidt, unitarity).
pub const FLOAT_TOL: f64 = 1e-9;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale both down until they fit; only the ratio matters here.
            let shift = r.denom().bits().max(r.numer().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// Exact conversion of a finite float (binary expansion).
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

fn int_to_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

fn int_from_json(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

pub fn rational_to_json(r: &Rational) -> serde_json::Value {
    serde_json::json!({ "num": int_to_json(r.numer()), "den": int_to_json(r.denom()) })
}

pub fn rational_from_json(v: &serde_json::Value) -> Option<Rational> {
    match v {
        serde_json::Value::Object(map) => {
            let num = int_from_json(map.get("num")?)?;
            let den = int_from_json(map.get("den")?)?;
            if den.is_zero() {
                None
            } else {
                Some(Rational::new(num, den))
            }
        }
        serde_json::Value::Number(n) => n.as_i64().map(rat_int),
        _ => None,
    }
}

/// Serde adapter for `Rational` fields: `#[serde(with = "crate::rational::json")]`.
pub mod json {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        rational_to_json(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        rational_from_json(&v).ok_or_else(|| D::Error::custom("expected a rational {\"num\": int, \"den\": nonzero int}"))
    }
}

/// A measured distance in a metric group.
///
/// Hamming, rank and weak-wreath metrics are exact; Hilbert-Schmidt values are
/// floats, and sampled fixed-point counts produce estimates.
#[derive(Clone, Debug, PartialEq)]
pub enum Distance {
    Exact(Rational),
    Float(f64),
    Estimate(f64),
}

impl Distance {
    pub fn zero() -> Self {
        Distance::Exact(Rational::zero())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Distance::Exact(r) => to_f64(r),
            Distance::Float(x) | Distance::Estimate(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Distance::Exact(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_approximate(&self) -> bool {
        matches!(self, Distance::Estimate(_))
    }

    /// Zero exactly, or within [`FLOAT_TOL`] for float metrics.
    pub fn is_zero(&self) -> bool {
        match self {
            Distance::Exact(r) => r.is_zero(),
            Distance::Float(x) | Distance::Estimate(x) => x.abs() <= FLOAT_TOL,
        }
    }

    pub fn cmp_rational(&self, bound: &Rational) -> Ordering {
        match self {
            Distance::Exact(r) => r.cmp(bound),
            other => other.to_f64().partial_cmp(&to_f64(bound)).unwrap_or(Ordering::Greater),
        }
    }

    pub fn lt(&self, bound: &Rational) -> bool {
        self.cmp_rational(bound) == Ordering::Less
    }

    pub fn gt(&self, bound: &Rational) -> bool {
        self.cmp_rational(bound) == Ordering::Greater
    }

    pub fn le(&self, bound: &Rational) -> bool {
        self.cmp_rational(bound) != Ordering::Greater
    }

    pub fn ge(&self, bound: &Rational) -> bool {
        self.cmp_rational(bound) != Ordering::Less
    }

    /// Total order used to pick worst witnesses; exact values compare exactly.
    pub fn total_cmp(&self, other: &Distance) -> Ordering {
        match (self, other) {
            (Distance::Exact(a), Distance::Exact(b)) => a.cmp(b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }

    pub fn max(self, other: Distance) -> Distance {
        if other.total_cmp(&self) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Distance) -> Distance {
        if other.total_cmp(&self) == Ordering::Less {
            other
        } else {
            self
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Distance::Exact(r) => {
                let mut v = rational_to_json(r);
                v["value"] = serde_json::Value::from(to_f64(r));
                v
            }
            Distance::Float(x) => serde_json::json!({ "value": x }),
            Distance::Estimate(x) => serde_json::json!({ "value": x, "approximate": true }),
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Distance::Exact(r) if r.denom().bits() <= 64 => write!(f, "{}/{}", r.numer(), r.denom()),
            Distance::Exact(r) => write!(f, "{:.12}", to_f64(r)),
            Distance::Float(x) => write!(f, "{x:.12}"),
            Distance::Estimate(x) => write!(f, "~{x:.6}"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_json_round_trip_with_huge_denominator() {
        let big = Rational::new(BigInt::from(3), BigInt::from(2).pow(200));
        let v = rational_to_json(&big);
        assert!(v["den"].is_string());
        assert_eq!(rational_from_json(&v).unwrap(), big);
        assert_eq!(rational_from_json(&rational_to_json(&rat(-2, 6))).unwrap(), rat(-1, 3));
    }

    #[test]
    fn distance_comparisons_are_strict_where_asked() {
        let d = Distance::Exact(rat(1, 2));
        assert!(d.le(&rat(1, 2)));
        assert!(!d.lt(&rat(1, 2)));
        assert!(d.gt(&rat(1, 3)));
        assert!(Distance::Float(1e-12).is_zero());
        assert!(!Distance::Float(1e-6).is_zero());
    }

    #[test]
    fn to_f64_handles_values_beyond_double_range() {
        let big = Rational::new(BigInt::from(2).pow(2000), BigInt::from(2).pow(2001));
        assert!((to_f64(&big) - 0.5).abs() < 1e-12);
    }
}

//! Exact invariant values and stability numbers.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A nonnegative rational, or `+inf`.
///
/// Infinity only takes part in comparisons and minima; products involving
/// it are refused by [`ExtValue::checked_mul`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExtValue {
    Finite(BigRational),
    Infinite,
}

impl ExtValue {
    pub fn zero() -> Self {
        ExtValue::Finite(BigRational::zero())
    }

    pub fn one() -> Self {
        ExtValue::Finite(BigRational::one())
    }

    pub fn from_u64(n: u64) -> Self {
        ExtValue::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_biguint(n: BigUint) -> Self {
        ExtValue::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    /// Fails on negative input.
    pub fn from_rational(r: BigRational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::Internal(format!("invariant values are nonnegative, got {r}")));
        }
        Ok(ExtValue::Finite(r))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtValue::Infinite)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtValue::Finite(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, ExtValue::Finite(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExtValue::Finite(r) => Some(r),
            ExtValue::Infinite => None,
        }
    }

    /// Exact product of two finite values.
    pub fn checked_mul(&self, other: &ExtValue) -> Option<ExtValue> {
        match (self, other) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => Some(ExtValue::Finite(a * b)),
            _ => None,
        }
    }

    /// `"p/q"` for finite values (denominator always written), `"inf"` otherwise.
    pub fn to_ratio_string(&self) -> String {
        match self {
            ExtValue::Finite(r) => format!("{}/{}", r.numer(), r.denom()),
            ExtValue::Infinite => "inf".to_string(),
        }
    }
}

impl Ord for ExtValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => a.cmp(b),
            (ExtValue::Finite(_), ExtValue::Infinite) => Ordering::Less,
            (ExtValue::Infinite, ExtValue::Finite(_)) => Ordering::Greater,
            (ExtValue::Infinite, ExtValue::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Finite(r) => write!(f, "{r}"),
            ExtValue::Infinite => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `inf`, an integer, or `p/q`.
impl FromStr for ExtValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" || s == "+inf" {
            return Ok(ExtValue::Infinite);
        }
        let bad = || Error::Unknown { what: "value", name: s.to_string() };
        let r = match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                BigRational::new(p, q)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        ExtValue::from_rational(r).map_err(|_| bad())
    }
}

impl From<u64> for ExtValue {
    fn from(n: u64) -> Self {
        ExtValue::from_u64(n)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ExtValueRepr {
    Fin { fin: String },
    Inf { inf: bool },
}

/// `{"fin": "p/q"}` or `{"inf": true}`.
impl From<Stability> for ExtValue {
    fn from(s: Stability) -> Self {
        match s {
            Stability::Finite(n) => ExtValue::from_u64(n as u64),
            Stability::Infinite => ExtValue::Infinite,
        }
    }
}

impl Serialize for ExtValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtValue::Finite(_) => ExtValueRepr::Fin { fin: self.to_ratio_string() },
            ExtValue::Infinite => ExtValueRepr::Inf { inf: true },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExtValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match ExtValueRepr::deserialize(deserializer)? {
            ExtValueRepr::Fin { fin } => fin.parse().map_err(D::Error::custom),
            ExtValueRepr::Inf { inf: true } => Ok(ExtValue::Infinite),
            ExtValueRepr::Inf { inf: false } => Err(D::Error::custom("`inf` must be true")),
        }
    }
}

/// A stability number: a count of deleted elements, or infinity when no
/// deletion changes the invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stability {
    Finite(usize),
    Infinite,
}

impl Stability {
    pub fn finite(self) -> Option<usize> {
        match self {
            Stability::Finite(n) => Some(n),
            Stability::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Stability::Infinite
    }

    /// Sum, absorbing into infinity.
    pub fn add(self, other: Stability) -> Stability {
        match (self, other) {
            (Stability::Finite(a), Stability::Finite(b)) => Stability::Finite(a + b),
            _ => Stability::Infinite,
        }
    }

    pub fn plus(self, n: usize) -> Stability {
        self.add(Stability::Finite(n))
    }

    /// Minimum of an iterator; infinity when empty.
    pub fn min_of<I: IntoIterator<Item = Stability>>(items: I) -> Stability {
        items.into_iter().min().unwrap_or(Stability::Infinite)
    }

    pub fn sum_of<I: IntoIterator<Item = Stability>>(items: I) -> Stability {
        items.into_iter().fold(Stability::Finite(0), Stability::add)
    }
}

impl From<usize> for Stability {
    fn from(n: usize) -> Self {
        Stability::Finite(n)
    }
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stability::Finite(n) => write!(f, "{n}"),
            Stability::Infinite => write!(f, "inf"),
        }
    }
}

/// An integer, or the string `"inf"`.
impl Serialize for Stability {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Stability::Finite(n) => serializer.serialize_u64(*n as u64),
            Stability::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Stability {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(deserializer)? {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(|n| Stability::Finite(n as usize))
                .ok_or_else(|| D::Error::custom("stability must be a natural number")),
            serde_json::Value::String(s) if s == "inf" => Ok(Stability::Infinite),
            other => Err(D::Error::custom(format!("bad stability value {other}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_infinity_last() {
        let half: ExtValue = "1/2".parse().unwrap();
        assert!(ExtValue::zero() < half);
        assert!(half < ExtValue::one());
        assert!(ExtValue::from_u64(1_000_000) < ExtValue::Infinite);
        assert_eq!(ExtValue::Infinite.cmp(&ExtValue::Infinite), Ordering::Equal);
        assert!(Stability::Finite(usize::MAX) < Stability::Infinite);
    }

    #[test]
    fn products_are_exact_and_refuse_infinity() {
        let a: ExtValue = "2/3".parse().unwrap();
        let b: ExtValue = "9/4".parse().unwrap();
        assert_eq!(a.checked_mul(&b), Some("3/2".parse().unwrap()));
        assert_eq!(a.checked_mul(&ExtValue::Infinite), None);
    }

    #[test]
    fn parsing_and_serialization() {
        assert!("-1".parse::<ExtValue>().is_err());
        assert!("1/0".parse::<ExtValue>().is_err());
        assert_eq!("4/2".parse::<ExtValue>().unwrap(), ExtValue::from_u64(2));
        let json = serde_json::to_string(&ExtValue::from_u64(3)).unwrap();
        assert_eq!(json, r#"{"fin":"3/1"}"#);
        assert_eq!(serde_json::to_string(&ExtValue::Infinite).unwrap(), r#"{"inf":true}"#);
        let back: ExtValue = serde_json::from_str(r#"{"fin":"6/4"}"#).unwrap();
        assert_eq!(back, "3/2".parse().unwrap());
        assert_eq!(serde_json::to_string(&Stability::Infinite).unwrap(), r#""inf""#);
        assert_eq!(serde_json::to_string(&Stability::Finite(4)).unwrap(), "4");
        let s: Stability = serde_json::from_str(r#""inf""#).unwrap();
        assert_eq!(s, Stability::Infinite);
    }

    #[test]
    fn stability_arithmetic() {
        assert_eq!(Stability::Finite(2).add(Stability::Finite(3)), Stability::Finite(5));
        assert_eq!(Stability::Finite(2).add(Stability::Infinite), Stability::Infinite);
        assert_eq!(Stability::min_of([]), Stability::Infinite);
        assert_eq!(Stability::sum_of([]), Stability::Finite(0));
    }
}

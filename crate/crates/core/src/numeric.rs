//! Exact scalar helpers shared by the rest of the crate.
//!
//! Instance data is stored as `i64`; dot products and ratio comparisons are
//! carried out in `i128` with checked operations. Anything that may grow
//! without bound (potential values, scaling parameters, metrics) uses
//! [`BigRational`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn dot(a: &[i64], x: &[i64]) -> i128 {
    a.iter().zip(x).map(|(&a, &x)| a as i128 * x as i128).sum()
}

pub fn dot_diff(a: &[i64], x: &[i64], y: &[i64]) -> i128 {
    a.iter()
        .zip(x.iter().zip(y))
        .map(|(&a, (&x, &y))| a as i128 * (x as i128 - y as i128))
        .sum()
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn ceil_to_i128(q: &BigRational) -> Result<i128> {
    q.ceil()
        .to_integer()
        .to_i128()
        .ok_or(Error::Overflow("ceil"))
}

/// Splits a nonnegative rational into `i128` numerator and denominator.
pub fn rational_parts(q: &BigRational) -> Result<(i128, i128)> {
    let num = q
        .numer()
        .to_i128()
        .ok_or(Error::Overflow("rational numerator"))?;
    let den = q
        .denom()
        .to_i128()
        .ok_or(Error::Overflow("rational denominator"))?;
    Ok((num, den))
}

pub fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow("i128 product"))
}

/// Smallest power of two strictly greater than `v` (v ≥ 0).
pub fn next_power_of_two_above(v: &BigRational) -> BigRational {
    let mut p = BigRational::one();
    while &p <= v {
        p *= rat_int(2);
    }
    p
}

/// ⌈log₂ v⌉ for v ≥ 1; returns 0 for v ≤ 1.
pub fn ceil_log2(v: u128) -> u32 {
    if v <= 1 {
        0
    } else {
        128 - (v - 1).leading_zeros()
    }
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Renders a rational as `num/den` (or just `num` when integral).
pub fn exact_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
    };
    if let Some((n, d)) = s.split_once('/') {
        let d = parse_int(d)?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(parse_int(n)?, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let digits = frac.len() as u32;
        let scale = BigInt::from(10).pow(digits);
        let whole = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            parse_int(int)?
        };
        let frac_val = if frac.is_empty() {
            BigInt::zero()
        } else {
            parse_int(frac)?
        };
        let frac_val = if neg { -frac_val } else { frac_val };
        return Ok(BigRational::new(whole * &scale + frac_val, scale));
    }
    Ok(BigRational::from_integer(parse_int(s)?))
}

pub fn lcm_i128(a: i128, b: i128) -> Result<i128> {
    let g = a.gcd(&b);
    mul(a / g, b)
}

/// A nonnegative exact rational or +∞, with 0 · ∞ = 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtendedValue {
    Finite(#[serde(with = "rational_str")] BigRational),
    Infinite,
}

impl ExtendedValue {
    pub fn zero() -> Self {
        ExtendedValue::Finite(BigRational::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedValue::Infinite)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtendedValue::Finite(q) => Some(q),
            ExtendedValue::Infinite => None,
        }
    }

    /// Scales by a nonnegative rational.
    pub fn scale(&self, factor: &BigRational) -> Self {
        debug_assert!(!factor.is_negative());
        match self {
            ExtendedValue::Finite(q) => ExtendedValue::Finite(q * factor),
            ExtendedValue::Infinite if factor.is_zero() => ExtendedValue::zero(),
            ExtendedValue::Infinite => ExtendedValue::Infinite,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => ExtendedValue::Finite(a + b),
            _ => ExtendedValue::Infinite,
        }
    }
}

impl PartialOrd for ExtendedValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => a.cmp(b),
            (ExtendedValue::Finite(_), ExtendedValue::Infinite) => Ordering::Less,
            (ExtendedValue::Infinite, ExtendedValue::Finite(_)) => Ordering::Greater,
            (ExtendedValue::Infinite, ExtendedValue::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::Finite(q) => f.write_str(&exact_string(q)),
            ExtendedValue::Infinite => f.write_str("inf"),
        }
    }
}

/// Serde adapter writing rationals as `"num/den"` strings.
pub mod rational_str {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::exact_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// `i128` as a JSON number when it fits in `i64`, else as a decimal string.
pub mod wide_int {
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(i64),
        Str(String),
    }

    pub fn serialize<S: Serializer>(v: &i128, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(*v) {
            Ok(small) => s.serialize_i64(small),
            Err(_) => s.serialize_str(&v.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<i128, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v as i128),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

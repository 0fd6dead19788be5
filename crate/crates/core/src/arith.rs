//! Exact rational helpers shared by every module.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; all arithmetic in the crate is exact.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `n/d` in lowest terms. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

pub fn binom_i64(n: i64, k: i64) -> i64 {
    binom(n, k).to_i64().expect("binomial fits in i64")
}

/// `(2k+1)!!` with the convention `(-1)!! = 1`.
pub fn odd_double_factorial(k: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut m = 2 * k + 1;
    while m > 1 {
        acc *= m;
        m -= 2;
    }
    acc
}

/// Lowest-terms string, `p/q` or just `p` for integers.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `p/q`, or a plain decimal such as `-0.125`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = whole.starts_with('-');
        let whole = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(whole).map_err(|_| bad())?
        };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let f = BigInt::from_str(frac).map_err(|_| bad())?;
        let mut v = big(whole.abs()) + Rational::new(f, scale);
        if neg {
            v = -v;
        }
        return Ok(v);
    }
    BigInt::from_str(s).map(big).map_err(|_| bad())
}

/// Exact quotient of two rationals that are expected to be integers with
/// `a` divisible by `b`. `what` names the quantity in the diagnostic.
pub fn exact_div_int(a: &Rational, b: &Rational, what: &str) -> Result<BigInt> {
    if b.is_zero() {
        return Err(Error::Inexact(format!("{what}: division by zero")));
    }
    let q = a / b;
    if !q.is_integer() {
        return Err(Error::Inexact(format!(
            "{what}: {} / {} = {} is not an integer",
            fmt_rational(a),
            fmt_rational(b),
            fmt_rational(&q)
        )));
    }
    Ok(q.to_integer())
}

/// Decimal rendering with enough digits that the truncation error is below `tol`.
pub fn fmt_decimal(q: &Rational, tol: &Rational) -> String {
    let mut digits = 0u32;
    let mut step = Rational::one();
    while &step > tol && digits < 200 {
        step /= int(10);
        digits += 1;
    }
    let scale = BigInt::from(10).pow(digits);
    let scaled = (q.abs() * big(scale.clone())).round().to_integer();
    let (whole, frac) = scaled.div_rem(&scale);
    let sign = if q.is_negative() && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = digits as usize)
    }
}

/// Serializes any `Display` value (used for big integers) as a string.
pub fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Serde adapter: rationals as lowest-terms strings.
pub mod serde_rational {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = RawNumber::deserialize(d)?;
        raw.into_rational().map_err(D::Error::custom)
    }

    /// Accepts either `"p/q"` strings or bare JSON integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RawNumber {
        Str(String),
        Int(i64),
    }

    impl RawNumber {
        pub(crate) fn into_rational(self) -> Result<Rational, String> {
            match self {
                RawNumber::Str(s) => parse_rational(&s).map_err(|e| e.to_string()),
                RawNumber::Int(n) => Ok(super::int(n)),
            }
        }
    }

    pub mod vec {
        use super::{fmt_rational, RawNumber, Rational};
        use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(fmt_rational))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<RawNumber>::deserialize(d)?
                .into_iter()
                .map(|r| r.into_rational().map_err(D::Error::custom))
                .collect()
        }
    }
}

/// A rational that (de)serializes as a lowest-terms string and also accepts
/// bare JSON integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonRational(pub Rational);

impl serde::Serialize for JsonRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_rational::serialize(&self.0, s)
    }
}

impl<'de> serde::Deserialize<'de> for JsonRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        serde_rational::deserialize(d).map(JsonRational)
    }
}

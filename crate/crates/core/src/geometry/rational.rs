//! Arbitrary-precision rational scalars.
//!
//! Everything in this crate computes over [`Rational`], a `num` big rational
//! kept in lowest terms with a positive denominator. Text form is `p/q`, with
//! `/q` omitted when the denominator is one. Parsing additionally accepts
//! finite decimals (`-0.375`, `4.2`) and converts them exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub type Rational = BigRational;

/// `n / d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `p/q` or a finite decimal such as `-12.5`.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{whole_digits}{frac}");
        let mut n: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10u32), frac.len());
        return Ok(Rational::new(n, d));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Canonical text form (`p/q`, or `p` for integers).
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Huge numerator/denominator pairs overflow the direct conversion.
        let n = q.numer().bits() as i64;
        let d = q.denom().bits() as i64;
        let shift = (n.max(d) - 1000).max(0) as usize;
        let nn = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let dd = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        nn / dd
    })
}

/// Fractional part in `[0, 1)`.
pub fn fract(q: &Rational) -> Rational {
    q - q.floor()
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

/// Rounds `q` down to the nearest multiple of `step` (`step > 0`).
pub fn floor_to(q: &Rational, step: &Rational) -> Rational {
    (q / step).floor() * step
}

/// Rounds `q` to the nearest multiple of `step`, ties away from zero.
pub fn round_to(q: &Rational, step: &Rational) -> Rational {
    (q / step).round() * step
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Least common multiple of the denominators; handy for scaling tests.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Serde adapters: rationals travel as `"p/q"` strings.
pub mod serde_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = RationalText::deserialize(d)?;
        text.into_rational().map_err(D::Error::custom)
    }

    /// Accepts either a string or a JSON integer.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RationalText {
        Text(String),
        Int(i64),
    }

    impl RationalText {
        pub(crate) fn into_rational(self) -> Result<Rational, crate::error::Error> {
            match self {
                RationalText::Text(t) => parse_rational(&t),
                RationalText::Int(i) => Ok(super::int(i)),
            }
        }
    }

    pub mod option {
        use super::super::{format_rational, Rational};
        use super::RationalText;
        use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match q {
                Some(q) => s.serialize_some(&format_rational(q)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            Option::<RationalText>::deserialize(d)?
                .map(|t| t.into_rational().map_err(D::Error::custom))
                .transpose()
        }
    }

    pub mod vec {
        use super::super::{format_rational, Rational};
        use super::RationalText;
        use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(qs.len()))?;
            for q in qs {
                seq.serialize_element(&format_rational(q))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<RationalText>::deserialize(d)?
                .into_iter()
                .map(|t| t.into_rational().map_err(D::Error::custom))
                .collect()
        }
    }
}

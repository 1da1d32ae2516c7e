//! Exact rational coordinates.
//!
//! Coordinates are `Ratio<i128>` with numerator and denominator bounded by
//! [`MAX_MAGNITUDE`]. Under that bound every sum, difference and midpoint the
//! engine forms stays inside `i128`, and ordering comparisons never multiply.

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

/// Largest accepted absolute value of a reduced numerator or denominator.
pub const MAX_MAGNITUDE: i128 = 1 << 62;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v as i128)
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num as i128, den as i128)
}

pub fn check_magnitude(r: &Rational) -> Result<()> {
    if r.numer().abs() > MAX_MAGNITUDE || *r.denom() > MAX_MAGNITUDE {
        return Err(Error::InvalidParameter(format!(
            "rational {} exceeds the supported magnitude 2^62",
            format_rational(r)
        )));
    }
    Ok(())
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / 2
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Canonical text form: `p/q` in lowest terms, or `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `p/q`, an integer, or a finite decimal such as `-0.125`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let value = if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| bad())?;
        let q: i128 = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        Rational::new(p, q)
    } else if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if (digits.is_empty() && frac.is_empty())
            || !digits.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
            || frac.len() > 30
        {
            return Err(bad());
        }
        let whole_val: i128 = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| bad())? };
        let frac_val: i128 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let scale = 10i128.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        let num = whole_val
            .checked_mul(scale)
            .and_then(|w| w.checked_add(frac_val))
            .ok_or_else(bad)?;
        let r = Rational::new(num, scale);
        if negative { -r } else { r }
    } else {
        Rational::from_integer(s.parse().map_err(|_| bad())?)
    };
    check_magnitude(&value).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(value)
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

/// Serde adapter writing rationals as canonical strings.
pub mod serde_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

pub mod serde_str_opt {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        r: &Option<Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&format_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_rational(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

pub mod serde_str_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

//! Arbitrary-precision rational scalars.
//!
//! Backed by [`num_rational::BigRational`], which keeps every value in lowest
//! terms with a positive denominator, so the sign of a value is always
//! well-defined. The text form is `p/q` (or just `p` for integers) and
//! round-trips bit-exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fraction `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Sign of a rational as -1, 0 or +1.
pub fn sign_of(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// `r^e` with the convention `0^0 = 1`.
pub fn pow_u32(r: &Rational, e: u32) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    Rational::new(r.numer().pow(e), r.denom().pow(e))
}

/// `b^e` over the integers, with `0^0 = 1`.
pub fn int_pow(b: i64, e: u32) -> BigInt {
    BigInt::from(b).pow(e)
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// Serde adapter serializing a [`Rational`] as its `p/q` string form.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

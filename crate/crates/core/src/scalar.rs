//! Scalar abstraction for exact arithmetic.
//!
//! Every algorithm in this crate runs over an exact ordered field: no
//! floating point, no rounding, all comparisons decidable. [`Scalar`] pins
//! down what the algorithms need beyond the `num-traits` field operations:
//! a total order, exact floor/ceil, and the `"p/q"` wire format used by all
//! JSON and CSV surfaces. The stock implementations are
//! `Ratio<BigInt>` (the default, aliased as [`crate::Rational`]) and
//! `Ratio<i128>` for bounded workloads.

use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub trait Scalar:
    Num
    + Signed
    + Ord
    + Clone
    + fmt::Debug
    + fmt::Display
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Largest integer-valued scalar `<= self`.
    fn floor(&self) -> Self;

    /// Smallest integer-valued scalar `>= self`.
    fn ceil(&self) -> Self;

    /// Parses the `"p/q"` wire form (`q` omitted when it is 1).
    fn parse_wire(s: &str) -> Result<Self>;

    /// Renders the `"p/q"` wire form (`q` omitted when it is 1).
    fn to_wire(&self) -> String {
        self.to_string()
    }
}

macro_rules! impl_scalar_for_ratio {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            fn floor(&self) -> Self {
                Ratio::floor(self)
            }

            fn ceil(&self) -> Self {
                Ratio::ceil(self)
            }

            fn parse_wire(s: &str) -> Result<Self> {
                let (numer, denom) = match s.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (s, None),
                };
                let numer: $int = numer
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?;
                let denom: $int = match denom {
                    Some(d) => d
                        .parse()
                        .map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?,
                    None => One::one(),
                };
                if denom.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(Ratio::new(numer, denom))
            }
        }
    };
}

impl_scalar_for_ratio!(BigInt);
impl_scalar_for_ratio!(i128);

/// Embeds a machine integer into the scalar field.
pub fn from_int<T: Scalar>(n: i64) -> T {
    T::from_i64(n).expect("scalar admits i64")
}

/// Embeds an unsigned machine integer into the scalar field.
pub fn from_uint<T: Scalar>(n: u64) -> T {
    T::from_u64(n).expect("scalar admits u64")
}

/// Exact `numer/denom` with machine-integer parts.
pub fn ratio<T: Scalar>(numer: i64, denom: i64) -> T {
    assert!(denom != 0, "zero denominator");
    from_int::<T>(numer) / from_int::<T>(denom)
}

/// Exact `base^exp` by binary exponentiation, with the convention `0^0 = 1`.
pub fn pow<T: Scalar>(base: &T, exp: u32) -> T {
    let mut result = T::one();
    let mut square = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * square.clone();
        }
        e >>= 1;
        if e > 0 {
            square = square.clone() * square;
        }
    }
    result
}

/// Converts an integer-valued scalar to `u64`, erroring on overflow or a
/// non-integer / negative value.
pub fn to_u64_exact<T: Scalar>(value: &T) -> Result<u64> {
    if value.floor() != *value || value.is_negative() {
        return Err(Error::Overflow(format!(
            "{} is not a nonnegative integer",
            value.to_wire()
        )));
    }
    value
        .to_u64()
        .ok_or_else(|| Error::Overflow(format!("{} exceeds u64", value.to_wire())))
}

/// Serde adapter for the `"p/q"` wire format; use with `#[serde(with = ...)]`.
pub mod wire {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use super::Scalar;

    pub fn serialize<T: Scalar, S: Serializer>(
        value: &T,
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&value.to_wire())
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<T, D::Error> {
        let s = String::deserialize(de)?;
        T::parse_wire(&s).map_err(de::Error::custom)
    }
}

//! Exact evaluation of the explicit sufficient bounds on `k`.
//!
//! Each bound is a three-term maximum. The first term is an envelope of the
//! subdivision inequality at the alternating endpoint configuration, the
//! second controls the scaled-union gluing step, and the third is the
//! all-`(1-r)` configuration. Everything is evaluated with exact rational
//! arithmetic; in particular `n_*` is found by comparison loops, never by
//! logarithms, and every `k >= expr` bound is reported as the smallest even
//! integer at least `expr`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{from_int, from_uint, pow, ratio, to_u64_exact, Scalar};

/// Exponent data for a form `sum x_{2i-1}^{a_{2i-1}} x_{2i}^{a_{2i}}`:
/// a non-empty list of positive pairs with a common pairwise sum `s >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentSpec {
    pairs: Vec<(u32, u32)>,
    s: u32,
}

impl ExponentSpec {
    pub fn new(pairs: Vec<(u32, u32)>) -> Result<Self> {
        let (first_odd, first_even) = *pairs
            .first()
            .ok_or_else(|| Error::InvalidParameter("exponent list must be non-empty".into()))?;
        let s = first_odd + first_even;
        for &(a, b) in &pairs {
            if a == 0 || b == 0 {
                return Err(Error::InvalidParameter(
                    "exponents must be positive integers".into(),
                ));
            }
            if a + b != s {
                return Err(Error::InvalidParameter(format!(
                    "pair ({a},{b}) breaks the common sum s={s}"
                )));
            }
        }
        if s < 2 {
            return Err(Error::InvalidParameter(format!(
                "pairwise sum must be at least 2, got {s}"
            )));
        }
        Ok(ExponentSpec { pairs, s })
    }

    /// Builds from the flat list `a_1, a_2, ..., a_k` (so `k` must be even).
    pub fn from_flat(exponents: &[u32]) -> Result<Self> {
        if !exponents.len().is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "exponent list must have even length, got {}",
                exponents.len()
            )));
        }
        Self::new(exponents.chunks(2).map(|c| (c[0], c[1])).collect())
    }

    /// `count` copies of a single pair.
    pub fn repeat(pair: (u32, u32), count: usize) -> Result<Self> {
        Self::new(vec![pair; count])
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// The common pairwise sum.
    pub fn s(&self) -> u32 {
        self.s
    }

    /// Number of variables: twice the number of pairs.
    pub fn k(&self) -> u64 {
        self.pairs.len() as u64 * 2
    }

    /// `Some((a, b))` when every pair equals `(a, b)`.
    pub fn uniform_pair(&self) -> Option<(u32, u32)> {
        let first = self.pairs[0];
        self.pairs.iter().all(|&p| p == first).then_some(first)
    }

    /// Largest odd-position exponent over all pairs.
    pub fn a_max(&self) -> u32 {
        self.pairs.iter().map(|&(a, _)| a).max().expect("non-empty")
    }

    /// The even-position exponent paired with [`Self::a_max`].
    pub fn b_min(&self) -> u32 {
        self.s - self.a_max()
    }
}

/// The near-balanced exponents the mixed-pair pipeline works with:
/// `a_bar = (s-1)/2` for odd `s`, `s/2` for even `s`; `b_bar = s - a_bar`.
pub fn balanced_exponents(s: u32) -> (u32, u32) {
    let a_bar = if s % 2 == 1 { (s - 1) / 2 } else { s / 2 };
    (a_bar, s - a_bar)
}

/// Which bound formula a [`BoundReport`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMode {
    Fmt,
    Smt,
    Tmt,
    TernaryMresult,
    TernaryAb,
    Finalcor,
}

/// Every intermediate of a bound evaluation, exact.
///
/// `k_min` is the smallest even integer at least `max(term1, term2, term3)`,
/// and `k_star_even` the smallest even integer at least `max(k1, 2(1-r)/r)`.
/// The single-product ternary corollaries carry their whole value in `term1`
/// with `term2 = term3 = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct BoundReport<T> {
    pub version: String,
    pub mode: BoundMode,
    #[serde(with = "crate::scalar::wire")]
    pub r: T,
    pub n_star: u32,
    pub k1: u64,
    pub k_star_even: u64,
    #[serde(with = "crate::scalar::wire")]
    pub term1: T,
    #[serde(with = "crate::scalar::wire")]
    pub term2: T,
    #[serde(with = "crate::scalar::wire")]
    pub term3: T,
    pub k_min: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a_bar: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b_bar: Option<u32>,
}

pub const BOUNDS_VERSION: &str = "bounds/1";

fn validate_r<T: Scalar>(r: &T) -> Result<()> {
    if *r <= T::zero() || *r >= ratio(1, 2) {
        return Err(Error::InvalidParameter(format!(
            "contraction ratio must lie in (0, 1/2), got {}",
            r.to_wire()
        )));
    }
    Ok(())
}

/// `n_*(r, a) = 1 + max{m >= 0 : a r^m >= 1}`, the exact-comparison form of
/// `floor(-log_r a) + 1`. Ties `a r^m = 1` count as satisfying `>=`.
pub fn n_star<T: Scalar>(r: &T, a: u32) -> Result<u32> {
    validate_r(r)?;
    if a == 0 {
        return Err(Error::InvalidParameter("n_star requires a >= 1".into()));
    }
    let mut m = 0u32;
    let mut value = from_uint::<T>(a as u64) * r.clone();
    while value >= T::one() {
        m += 1;
        value = value * r.clone();
    }
    Ok(m + 1)
}

pub(crate) struct EnvelopeParts<T> {
    pub n_star: u32,
    pub k1: u64,
    pub e1: T,
    pub e2: T,
    pub e3: T,
}

/// Core of every three-term bound, at exponents `(a, b)` as given (no swap).
pub(crate) fn envelope_parts<T: Scalar>(r: &T, a: u32, b: u32) -> Result<EnvelopeParts<T>> {
    validate_r(r)?;
    if a == 0 || b == 0 {
        return Err(Error::InvalidParameter(
            "envelope exponents must be positive".into(),
        ));
    }
    let ns = n_star(r, a)?;
    let two = from_int::<T>(2);
    let rn = pow(r, ns);
    let one_minus_r = T::one() - r.clone();
    let grown = one_minus_r.clone() + rn.clone(); // 1 - r + r^{n_*}
    let shrunk = T::one() - rn; // 1 - r^{n_*}
    let a_t = from_uint::<T>(a as u64);
    let b_t = from_uint::<T>(b as u64);

    let numer = two.clone() * pow(&grown, a - 1) * (b_t.clone() * grown.clone() + a_t.clone());
    let denom = pow(&one_minus_r, a - 1)
        * pow(&shrunk, b - 1)
        * (b_t * one_minus_r.clone() + a_t * shrunk.clone());
    let k1 = to_u64_exact(&(numer / denom + two.clone()).ceil())?;

    let growth = one_minus_r.clone() / r.clone(); // (1-r)/r
    let e1 = from_uint::<T>(k1) * pow(&growth, a);
    let e2 = two.clone() * pow(&growth, a + 1);
    let e3 = two.clone() * pow(&(T::one() / one_minus_r), a + b - 1) + two;
    Ok(EnvelopeParts {
        n_star: ns,
        k1,
        e1,
        e2,
        e3,
    })
}

/// The three envelope terms `(E1, E2, E3)` at exponents `(a, b)` as given.
pub fn envelope_terms<T: Scalar>(r: &T, a: u32, b: u32) -> Result<(T, T, T)> {
    let parts = envelope_parts(r, a, b)?;
    Ok((parts.e1, parts.e2, parts.e3))
}

/// Smallest even integer `>= value`.
pub(crate) fn smallest_even_ge<T: Scalar>(value: &T) -> Result<u64> {
    let n = to_u64_exact(&value.ceil().max(T::zero()))?;
    Ok(if n % 2 == 0 { n } else { n + 1 })
}

/// Smallest even integer `>= max(k1, 2(1-r)/r)`.
pub(crate) fn k_star_even<T: Scalar>(r: &T, k1: u64) -> Result<u64> {
    let floor_term = from_int::<T>(2) * (T::one() - r.clone()) / r.clone();
    smallest_even_ge(&from_uint::<T>(k1).max(floor_term))
}

fn report_from_parts<T: Scalar>(
    mode: BoundMode,
    r: T,
    parts: EnvelopeParts<T>,
    bars: Option<(u32, u32)>,
) -> Result<BoundReport<T>> {
    let max_term = parts.e1.clone().max(parts.e2.clone()).max(parts.e3.clone());
    let k_min = smallest_even_ge(&max_term)?;
    let k_star = k_star_even(&r, parts.k1)?;
    Ok(BoundReport {
        version: BOUNDS_VERSION.to_string(),
        mode,
        r,
        n_star: parts.n_star,
        k1: parts.k1,
        k_star_even: k_star,
        term1: parts.e1,
        term2: parts.e2,
        term3: parts.e3,
        k_min,
        a_bar: bars.map(|(a, _)| a),
        b_bar: bars.map(|(_, b)| b),
    })
}

/// Bound for the uniform form with exponents `(a, b)`. The exponents are
/// symmetric under `a + b = s`, and the smaller envelope comes from the
/// smaller first exponent, so `a > b` is evaluated as `(b, a)`.
pub fn fmt_bound<T: Scalar>(r: &T, a: u32, b: u32) -> Result<BoundReport<T>> {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let parts = envelope_parts(r, a, b)?;
    report_from_parts(BoundMode::Fmt, r.clone(), parts, None)
}

/// Bound valid for every split `a + b = s` simultaneously: the envelope is
/// taken at the worst split `(s-1, 1)`.
pub fn smt_bound<T: Scalar>(r: &T, s: u32) -> Result<BoundReport<T>> {
    if s < 2 {
        return Err(Error::InvalidParameter(format!("requires s >= 2, got {s}")));
    }
    let parts = envelope_parts(r, s - 1, 1)?;
    report_from_parts(BoundMode::Smt, r.clone(), parts, None)
}

/// Bound for mixed-pair forms with common sum `s`: the envelope is taken at
/// the near-balanced exponents `(a_bar, b_bar)`.
pub fn tmt_bound<T: Scalar>(r: &T, s: u32) -> Result<BoundReport<T>> {
    if s < 2 {
        return Err(Error::InvalidParameter(format!("requires s >= 2, got {s}")));
    }
    let (a_bar, b_bar) = balanced_exponents(s);
    let parts = envelope_parts(r, a_bar, b_bar)?;
    report_from_parts(BoundMode::Tmt, r.clone(), parts, Some((a_bar, b_bar)))
}

/// Closed-form ternary bound `2^{s/2+1} ceil(((s+3)/(s-2))^{s/2-1} (5s+6)/(5s-6) + 1)`
/// for even `s >= 4`. Odd `s` makes the exponents half-integers; callers
/// should use [`tmt_bound`] with `r = 1/3` instead.
pub fn ternary_mresult_bound<T: Scalar>(s: u32) -> Result<BoundReport<T>> {
    if s % 2 == 1 {
        return Err(Error::UnsupportedParity(format!(
            "s = {s} is odd; use tmt_bound(1/3, {s})"
        )));
    }
    if s < 4 {
        return Err(Error::InvalidParameter(format!(
            "requires even s >= 4, got {s}"
        )));
    }
    let r: T = ratio(1, 3);
    let s_i = s as i64;
    let base: T = ratio(s_i + 3, s_i - 2);
    let inner = pow(&base, s / 2 - 1) * ratio::<T>(5 * s_i + 6, 5 * s_i - 6);
    let ceiling = to_u64_exact(&(inner + T::one()).ceil())?;
    let k1 = 2 * ceiling;
    let k_min = ceiling
        .checked_mul(
            2u64.checked_pow(s / 2 + 1)
                .ok_or_else(|| Error::Overflow(format!("2^(s/2+1) for s = {s}")))?,
        )
        .ok_or_else(|| Error::Overflow(format!("bound value for s = {s}")))?;
    let half = s / 2;
    Ok(BoundReport {
        version: BOUNDS_VERSION.to_string(),
        mode: BoundMode::TernaryMresult,
        n_star: n_star(&r, half)?,
        k1,
        k_star_even: k_star_even(&r, k1)?,
        r,
        term1: from_uint(k_min),
        term2: T::zero(),
        term3: T::zero(),
        k_min,
        a_bar: Some(half),
        b_bar: Some(half),
    })
}

/// Simplified ternary bound `ceil((1+3/2a)^{a-1}/(1-1/a)^{b-1} (1 + (1+b/a)/(2b/3+a-1)) + 1) 2^{a+1}`.
/// For `a = 1, b >= 2` the written denominator vanishes; callers should use
/// [`fmt_bound`] with `r = 1/3` instead.
pub fn ternary_ab_bound<T: Scalar>(a: u32, b: u32) -> Result<BoundReport<T>> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidParameter(
            "exponents must be positive integers".into(),
        ));
    }
    if a == 1 && b >= 2 {
        return Err(Error::ZeroDenominator(format!(
            "(1 - 1/a)^(b-1) vanishes at a = 1, b = {b}; use fmt_bound(1/3, {a}, {b})"
        )));
    }
    let r: T = ratio(1, 3);
    let a_i = a as i64;
    let b_i = b as i64;
    let first = pow(&(T::one() + ratio::<T>(3, 2 * a_i)), a - 1)
        / pow(&(T::one() - ratio::<T>(1, a_i)), b - 1);
    let second = T::one()
        + (T::one() + ratio::<T>(b_i, a_i)) / (ratio::<T>(2 * b_i, 3) + from_int::<T>(a_i - 1));
    let ceiling = to_u64_exact(&(first * second + T::one()).ceil())?;
    let k1 = 2 * ceiling;
    let k_min = ceiling
        .checked_mul(
            2u64.checked_pow(a + 1)
                .ok_or_else(|| Error::Overflow(format!("2^(a+1) for a = {a}")))?,
        )
        .ok_or_else(|| Error::Overflow(format!("bound value for a = {a}, b = {b}")))?;
    Ok(BoundReport {
        version: BOUNDS_VERSION.to_string(),
        mode: BoundMode::TernaryAb,
        n_star: n_star(&r, a)?,
        k1,
        k_star_even: k_star_even(&r, k1)?,
        r,
        term1: from_uint(k_min),
        term2: T::zero(),
        term3: T::zero(),
        k_min,
        a_bar: None,
        b_bar: None,
    })
}

/// Bound for an explicit pair list: the envelope is taken at the extreme
/// pair `(a_max, b_min)`.
pub fn finalcor_bound<T: Scalar>(r: &T, spec: &ExponentSpec) -> Result<BoundReport<T>> {
    let parts = envelope_parts(r, spec.a_max(), spec.b_min())?;
    report_from_parts(BoundMode::Finalcor, r.clone(), parts, None)
}

//! Brute-force oracle: exact images of forms on finite Cantor approximants.
//!
//! A monomial `x^a y^b` is monotone on the nonnegative orthant, so its image
//! on a product of basic intervals is the interval spanned by the endpoint
//! evaluations. The image of a whole form on `C_n^k` is then the Minkowski
//! sum of its per-term images, because the pairs of variables are
//! independent. That factorization (4^n boxes per term instead of 2^{nk}
//! product boxes) is what makes deep levels and large `k` feasible.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bounds::ExponentSpec;
use crate::cantor::{is_left_endpoint, level_intervals, CantorParams};
use crate::certifier::form_value;
use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalUnion};
use crate::scalar::{pow, Scalar};

/// Resource caps for the exponential enumerations. Exceeding a cap is an
/// error, never silent truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Level cap for basic-interval enumeration (`2^n` intervals).
    pub max_level: u32,
    /// Cap on the `4^n` boxes of a single term image.
    pub max_term_boxes: u64,
    /// Cap on the number of intervals fed into one union or Minkowski sum.
    pub max_union_parts: usize,
    /// Cap on `k` for the `2^k`-box connectivity oracle.
    pub max_oracle_k: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_level: crate::cantor::DEFAULT_MAX_LEVEL,
            max_term_boxes: 1 << 20, // 4^10
            max_union_parts: 1_000_000,
            max_oracle_k: 8,
        }
    }
}

/// Exact image of `x^a y^b` on `C_n x C_n`: the normalized union over all
/// `4^n` ordered pairs of level-`n` basic intervals of
/// `[u^a v^b, (u + r^n)^a (v + r^n)^b]`.
pub fn term_image<T: Scalar>(
    params: &CantorParams<T>,
    a: u32,
    b: u32,
    n: u32,
    limits: &Limits,
) -> Result<IntervalUnion<T>> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidParameter(
            "monomial exponents must be positive".into(),
        ));
    }
    let boxes = 1u64
        .checked_shl(2 * n)
        .filter(|&boxes| boxes <= limits.max_term_boxes)
        .ok_or_else(|| {
            Error::ResourceLimit(format!(
                "4^{n} boxes exceed the per-term cap {}",
                limits.max_term_boxes
            ))
        })?;
    if boxes > limits.max_union_parts as u64 {
        return Err(Error::ResourceLimit(format!(
            "4^{n} boxes exceed the union cap {}",
            limits.max_union_parts
        )));
    }

    let level = level_intervals(params, n, limits.max_level)?;
    let rn = params.r_pow(n);
    let lo_pow = |e: u32| -> Vec<T> { level.iter().map(|iv| pow(iv.left(), e)).collect() };
    let hi_pow = |e: u32| -> Vec<T> {
        level
            .iter()
            .map(|iv| pow(&(iv.left().clone() + rn.clone()), e))
            .collect()
    };
    let (lo_a, hi_a) = (lo_pow(a), hi_pow(a));
    let (lo_b, hi_b) = (lo_pow(b), hi_pow(b));

    let mut raw = Vec::with_capacity(level.len() * level.len());
    for i in 0..level.len() {
        for j in 0..level.len() {
            raw.push(
                Interval::new(
                    lo_a[i].clone() * lo_b[j].clone(),
                    hi_a[i].clone() * hi_b[j].clone(),
                )
                .expect("monomial is monotone on nonnegative boxes"),
            );
        }
    }
    Ok(IntervalUnion::normalize(raw))
}

/// Exact image of the form on `C_n^k`: the Minkowski sum of its term images,
/// folded left in pair order.
pub fn form_image<T: Scalar>(
    params: &CantorParams<T>,
    spec: &ExponentSpec,
    n: u32,
    limits: &Limits,
) -> Result<IntervalUnion<T>> {
    let mut cache: BTreeMap<(u32, u32), IntervalUnion<T>> = BTreeMap::new();
    let mut image: Option<IntervalUnion<T>> = None;
    for &pair in spec.pairs() {
        if !cache.contains_key(&pair) {
            let term = term_image(params, pair.0, pair.1, n, limits)?;
            cache.insert(pair, term);
        }
        let term = &cache[&pair];
        image = Some(match image {
            None => term.clone(),
            Some(acc) => {
                let product = acc.parts().len().saturating_mul(term.parts().len());
                if product > limits.max_union_parts {
                    return Err(Error::ResourceLimit(format!(
                        "Minkowski sum of {} x {} intervals exceeds the union cap {}",
                        acc.parts().len(),
                        term.parts().len(),
                        limits.max_union_parts
                    )));
                }
                acc.minkowski_sum(term)
            }
        });
    }
    Ok(image.expect("spec is non-empty"))
}

/// Exact coverage data for a form image against a target interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
#[serde(bound(serialize = "T: Scalar"))]
pub struct CoverageReport<T> {
    pub version: String,
    #[serde(with = "crate::scalar::wire")]
    pub alpha: T,
    #[serde(with = "crate::scalar::wire")]
    pub r: T,
    pub pairs: Vec<(u32, u32)>,
    pub s: u32,
    pub level: u32,
    pub image: IntervalUnion<T>,
    pub target: Interval<T>,
    pub gaps: Vec<Interval<T>>,
    #[serde(with = "crate::scalar::wire")]
    pub measure: T,
    pub gap_free: bool,
}

pub const COVERAGE_VERSION: &str = "coverage/1";

/// Computes the level-`n` image of the form together with its gaps inside
/// `target` and its exact measure.
pub fn coverage_report<T: Scalar>(
    params: &CantorParams<T>,
    spec: &ExponentSpec,
    n: u32,
    target: Interval<T>,
    limits: &Limits,
) -> Result<CoverageReport<T>> {
    let image = form_image(params, spec, n, limits)?;
    let gaps = image.gaps(&target);
    let measure = image.measure();
    Ok(CoverageReport {
        version: COVERAGE_VERSION.to_string(),
        alpha: params.alpha().clone(),
        r: params.r().clone(),
        pairs: spec.pairs().to_vec(),
        s: spec.s(),
        level: n,
        gap_free: gaps.is_empty(),
        image,
        target,
        gaps,
        measure,
    })
}

/// Measures of the level-`n` images of `x y` for `n = 1..=n_max`: a
/// nonincreasing sequence of over-approximations of the measure of
/// `C_alpha * C_alpha`.
pub fn product_measure_series<T: Scalar>(
    params: &CantorParams<T>,
    n_max: u32,
    limits: &Limits,
) -> Result<Vec<T>> {
    (1..=n_max)
        .map(|n| Ok(term_image(params, 1, 1, n, limits)?.measure()))
        .collect()
}

/// Splits every coordinate interval of the configuration into its two
/// children, computes all `2^k` child-box images of the form exactly, and
/// reports whether their union is a single interval.
pub fn children_connectivity_oracle<T: Scalar>(
    params: &CantorParams<T>,
    spec: &ExponentSpec,
    lefts: &[T],
    n: u32,
    limits: &Limits,
) -> Result<bool> {
    let k = spec.k();
    if k > limits.max_oracle_k as u64 {
        return Err(Error::ResourceLimit(format!(
            "connectivity oracle capped at k = {}, got {k}",
            limits.max_oracle_k
        )));
    }
    if lefts.len() as u64 != k {
        return Err(Error::InvalidParameter(format!(
            "configuration needs {k} endpoints, got {}",
            lefts.len()
        )));
    }
    for u in lefts {
        if !is_left_endpoint(params, u, n) {
            return Err(Error::InvalidConfiguration(format!(
                "{} is not a level-{n} left endpoint",
                u.to_wire()
            )));
        }
    }

    let r_child = params.r_pow(n + 1);
    let upper_offset = params.r_pow(n) - r_child.clone();
    let mut raw = Vec::with_capacity(1 << k);
    for choice in 0u32..(1 << k) {
        let los: Vec<T> = lefts
            .iter()
            .enumerate()
            .map(|(i, u)| {
                if (choice >> i) & 1 == 1 {
                    u.clone() + upper_offset.clone()
                } else {
                    u.clone()
                }
            })
            .collect();
        let his: Vec<T> = los.iter().map(|lo| lo.clone() + r_child.clone()).collect();
        let q_lo = form_value(spec, &los)?;
        let q_hi = form_value(spec, &his)?;
        raw.push(Interval::new(q_lo, q_hi).expect("form is monotone on nonnegative boxes"));
    }
    Ok(IntervalUnion::normalize(raw).parts().len() == 1)
}

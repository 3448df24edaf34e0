//! The iterated-function-system view of the generalized Cantor set.
//!
//! `C_alpha` is the attractor of the two-map IFS `{r x, r x + 1 - r}` with
//! `r = (1 - 1/alpha)/2`. Binary words index compositions of the two maps;
//! the image of `[0, 1]` under a length-`n` composition is a level-`n` basic
//! interval `[u, u + r^n]`, and the union of all `2^n` of them is the level-`n`
//! approximant `C_n`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::scalar::{pow, ratio, Scalar};

/// Enumeration guard for [`level_intervals`]: `2^n` intervals get large fast.
pub const DEFAULT_MAX_LEVEL: u32 = 20;

/// The pair `(alpha, r)` defining the IFS, with `r = (1 - 1/alpha)/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CantorParams<T> {
    alpha: T,
    r: T,
}

impl<T: Scalar> CantorParams<T> {
    /// Requires `alpha > 1`, which forces `0 < r < 1/2`.
    pub fn new(alpha: T) -> Result<Self> {
        if alpha <= T::one() {
            return Err(Error::InvalidParameter(format!(
                "alpha must exceed 1, got {}",
                alpha.to_wire()
            )));
        }
        let r = (T::one() - T::one() / alpha.clone()) * ratio(1, 2);
        Ok(CantorParams { alpha, r })
    }

    pub fn alpha(&self) -> &T {
        &self.alpha
    }

    pub fn r(&self) -> &T {
        &self.r
    }

    pub fn r_pow(&self, n: u32) -> T {
        pow(&self.r, n)
    }

    pub fn one_minus_r(&self) -> T {
        T::one() - self.r.clone()
    }
}

/// A finite word over `{0, 1}`. Derived ordering is the dictionary order,
/// which for equal lengths matches the spatial order of basic intervals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord {
    digits: Vec<u8>,
}

impl BinaryWord {
    pub fn empty() -> Self {
        BinaryWord { digits: Vec::new() }
    }

    pub fn from_digits(digits: &[u8]) -> Result<Self> {
        if digits.iter().any(|&d| d > 1) {
            return Err(Error::InvalidParameter("word digits must be 0 or 1".into()));
        }
        Ok(BinaryWord {
            digits: digits.to_vec(),
        })
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn len(&self) -> u32 {
        self.digits.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Word concatenation; lengths add.
    pub fn concat(&self, other: &BinaryWord) -> BinaryWord {
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        BinaryWord { digits }
    }

    /// The word `0^zeros 1^ones`.
    pub fn zeros_then_ones(zeros: u32, ones: u32) -> Self {
        let mut digits = vec![0u8; zeros as usize];
        digits.extend(std::iter::repeat(1u8).take(ones as usize));
        BinaryWord { digits }
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits: Vec<u8> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse(format!("invalid word character {c:?}"))),
            })
            .collect::<Result<_>>()?;
        Ok(BinaryWord { digits })
    }
}

/// A level-`n` basic interval `[left, left + r^n]`, identified by its left
/// endpoint and level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "T: Scalar"))]
pub struct BasicInterval<T> {
    #[serde(with = "crate::scalar::wire")]
    left: T,
    level: u32,
}

impl<T: Scalar> BasicInterval<T> {
    pub fn left(&self) -> &T {
        &self.left
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// The interval `[left, left + r^level]` as a set.
    pub fn interval(&self, params: &CantorParams<T>) -> Interval<T> {
        let hi = self.left.clone() + params.r_pow(self.level);
        Interval::new(self.left.clone(), hi).expect("r^n > 0")
    }
}

/// Evaluates the composition `f_w(x) = f_{w_1} ∘ ... ∘ f_{w_n}(x)` exactly,
/// where `f_0(x) = r x` and `f_1(x) = r x + 1 - r`. Requires `x` in `[0, 1]`.
pub fn apply_word<T: Scalar>(params: &CantorParams<T>, word: &BinaryWord, x: &T) -> Result<T> {
    if *x < T::zero() || *x > T::one() {
        return Err(Error::Domain(format!(
            "argument {} outside [0, 1]",
            x.to_wire()
        )));
    }
    // innermost map first
    let mut value = x.clone();
    for &digit in word.digits().iter().rev() {
        value = params.r().clone() * value;
        if digit == 1 {
            value = value + params.one_minus_r();
        }
    }
    Ok(value)
}

/// The basic interval `f_w([0, 1]) = [f_w(0), f_w(0) + r^{|w|}]`.
pub fn basic_interval<T: Scalar>(params: &CantorParams<T>, word: &BinaryWord) -> BasicInterval<T> {
    let left = apply_word(params, word, &T::zero()).expect("0 lies in [0, 1]");
    BasicInterval {
        left,
        level: word.len(),
    }
}

/// The two level-`n+1` children `[u, u + r^{n+1}]` and `[u + r^n - r^{n+1}, u + r^n]`,
/// i.e. the images of the two maps on `[u, u + r^n]`. (At `r = 1/3` the upper
/// offset `r^n - r^{n+1}` coincides with the ternary shorthand `2 r^{n+1}`.)
pub fn children<T: Scalar>(
    params: &CantorParams<T>,
    parent: &BasicInterval<T>,
) -> (BasicInterval<T>, BasicInterval<T>) {
    let level = parent.level + 1;
    let low = BasicInterval {
        left: parent.left.clone(),
        level,
    };
    let high = BasicInterval {
        left: parent.left.clone() + params.r_pow(parent.level) - params.r_pow(level),
        level,
    };
    (low, high)
}

/// All `2^n` level-`n` basic intervals in increasing order of left endpoint;
/// their union is the approximant `C_n`. Errors when `n > max_level`.
pub fn level_intervals<T: Scalar>(
    params: &CantorParams<T>,
    n: u32,
    max_level: u32,
) -> Result<Vec<BasicInterval<T>>> {
    if n > max_level {
        return Err(Error::ResourceLimit(format!(
            "level {n} exceeds enumeration limit {max_level}"
        )));
    }
    let mut current = vec![BasicInterval {
        left: T::zero(),
        level: 0,
    }];
    for _ in 0..n {
        let mut next = Vec::with_capacity(current.len() * 2);
        for parent in &current {
            let (low, high) = children(params, parent);
            next.push(low);
            next.push(high);
        }
        current = next;
    }
    Ok(current)
}

/// Whether `u` is a level-`n` left endpoint, i.e. `u = f_w(0)` for some word
/// of length `n`. Checked by greedy descent: at each level pick the child
/// interval containing `u`, failing if neither does.
pub fn is_left_endpoint<T: Scalar>(params: &CantorParams<T>, u: &T, n: u32) -> bool {
    if *u < T::zero() || *u > T::one() {
        return false;
    }
    let mut left = T::zero();
    for m in 0..n {
        let low_hi = left.clone() + params.r_pow(m + 1);
        let high_lo = left.clone() + params.r_pow(m) - params.r_pow(m + 1);
        if *u <= low_hi {
            // stay in the low child
        } else if *u >= high_lo {
            left = high_lo;
        } else {
            return false;
        }
    }
    *u == left
}

/// The chain of `k/2 + 1` even-parity words the subdivision argument walks:
/// the `i`-th (1-based) has `k - 2(i-1)` zeros followed by `2(i-1)` ones.
/// Consecutive entries are adjacent in dictionary order.
pub fn s2k_chain(k: u32) -> Result<Vec<BinaryWord>> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "chain length parameter must be even and >= 2, got {k}"
        )));
    }
    Ok((0..=k / 2)
        .map(|i| BinaryWord::zeros_then_ones(k - 2 * i, 2 * i))
        .collect())
}

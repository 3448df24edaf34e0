//! Exact closed intervals and normalized interval unions.
//!
//! An [`IntervalUnion`] is the canonical representation of a finite union of
//! closed intervals: parts are sorted, pairwise disjoint, and non-touching
//! (two closed intervals sharing an endpoint are merged, since only the point
//! set matters for coverage questions). All set operations are exact.

use std::cmp::{max, min};

use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if lo > hi {
            return Err(Error::MalformedInterval(format!(
                "lo {} > hi {}",
                lo.to_wire(),
                hi.to_wire()
            )));
        }
        Ok(Interval { lo, hi })
    }

    /// The degenerate interval `[x, x]`.
    pub fn point(x: T) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }

    pub fn length(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.lo <= *x && *x <= self.hi
    }
}

impl<T: Scalar> Serialize for Interval<T> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(2))?;
        seq.serialize_element(&self.lo.to_wire())?;
        seq.serialize_element(&self.hi.to_wire())?;
        seq.end()
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Interval<T> {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let (lo, hi) = <(String, String)>::deserialize(de)?;
        let lo = T::parse_wire(&lo).map_err(D::Error::custom)?;
        let hi = T::parse_wire(&hi).map_err(D::Error::custom)?;
        Interval::new(lo, hi).map_err(D::Error::custom)
    }
}

/// A normalized finite union of disjoint, non-touching closed intervals.
///
/// The empty sequence represents the empty set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntervalUnion<T> {
    parts: Vec<Interval<T>>,
}

impl<T: Scalar> IntervalUnion<T> {
    pub fn empty() -> Self {
        IntervalUnion { parts: Vec::new() }
    }

    /// Sorts and merges a raw collection of intervals into canonical form.
    /// Touching intervals coalesce: `{[0,1/3],[1/3,1/2]}` becomes `{[0,1/2]}`.
    pub fn normalize(mut raw: Vec<Interval<T>>) -> Self {
        raw.sort_unstable();
        let mut parts: Vec<Interval<T>> = Vec::with_capacity(raw.len().min(64));
        for iv in raw {
            match parts.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => parts.push(iv),
            }
        }
        IntervalUnion { parts }
    }

    pub fn from_interval(iv: Interval<T>) -> Self {
        IntervalUnion { parts: vec![iv] }
    }

    pub fn parts(&self) -> &[Interval<T>] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `{a + b : a in self, b in other}`; empty if either operand is empty.
    pub fn minkowski_sum(&self, other: &Self) -> Self {
        if self.parts.is_empty() || other.parts.is_empty() {
            return Self::empty();
        }
        let mut raw = Vec::with_capacity(self.parts.len() * other.parts.len());
        for a in &self.parts {
            for b in &other.parts {
                raw.push(Interval {
                    lo: a.lo.clone() + b.lo.clone(),
                    hi: a.hi.clone() + b.hi.clone(),
                });
            }
        }
        Self::normalize(raw)
    }

    /// Exact total length of the union.
    pub fn measure(&self) -> T {
        let mut total = T::zero();
        for p in &self.parts {
            total = total + p.length();
        }
        total
    }

    /// The maximal uncovered open intervals of `hull`, reported as the closed
    /// intervals spanned by their endpoints. Empty iff the union covers `hull`.
    pub fn gaps(&self, hull: &Interval<T>) -> Vec<Interval<T>> {
        let mut gaps = Vec::new();
        let mut cursor = hull.lo.clone();
        for part in &self.parts {
            if part.hi < cursor {
                continue;
            }
            if part.lo > hull.hi {
                break;
            }
            if part.lo > cursor {
                gaps.push(Interval {
                    lo: cursor.clone(),
                    hi: part.lo.clone(),
                });
            }
            if part.hi > cursor {
                cursor = part.hi.clone();
            }
            if cursor >= hull.hi {
                break;
            }
        }
        if cursor < hull.hi {
            gaps.push(Interval {
                lo: cursor,
                hi: hull.hi.clone(),
            });
        }
        gaps
    }

    /// Whether the union covers every point of `hull`.
    pub fn covers(&self, hull: &Interval<T>) -> bool {
        self.gaps(hull).is_empty()
    }

    /// Restriction of the union to `window`.
    pub fn restrict(&self, window: &Interval<T>) -> Self {
        let mut parts = Vec::new();
        for p in &self.parts {
            if p.hi < window.lo || p.lo > window.hi {
                continue;
            }
            parts.push(Interval {
                lo: max(&p.lo, &window.lo).clone(),
                hi: min(&p.hi, &window.hi).clone(),
            });
        }
        IntervalUnion { parts }
    }

    /// Whether every point of `other` lies in `self`.
    pub fn is_superset(&self, other: &Self) -> bool {
        let mut i = 0;
        'outer: for o in &other.parts {
            while i < self.parts.len() {
                let s = &self.parts[i];
                if s.hi < o.lo {
                    i += 1;
                    continue;
                }
                if s.lo <= o.lo && o.hi <= s.hi {
                    continue 'outer;
                }
                return false;
            }
            return false;
        }
        true
    }

    /// Smallest single interval containing the union, if nonempty.
    pub fn hull(&self) -> Option<Interval<T>> {
        let first = self.parts.first()?;
        let last = self.parts.last()?;
        Some(Interval {
            lo: first.lo.clone(),
            hi: last.hi.clone(),
        })
    }
}

impl<T: Scalar> Serialize for IntervalUnion<T> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(ser)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for IntervalUnion<T> {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<Interval<T>>::deserialize(de)?;
        Ok(IntervalUnion::normalize(raw))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{from_int, ratio};
    use crate::Rational;

    fn iv(lo: (i64, i64), hi: (i64, i64)) -> Interval<Rational> {
        Interval::new(ratio(lo.0, lo.1), ratio(hi.0, hi.1)).unwrap()
    }

    fn union(ivs: Vec<Interval<Rational>>) -> IntervalUnion<Rational> {
        IntervalUnion::normalize(ivs)
    }

    #[test]
    fn normalize_merges_touching() {
        let u = union(vec![iv((0, 1), (1, 3)), iv((1, 3), (1, 2))]);
        assert_eq!(u.parts(), &[iv((0, 1), (1, 2))]);
    }

    #[test]
    fn normalize_sorts_disjoint() {
        let u = union(vec![iv((4, 9), (1, 1)), iv((0, 1), (1, 3))]);
        assert_eq!(u.parts(), &[iv((0, 1), (1, 3)), iv((4, 9), (1, 1))]);
    }

    #[test]
    fn normalize_empty() {
        let u = union(vec![]);
        assert!(u.is_empty());
        assert_eq!(u.measure(), Rational::from_integer(0.into()));
    }

    #[test]
    fn malformed_interval_rejected() {
        assert!(Interval::<Rational>::new(from_int(1), from_int(0)).is_err());
    }

    #[test]
    fn minkowski_basic() {
        let unit = union(vec![iv((0, 1), (1, 1))]);
        let sum = unit.minkowski_sum(&unit);
        assert_eq!(sum.parts(), &[iv((0, 1), (2, 1))]);
    }

    #[test]
    fn minkowski_cantor_level_one_is_steinhaus() {
        // independent oracle: the four pairwise sums of {[0,1/3],[2/3,1]}
        // are [0,2/3], [2/3,4/3], [2/3,4/3], [4/3,2], which merge to [0,2]
        let c1 = union(vec![iv((0, 1), (1, 3)), iv((2, 3), (1, 1))]);
        let by_hand = union(vec![
            iv((0, 1), (2, 3)),
            iv((2, 3), (4, 3)),
            iv((2, 3), (4, 3)),
            iv((4, 3), (2, 1)),
        ]);
        assert_eq!(by_hand.parts(), &[iv((0, 1), (2, 1))]);
        assert_eq!(c1.minkowski_sum(&c1), by_hand);
    }

    #[test]
    fn minkowski_identity_and_empty() {
        let u = union(vec![iv((0, 1), (1, 3)), iv((4, 9), (1, 1))]);
        let zero = union(vec![iv((0, 1), (0, 1))]);
        assert_eq!(u.minkowski_sum(&zero), u);
        assert!(u.minkowski_sum(&IntervalUnion::empty()).is_empty());
    }

    #[test]
    fn measure_examples() {
        let u = union(vec![iv((0, 1), (1, 3)), iv((4, 9), (1, 1))]);
        assert_eq!(u.measure(), ratio::<Rational>(8, 9));
        assert_eq!(
            union(vec![iv((0, 1), (2, 1))]).measure(),
            from_int::<Rational>(2)
        );
    }

    #[test]
    fn gaps_examples() {
        let hull = iv((0, 1), (1, 1));
        let u = union(vec![iv((0, 1), (1, 3)), iv((4, 9), (1, 1))]);
        assert_eq!(u.gaps(&hull), vec![iv((1, 3), (4, 9))]);
        assert!(union(vec![iv((0, 1), (1, 1))]).gaps(&hull).is_empty());
        assert_eq!(
            union(vec![iv((1, 9), (1, 1))]).gaps(&hull),
            vec![iv((0, 1), (1, 9))]
        );
        // empty union: the whole hull is one gap
        assert_eq!(
            IntervalUnion::<Rational>::empty().gaps(&hull),
            vec![hull.clone()]
        );
    }

    #[test]
    fn restrict_and_superset() {
        let u = union(vec![iv((0, 1), (1, 3)), iv((4, 9), (1, 1))]);
        let restricted = u.restrict(&iv((1, 4), (1, 2)));
        assert_eq!(
            restricted.parts(),
            &[iv((1, 4), (1, 3)), iv((4, 9), (1, 2))]
        );
        assert!(u.is_superset(&restricted));
        assert!(!restricted.is_superset(&u));
        assert!(u.is_superset(&IntervalUnion::empty()));
    }

    #[test]
    fn serde_tuple_form() {
        let u = union(vec![iv((0, 1), (1, 3)), iv((4, 9), (1, 1))]);
        let json = serde_json::to_string(&u).unwrap();
        assert_eq!(json, r#"[["0","1/3"],["4/9","1"]]"#);
        let back: IntervalUnion<Rational> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, u);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_rational() -> impl Strategy<Value = Rational> {
            (0i64..=120, 1i64..=48).prop_map(|(p, q)| ratio(p, q))
        }

        fn arb_interval() -> impl Strategy<Value = Interval<Rational>> {
            (arb_rational(), arb_rational()).prop_map(|(a, b)| {
                if a <= b {
                    Interval::new(a, b).unwrap()
                } else {
                    Interval::new(b, a).unwrap()
                }
            })
        }

        fn arb_union() -> impl Strategy<Value = IntervalUnion<Rational>> {
            proptest::collection::vec(arb_interval(), 0..7).prop_map(IntervalUnion::normalize)
        }

        proptest! {
            #[test]
            fn normalize_is_idempotent(u in arb_union()) {
                let again = IntervalUnion::normalize(u.parts().to_vec());
                prop_assert_eq!(again, u);
            }

            #[test]
            fn minkowski_commutes(a in arb_union(), b in arb_union()) {
                prop_assert_eq!(a.minkowski_sum(&b), b.minkowski_sum(&a));
            }

            #[test]
            fn minkowski_associates(a in arb_union(), b in arb_union(), c in arb_union()) {
                let left = a.minkowski_sum(&b).minkowski_sum(&c);
                let right = a.minkowski_sum(&b.minkowski_sum(&c));
                prop_assert_eq!(left, right);
            }

            #[test]
            fn minkowski_measure_superadditive(a in arb_union(), b in arb_union()) {
                prop_assume!(!a.is_empty() && !b.is_empty());
                let sum = a.minkowski_sum(&b).measure();
                prop_assert!(sum >= a.measure().max(b.measure()));
            }

            #[test]
            fn gaps_complement_restriction(u in arb_union(), hull in arb_interval()) {
                let covered = u.restrict(&hull).measure();
                let gap_total: Rational = u
                    .gaps(&hull)
                    .iter()
                    .map(Interval::length)
                    .fold(Rational::from_integer(0.into()), |acc, x| acc + x);
                prop_assert_eq!(covered + gap_total, hull.length());
            }
        }
    }
}

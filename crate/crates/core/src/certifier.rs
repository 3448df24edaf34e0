//! Machine-checkable coverage certificates.
//!
//! A certificate replays the inequality pipeline that proves
//! `f(C_alpha^k) = [0, k/2]` for a form `f` with exponent spec `a` and `k`
//! variables: the subdivision (split) inequality at the all-`(1-r)`
//! configuration, a floor on `k`, the split inequality at the alternating
//! `(1-r, 1-r^{n_*})` configuration, and the overlap, join, and gluing
//! inequalities that chain the resulting intervals together and close the
//! scaled union `{0} ∪ ⋃_n [A r^{n a}, (k/2) r^{n a}]`. Every check records
//! exact left- and right-hand sides, so verification is a bit-exact replay.

use serde::{Deserialize, Serialize};

use crate::bounds::{balanced_exponents, envelope_parts, k_star_even, ExponentSpec};
use crate::cantor::{is_left_endpoint, CantorParams};
use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalUnion};
use crate::scalar::{from_uint, pow, Scalar};

pub const CERT_VERSION: &str = "cert/1";

/// Which shift the split inequality uses on its right-hand side:
/// `r^n - r^{n+1}` for the one-step equality form, `r^n` for the inclusion
/// form that survives induction over all deeper levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitVariant {
    Equality,
    Inclusion,
}

/// One evaluated split inequality at a concrete endpoint configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCheck<T> {
    pub lefts: Vec<T>,
    pub level: u32,
    pub spec: ExponentSpec,
    /// 1-based odd position of the dominating pair: the smallest odd index
    /// maximizing `term_j + shifted_term_j`. With that choice, `lhs >= rhs`
    /// is equivalent to every pair's shifted term being covered by the other
    /// pairs' terms, which is what the one-step subdivision argument needs.
    pub max_index: usize,
    pub lhs: T,
    pub rhs: T,
    pub variant: SplitVariant,
    pub holds: bool,
}

/// Exact value of the form at a point: `sum x_{2i-1}^{a_{2i-1}} x_{2i}^{a_{2i}}`.
pub fn form_value<T: Scalar>(spec: &ExponentSpec, xs: &[T]) -> Result<T> {
    if xs.len() as u64 != spec.k() {
        return Err(Error::InvalidParameter(format!(
            "form takes {} arguments, got {}",
            spec.k(),
            xs.len()
        )));
    }
    let mut total = T::zero();
    for (j, &(a, b)) in spec.pairs().iter().enumerate() {
        total = total + pow(&xs[2 * j], a) * pow(&xs[2 * j + 1], b);
    }
    Ok(total)
}

/// Smallest 1-based odd index `M` maximizing the raw pair value
/// `u_M^{a_M} u_{M+1}^{a_{M+1}}`.
///
/// Note this is not the index [`check_split`] anchors its inequality to: for
/// non-comparable pairs (e.g. ties at zero) the raw-value maximizer can have
/// a strictly smaller *shifted* term than another pair, and anchoring there
/// would pass configurations whose child images are disconnected.
pub fn max_pair_index<T: Scalar>(spec: &ExponentSpec, lefts: &[T]) -> usize {
    assert_eq!(
        lefts.len() as u64,
        spec.k(),
        "configuration length must equal the number of variables"
    );
    let pair_value = |j: usize| {
        let (a, b) = spec.pairs()[j];
        pow(&lefts[2 * j], a) * pow(&lefts[2 * j + 1], b)
    };
    let mut best = 0usize;
    let mut best_value = pair_value(0);
    for j in 1..spec.pairs().len() {
        let value = pair_value(j);
        if value > best_value {
            best = j;
            best_value = value;
        }
    }
    2 * best + 1
}

/// `u_odd^{a-1} u_even^{b-1} (b u_odd + a u_even)`, the per-pair quantity on
/// both sides of the split inequality. Zero endpoints with exponent 1 rely on
/// the `0^0 = 1` convention of [`pow`].
fn split_term<T: Scalar>(u_odd: &T, u_even: &T, a: u32, b: u32) -> T {
    pow(u_odd, a - 1)
        * pow(u_even, b - 1)
        * (from_uint::<T>(b as u64) * u_odd.clone() + from_uint::<T>(a as u64) * u_even.clone())
}

/// Evaluates the split inequality for level-`n` left endpoints `lefts`:
/// the non-maximizing pair terms must dominate the maximizing pair's term
/// shifted by `r^n - r^{n+1}` (equality variant) or `r^n` (inclusion variant).
pub fn check_split<T: Scalar>(
    params: &CantorParams<T>,
    spec: &ExponentSpec,
    lefts: &[T],
    level: u32,
    variant: SplitVariant,
) -> Result<SplitCheck<T>> {
    if lefts.len() as u64 != spec.k() {
        return Err(Error::InvalidParameter(format!(
            "configuration needs {} endpoints, got {}",
            spec.k(),
            lefts.len()
        )));
    }
    for u in lefts {
        if !is_left_endpoint(params, u, level) {
            return Err(Error::InvalidConfiguration(format!(
                "{} is not a level-{level} left endpoint",
                u.to_wire()
            )));
        }
    }

    let delta = match variant {
        SplitVariant::Equality => params.r_pow(level) - params.r_pow(level + 1),
        SplitVariant::Inclusion => params.r_pow(level),
    };

    let mut terms = Vec::with_capacity(spec.pairs().len());
    let mut shifted = Vec::with_capacity(spec.pairs().len());
    for (j, &(a, b)) in spec.pairs().iter().enumerate() {
        terms.push(split_term(&lefts[2 * j], &lefts[2 * j + 1], a, b));
        shifted.push(split_term(
            &(lefts[2 * j].clone() + delta.clone()),
            &(lefts[2 * j + 1].clone() + delta.clone()),
            a,
            b,
        ));
    }

    // anchor at the pair whose combined current + shifted contribution
    // dominates; lhs >= rhs is then the condition for every pair at once
    let mut anchor = 0usize;
    let mut anchor_weight = terms[0].clone() + shifted[0].clone();
    for j in 1..terms.len() {
        let weight = terms[j].clone() + shifted[j].clone();
        if weight > anchor_weight {
            anchor = j;
            anchor_weight = weight;
        }
    }
    let max_index = 2 * anchor + 1;

    let mut lhs = T::zero();
    for (j, term) in terms.iter().enumerate() {
        if j != anchor {
            lhs = lhs + term.clone();
        }
    }
    let rhs = shifted[anchor].clone();
    let holds = lhs >= rhs;
    Ok(SplitCheck {
        lefts: lefts.to_vec(),
        level,
        spec: spec.clone(),
        max_index,
        lhs,
        rhs,
        variant,
        holds,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    SplitInclusion,
    SplitEquality,
    Scalar,
}

/// One pipeline inequality with exact sides; `holds` means `lhs cmp rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct CheckRecord<T> {
    pub id: String,
    pub kind: CheckKind,
    #[serde(with = "crate::scalar::wire")]
    pub lhs: T,
    #[serde(with = "crate::scalar::wire")]
    pub rhs: T,
    pub cmp: String,
    pub holds: bool,
}

impl<T: Scalar> CheckRecord<T> {
    fn ge(id: &str, kind: CheckKind, lhs: T, rhs: T) -> Self {
        let holds = lhs >= rhs;
        CheckRecord {
            id: id.to_string(),
            kind,
            lhs,
            rhs,
            cmp: ">=".to_string(),
            holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub enum Conclusion<T> {
    /// All checks hold: the form covers exactly this interval union `[0, k/2]`.
    Certified(IntervalUnion<T>),
    /// Some check failed; the pipeline proves nothing for this `k`.
    NotCertified {
        #[serde(rename = "failingCheck")]
        failing_check: String,
    },
}

/// A serialized chain of exact inequality checks. Every side is recomputable
/// from `(alpha, pairs, k)` alone, so tampering is always detectable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct Certificate<T> {
    pub version: String,
    #[serde(with = "crate::scalar::wire")]
    pub alpha: T,
    #[serde(with = "crate::scalar::wire")]
    pub r: T,
    pub s: u32,
    pub pairs: Vec<(u32, u32)>,
    pub k: u64,
    pub k_star_even: u64,
    pub n_star: u32,
    /// The exponent the scaled-union step contracts by: the odd exponent for
    /// uniform specs, the near-balanced `a_bar` for mixed specs.
    pub scaling_exponent: u32,
    pub checks: Vec<CheckRecord<T>>,
    pub conclusion: Conclusion<T>,
}

impl<T: Scalar> Certificate<T> {
    pub fn certified(&self) -> bool {
        matches!(self.conclusion, Conclusion::Certified(_))
    }
}

/// The exponents the pipeline instantiates its constants at: the uniform
/// pair when there is one, otherwise the near-balanced split of `s`.
fn pipeline_exponents(spec: &ExponentSpec) -> (u32, u32) {
    spec.uniform_pair()
        .unwrap_or_else(|| balanced_exponents(spec.s()))
}

/// Smallest even `k` for which the pipeline's three-term bound holds at the
/// orientation [`certify_coverage`] will actually use (uniform pairs are not
/// swapped). The natural default for certification requests.
pub fn default_k<T: Scalar>(params: &CantorParams<T>, spec: &ExponentSpec) -> Result<u64> {
    let (a_hat, b_hat) = pipeline_exponents(spec);
    let parts = envelope_parts(params.r(), a_hat, b_hat)?;
    let max_term = parts.e1.clone().max(parts.e2.clone()).max(parts.e3);
    crate::bounds::smallest_even_ge(&max_term)
}

/// Runs the whole pipeline for `spec` (which must supply exactly `k/2`
/// pairs) and emits the certificate. Non-certification is a first-class
/// outcome, not an error.
pub fn certify_coverage<T: Scalar>(
    params: &CantorParams<T>,
    spec: &ExponentSpec,
    k: u64,
) -> Result<Certificate<T>> {
    if k == 0 || !k.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "k must be a positive even integer, got {k}"
        )));
    }
    if spec.k() != k {
        return Err(Error::InvalidParameter(format!(
            "spec provides {} pairs but k = {k} needs {}",
            spec.pairs().len(),
            k / 2
        )));
    }

    let (a_hat, b_hat) = pipeline_exponents(spec);
    let parts = envelope_parts(params.r(), a_hat, b_hat)?;
    let ns = parts.n_star;
    let kse = k_star_even(params.r(), parts.k1)?;

    let r = params.r().clone();
    let rn = params.r_pow(ns);
    let one_minus_r = params.one_minus_r();
    let grown = one_minus_r.clone() + rn.clone(); // 1 - r + r^{n_*}
    let shrunk = T::one() - rn; // 1 - r^{n_*}
    let half_kse: T = from_uint(kse / 2);
    let half_k: T = from_uint(k / 2);
    let two = from_uint::<T>(2);

    let mut checks = Vec::with_capacity(6);

    // (1) split inequality at the all-(1-r) configuration, level 1
    let all_low = vec![one_minus_r.clone(); k as usize];
    let c1 = check_split(params, spec, &all_low, 1, SplitVariant::Inclusion)?;
    checks.push(CheckRecord::ge(
        "c1-split",
        CheckKind::SplitInclusion,
        c1.lhs,
        c1.rhs,
    ));

    // (2) k reaches the pipeline's variable floor
    checks.push(CheckRecord::ge(
        "k-ge-kstar",
        CheckKind::Scalar,
        from_uint::<T>(k),
        from_uint::<T>(kse),
    ));

    // (3) split inequality at the alternating (1-r, 1-r^{n_*}) configuration
    let mut alternating = Vec::with_capacity(k as usize);
    for i in 0..k {
        alternating.push(if i % 2 == 0 {
            one_minus_r.clone()
        } else {
            shrunk.clone()
        });
    }
    let c2 = check_split(params, spec, &alternating, ns, SplitVariant::Inclusion)?;
    checks.push(CheckRecord::ge(
        "c2-split",
        CheckKind::SplitInclusion,
        c2.lhs,
        c2.rhs,
    ));

    // (4) the alternating-configuration interval is long enough that
    // appending a (1-r, 1)-valued pair cannot open a gap
    let low_product = pow(&one_minus_r, a_hat) * pow(&shrunk, b_hat);
    checks.push(CheckRecord::ge(
        "c2-overlap",
        CheckKind::Scalar,
        half_kse.clone() * (pow(&grown, a_hat) - low_product.clone()),
        pow(&one_minus_r, a_hat),
    ));

    // (5) the appended chain reaches the all-(1-r) interval
    checks.push(CheckRecord::ge(
        "c2-join",
        CheckKind::Scalar,
        (from_uint::<T>(kse) * pow(&grown, a_hat)
            + (from_uint::<T>(k) - from_uint::<T>(kse)) * pow(&one_minus_r, a_hat))
            / two,
        half_k.clone() * pow(&one_minus_r, spec.s()),
    ));

    // (6) consecutive r^{a}-scaled copies of [A, k/2] overlap, closing
    // {0} ∪ ⋃_n [A r^{n a}, (k/2) r^{n a}] = [0, k/2]
    checks.push(CheckRecord::ge(
        "glue-scaling",
        CheckKind::Scalar,
        half_k * pow(&r, a_hat),
        half_kse * low_product,
    ));

    let conclusion = match checks.iter().find(|c| !c.holds) {
        None => {
            let upper: T = from_uint(k / 2);
            Conclusion::Certified(IntervalUnion::from_interval(
                Interval::new(T::zero(), upper).expect("k/2 >= 0"),
            ))
        }
        Some(first_failing) => Conclusion::NotCertified {
            failing_check: first_failing.id.clone(),
        },
    };

    Ok(Certificate {
        version: CERT_VERSION.to_string(),
        alpha: params.alpha().clone(),
        r,
        s: spec.s(),
        pairs: spec.pairs().to_vec(),
        k,
        k_star_even: kse,
        n_star: ns,
        scaling_exponent: a_hat,
        checks,
        conclusion,
    })
}

/// Recomputes every check from `(alpha, pairs, k)` and compares bit-exactly
/// against the stored certificate. Structural defects (unknown version,
/// alpha out of range, malformed pairs) are errors; any value mismatch is
/// an honest `false`.
pub fn verify_certificate<T: Scalar>(cert: &Certificate<T>) -> Result<bool> {
    if cert.version != CERT_VERSION {
        return Err(Error::UnsupportedVersion(cert.version.clone()));
    }
    let params = CantorParams::new(cert.alpha.clone())?;
    let spec = ExponentSpec::new(cert.pairs.clone())?;
    if *params.r() != cert.r || spec.s() != cert.s {
        return Ok(false);
    }
    let fresh = certify_coverage(&params, &spec, cert.k)?;
    Ok(fresh == *cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{from_int, ratio};
    use crate::Rational;

    fn ternary() -> CantorParams<Rational> {
        CantorParams::new(from_int(3)).unwrap()
    }

    fn two_thirds() -> Rational {
        ratio(2, 3)
    }

    #[test]
    fn form_value_examples() {
        let pairs2 = ExponentSpec::repeat((1, 1), 2).unwrap();
        let ones = vec![Rational::from_integer(1.into()); 4];
        assert_eq!(form_value(&pairs2, &ones).unwrap(), from_int::<Rational>(2));

        let spec21 = ExponentSpec::new(vec![(2, 1)]).unwrap();
        assert_eq!(
            form_value(&spec21, &[ratio::<Rational>(1, 3), ratio(2, 3)]).unwrap(),
            ratio::<Rational>(2, 27)
        );

        let spec11 = ExponentSpec::new(vec![(1, 1)]).unwrap();
        assert!(form_value(
            &spec11,
            &[from_int::<Rational>(1), from_int(1), from_int(1)]
        )
        .is_err());
    }

    #[test]
    fn max_pair_index_examples() {
        let spec = ExponentSpec::repeat((1, 1), 2).unwrap();
        let zero = Rational::from_integer(0.into());
        assert_eq!(
            max_pair_index(&spec, &[two_thirds(), two_thirds(), zero.clone(), zero]),
            1
        );
        assert_eq!(max_pair_index(&spec, &vec![two_thirds(); 4]), 1);

        let spec12 = ExponentSpec::repeat((1, 2), 2).unwrap();
        let lefts = vec![
            Rational::from_integer(0.into()),
            two_thirds(),
            two_thirds(),
            two_thirds(),
        ];
        assert_eq!(max_pair_index(&spec12, &lefts), 3);
    }

    #[test]
    fn check_split_examples() {
        let p = ternary();

        let spec5 = ExponentSpec::repeat((1, 1), 5).unwrap();
        let check = check_split(
            &p,
            &spec5,
            &vec![two_thirds(); 10],
            1,
            SplitVariant::Inclusion,
        )
        .unwrap();
        assert_eq!(check.lhs, ratio::<Rational>(16, 3));
        assert_eq!(check.rhs, from_int::<Rational>(2));
        assert!(check.holds);
        assert_eq!(check.max_index, 1);

        let spec2 = ExponentSpec::repeat((1, 1), 2).unwrap();
        let check = check_split(
            &p,
            &spec2,
            &vec![two_thirds(); 4],
            1,
            SplitVariant::Equality,
        )
        .unwrap();
        assert_eq!(check.lhs, ratio::<Rational>(4, 3));
        assert_eq!(check.rhs, ratio::<Rational>(16, 9));
        assert!(!check.holds);

        let spec1 = ExponentSpec::repeat((1, 1), 1).unwrap();
        let check = check_split(
            &p,
            &spec1,
            &vec![two_thirds(); 2],
            1,
            SplitVariant::Inclusion,
        )
        .unwrap();
        assert_eq!(check.lhs, Rational::from_integer(0.into()));
        assert!(!check.holds);
    }

    #[test]
    fn check_split_anchors_on_dominating_shifted_term() {
        // the raw-value maximizer (tie at value 0) is pair 1, but pair 2's
        // shifted term dominates; anchoring there refuses the configuration,
        // matching its disconnected child images
        let p = ternary();
        let spec = ExponentSpec::repeat((1, 1), 2).unwrap();
        let zero = Rational::from_integer(0.into());
        let lefts = vec![zero.clone(), zero.clone(), two_thirds(), zero];
        assert_eq!(max_pair_index(&spec, &lefts), 1);
        let check = check_split(&p, &spec, &lefts, 2, SplitVariant::Equality).unwrap();
        assert_eq!(check.max_index, 3);
        assert_eq!(check.lhs, Rational::from_integer(0.into()));
        assert_eq!(check.rhs, ratio::<Rational>(22, 27));
        assert!(!check.holds);
    }

    #[test]
    fn appending_matching_pair_preserves_pipeline_checks() {
        // on the pipeline configurations every pair sits at the same
        // coordinates, so an appended copy only adds to the lhs
        for alpha in [from_int::<Rational>(3), from_int(4)] {
            let p = CantorParams::new(alpha).unwrap();
            let one_minus_r = p.one_minus_r();
            for pair in [(1u32, 1u32), (1, 2), (2, 2)] {
                for half_k in 2usize..=6 {
                    let spec = ExponentSpec::repeat(pair, half_k).unwrap();
                    let lefts = vec![one_minus_r.clone(); 2 * half_k];
                    let base = check_split(&p, &spec, &lefts, 1, SplitVariant::Inclusion).unwrap();
                    if !base.holds {
                        continue;
                    }
                    let bigger = ExponentSpec::repeat(pair, half_k + 1).unwrap();
                    let extended = check_split(
                        &p,
                        &bigger,
                        &vec![one_minus_r.clone(); 2 * half_k + 2],
                        1,
                        SplitVariant::Inclusion,
                    )
                    .unwrap();
                    assert!(
                        extended.holds,
                        "alpha={:?} pair={pair:?} k={}",
                        p.alpha(),
                        2 * half_k
                    );
                }
            }
        }
    }

    #[test]
    fn check_split_rejects_bad_configurations() {
        let p = ternary();
        let spec = ExponentSpec::repeat((1, 1), 1).unwrap();
        assert!(matches!(
            check_split(
                &p,
                &spec,
                &[ratio(1, 2), ratio(1, 2)],
                1,
                SplitVariant::Inclusion
            ),
            Err(Error::InvalidConfiguration(_))
        ));
        assert!(matches!(
            check_split(&p, &spec, &[two_thirds()], 1, SplitVariant::Inclusion),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn certify_seven_pairs_of_1_2_at_14() {
        let p = ternary();
        let spec = ExponentSpec::repeat((1, 2), 7).unwrap();
        let cert = certify_coverage(&p, &spec, 14).unwrap();
        assert!(cert.certified());
        assert_eq!(cert.k_star_even, 8);
        assert_eq!(cert.n_star, 1);
        assert_eq!(cert.scaling_exponent, 1);
        assert!(cert.checks.iter().all(|c| c.holds));
        match &cert.conclusion {
            Conclusion::Certified(u) => {
                assert_eq!(u.parts().len(), 1);
                assert_eq!(u.parts()[0].lo(), &Rational::from_integer(0.into()));
                assert_eq!(u.parts()[0].hi(), &from_int::<Rational>(7));
            }
            other => panic!("expected certified, got {other:?}"),
        }
    }

    #[test]
    fn certify_two_pairs_of_1_1_at_4_fails_on_c1() {
        let p = ternary();
        let spec = ExponentSpec::repeat((1, 1), 2).unwrap();
        let cert = certify_coverage(&p, &spec, 4).unwrap();
        assert!(!cert.certified());
        assert_eq!(cert.checks[0].id, "c1-split");
        assert_eq!(cert.checks[0].lhs, ratio::<Rational>(4, 3));
        assert_eq!(cert.checks[0].rhs, from_int::<Rational>(2));
        match &cert.conclusion {
            Conclusion::NotCertified { failing_check } => assert_eq!(failing_check, "c1-split"),
            other => panic!("expected not-certified, got {other:?}"),
        }
    }

    #[test]
    fn certify_validates_inputs() {
        assert!(CantorParams::<Rational>::new(from_int(1)).is_err());
        let p = ternary();
        let spec = ExponentSpec::repeat((1, 1), 2).unwrap();
        assert!(certify_coverage(&p, &spec, 5).is_err());
        assert!(certify_coverage(&p, &spec, 6).is_err()); // pair count mismatch
    }

    #[test]
    fn default_k_matches_pipeline_orientation() {
        let p = ternary();
        assert_eq!(
            default_k(&p, &ExponentSpec::repeat((1, 2), 1).unwrap()).unwrap(),
            14
        );
        // unswapped: (2,1) keeps its own, larger envelope
        assert_eq!(
            default_k(&p, &ExponentSpec::repeat((2, 1), 1).unwrap()).unwrap(),
            28
        );
        // mixed pairs go through the balanced exponents
        let mixed = ExponentSpec::from_flat(&[1, 2, 2, 1]).unwrap();
        assert_eq!(default_k(&p, &mixed).unwrap(), 14);
    }

    #[test]
    fn default_k_certifies() {
        for alpha in [from_int::<Rational>(3), from_int(4)] {
            let p = CantorParams::new(alpha).unwrap();
            for pair in [(1u32, 1u32), (1, 2), (2, 1), (2, 2)] {
                let k = default_k(&p, &ExponentSpec::new(vec![pair]).unwrap()).unwrap();
                let spec = ExponentSpec::repeat(pair, (k / 2) as usize).unwrap();
                let cert = certify_coverage(&p, &spec, k).unwrap();
                assert!(
                    cert.certified(),
                    "alpha={:?}, pair={pair:?}, k={k}",
                    p.alpha()
                );
            }
        }
    }

    #[test]
    fn verify_round_trip_and_tampering() {
        let p = ternary();
        let spec = ExponentSpec::repeat((1, 2), 7).unwrap();
        let cert = certify_coverage(&p, &spec, 14).unwrap();
        assert!(verify_certificate(&cert).unwrap());

        let mut tampered = cert.clone();
        tampered.checks[0].lhs += Rational::from_integer(1.into());
        assert!(!verify_certificate(&tampered).unwrap());

        let mut relabeled = cert.clone();
        relabeled.conclusion = Conclusion::NotCertified {
            failing_check: "c1-split".into(),
        };
        assert!(!verify_certificate(&relabeled).unwrap());

        let mut bogus = cert;
        bogus.version = "bogus/9".into();
        assert!(matches!(
            verify_certificate(&bogus),
            Err(Error::UnsupportedVersion(_))
        ));
    }

    #[test]
    fn certificate_json_schema() {
        let p = ternary();
        let spec = ExponentSpec::repeat((1, 2), 7).unwrap();
        let cert = certify_coverage(&p, &spec, 14).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        for key in [
            r#""version":"cert/1""#,
            r#""alpha":"3""#,
            r#""r":"1/3""#,
            r#""s":3"#,
            r#""pairs":[[1,2],"#,
            r#""k":14"#,
            r#""kStarEven":8"#,
            r#""nStar":1"#,
            r#""scalingExponent":1"#,
            r#""id":"c1-split""#,
            r#""cmp":">=""#,
            r#""certified":[["0","7"]]"#,
        ] {
            assert!(json.contains(key), "missing {key} in {json}");
        }
        let back: Certificate<Rational> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
        assert!(verify_certificate(&back).unwrap());

        // deterministic byte stream
        assert_eq!(json, serde_json::to_string(&cert).unwrap());
    }

    #[test]
    fn scaling_identity_on_sample_tuples() {
        let p = ternary();
        let spec = ExponentSpec::from_flat(&[1, 2, 2, 1]).unwrap();
        let xs = vec![
            two_thirds(),
            ratio(2, 9),
            Rational::from_integer(0.into()),
            ratio(8, 9),
        ];
        let scaled: Vec<Rational> = xs.iter().map(|x| p.r().clone() * x).collect();
        assert_eq!(
            form_value(&spec, &scaled).unwrap(),
            crate::scalar::pow(p.r(), spec.s()) * form_value(&spec, &xs).unwrap()
        );
    }
}

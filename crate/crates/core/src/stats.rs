//! Entropy and deviation thresholds, empirical laws of aligned symbol pairs, the
//! `R` variables of an ordered pair of alignments, and the resulting events and bound.
//!
//! All distances between distributions are sup-norms over the support points.

use alloc::vec;
use alloc::vec::Vec;

use crate::alignment::Alignment;
use crate::dp::ExtremalPair;
use crate::error::{domain, invalid, Result};
use crate::seq::BinarySequence;

/// Value assigned to `H` at the closed endpoints `0` and `1`. [`entropy`] itself
/// rejects those points; callers that want the limit use this constant explicitly.
pub const ENTROPY_AT_ENDPOINTS: f64 = 0.0;

fn check_open_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(domain!("{name} must lie in (0, 1), got {v}"))
    }
}

/// `H(delta) = -(delta ln delta + (1 - delta) ln(1 - delta))`.
pub fn entropy(delta: f64) -> Result<f64> {
    check_open_unit("delta", delta)?;
    Ok(-(delta * libm::log(delta) + (1.0 - delta) * libm::log1p(-delta)))
}

/// `eps1(delta) = sqrt(9 H / (4 (1 - delta)))`, the margin on aligned-pair frequencies.
pub fn eps1(delta: f64) -> Result<f64> {
    let h = entropy(delta)?;
    Ok(libm::sqrt(9.0 * h / (4.0 * (1.0 - delta))))
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EpsThresholds {
    pub eps1: f64,
    pub eps2: f64,
    pub eps3: f64,
    pub eps4: f64,
}

pub fn eps_thresholds(delta: f64, epsilon: f64) -> Result<EpsThresholds> {
    check_open_unit("epsilon", epsilon)?;
    let h = entropy(delta)?;
    let q = 1.0 - delta;
    Ok(EpsThresholds {
        eps1: libm::sqrt(9.0 * h / (4.0 * q)),
        eps2: libm::sqrt(3.0 * h / (2.0 * q * epsilon)),
        eps3: libm::sqrt(27.0 * h / (8.0 * q * epsilon)),
        eps4: libm::sqrt(3.0 * h / (2.0 * q * (1.0 - epsilon))),
    })
}

/// Outcome set of an [`EmpiricalDist`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Support {
    /// `(0,0), (0,1), (1,0), (1,1)`, in that order.
    Pairs,
    /// `-1, 0, +1`, in that order.
    Signed,
}

impl Support {
    pub fn len(self) -> usize {
        match self {
            Support::Pairs => 4,
            Support::Signed => 3,
        }
    }

    pub fn is_empty(self) -> bool {
        false
    }
}

/// A finitely supported law stored as integer counts over a fixed support, so every
/// probability is an exact multiple of `1 / total`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalDist {
    support: Support,
    counts: Vec<u64>,
    total: u64,
}

impl EmpiricalDist {
    pub fn from_counts(support: Support, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != support.len() {
            return Err(invalid!("{:?} needs {} counts, got {}", support, support.len(), counts.len()));
        }
        let total = counts.iter().sum();
        Ok(Self { support, counts, total })
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Number of samples.
    pub fn count(&self) -> u64 {
        self.total
    }

    /// Set when no samples were observed; all probabilities are then zero.
    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn prob(&self, k: usize) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.counts[k] as f64 / self.total as f64
        }
    }

    pub fn probs(&self) -> Vec<f64> {
        (0..self.counts.len()).map(|k| self.prob(k)).collect()
    }

    /// Probability of the signed outcome `r` in `{-1, 0, 1}`.
    pub fn prob_signed(&self, r: i8) -> f64 {
        debug_assert_eq!(self.support, Support::Signed);
        self.prob((r + 1) as usize)
    }

    /// `max_k |p_k - q_k|`.
    pub fn sup_distance(&self, other: &EmpiricalDist) -> f64 {
        debug_assert_eq!(self.support, other.support);
        (0..self.counts.len()).map(|k| libm::fabs(self.prob(k) - other.prob(k))).fold(0.0, f64::max)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for EmpiricalDist {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("EmpiricalDist", 4)?;
        st.serialize_field("support", &self.support)?;
        st.serialize_field("probs", &self.probs())?;
        st.serialize_field("count", &self.total)?;
        st.serialize_field("empty", &self.is_empty())?;
        st.end()
    }
}

fn check_fits(x: &BinarySequence, y: &BinarySequence, a: &Alignment) -> Result<()> {
    a.check_fits(x.len(), y.len())
}

/// Frequencies of `(x_i, y_{xi(i)})` over `i in 1..=m`.
pub fn pair_empirical(x: &BinarySequence, y: &BinarySequence, xi: &Alignment) -> Result<EmpiricalDist> {
    check_fits(x, y, xi)?;
    let mut counts = vec![0u64; 4];
    for (&a, &j) in x.bits().iter().zip(xi.images()) {
        counts[(2 * a + y.bits()[j - 1]) as usize] += 1;
    }
    EmpiricalDist::from_counts(Support::Pairs, counts)
}

/// Per-position values of `R` for an ordered pair `xi <= lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RSequence {
    pub values: Vec<i8>,
    /// `agree_mask[i - 1]` is `xi(i) == lambda(i)`.
    pub agree_mask: Vec<bool>,
}

/// Where `xi(i) == lambda(i)`: `+1` on a mismatch, `-1` on a match.
/// Where they differ: `0` if `y_{xi(i)} != y_{lambda(i)}`, otherwise `+1` / `-1` as
/// `x_i` mismatches / matches the common symbol.
pub fn r_sequence(x: &BinarySequence, y: &BinarySequence, xi: &Alignment, lambda: &Alignment) -> Result<RSequence> {
    check_fits(x, y, xi)?;
    check_fits(x, y, lambda)?;
    if !xi.le_pointwise(lambda) {
        return Err(invalid!("R variables need xi <= lambda pointwise"));
    }
    let yb = y.bits();
    let mut values = Vec::with_capacity(x.len());
    let mut agree_mask = Vec::with_capacity(x.len());
    for ((&xv, &a), &b) in x.bits().iter().zip(xi.images()).zip(lambda.images()) {
        let (ya, yb_) = (yb[a - 1], yb[b - 1]);
        let r = if a == b || ya == yb_ {
            if xv != ya {
                1
            } else {
                -1
            }
        } else {
            0
        };
        values.push(r);
        agree_mask.push(a == b);
    }
    Ok(RSequence { values, agree_mask })
}

/// Which index set an empirical law of `R` is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "lowercase"))]
pub enum RMode {
    Agree,
    Disag,
    Unif,
}

pub fn r_empirical(rs: &RSequence, mode: RMode) -> EmpiricalDist {
    let mut counts = vec![0u64; 3];
    for (&r, &agree) in rs.values.iter().zip(&rs.agree_mask) {
        let keep = match mode {
            RMode::Agree => agree,
            RMode::Disag => !agree,
            RMode::Unif => true,
        };
        if keep {
            counts[(r + 1) as usize] += 1;
        }
    }
    EmpiricalDist::from_counts(Support::Signed, counts).expect("three counts")
}

/// `J_agree`: `+-1` with probability 1/2 each. `J_disag = J_unif`: `+-1` with 1/4, `0` with 1/2.
pub fn reference_law(mode: RMode) -> EmpiricalDist {
    let counts = match mode {
        RMode::Agree => vec![2, 0, 2],
        RMode::Disag | RMode::Unif => vec![1, 2, 1],
    };
    EmpiricalDist::from_counts(Support::Signed, counts).expect("three counts")
}

/// Where `d(xi, lambda)` falls relative to `m epsilon` and `m (1 - epsilon)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "kebab-case"))]
pub enum Regime {
    /// `d < m epsilon`: no pair event applies.
    SmallDisagreement,
    /// `m epsilon <= d <= m (1 - epsilon)`: `F` and `G` apply.
    Mid,
    /// `d > m (1 - epsilon)` (and `d >= m epsilon`): `H` applies.
    LargeDisagreement,
}

pub fn regime(d: usize, m: usize, epsilon: f64) -> Regime {
    let (d, m) = (d as f64, m as f64);
    if d < m * epsilon {
        Regime::SmallDisagreement
    } else if d <= m * (1.0 - epsilon) {
        Regime::Mid
    } else {
        Regime::LargeDisagreement
    }
}

/// Event memberships of one sample, evaluated on its extremal pair.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EventMembership {
    pub e_xi: bool,
    pub e_lambda: bool,
    /// `e_xi && e_lambda`, the per-sample stand-in for the intersection over all alignments.
    #[cfg_attr(feature = "serde", serde(rename = "E"))]
    pub e: bool,
    #[cfg_attr(feature = "serde", serde(rename = "F"))]
    pub f: Option<bool>,
    #[cfg_attr(feature = "serde", serde(rename = "G"))]
    pub g: Option<bool>,
    #[cfg_attr(feature = "serde", serde(rename = "H"))]
    pub h: Option<bool>,
    pub regime: Regime,
    pub d: usize,
}

fn uniform_pairs() -> EmpiricalDist {
    EmpiricalDist::from_counts(Support::Pairs, vec![1, 1, 1, 1]).expect("four counts")
}

pub fn event_membership(
    x: &BinarySequence,
    y: &BinarySequence,
    pair: &ExtremalPair,
    delta: f64,
    epsilon: f64,
) -> Result<EventMembership> {
    let th = eps_thresholds(delta, epsilon)?;
    let uniform = uniform_pairs();
    let e_xi = pair_empirical(x, y, &pair.xi)?.sup_distance(&uniform) < th.eps1;
    let e_lambda = pair_empirical(x, y, &pair.lambda)?.sup_distance(&uniform) < th.eps1;

    let m = pair.m();
    let d = pair.xi.distance(&pair.lambda);
    let regime = regime(d, m, epsilon);
    let (mut f, mut g, mut h) = (None, None, None);
    if regime != Regime::SmallDisagreement {
        let rs = r_sequence(x, y, &pair.xi, &pair.lambda)?;
        let dev = |mode| r_empirical(&rs, mode).sup_distance(&reference_law(mode));
        match regime {
            Regime::Mid => {
                f = Some(dev(RMode::Agree) < th.eps2);
                g = Some(dev(RMode::Disag) < th.eps3);
            }
            Regime::LargeDisagreement => {
                h = Some(dev(RMode::Unif) < th.eps4 + 2.0 * epsilon);
            }
            Regime::SmallDisagreement => unreachable!(),
        }
    }
    Ok(EventMembership { e_xi, e_lambda, e: e_xi && e_lambda, f, g, h, regime, d })
}

/// Integer tallies behind the five statement fractions. Adding two tallies pools the
/// underlying index sets.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct StatementCounts {
    pub agree: u64,
    /// agreement points with `x_i != y_{lambda(i)}`
    pub agree_mismatch: u64,
    pub disag: u64,
    /// disagreement points with `y_{xi(i)} != y_{lambda(i)}`
    pub disag_ydiff: u64,
    /// disagreement points with `x_i != y_{xi(i)} = y_{lambda(i)}`
    pub disag_mismatch: u64,
    /// disagreement points with `x_i = y_{xi(i)} = y_{lambda(i)}`
    pub disag_match: u64,
    /// counts of `(x_i, y_{xi(i)})` in `Support::Pairs` order
    pub pairs: [u64; 4],
}

impl core::ops::AddAssign for StatementCounts {
    fn add_assign(&mut self, o: Self) {
        self.agree += o.agree;
        self.agree_mismatch += o.agree_mismatch;
        self.disag += o.disag;
        self.disag_ydiff += o.disag_ydiff;
        self.disag_mismatch += o.disag_mismatch;
        self.disag_match += o.disag_match;
        for k in 0..4 {
            self.pairs[k] += o.pairs[k];
        }
    }
}

/// The fractions named in statements i) to v); `None` on an empty index set.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct StatementReport {
    pub stmt_i: Option<f64>,
    pub stmt_ii: Option<f64>,
    pub stmt_iii: Option<f64>,
    pub stmt_iv: Option<f64>,
    /// `(0,0), (0,1), (1,0), (1,1)` cells of the pair law under `xi`.
    pub stmt_v: Option<[f64; 4]>,
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

impl StatementCounts {
    pub fn report(&self) -> StatementReport {
        let pair_total: u64 = self.pairs.iter().sum();
        StatementReport {
            stmt_i: ratio(self.agree_mismatch, self.agree),
            stmt_ii: ratio(self.disag_ydiff, self.disag),
            stmt_iii: ratio(self.disag_mismatch, self.disag),
            stmt_iv: ratio(self.disag_match, self.disag),
            stmt_v: (pair_total > 0).then(|| {
                let t = pair_total as f64;
                [self.pairs[0] as f64 / t, self.pairs[1] as f64 / t, self.pairs[2] as f64 / t, self.pairs[3] as f64 / t]
            }),
        }
    }
}

pub fn statement_counts(x: &BinarySequence, y: &BinarySequence, pair: &ExtremalPair) -> Result<StatementCounts> {
    check_fits(x, y, &pair.xi)?;
    check_fits(x, y, &pair.lambda)?;
    let yb = y.bits();
    let mut c = StatementCounts::default();
    for ((&xv, &a), &b) in x.bits().iter().zip(pair.xi.images()).zip(pair.lambda.images()) {
        let (ya, yl) = (yb[a - 1], yb[b - 1]);
        c.pairs[(2 * xv + ya) as usize] += 1;
        if a == b {
            c.agree += 1;
            c.agree_mismatch += (xv != yl) as u64;
        } else {
            c.disag += 1;
            if ya != yl {
                c.disag_ydiff += 1;
            } else if xv != ya {
                c.disag_mismatch += 1;
            } else {
                c.disag_match += 1;
            }
        }
    }
    Ok(c)
}

/// Statement fractions i) to v) of a single instance.
pub fn statement_checks(x: &BinarySequence, y: &BinarySequence, pair: &ExtremalPair) -> Result<StatementReport> {
    Ok(statement_counts(x, y, pair)?.report())
}

/// Upper bound on `P[U >= m epsilon]` assembled from the thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundReport {
    pub numerator: f64,
    pub denominator: f64,
    pub raw: f64,
    /// `raw` clipped to `[0, 1]`; absent when the bound is vacuous.
    pub clamped: Option<f64>,
    pub vacuous: bool,
}

/// ```text
/// numerator   = 4 eps1 + 8 e^{-nH}
/// denominator = [1/2 - 3 max(eps4 + 2 epsilon, eps3)] epsilon
///             + min[1/2 - 3 (eps4 + 2 epsilon), -2 eps2] (1 - epsilon)
/// raw         = numerator / denominator + 10 e^{-nH}
/// ```
/// The bound is vacuous when the denominator is not positive or `raw >= 1`.
pub fn theorem_bound(n: usize, delta: f64, epsilon: f64) -> Result<BoundReport> {
    if n == 0 {
        return Err(domain!("n must be positive"));
    }
    let th = eps_thresholds(delta, epsilon)?;
    let tail = libm::exp(-(n as f64) * entropy(delta)?);
    let numerator = 4.0 * th.eps1 + 8.0 * tail;
    let h_margin = th.eps4 + 2.0 * epsilon;
    let denominator =
        (0.5 - 3.0 * h_margin.max(th.eps3)) * epsilon + (0.5 - 3.0 * h_margin).min(-2.0 * th.eps2) * (1.0 - epsilon);
    let raw = numerator / denominator + 10.0 * tail;
    // NaN counts as vacuous.
    let vacuous = denominator.is_nan() || denominator <= 0.0 || raw.is_nan() || raw >= 1.0;
    let clamped = (!vacuous).then(|| raw.clamp(0.0, 1.0));
    Ok(BoundReport { numerator, denominator, raw, clamped, vacuous })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::solve;
    use proptest::prelude::*;

    fn seq(s: &str) -> BinarySequence {
        s.parse().unwrap()
    }

    fn example_one() -> (BinarySequence, BinarySequence, ExtremalPair) {
        let (x, y) = (seq("001110"), seq("11110011"));
        let pair = solve(&x, &y).unwrap();
        (x, y, pair)
    }

    #[test]
    fn entropy_values() {
        assert!((entropy(0.5).unwrap() - core::f64::consts::LN_2).abs() < 1e-15);
        assert!((entropy(0.25).unwrap() - 0.562335).abs() < 1e-6);
        assert!((entropy(0.1).unwrap() - 0.325083).abs() < 1e-6);
        assert!((entropy(0.1).unwrap() - entropy(0.9).unwrap()).abs() < 1e-15);
        assert!(entropy(0.0).is_err());
        assert!(entropy(1.0).is_err());
        assert!(entropy(-0.3).is_err());
    }

    #[test]
    fn threshold_values() {
        let t = eps_thresholds(0.25, 0.3).unwrap();
        assert!((t.eps1 - 1.29884).abs() < 1e-5, "{}", t.eps1);
        let t = eps_thresholds(0.1, 0.5).unwrap();
        assert!((t.eps2 - 1.0410).abs() < 1e-4, "{}", t.eps2);
        assert!(eps_thresholds(0.1, 0.0).is_err());
        assert!(eps_thresholds(0.1, 1.0).is_err());
    }

    #[test]
    fn thresholds_shrink_with_delta() {
        let a = eps_thresholds(1e-2, 0.1).unwrap();
        let b = eps_thresholds(1e-4, 0.1).unwrap();
        let c = eps_thresholds(1e-6, 0.1).unwrap();
        for (p, q) in [(a, b), (b, c)] {
            assert!(q.eps1 < p.eps1 && q.eps2 < p.eps2 && q.eps3 < p.eps3 && q.eps4 < p.eps4);
        }
        assert!(c.eps1 < 0.01 && c.eps3 < 0.03);
    }

    #[test]
    fn pair_law_of_worked_example() {
        let (x, y, _) = example_one();
        let d = pair_empirical(&x, &y, &Alignment::identity(6).unwrap()).unwrap();
        assert_eq!(d.counts(), &[1, 2, 1, 2]);
        assert_eq!(d.count(), 6);
    }

    #[test]
    fn pair_law_all_zero() {
        let d = pair_empirical(&seq("00"), &seq("000"), &"1,2".parse().unwrap()).unwrap();
        assert_eq!(d.probs(), vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn r_values_of_worked_example() {
        let (x, y, pair) = example_one();
        let rs = r_sequence(&x, &y, &pair.xi, &pair.lambda).unwrap();
        // positions 1,2 mismatch, 3,4 match under the common image; 5,6 have y_xi != y_lambda
        assert_eq!(rs.values, vec![1, 1, -1, -1, 0, 0]);
        assert_eq!(rs.agree_mask, vec![true, true, true, true, false, false]);
        let disag = r_empirical(&rs, RMode::Disag);
        assert_eq!(disag.probs(), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn r_sequence_disagreement_mismatch_is_plus_one() {
        // x_1 = 1, y_1 = y_2 = 0, xi(1) = 1, lambda(1) = 2
        let rs = r_sequence(&seq("1"), &seq("00"), &"1".parse().unwrap(), &"2".parse().unwrap()).unwrap();
        assert_eq!(rs.values, vec![1]);
        let rs = r_sequence(&seq("0"), &seq("00"), &"1".parse().unwrap(), &"2".parse().unwrap()).unwrap();
        assert_eq!(rs.values, vec![-1]);
    }

    #[test]
    fn r_sequence_requires_order() {
        let err = r_sequence(&seq("1"), &seq("00"), &"2".parse().unwrap(), &"1".parse().unwrap());
        assert!(err.is_err());
    }

    #[test]
    fn empty_index_set_is_flagged() {
        let (x, y) = (seq("0101"), seq("010111"));
        let a = Alignment::identity(4).unwrap();
        let rs = r_sequence(&x, &y, &a, &a).unwrap();
        let d = r_empirical(&rs, RMode::Disag);
        assert!(d.is_empty());
        assert_eq!(d.probs(), vec![0.0; 3]);
    }

    #[test]
    fn reference_laws() {
        assert_eq!(reference_law(RMode::Agree).probs(), vec![0.5, 0.0, 0.5]);
        assert_eq!(reference_law(RMode::Disag).probs(), vec![0.25, 0.5, 0.25]);
        assert_eq!(reference_law(RMode::Unif), reference_law(RMode::Disag));
    }

    #[test]
    fn e_is_forced_when_eps1_exceeds_three_quarters() {
        let (x, y, pair) = example_one();
        let ev = event_membership(&x, &y, &pair, 0.25, 0.1).unwrap();
        assert!(ev.e && ev.e_xi && ev.e_lambda);
    }

    #[test]
    fn identical_pair_has_no_pair_events() {
        let (x, y) = (seq("1111"), seq("111100"));
        let pair = solve(&x, &y).unwrap();
        assert_eq!(pair.u_count, 0);
        let ev = event_membership(&x, &y, &pair, 0.3, 0.2).unwrap();
        assert_eq!(ev.regime, Regime::SmallDisagreement);
        assert_eq!((ev.f, ev.g, ev.h), (None, None, None));
    }

    #[test]
    fn regimes() {
        assert_eq!(regime(0, 10, 0.2), Regime::SmallDisagreement);
        assert_eq!(regime(2, 10, 0.2), Regime::Mid);
        assert_eq!(regime(8, 10, 0.2), Regime::Mid);
        assert_eq!(regime(9, 10, 0.2), Regime::LargeDisagreement);
        // epsilon > 1/2 leaves no mid band
        assert_eq!(regime(5, 10, 0.6), Regime::SmallDisagreement);
        assert_eq!(regime(6, 10, 0.6), Regime::LargeDisagreement);
    }

    #[test]
    fn statements_of_worked_example() {
        let (x, y, pair) = example_one();
        let r = statement_checks(&x, &y, &pair).unwrap();
        assert_eq!(r.stmt_ii, Some(1.0));
        assert_eq!(r.stmt_iii, Some(0.0));
        assert_eq!(r.stmt_iv, Some(0.0));
        // agreement points 1..4: x = 0011 against y = 1111
        assert_eq!(r.stmt_i, Some(0.5));
        assert_eq!(r.stmt_v, Some([1.0 / 6.0, 2.0 / 6.0, 1.0 / 6.0, 2.0 / 6.0]));
    }

    #[test]
    fn statements_on_unique_alignment() {
        let (x, y) = (seq("1111"), seq("111100"));
        let pair = solve(&x, &y).unwrap();
        let r = statement_checks(&x, &y, &pair).unwrap();
        assert_eq!((r.stmt_ii, r.stmt_iii, r.stmt_iv), (None, None, None));
        assert_eq!(r.stmt_i, Some(0.0));
    }

    #[test]
    fn bound_is_vacuous_for_large_epsilon() {
        let b = theorem_bound(1_000_000, 0.1, 0.5).unwrap();
        assert!(b.denominator < 0.0);
        assert!(b.vacuous);
        assert_eq!(b.clamped, None);
    }

    #[test]
    fn bound_is_vacuous_as_delta_vanishes_at_fixed_n() {
        let b = theorem_bound(10, 1e-12, 0.05).unwrap();
        assert!(b.raw > 1.0 || b.denominator <= 0.0);
        assert!(b.vacuous);
    }

    #[test]
    fn bound_becomes_informative_for_tiny_delta_and_large_n() {
        let b = theorem_bound(1usize << 40, 1e-9, 0.05).unwrap();
        assert!(b.denominator > 0.0);
        assert!(!b.vacuous, "{b:?}");
        assert_eq!(b.clamped, Some(b.raw));
    }

    fn random_pair() -> impl Strategy<Value = (BinarySequence, BinarySequence)> {
        (3usize..60)
            .prop_flat_map(|n| (1..n, Just(n)))
            .prop_flat_map(|(m, n)| (proptest::collection::vec(0u8..2, m), proptest::collection::vec(0u8..2, n)))
            .prop_map(|(x, y)| (BinarySequence::new(x).unwrap(), BinarySequence::new(y).unwrap()))
    }

    proptest! {
        #[test]
        fn entropy_is_symmetric(d in 1e-6f64..0.999_999) {
            prop_assert!((entropy(d).unwrap() - entropy(1.0 - d).unwrap()).abs() < 1e-12);
            prop_assert!(entropy(d).unwrap() > 0.0);
        }

        #[test]
        fn empirical_laws_are_normalised((x, y) in random_pair()) {
            let pair = solve(&x, &y).unwrap();
            let rs = r_sequence(&x, &y, &pair.xi, &pair.lambda).unwrap();
            let laws = [
                pair_empirical(&x, &y, &pair.xi).unwrap(),
                r_empirical(&rs, RMode::Agree),
                r_empirical(&rs, RMode::Disag),
                r_empirical(&rs, RMode::Unif),
            ];
            for law in &laws {
                if law.is_empty() { continue; }
                let total: f64 = law.probs().iter().sum();
                prop_assert!((total - 1.0).abs() < 1e-12);
                for p in law.probs() {
                    let scaled = p * law.count() as f64;
                    prop_assert!((scaled - libm::round(scaled)).abs() < 1e-9);
                }
            }
            // count-weighted partition identity, exactly on counts
            for k in 0..3 {
                prop_assert_eq!(laws[3].counts()[k], laws[1].counts()[k] + laws[2].counts()[k]);
            }
        }

        #[test]
        fn r_zero_iff_images_differ_in_y((x, y) in random_pair()) {
            let pair = solve(&x, &y).unwrap();
            let rs = r_sequence(&x, &y, &pair.xi, &pair.lambda).unwrap();
            for i in 1..=x.len() {
                let differs = y.get(pair.xi.image(i)) != y.get(pair.lambda.image(i));
                prop_assert_eq!(rs.values[i - 1] == 0, differs);
                if rs.agree_mask[i - 1] {
                    prop_assert!(rs.values[i - 1] != 0);
                }
            }
        }
    }
}

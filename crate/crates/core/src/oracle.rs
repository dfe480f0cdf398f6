//! Exhaustive ground truth for small instances.
//!
//! Everything here enumerates the full alignment set `A(m, n)` (all `C(n, m)`
//! order-preserving injections) and is meant for desk-scale cross-checks of the DP.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{FromPrimitive, One, ToPrimitive};

use crate::alignment::{score_unchecked, Alignment};
use crate::error::{domain, invalid, Error, Result};
use crate::seq::{gapped_length, BinarySequence};
use crate::stats::entropy;

/// Default refusal threshold on `C(n, m)`.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Exact `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Yields every order-preserving injection `{1..m} -> {1..n}` once, in lexicographic
/// order of the image lists.
#[derive(Debug, Clone)]
pub struct AlignmentEnumerator {
    n: usize,
    cursor: Option<Vec<usize>>,
}

impl AlignmentEnumerator {
    fn new(m: usize, n: usize) -> Self {
        Self { n, cursor: Some((1..=m).collect()) }
    }
}

impl Iterator for AlignmentEnumerator {
    type Item = Alignment;

    fn next(&mut self) -> Option<Alignment> {
        let cur = self.cursor.as_mut()?;
        let out = Alignment::from_images_unchecked(cur.clone());
        let m = cur.len();
        // rightmost slot that can still move right
        match (0..m).rev().find(|&k| cur[k] < self.n - (m - 1 - k)) {
            Some(k) => {
                cur[k] += 1;
                for l in k + 1..m {
                    cur[l] = cur[l - 1] + 1;
                }
            }
            None => self.cursor = None,
        }
        Some(out)
    }
}

fn check_cap(m: usize, n: usize, cap: u64) -> Result<()> {
    let count = binomial(n as u64, m as u64);
    if count > BigUint::from(cap) {
        return Err(Error::ResourceLimit(alloc::format!(
            "C({n}, {m}) = {count} alignments exceeds the enumeration cap of {cap}"
        )));
    }
    Ok(())
}

/// Enumerates `A(m, n)` under the default cap.
pub fn enumerate_alignments(m: usize, n: usize) -> Result<AlignmentEnumerator> {
    enumerate_alignments_capped(m, n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_alignments_capped(m: usize, n: usize, cap: u64) -> Result<AlignmentEnumerator> {
    if m == 0 || m > n {
        return Err(invalid!("enumeration needs 1 <= m <= n, got m = {m}, n = {n}"));
    }
    check_cap(m, n, cap)?;
    Ok(AlignmentEnumerator::new(m, n))
}

/// The maximum score and every alignment attaining it, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalSet {
    pub s_star: u32,
    pub optimal: Vec<Alignment>,
}

pub fn brute_optimal_set(x: &BinarySequence, y: &BinarySequence) -> Result<OptimalSet> {
    brute_optimal_set_capped(x, y, DEFAULT_ENUMERATION_CAP)
}

pub fn brute_optimal_set_capped(x: &BinarySequence, y: &BinarySequence, cap: u64) -> Result<OptimalSet> {
    let (xb, yb) = (x.bits(), y.bits());
    let mut s_star = 0u32;
    let mut optimal = Vec::new();
    for a in enumerate_alignments_capped(x.len(), y.len(), cap)? {
        let sc = score_unchecked(xb, yb, a.images()) as u32;
        if sc > s_star || optimal.is_empty() {
            if sc > s_star {
                optimal.clear();
            }
            s_star = sc;
            optimal.push(a);
        } else if sc == s_star {
            optimal.push(a);
        }
    }
    Ok(OptimalSet { s_star, optimal })
}

impl OptimalSet {
    /// `min` and `max` of `psi(i)` over the optimal set, for every `i`.
    pub fn pointwise_bounds(&self) -> (Vec<usize>, Vec<usize>) {
        let m = self.optimal[0].len();
        let mut lo = alloc::vec![usize::MAX; m];
        let mut hi = alloc::vec![0usize; m];
        for a in &self.optimal {
            for (k, &j) in a.images().iter().enumerate() {
                lo[k] = lo[k].min(j);
                hi[k] = hi[k].max(j);
            }
        }
        (lo, hi)
    }

    /// `u[i - 1]`: some two optimal alignments send `i` to different positions.
    pub fn nonunique_mask(&self) -> Vec<bool> {
        let (lo, hi) = self.pointwise_bounds();
        lo.iter().zip(&hi).map(|(a, b)| a != b).collect()
    }
}

/// Locally-nonunique indicators computed directly from the optimal set.
pub fn brute_u(x: &BinarySequence, y: &BinarySequence) -> Result<Vec<bool>> {
    Ok(brute_optimal_set(x, y)?.nonunique_mask())
}

/// Outcome of comparing `#A(m, n) = C(n, m)` with `exp(n H(delta))`.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyBoundReport {
    pub n: usize,
    pub delta: f64,
    pub m: usize,
    pub count: BigUint,
    pub bound: f64,
    pub holds: bool,
    /// `delta < 5/6`, the range in which the counting bound is claimed.
    pub in_hypothesis: bool,
}

/// Exact count of alignments against the entropy bound. The comparison is done in
/// integers: `count <= bound` iff `count <= floor(bound)`.
///
/// Unlike [`ModelParams`](crate::seq::ModelParams), `m = 0` is accepted: the empty alignment is the only one.
pub fn entropy_bound_check(n: usize, delta: f64) -> Result<EntropyBoundReport> {
    if n == 0 {
        return Err(domain!("n must be positive"));
    }
    let h = entropy(delta)?;
    let m = gapped_length(n, delta);
    let count = binomial(n as u64, m as u64);
    let bound = libm::exp(n as f64 * h);
    let holds = match BigUint::from_f64(libm::floor(bound)) {
        Some(b) => count <= b,
        // bound overflowed to infinity
        None => bound.is_infinite(),
    };
    Ok(EntropyBoundReport { n, delta, m, count, bound, holds, in_hypothesis: delta < 5.0 / 6.0 })
}

impl EntropyBoundReport {
    pub fn count_f64(&self) -> f64 {
        self.count.to_f64().unwrap_or(f64::INFINITY)
    }
}

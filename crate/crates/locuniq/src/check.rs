//! Exhaustive agreement between the DP and brute-force enumeration.

use std::fmt;

use locuniq_core::montecarlo::EXACT_EXPECTATION_LIMIT;
use locuniq_core::oracle::brute_optimal_set;
use locuniq_core::{exact_expectation, BinarySequence, ExtremalPair, Result};

/// A disagreement found on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub x: String,
    pub y: String,
    pub what: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x={} y={}: {}", self.x, self.y, self.what)
    }
}

#[derive(Debug, Clone, Default)]
pub struct DimReport {
    pub m: usize,
    pub n: usize,
    pub instances: u64,
    pub mismatches: Vec<Mismatch>,
    /// `Some(sum)` when the full flip enumeration fits under the guard.
    pub exact_expectation: Option<i64>,
}

impl DimReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.exact_expectation.is_none_or(|s| s == 0)
    }
}

/// Compares one instance's extremal pair with the optimal set; returns what differs.
pub fn compare_instance(x: &BinarySequence, y: &BinarySequence, pair: &ExtremalPair) -> Result<Option<String>> {
    let set = brute_optimal_set(x, y)?;
    let (lo, hi) = set.pointwise_bounds();
    let brute_u = set.nonunique_mask();
    let mut problems = Vec::new();
    if pair.s_star != set.s_star {
        problems.push(format!("S* dp={} brute={}", pair.s_star, set.s_star));
    }
    if pair.xi.images() != lo.as_slice() {
        problems.push(format!("xi dp={} brute-min={:?}", pair.xi, lo));
    }
    if pair.lambda.images() != hi.as_slice() {
        problems.push(format!("lambda dp={} brute-max={:?}", pair.lambda, hi));
    }
    if !set.optimal.contains(&pair.xi) || !set.optimal.contains(&pair.lambda) {
        problems.push("extremal alignment outside the optimal set".into());
    }
    let brute_count = brute_u.iter().filter(|&&b| b).count();
    if pair.u != brute_u || pair.u_count != brute_count {
        problems.push(format!("U dp={} brute={}", pair.u_count, brute_count));
    }
    Ok((!problems.is_empty()).then(|| problems.join("; ")))
}

/// Runs every `(x, y)` in `{0,1}^m x {0,1}^n` through `solver` and the oracle.
pub fn check_dims<F>(m: usize, n: usize, solver: F) -> Result<DimReport>
where
    F: Fn(&BinarySequence, &BinarySequence) -> Result<ExtremalPair>,
{
    let mut report = DimReport { m, n, ..Default::default() };
    for ycode in 0u64..1 << n {
        let y = BinarySequence::from_code(ycode, n)?;
        for xcode in 0u64..1 << m {
            let x = BinarySequence::from_code(xcode, m)?;
            let pair = solver(&x, &y)?;
            report.instances += 1;
            if let Some(what) = compare_instance(&x, &y, &pair)? {
                report.mismatches.push(Mismatch { x: x.to_string(), y: y.to_string(), what });
            }
        }
    }
    let terms = (1u64 << (m + n)) * m as u64;
    if terms <= EXACT_EXPECTATION_LIMIT {
        report.exact_expectation = Some(exact_expectation(m, n)?);
    }
    Ok(report)
}

/// All `(m, n)` with `1 <= m < n <= max_n`.
pub fn all_dims(max_n: usize) -> Vec<(usize, usize)> {
    (2..=max_n).flat_map(|n| (1..n).map(move |m| (m, n))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use locuniq_core::solve;

    #[test]
    fn dp_passes_small_dims() {
        for (m, n) in all_dims(5) {
            let r = check_dims(m, n, solve).unwrap();
            assert!(r.passed(), "{m},{n}: {:?}", r.mismatches.first());
            assert_eq!(r.instances, 1 << (m + n));
        }
    }

    #[test]
    fn faulty_solver_is_caught() {
        let faulty = |x: &BinarySequence, y: &BinarySequence| {
            let mut p = solve(x, y)?;
            p.lambda = p.xi.clone();
            Ok(p)
        };
        let r = check_dims(2, 4, faulty).unwrap();
        assert!(!r.passed());
        assert!(r.mismatches.iter().any(|mm| mm.what.contains("lambda")));
    }

    #[test]
    fn dims_listing() {
        assert_eq!(all_dims(3), vec![(1, 2), (1, 3), (2, 3)]);
        assert!(all_dims(1).is_empty());
    }
}

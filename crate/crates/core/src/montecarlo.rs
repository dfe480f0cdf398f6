//! Seeded sampling of `(X, Y)`, per-trial measurements and their aggregation.
//!
//! Trial `k` of an experiment draws from `ChaCha8Rng::seed_from_u64(seed)` switched to
//! stream `k`, so its randomness depends on `(seed, k)` only. Within a trial the draws
//! happen in a fixed order:
//!
//! 1. `X`: `ceil(m / 64)` words from `next_u64`, bit `b` of word `w` is `X_{64w + b + 1}`;
//! 2. `Y`: `ceil(n / 64)` words, same layout;
//! 3. `T`: `random_range(1..=m)`.
//!
//! [`Accumulator`] holds integer tallies only, so merging partial results in any order
//! gives bit-identical summaries.

use alloc::vec::Vec;
use core::ops::Range;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dp::{linear_score_bits, solve};
use crate::error::{domain, Error, Result};
use crate::flip::{delta_score_with_pair, draw_index, FlipCategory, FlipOutcome};
use crate::seq::{BinarySequence, ModelParams};
use crate::stats::{
    event_membership, statement_counts, theorem_bound, BoundReport, EventMembership, StatementCounts, StatementReport,
};

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ExperimentConfig {
    pub n: usize,
    pub delta: f64,
    pub epsilon: f64,
    pub trials: u64,
    pub seed: u64,
    pub collect_events: bool,
    pub collect_statements: bool,
}

impl ExperimentConfig {
    pub fn new(n: usize, delta: f64, epsilon: f64, trials: u64, seed: u64) -> Self {
        Self { n, delta, epsilon, trials, seed, collect_events: false, collect_statements: false }
    }

    pub fn with_events(mut self, on: bool) -> Self {
        self.collect_events = on;
        self
    }

    pub fn with_statements(mut self, on: bool) -> Self {
        self.collect_statements = on;
        self
    }

    /// Checks every domain and returns the derived lengths.
    pub fn validate(&self) -> Result<ModelParams> {
        if self.trials == 0 {
            return Err(domain!("trials must be at least 1"));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(domain!("epsilon must lie in (0, 1), got {}", self.epsilon));
        }
        ModelParams::new(self.n, self.delta)
    }
}

/// The generator used for trial `trial_index`.
pub fn trial_rng(seed: u64, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial_index);
    rng
}

/// `len` fair bits, 64 per `next_u64` word, least significant bit first.
pub fn draw_bits<R: RngCore + ?Sized>(len: usize, rng: &mut R) -> BinarySequence {
    let mut bits = Vec::with_capacity(len);
    while bits.len() < len {
        let word = rng.next_u64();
        let take = (len - bits.len()).min(64);
        bits.extend((0..take).map(|b| ((word >> b) & 1) as u8));
    }
    BinarySequence::new(bits).expect("len >= 1")
}

/// Measurements of a single sample.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TrialRecord {
    pub trial_index: u64,
    pub m: usize,
    pub s_star: u32,
    #[cfg_attr(feature = "serde", serde(rename = "U"))]
    pub u: usize,
    pub u_fraction: f64,
    pub flip: FlipOutcome,
    pub events: Option<EventMembership>,
    pub statements: Option<StatementCounts>,
}

/// Draws `(X, Y, T)` for trial `trial_index` and measures everything.
pub fn run_trial(config: &ExperimentConfig, trial_index: u64) -> Result<TrialRecord> {
    let params = config.validate()?;
    run_trial_with(config, &params, trial_index)
}

fn run_trial_with(config: &ExperimentConfig, params: &ModelParams, trial_index: u64) -> Result<TrialRecord> {
    let mut rng = trial_rng(config.seed, trial_index);
    let x = draw_bits(params.m(), &mut rng);
    let y = draw_bits(params.n(), &mut rng);
    let t = draw_index(params.m(), &mut rng);

    let pair = solve(&x, &y)?;
    let flip = delta_score_with_pair(&x, &y, &pair, t)?;
    let events =
        if config.collect_events { Some(event_membership(&x, &y, &pair, config.delta, config.epsilon)?) } else { None };
    let statements = if config.collect_statements { Some(statement_counts(&x, &y, &pair)?) } else { None };
    Ok(TrialRecord {
        trial_index,
        m: params.m(),
        s_star: pair.s_star,
        u: pair.u_count,
        u_fraction: pair.u_count as f64 / params.m() as f64,
        flip,
        events,
        statements,
    })
}

/// `true` when `u >= m epsilon`.
pub fn exceeds(u: usize, m: usize, epsilon: f64) -> bool {
    u as f64 >= m as f64 * epsilon
}

/// Fraction of the given `U` values with `U >= m epsilon`.
pub fn exceedance_fraction(us: &[usize], m: usize, epsilon: f64) -> f64 {
    if us.is_empty() {
        return 0.0;
    }
    us.iter().filter(|&&u| exceeds(u, m, epsilon)).count() as f64 / us.len() as f64
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct EventTally {
    samples: u64,
    e: u64,
    f_applicable: u64,
    f: u64,
    g: u64,
    h_applicable: u64,
    h: u64,
}

/// Mergeable integer tallies over a set of trials.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Accumulator {
    trials: u64,
    sum_delta: i64,
    sum_delta_sq: u64,
    exceed: u64,
    sum_u: u64,
    category_count: [u64; 5],
    category_sum: [i64; 5],
    events: EventTally,
    statements: Option<StatementCounts>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn push(&mut self, rec: &TrialRecord, epsilon: f64) {
        let d = rec.flip.delta as i64;
        self.trials += 1;
        self.sum_delta += d;
        self.sum_delta_sq += (d * d) as u64;
        self.exceed += exceeds(rec.u, rec.m, epsilon) as u64;
        self.sum_u += rec.u as u64;
        let c = rec.flip.category.index();
        self.category_count[c] += 1;
        self.category_sum[c] += d;
        if let Some(ev) = &rec.events {
            let t = &mut self.events;
            t.samples += 1;
            t.e += ev.e as u64;
            if let (Some(f), Some(g)) = (ev.f, ev.g) {
                t.f_applicable += 1;
                t.f += f as u64;
                t.g += g as u64;
            }
            if let Some(h) = ev.h {
                t.h_applicable += 1;
                t.h += h as u64;
            }
        }
        if let Some(sc) = rec.statements {
            *self.statements.get_or_insert_with(StatementCounts::default) += sc;
        }
    }

    /// Counts of `Delta = -1, 0, +1`, recovered from the first two moments.
    pub fn delta_histogram(&self) -> [u64; 3] {
        let nonzero = self.sum_delta_sq;
        let pos = ((nonzero as i64 + self.sum_delta) / 2) as u64;
        let neg = nonzero - pos;
        [neg, self.trials - nonzero, pos]
    }

    pub fn merge(&mut self, o: &Accumulator) {
        self.trials += o.trials;
        self.sum_delta += o.sum_delta;
        self.sum_delta_sq += o.sum_delta_sq;
        self.exceed += o.exceed;
        self.sum_u += o.sum_u;
        for k in 0..5 {
            self.category_count[k] += o.category_count[k];
            self.category_sum[k] += o.category_sum[k];
        }
        let (a, b) = (&mut self.events, &o.events);
        a.samples += b.samples;
        a.e += b.e;
        a.f_applicable += b.f_applicable;
        a.f += b.f;
        a.g += b.g;
        a.h_applicable += b.h_applicable;
        a.h += b.h;
        if let Some(sc) = o.statements {
            *self.statements.get_or_insert_with(StatementCounts::default) += sc;
        }
    }

    pub fn finish(&self, config: &ExperimentConfig) -> Result<Summary> {
        let params = config.validate()?;
        if self.trials == 0 {
            return Err(domain!("no trials were accumulated"));
        }
        let nt = self.trials as f64;
        let mean_delta = self.sum_delta as f64 / nt;
        let stderr_delta = if self.trials > 1 {
            let ss = self.sum_delta_sq as f64 - (self.sum_delta as f64) * (self.sum_delta as f64) / nt;
            libm::sqrt((ss / (nt - 1.0)).max(0.0) / nt)
        } else {
            0.0
        };
        let p_hat = self.exceed as f64 / nt;
        let (ci_lo, ci_hi) = wilson_interval(self.exceed, self.trials);
        let categories = FlipCategory::ALL.map(|c| {
            let k = c.index();
            CategoryStat {
                category: c,
                count: self.category_count[k],
                mean_delta: (self.category_count[k] > 0)
                    .then(|| self.category_sum[k] as f64 / self.category_count[k] as f64),
            }
        });
        let t = &self.events;
        let events = (t.samples > 0).then(|| EventFrequencies {
            samples: t.samples,
            e: t.e as f64 / t.samples as f64,
            f_applicable: t.f_applicable,
            f: (t.f_applicable > 0).then(|| t.f as f64 / t.f_applicable as f64),
            g: (t.f_applicable > 0).then(|| t.g as f64 / t.f_applicable as f64),
            h_applicable: t.h_applicable,
            h: (t.h_applicable > 0).then(|| t.h as f64 / t.h_applicable as f64),
        });
        Ok(Summary {
            n: config.n,
            delta: config.delta,
            epsilon: config.epsilon,
            trials: self.trials,
            seed: config.seed,
            m: params.m(),
            mean_delta,
            stderr_delta,
            p_hat,
            ci_lo,
            ci_hi,
            mean_u_fraction: self.sum_u as f64 / (nt * params.m() as f64),
            delta_histogram: self.delta_histogram(),
            categories,
            events,
            statements: self.statements.map(|s| s.report()),
            bound: theorem_bound(config.n, config.delta, config.epsilon)?,
        })
    }
}

/// Wilson score interval at 95% for `k` successes out of `n`.
pub fn wilson_interval(k: u64, n: u64) -> (f64, f64) {
    let nf = n as f64;
    let p = k as f64 / nf;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / nf;
    let center = (p + z2 / (2.0 * nf)) / denom;
    let half = Z95 / denom * libm::sqrt(p * (1.0 - p) / nf + z2 / (4.0 * nf * nf));
    ((center - half).max(0.0).min(p), (center + half).min(1.0).max(p))
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CategoryStat {
    pub category: FlipCategory,
    pub count: u64,
    pub mean_delta: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EventFrequencies {
    pub samples: u64,
    #[cfg_attr(feature = "serde", serde(rename = "E"))]
    pub e: f64,
    pub f_applicable: u64,
    #[cfg_attr(feature = "serde", serde(rename = "F"))]
    pub f: Option<f64>,
    #[cfg_attr(feature = "serde", serde(rename = "G"))]
    pub g: Option<f64>,
    pub h_applicable: u64,
    #[cfg_attr(feature = "serde", serde(rename = "H"))]
    pub h: Option<f64>,
}

/// Aggregate of one experiment.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Summary {
    pub n: usize,
    pub delta: f64,
    pub epsilon: f64,
    pub trials: u64,
    pub seed: u64,
    pub m: usize,
    pub mean_delta: f64,
    pub stderr_delta: f64,
    /// fraction of trials with `U >= m epsilon`
    pub p_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub mean_u_fraction: f64,
    /// trials with `Delta = -1, 0, +1`
    pub delta_histogram: [u64; 3],
    pub categories: [CategoryStat; 5],
    pub events: Option<EventFrequencies>,
    pub statements: Option<StatementReport>,
    pub bound: BoundReport,
}

impl Summary {
    pub fn category(&self, c: FlipCategory) -> &CategoryStat {
        &self.categories[c.index()]
    }
}

/// Runs trials `range` of `config` serially into a fresh accumulator.
pub fn accumulate_range(config: &ExperimentConfig, range: Range<u64>) -> Result<Accumulator> {
    let params = config.validate()?;
    let mut acc = Accumulator::new();
    for k in range {
        acc.push(&run_trial_with(config, &params, k)?, config.epsilon);
    }
    Ok(acc)
}

/// Serial experiment over all `config.trials` trials.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Summary> {
    accumulate_range(config, 0..config.trials)?.finish(config)
}

/// Runs every configuration in order.
pub fn sweep(configs: &[ExperimentConfig]) -> Result<Vec<Summary>> {
    configs.iter().map(run_experiment).collect()
}

/// Largest `2^m 2^n m` accepted by [`exact_expectation`].
pub const EXACT_EXPECTATION_LIMIT: u64 = 1_000_000;

/// Sum of `S*(x~, y) - S*(x, y)` over every `(x, y, t)` in `{0,1}^m x {0,1}^n x {1..m}`.
pub fn exact_expectation(m: usize, n: usize) -> Result<i64> {
    if m == 0 || m >= n {
        return Err(domain!("need 1 <= m < n, got m = {m}, n = {n}"));
    }
    let terms =
        1u128.checked_shl((m + n) as u32).map(|p| p * m as u128).filter(|&t| t <= EXACT_EXPECTATION_LIMIT as u128);
    if terms.is_none() {
        return Err(Error::ResourceLimit(alloc::format!(
            "2^{m} * 2^{n} * {m} terms exceeds the limit of {EXACT_EXPECTATION_LIMIT}"
        )));
    }
    let mut total = 0i64;
    let mut xb = alloc::vec![0u8; m];
    let mut yb = alloc::vec![0u8; n];
    for ycode in 0u64..1 << n {
        for (j, b) in yb.iter_mut().enumerate() {
            *b = ((ycode >> j) & 1) as u8;
        }
        for xcode in 0u64..1 << m {
            for (i, b) in xb.iter_mut().enumerate() {
                *b = ((xcode >> i) & 1) as u8;
            }
            let before = linear_score_bits(&xb, &yb) as i64;
            for t in 0..m {
                xb[t] ^= 1;
                total += linear_score_bits(&xb, &yb) as i64 - before;
                xb[t] ^= 1;
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trials_are_deterministic() {
        let cfg = ExperimentConfig::new(60, 0.2, 0.2, 10, 99).with_events(true).with_statements(true);
        assert_eq!(run_trial(&cfg, 4).unwrap(), run_trial(&cfg, 4).unwrap());
        assert_ne!(run_trial(&cfg, 4).unwrap(), run_trial(&cfg, 5).unwrap());
    }

    #[test]
    fn worked_example_lengths() {
        let cfg = ExperimentConfig::new(8, 0.25, 0.2, 20, 1);
        for k in 0..20 {
            assert_eq!(run_trial(&cfg, k).unwrap().m, 6);
        }
        let cfg = ExperimentConfig::new(100, 0.5, 0.2, 5, 1);
        for k in 0..5 {
            let r = run_trial(&cfg, k).unwrap();
            assert_eq!(r.m, 50);
            assert!(r.u <= 50);
            assert!((0.0..=1.0).contains(&r.u_fraction));
        }
    }

    #[test]
    fn single_trial_summary_matches_record() {
        let cfg = ExperimentConfig::new(40, 0.1, 0.1, 1, 5);
        let rec = run_trial(&cfg, 0).unwrap();
        let s = run_experiment(&cfg).unwrap();
        assert_eq!(s.mean_delta, rec.flip.delta as f64);
        assert_eq!(s.stderr_delta, 0.0);
        assert_eq!(s.mean_u_fraction, rec.u_fraction);
        assert_eq!(s.p_hat, exceeds(rec.u, rec.m, 0.1) as u8 as f64);
        assert_eq!(s.category(rec.flip.category).count, 1);
        assert_eq!(s.delta_histogram[(rec.flip.delta + 1) as usize], 1);
    }

    #[test]
    fn merge_order_does_not_matter() {
        let cfg = ExperimentConfig::new(50, 0.2, 0.3, 30, 11).with_events(true).with_statements(true);
        let whole = accumulate_range(&cfg, 0..30).unwrap();
        let mut a = accumulate_range(&cfg, 20..30).unwrap();
        a.merge(&accumulate_range(&cfg, 0..7).unwrap());
        a.merge(&accumulate_range(&cfg, 7..20).unwrap());
        assert_eq!(a, whole);
        assert_eq!(a.finish(&cfg).unwrap(), whole.finish(&cfg).unwrap());
    }

    #[test]
    fn exact_expectation_is_zero() {
        assert_eq!(exact_expectation(2, 3).unwrap(), 0);
        assert_eq!(exact_expectation(3, 4).unwrap(), 0);
        assert_eq!(exact_expectation(4, 6).unwrap(), 0);
        assert!(matches!(exact_expectation(10, 20), Err(Error::ResourceLimit(_))));
        assert!(exact_expectation(3, 3).is_err());
    }

    #[test]
    fn wilson_contains_estimate() {
        for (k, n) in [(0, 10), (10, 10), (3, 17), (500, 1000)] {
            let (lo, hi) = wilson_interval(k, n);
            let p = k as f64 / n as f64;
            assert!(lo <= p && p <= hi && 0.0 <= lo && hi <= 1.0);
        }
    }

    #[test]
    fn exceedance_is_monotone_in_epsilon() {
        let cfg = ExperimentConfig::new(80, 0.2, 0.1, 40, 3);
        let us: Vec<usize> = (0..40).map(|k| run_trial(&cfg, k).unwrap().u).collect();
        let m = 64;
        let mut last = 1.0;
        for e in [0.01, 0.05, 0.1, 0.2, 0.4, 0.8] {
            let p = exceedance_fraction(&us, m, e);
            assert!(p <= last);
            last = p;
        }
    }

    #[test]
    fn invalid_configs() {
        assert!(ExperimentConfig::new(10, 0.2, 0.2, 0, 1).validate().is_err());
        assert!(ExperimentConfig::new(10, 0.2, 1.0, 1, 1).validate().is_err());
        assert!(ExperimentConfig::new(10, 1.5, 0.2, 1, 1).validate().is_err());
        assert!(sweep(&[]).unwrap().is_empty());
    }

    #[test]
    fn bit_layout_is_lsb_first() {
        let mut a = trial_rng(5, 0);
        let mut b = trial_rng(5, 0);
        let word = a.next_u64();
        let s = draw_bits(70, &mut b);
        for k in 0..64 {
            assert_eq!(s.get(k + 1) as u64, (word >> k) & 1);
        }
    }
}

//! Multi-threaded drivers for the Monte Carlo experiments.
//!
//! Trials are cut into fixed-size chunks that do not depend on the worker count, and
//! the per-chunk accumulators hold integer tallies only, so the merged summary is
//! bit-identical for any number of threads.

use std::ops::Range;

use locuniq_core::montecarlo::{accumulate_range, run_trial, Accumulator};
use locuniq_core::{ExperimentConfig, Result, Summary, TrialRecord};
use rayon::prelude::*;

const CHUNK: u64 = 64;

fn chunks(trials: u64) -> Vec<Range<u64>> {
    (0..trials.div_ceil(CHUNK)).map(|k| k * CHUNK..((k + 1) * CHUNK).min(trials)).collect()
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build().expect("thread pool")
}

/// Runs `config` on `threads` workers.
pub fn run_experiment(config: &ExperimentConfig, threads: usize) -> Result<Summary> {
    config.validate()?;
    let acc = pool(threads).install(|| {
        chunks(config.trials).into_par_iter().map(|r| accumulate_range(config, r)).try_reduce(
            Accumulator::new,
            |mut a, b| {
                a.merge(&b);
                Ok(a)
            },
        )
    })?;
    acc.finish(config)
}

/// Every trial record of `config`, in trial order.
pub fn trial_records(config: &ExperimentConfig, threads: usize) -> Result<Vec<TrialRecord>> {
    config.validate()?;
    pool(threads).install(|| (0..config.trials).into_par_iter().map(|k| run_trial(config, k)).collect())
}

/// Runs each configuration in turn, each one parallelised over `threads` workers.
pub fn sweep(configs: &[ExperimentConfig], threads: usize) -> Result<Vec<Summary>> {
    configs.iter().map(|c| run_experiment(c, threads)).collect()
}

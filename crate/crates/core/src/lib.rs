//! Local uniqueness of optimal alignments between random binary sequences.
//!
//! `X` has length `m = floor(n - delta n)` and is aligned into `Y` of length `n` with
//! gaps in `X` only; an alignment scores one point per matched symbol. The crate
//! computes the optimal score with a banded DP, the pointwise-minimal and -maximal
//! optimal alignments (whose disagreement set is exactly the set of locally
//! nonunique positions), the score change under a single bit flip of `X`, the
//! empirical laws and events that bound that change, and seeded Monte Carlo
//! experiments over all of it.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

mod error;

pub mod alignment;
pub mod dp;
pub mod flip;
pub mod montecarlo;
pub mod oracle;
pub mod seq;
pub mod stats;

pub use alignment::{alignment_score, Alignment};
pub use dp::{
    build_score_matrix, extremal_alignments, nonuniqueness_count, optimal_score, optimal_score_linear, solve,
    ExtremalPair, ScoreMatrix,
};
pub use error::{Error, Result};
pub use flip::{delta_score, flip_at, random_flip, FlipCategory, FlipOutcome};
pub use montecarlo::{exact_expectation, run_experiment, run_trial, sweep, ExperimentConfig, Summary, TrialRecord};
pub use seq::{BinarySequence, ModelParams};

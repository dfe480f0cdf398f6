//! Flipping one bit of `X` and the resulting change of the optimal score.

use core::fmt;

use rand::{Rng, RngCore};

use crate::dp::{linear_score_bits, solve, ExtremalPair};
use crate::error::{invalid, Result};
use crate::seq::BinarySequence;

/// How the flipped index `t` sits relative to the extremal pair of the unflipped instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum FlipCategory {
    /// `xi(t) != lambda(t)` and `y_{xi(t)} != y_{lambda(t)}`
    #[cfg_attr(feature = "serde", serde(rename = "DISAG_YDIFF"))]
    DisagYdiff,
    /// `xi(t) != lambda(t)` and `x_t != y_{xi(t)} = y_{lambda(t)}`
    #[cfg_attr(feature = "serde", serde(rename = "DISAG_MISMATCH"))]
    DisagMismatch,
    /// `xi(t) != lambda(t)` and `x_t = y_{xi(t)} = y_{lambda(t)}`
    #[cfg_attr(feature = "serde", serde(rename = "DISAG_MATCH"))]
    DisagMatch,
    /// `xi(t) = lambda(t)` and `x_t != y_{xi(t)}`
    #[cfg_attr(feature = "serde", serde(rename = "AGREE_MISMATCH"))]
    AgreeMismatch,
    /// `xi(t) = lambda(t)` and `x_t = y_{xi(t)}`
    #[cfg_attr(feature = "serde", serde(rename = "AGREE_MATCH"))]
    AgreeMatch,
}

impl FlipCategory {
    pub const ALL: [FlipCategory; 5] = [
        FlipCategory::DisagYdiff,
        FlipCategory::DisagMismatch,
        FlipCategory::DisagMatch,
        FlipCategory::AgreeMismatch,
        FlipCategory::AgreeMatch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FlipCategory::DisagYdiff => "DISAG_YDIFF",
            FlipCategory::DisagMismatch => "DISAG_MISMATCH",
            FlipCategory::DisagMatch => "DISAG_MATCH",
            FlipCategory::AgreeMismatch => "AGREE_MISMATCH",
            FlipCategory::AgreeMatch => "AGREE_MATCH",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Categories in which a flip always raises the optimal score by one.
    pub fn forces_increase(self) -> bool {
        matches!(self, FlipCategory::DisagYdiff | FlipCategory::DisagMismatch)
    }

    /// Classifies 1-based index `t` of `x` against the extremal pair.
    pub fn classify(x: &BinarySequence, y: &BinarySequence, pair: &ExtremalPair, t: usize) -> Self {
        let (a, b) = (pair.xi.image(t), pair.lambda.image(t));
        let (ya, yb) = (y.get(a), y.get(b));
        let xt = x.get(t);
        if a != b {
            if ya != yb {
                FlipCategory::DisagYdiff
            } else if xt != ya {
                FlipCategory::DisagMismatch
            } else {
                FlipCategory::DisagMatch
            }
        } else if xt != ya {
            FlipCategory::AgreeMismatch
        } else {
            FlipCategory::AgreeMatch
        }
    }
}

impl fmt::Display for FlipCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One application of the flip map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FlipOutcome {
    /// flipped index, 1-based
    pub t: usize,
    /// `S*(x~, y) - S*(x, y)`, always in `{-1, 0, 1}`
    pub delta: i32,
    pub category: FlipCategory,
    pub s_star_before: u32,
    pub s_star_after: u32,
}

/// `x` with the symbol at 1-based position `t` inverted.
pub fn flip_at(x: &BinarySequence, t: usize) -> Result<BinarySequence> {
    if t == 0 || t > x.len() {
        return Err(invalid!("flip index {t} outside 1..={}", x.len()));
    }
    let mut bits = x.bits().to_vec();
    bits[t - 1] ^= 1;
    Ok(BinarySequence::from_bits_unchecked(bits))
}

/// Flips `x_t` and recomputes the optimal score from scratch.
pub fn delta_score(x: &BinarySequence, y: &BinarySequence, t: usize) -> Result<FlipOutcome> {
    let pair = solve(x, y)?;
    delta_score_with_pair(x, y, &pair, t)
}

/// As [`delta_score`], reusing an already computed extremal pair of `(x, y)`.
pub fn delta_score_with_pair(
    x: &BinarySequence,
    y: &BinarySequence,
    pair: &ExtremalPair,
    t: usize,
) -> Result<FlipOutcome> {
    let flipped = flip_at(x, t)?;
    if pair.m() != x.len() {
        return Err(invalid!("extremal pair has m = {} but |x| = {}", pair.m(), x.len()));
    }
    let after = linear_score_bits(flipped.bits(), y.bits());
    let category = FlipCategory::classify(x, y, pair, t);
    Ok(FlipOutcome {
        t,
        delta: after as i32 - pair.s_star as i32,
        category,
        s_star_before: pair.s_star,
        s_star_after: after,
    })
}

/// Draws `t` uniformly from `1..=m` and applies [`delta_score`].
pub fn random_flip<R: RngCore + ?Sized>(x: &BinarySequence, y: &BinarySequence, rng: &mut R) -> Result<FlipOutcome> {
    let pair = solve(x, y)?;
    let t = draw_index(x.len(), rng);
    delta_score_with_pair(x, y, &pair, t)
}

/// Uniform 1-based index in `1..=m`.
pub fn draw_index<R: RngCore + ?Sized>(m: usize, rng: &mut R) -> usize {
    rng.random_range(1..=m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn seq(s: &str) -> BinarySequence {
        s.parse().unwrap()
    }

    #[test]
    fn flip_examples() {
        assert_eq!(flip_at(&seq("001110"), 5).unwrap(), seq("001100"));
        assert_eq!(flip_at(&seq("0"), 1).unwrap(), seq("1"));
        assert!(flip_at(&seq("01"), 0).is_err());
        assert!(flip_at(&seq("01"), 3).is_err());
    }

    #[test]
    fn worked_example_flips() {
        let (x, y) = (seq("001110"), seq("11110011"));
        let o5 = delta_score(&x, &y, 5).unwrap();
        assert_eq!((o5.delta, o5.s_star_after, o5.category), (1, 4, FlipCategory::DisagYdiff));
        let o6 = delta_score(&x, &y, 6).unwrap();
        assert_eq!((o6.delta, o6.s_star_after, o6.category), (1, 4, FlipCategory::DisagYdiff));
        let o3 = delta_score(&x, &y, 3).unwrap();
        assert_eq!((o3.delta, o3.category), (-1, FlipCategory::AgreeMatch));
        // x_1, x_2 sit on mismatches of the common image and flipping either gains a point
        for t in [1, 2] {
            let o = delta_score(&x, &y, t).unwrap();
            assert_eq!((o.delta, o.category), (1, FlipCategory::AgreeMismatch));
        }
    }

    #[test]
    fn single_position_always_draws_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            assert_eq!(random_flip(&seq("1"), &seq("01"), &mut rng).unwrap().t, 1);
        }
    }

    #[test]
    fn fixed_seed_reproduces_outcomes() {
        let (x, y) = (seq("0110100111"), seq("1011001110101"));
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..50).map(|_| random_flip(&x, &y, &mut rng).unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(run(3), run(3));
    }

    #[test]
    fn draw_index_is_uniform() {
        // chi-square with 9 degrees of freedom; 42.0 is beyond the 1e-6 upper quantile (~41.1)
        let m = 10;
        let draws = 100_000;
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut counts = [0u64; 10];
        for _ in 0..draws {
            counts[draw_index(m, &mut rng) - 1] += 1;
        }
        let expected = draws as f64 / m as f64;
        let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        assert!(chi2 < 42.0, "chi2 = {chi2}, counts = {counts:?}");
    }

    fn instance() -> impl Strategy<Value = (BinarySequence, BinarySequence, usize)> {
        (2usize..=256)
            .prop_flat_map(|n| (1..n, Just(n)))
            .prop_flat_map(|(m, n)| (proptest::collection::vec(0u8..2, m), proptest::collection::vec(0u8..2, n), 1..=m))
            .prop_map(|(x, y, t)| (BinarySequence::new(x).unwrap(), BinarySequence::new(y).unwrap(), t))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn flip_is_an_involution((x, _y, t) in instance()) {
            prop_assert_eq!(flip_at(&flip_at(&x, t).unwrap(), t).unwrap(), x);
        }

        #[test]
        fn delta_range_and_forced_increase((x, y, t) in instance()) {
            let o = delta_score(&x, &y, t).unwrap();
            prop_assert!(o.delta.abs() <= 1);
            if o.category.forces_increase() {
                prop_assert_eq!(o.delta, 1);
            }
        }
    }
}

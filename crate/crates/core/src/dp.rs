//! Banded dynamic program for the optimal score and the extremal optimal alignments.
//!
//! Row `i` of the table only has valid cells for `j` in `[i, i + (n - m)]`; every other
//! cell is invalid because no order-preserving injection can send `i` there. Rows are
//! therefore stored by offset `d = j - i`, which makes the recurrence
//!
//! ```text
//! score(i, i + d) = s(x_i, y_{i+d}) + max(score(i-1, i-1+d') for d' in 0..=d)
//! ```
//!
//! a running prefix maximum over the previous row.

use alloc::vec;
use alloc::vec::Vec;

use crate::alignment::{score_unchecked, Alignment};
use crate::error::{invalid, Result};
use crate::seq::BinarySequence;

#[inline]
fn s(a: u8, b: u8) -> u32 {
    (a == b) as u32
}

/// The DP table `score(i, j)` restricted to its valid band.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreMatrix {
    m: usize,
    n: usize,
    band_width: usize,
    /// Row-major, `m` rows of `band_width + 1` cells, indexed by offset `j - i`.
    cells: Vec<u32>,
}

impl ScoreMatrix {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `n - m`: the largest offset `j - i` of a valid cell.
    pub fn band_width(&self) -> usize {
        self.band_width
    }

    /// `score(i, j)` for 1-based `i, j`, or `None` for an invalid cell.
    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        if i == 0 || i > self.m || j < i || j > i + self.band_width {
            return None;
        }
        Some(self.row(i)[j - i])
    }

    /// Valid cells of row `i` (1-based), indexed by offset `j - i`.
    pub fn row(&self, i: usize) -> &[u32] {
        let w = self.band_width + 1;
        &self.cells[(i - 1) * w..i * w]
    }

    /// Maximum over the valid cells of row `i`.
    pub fn row_max(&self, i: usize) -> u32 {
        self.row(i).iter().copied().max().expect("band is non-empty")
    }
}

fn check_dims(x: &BinarySequence, y: &BinarySequence) -> Result<()> {
    if x.len() >= y.len() {
        return Err(invalid!("need |x| < |y|, got |x| = {}, |y| = {}", x.len(), y.len()));
    }
    Ok(())
}

/// Fills the full banded table in `O(m (n - m))` time.
pub fn build_score_matrix(x: &BinarySequence, y: &BinarySequence) -> Result<ScoreMatrix> {
    check_dims(x, y)?;
    let (xb, yb) = (x.bits(), y.bits());
    let (m, n) = (xb.len(), yb.len());
    let band_width = n - m;
    let w = band_width + 1;
    let mut cells = vec![0u32; m * w];

    for d in 0..w {
        cells[d] = s(xb[0], yb[d]);
    }
    for r in 1..m {
        let (done, rest) = cells.split_at_mut(r * w);
        let prev = &done[(r - 1) * w..];
        let cur = &mut rest[..w];
        let mut best = 0u32;
        for d in 0..w {
            best = best.max(prev[d]);
            cur[d] = s(xb[r], yb[r + d]) + best;
        }
    }
    Ok(ScoreMatrix { m, n, band_width, cells })
}

/// `S*(x, y)`: the maximum over the valid cells of the last row.
pub fn optimal_score(sm: &ScoreMatrix) -> u32 {
    sm.row_max(sm.m)
}

/// `S*(x, y)` keeping only one row of the band, `O(n - m)` extra space.
pub fn optimal_score_linear(x: &BinarySequence, y: &BinarySequence) -> Result<u32> {
    check_dims(x, y)?;
    let (xb, yb) = (x.bits(), y.bits());
    Ok(linear_score_bits(xb, yb))
}

/// Same as [`optimal_score_linear`] on raw bit slices; caller guarantees `x.len() < y.len()`.
pub(crate) fn linear_score_bits(xb: &[u8], yb: &[u8]) -> u32 {
    let w = yb.len() - xb.len() + 1;
    let mut row: Vec<u32> = (0..w).map(|d| s(xb[0], yb[d])).collect();
    for r in 1..xb.len() {
        let mut best = 0u32;
        for d in 0..w {
            // row[d] still holds the previous row here
            best = best.max(row[d]);
            row[d] = s(xb[r], yb[r + d]) + best;
        }
    }
    row.into_iter().max().expect("band is non-empty")
}

/// Rightmost optimal alignment: at each row pick the largest column that attains the
/// running maximum to the left of the next row's choice.
fn rightmost(sm: &ScoreMatrix) -> Vec<usize> {
    let m = sm.m;
    let mut images = vec![0usize; m];
    let last = sm.row(m);
    let best = *last.iter().max().expect("band is non-empty");
    let mut d = last.iter().rposition(|&v| v == best).expect("max present");
    images[m - 1] = m + d;
    for i in (2..=m).rev() {
        // row i sits at offset d; row i-1 may use offsets 0..=d
        let prev = &sm.row(i - 1)[..=d];
        let best = *prev.iter().max().expect("non-empty");
        d = prev.iter().rposition(|&v| v == best).expect("max present");
        images[i - 2] = i - 1 + d;
    }
    images
}

/// The pointwise-minimal and pointwise-maximal optimal alignments of `(x, y)`.
///
/// Together they determine local uniqueness: position `i` is aligned to more than one
/// `y` position among the optimal alignments exactly when `xi(i) != lambda(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ExtremalPair {
    pub s_star: u32,
    pub xi: Alignment,
    pub lambda: Alignment,
    /// `u[i - 1]` is true when position `i` is locally nonunique.
    #[cfg_attr(feature = "serde", serde(serialize_with = "ser_mask"))]
    pub u: Vec<bool>,
    #[cfg_attr(feature = "serde", serde(rename = "U"))]
    pub u_count: usize,
}

#[cfg(feature = "serde")]
fn ser_mask<S: serde::Serializer>(u: &[bool], s: S) -> core::result::Result<S::Ok, S::Error> {
    s.collect_str(&MaskDisplay(u))
}

/// Formats a boolean mask as a string of `T`/`F`.
pub struct MaskDisplay<'a>(pub &'a [bool]);

impl core::fmt::Display for MaskDisplay<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for &b in self.0 {
            f.write_str(if b { "T" } else { "F" })?;
        }
        Ok(())
    }
}

impl ExtremalPair {
    pub fn m(&self) -> usize {
        self.xi.len()
    }

    /// `xi(i) == lambda(i)` for 1-based `i`.
    pub fn agrees_at(&self, i: usize) -> bool {
        !self.u[i - 1]
    }
}

/// Computes `lambda` by rightmost backtracking through `sm`, and `xi` as the reflection
/// of the rightmost optimal alignment of the reversed instance.
///
/// Both alignments are re-scored against `x` and `y`; a table that was not built from
/// this pair is reported as invalid input.
pub fn extremal_alignments(sm: &ScoreMatrix, x: &BinarySequence, y: &BinarySequence) -> Result<ExtremalPair> {
    if sm.m != x.len() || sm.n != y.len() {
        return Err(invalid!("score matrix is {}x{} but |x| = {}, |y| = {}", sm.m, sm.n, x.len(), y.len()));
    }
    let s_star = optimal_score(sm);
    let lambda = rightmost(sm);

    let mirrored = build_score_matrix(&x.reversed(), &y.reversed())?;
    let xi = Alignment::from_images_unchecked(rightmost(&mirrored)).reflect(sm.n);
    let lambda = Alignment::from_images_unchecked(lambda);

    let (xb, yb) = (x.bits(), y.bits());
    let s_xi = score_unchecked(xb, yb, xi.images()) as u32;
    let s_lambda = score_unchecked(xb, yb, lambda.images()) as u32;
    if s_xi != s_star || s_lambda != s_star || optimal_score(&mirrored) != s_star {
        return Err(invalid!("score matrix does not belong to the supplied sequences"));
    }

    let u: Vec<bool> = xi.images().iter().zip(lambda.images()).map(|(a, b)| a != b).collect();
    let u_count = u.iter().filter(|&&b| b).count();
    Ok(ExtremalPair { s_star, xi, lambda, u, u_count })
}

/// Builds the table and returns the extremal pair in one call.
pub fn solve(x: &BinarySequence, y: &BinarySequence) -> Result<ExtremalPair> {
    let sm = build_score_matrix(x, y)?;
    extremal_alignments(&sm, x, y)
}

/// `U`: the number of locally nonunique positions, i.e. `d(xi, lambda)`.
pub fn nonuniqueness_count(pair: &ExtremalPair) -> usize {
    pair.xi.distance(&pair.lambda)
}

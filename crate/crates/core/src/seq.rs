//! Binary sequences and the `(n, delta, m)` length model.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{domain, invalid, Error, Result};

/// A non-empty sequence over `{0, 1}`.
///
/// Positions are 1-based in the public API (`get(1)` is the first symbol), matching
/// the convention used for alignment images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinarySequence {
    bits: Vec<u8>,
}

impl BinarySequence {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(invalid!("sequence must have length >= 1"));
        }
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(invalid!("symbol {} at position {} is not 0 or 1", bits[pos], pos + 1));
        }
        Ok(Self { bits })
    }

    /// Builds the sequence whose `i`-th symbol is bit `i` of `code` (LSB first).
    pub fn from_code(code: u64, len: usize) -> Result<Self> {
        if len > 64 {
            return Err(invalid!("from_code supports at most 64 symbols, got {len}"));
        }
        Self::new((0..len).map(|i| ((code >> i) & 1) as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Symbol at 1-based position `i`.
    pub fn get(&self, i: usize) -> u8 {
        self.bits[i - 1]
    }

    pub fn reversed(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.reverse();
        Self { bits }
    }

    pub(crate) fn from_bits_unchecked(bits: Vec<u8>) -> Self {
        debug_assert!(!bits.is_empty() && bits.iter().all(|&b| b <= 1));
        Self { bits }
    }
}

impl FromStr for BinarySequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(invalid!("character {other:?} at position {} is not '0' or '1'", i + 1)),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(bits)
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.bits.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect();
        f.write_str(&s)
    }
}

/// Lengths of the two sequences: `n` for `Y`, and `m = floor(n - delta*n)` for `X`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ModelParams {
    n: usize,
    delta: f64,
    m: usize,
}

impl ModelParams {
    pub fn new(n: usize, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(domain!("delta must lie in (0, 1), got {delta}"));
        }
        if n == 0 {
            return Err(domain!("n must be positive"));
        }
        let m = gapped_length(n, delta);
        if m == 0 || m >= n {
            return Err(domain!("n = {n}, delta = {delta} gives m = {m}; need 1 <= m < n"));
        }
        Ok(Self { n, delta, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Number of gaps in `X`, which is also the DP band width.
    pub fn gaps(&self) -> usize {
        self.n - self.m
    }
}

/// `floor(n - delta*n)` with a relative guard of 1e-9 so that products such as
/// `30 * 0.1 = 3.0000000000000004` do not knock an exact integer down by one.
pub fn gapped_length(n: usize, delta: f64) -> usize {
    let v = n as f64 - delta * n as f64;
    let guard = 1e-9 * libm::fmax(1.0, libm::fabs(v));
    let m = libm::floor(v + guard);
    if m <= 0.0 {
        0
    } else {
        m as usize
    }
}

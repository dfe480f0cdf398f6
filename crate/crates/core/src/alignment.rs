//! Alignments with gaps in `X` only: order-preserving injections `{1..m} -> {1..n}`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::seq::BinarySequence;

/// An order-preserving injection, stored as its 1-based image list.
///
/// The type only guarantees the images are strictly increasing and start at 1 or
/// above. Whether it fits a particular `(m, n)` is checked by [`Alignment::check_fits`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alignment {
    images: Vec<usize>,
}

impl Alignment {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        if images.is_empty() {
            return Err(invalid!("alignment must map at least one position"));
        }
        if images[0] == 0 {
            return Err(invalid!("alignment images are 1-based; found 0"));
        }
        if let Some(w) = images.windows(2).position(|w| w[0] >= w[1]) {
            return Err(invalid!("alignment images must be strictly increasing (positions {} and {})", w + 1, w + 2));
        }
        Ok(Self { images })
    }

    /// The identity alignment on `{1..m}`.
    pub fn identity(m: usize) -> Result<Self> {
        Self::new((1..=m).collect())
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::new(images.clone()).is_ok());
        Self { images }
    }

    /// Number of aligned positions `m`.
    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `xi(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Checks that this is an element of the alignment set for `(m, n)`.
    pub fn check_fits(&self, m: usize, n: usize) -> Result<()> {
        if self.len() != m {
            return Err(invalid!("alignment has {} images but |x| = {m}", self.len()));
        }
        let last = *self.images.last().expect("non-empty");
        if last > n {
            return Err(invalid!("alignment image {last} exceeds |y| = {n}"));
        }
        Ok(())
    }

    /// `true` when `self(i) <= other(i)` for every `i`.
    pub fn le_pointwise(&self, other: &Alignment) -> bool {
        self.len() == other.len() && self.images.iter().zip(&other.images).all(|(a, b)| a <= b)
    }

    /// Number of positions where the two alignments differ.
    pub fn distance(&self, other: &Alignment) -> usize {
        self.images.iter().zip(&other.images).filter(|(a, b)| a != b).count()
    }

    /// Mirror image under reversal of both sequences: `i -> n + 1 - self(m + 1 - i)`.
    pub fn reflect(&self, n: usize) -> Alignment {
        let images = self.images.iter().rev().map(|&j| n + 1 - j).collect();
        Alignment { images }
    }
}

impl FromStr for Alignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<usize>().map_err(|_| invalid!("bad alignment image {tok:?}"))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }
}

impl fmt::Display for Alignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, j) in self.images.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&alloc::format!("{j}"));
        }
        f.write_str(&out)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Alignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Number of positions `i` with `x_i = y_{xi(i)}`.
pub fn alignment_score(x: &BinarySequence, y: &BinarySequence, xi: &Alignment) -> Result<usize> {
    xi.check_fits(x.len(), y.len())?;
    Ok(score_unchecked(x.bits(), y.bits(), xi.images()))
}

pub(crate) fn score_unchecked(x: &[u8], y: &[u8], images: &[usize]) -> usize {
    x.iter().zip(images).filter(|&(&a, &j)| a == y[j - 1]).count()
}

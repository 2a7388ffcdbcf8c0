//! The ambient disk with `n` punctures on its horizontal diameter.
//!
//! Reference system used throughout the crate, with punctures numbered
//! `1..=n` from left to right:
//!
//! * chords `beta_1 .. beta_{n-1}`: vertical chords, `beta_w` separating
//!   punctures `1..=w` from `w+1..=n`. The formal chords `beta_0` and
//!   `beta_n` lie on the boundary and are never crossed.
//! * regions `Delta_0 .. Delta_{n-1}`: `Delta_r` is the strip between
//!   `beta_r` and `beta_{r+1}`; it contains puncture `r+1`.
//! * diameter segments `0..=n`: segment `s` is the part of the diameter
//!   between punctures `s` and `s+1` (segment `0` lies left of puncture 1,
//!   segment `n` right of puncture `n`). Each chord `beta_w` meets the
//!   diameter inside segment `w`, splitting it into a west piece (region
//!   `w-1`) and an east piece (region `w`).
//! * rays: at each puncture, a vertical ray up to the boundary and one down.
//!   Crossing counts with these rays are the alpha entries of the coordinate
//!   system; the rays at punctures `2..=n-1` carry the ordinary entries and
//!   the rays at punctures `1` and `n` the extended ones.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The disk `D_n`. Only the puncture count matters combinatorially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PuncturedDisk {
    n: usize,
}

impl PuncturedDisk {
    /// The coordinate bijection requires `n >= 3`.
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::DiskTooSmall(n));
        }
        Ok(PuncturedDisk { n })
    }

    pub fn punctures(&self) -> usize {
        self.n
    }

    /// Number of regions `Delta_0 .. Delta_{n-1}`.
    pub fn regions(&self) -> usize {
        self.n
    }

    /// Interior chords are `beta_1 .. beta_{n-1}`.
    pub fn interior_chords(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n - 1
    }

    /// Length of the ordinary coordinate vector `(a; b)`.
    pub fn coord_len(&self) -> usize {
        2 * self.n - 4
    }
}

impl std::fmt::Display for PuncturedDisk {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "D_{}", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_disks() {
        assert_eq!(PuncturedDisk::new(2), Err(Error::DiskTooSmall(2)));
        assert!(PuncturedDisk::new(3).is_ok());
    }
}

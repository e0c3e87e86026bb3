//! Seeded instance generator.
//!
//! The PRNG is SplitMix64, spelled out here so that corpora can be
//! regenerated bit-for-bit in any language:
//!
//! ```text
//! state <- state + 0x9E3779B97F4A7C15            (mod 2^64)
//! z <- state
//! z <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9       (mod 2^64)
//! z <- (z ^ (z >> 27)) * 0x94D049BB133111EB       (mod 2^64)
//! output z ^ (z >> 31)
//! ```
//!
//! The initial state is the seed. A draw from `[lo, hi]` takes outputs until
//! one is below `2^64 - (2^64 mod span)` (with `span = hi - lo + 1`) and
//! returns `lo + output mod span`. An instance draws `count` elements of `A`
//! from `[2, max_value]`, then `b_count` elements of `B` from the same range,
//! in that order; duplicates collapse, so `|A| <= count`.

use crate::error::{Error, Result};
use crate::numeric::{Nat, NatSet};
use crate::solver::{Mode, ProblemInstance};

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `lo..=hi` by rejection.
    pub fn range_inclusive(&mut self, lo: u64, hi: u64) -> u64 {
        assert!(lo <= hi);
        let span = hi.wrapping_sub(lo).wrapping_add(1);
        if span == 0 {
            return self.next_u64();
        }
        // 2^64 - (2^64 mod span), computed without overflow
        let rem = (u64::MAX % span + 1) % span;
        loop {
            let v = self.next_u64();
            if rem == 0 || v < 0u64.wrapping_sub(rem) {
                return lo + v % span;
            }
        }
    }
}

/// Parameters for [`generate_instance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    pub count: usize,
    pub max_value: u64,
    pub mode: Mode,
    pub b_count: usize,
}

pub fn generate_instance(p: &GenParams) -> Result<ProblemInstance> {
    if p.count == 0 {
        return Err(Error::domain("count must be at least 1"));
    }
    if p.max_value < 2 {
        return Err(Error::domain("max-value must be at least 2"));
    }
    let mut rng = SplitMix64::new(p.seed);
    let mut draw = |n: usize| -> NatSet {
        (0..n)
            .map(|_| Nat::from(rng.range_inclusive(2, p.max_value)))
            .collect()
    };
    let a = draw(p.count);
    let b = draw(p.b_count);
    ProblemInstance::new(a, b, p.mode)
}

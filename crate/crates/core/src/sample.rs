//! Exactly uniform sampling from a ball, reproducible across machines.
//!
//! Two passes: build the stratified index with cumulative integer counts,
//! then unrank. A draw is one unbiased integer below the total (rejection
//! sampling on a ChaCha stream — no floats, no modulo bias), one binary
//! search to the stratum, and one formula evaluation. Distinct `stream_id`s
//! on the same master seed give independent, individually reproducible
//! streams, which is how parallel experiments stay byte-identical for any
//! worker count: work is split into fixed chunks, each chunk owns stream
//! `base + chunk index`, and results are combined by integer sums.

use crate::ball::{BallSpec, SpecError};
use crate::mat2::Mat2;
use alloc::vec::Vec;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Master seed plus stream selector for a ChaCha8 generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SampleSeed {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl SampleSeed {
    pub fn new(master_seed: u64, stream_id: u64) -> SampleSeed {
        SampleSeed {
            master_seed,
            stream_id,
        }
    }

    /// The generator this seed denotes.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }

    /// Same master seed, different stream.
    pub fn with_stream(&self, stream_id: u64) -> SampleSeed {
        SampleSeed {
            master_seed: self.master_seed,
            stream_id,
        }
    }
}

/// Unbiased uniform draw from [0, bound). Rejects the short final cycle of
/// the 128-bit range instead of taking a biased remainder.
pub fn uniform_below(rng: &mut impl RngCore, bound: u128) -> u128 {
    assert!(bound > 0, "uniform_below needs a positive bound");
    // 2^128 mod bound, computed without overflowing.
    let reject = (u128::MAX % bound + 1) % bound;
    loop {
        let hi = u128::from(rng.next_u64());
        let lo = u128::from(rng.next_u64());
        let v = (hi << 64) | lo;
        if reject == 0 || v <= u128::MAX - reject {
            return v % bound;
        }
    }
}

/// Flat stratum record: 20 bytes, so an index over SL(2,Z;1000)'s ~2.4
/// million strata stays well under 100 MB.
#[derive(Debug, Clone, Copy)]
struct Packed {
    c: i32, // 0 marks the c = 0 block, with e stored in `a`
    a: i32,
    first: i32, // first d (or first b for the c = 0 block)
    step: i32,  // 0 when count == 1 (the step can exceed i32 only then)
    count: u32,
}

/// Sampling index over a [`BallSpec`]: packed strata plus cumulative counts.
pub struct SampleIndex {
    strata: Vec<Packed>,
    cum: Vec<u64>, // cum[i] = total count of strata 0..=i
    total: u64,
}

impl SampleIndex {
    /// Walks the spec's strata once. Errors with [`SpecError::EmptySet`]
    /// when the spec selects no matrices.
    pub fn build(spec: &BallSpec) -> Result<SampleIndex, SpecError> {
        let mut strata = Vec::new();
        let mut cum = Vec::new();
        let mut total = 0u64;
        for s in spec.strata(spec.x()) {
            let count = s.count();
            debug_assert!(count > 0);
            let packed = match s {
                crate::ball::Stratum::CZero {
                    e, b_first, b_step, count,
                } => Packed {
                    c: 0,
                    a: e as i32,
                    first: b_first as i32,
                    step: if count == 1 { 0 } else { b_step as i32 },
                    count: count as u32,
                },
                crate::ball::Stratum::CNonZero {
                    c, a, d_first, d_step, count,
                } => Packed {
                    c: c as i32,
                    a: a as i32,
                    first: d_first as i32,
                    step: if count == 1 { 0 } else { d_step as i32 },
                    count: count as u32,
                },
            };
            strata.push(packed);
            total += count;
            cum.push(total);
        }
        if total == 0 {
            return Err(SpecError::EmptySet);
        }
        Ok(SampleIndex { strata, cum, total })
    }

    pub fn total(&self) -> u128 {
        self.total as u128
    }

    /// The rank-th matrix in canonical order (0-based).
    pub fn unrank(&self, rank: u64) -> Mat2 {
        assert!(rank < self.total, "rank out of range");
        let i = self.cum.partition_point(|&s| s <= rank);
        let before = if i == 0 { 0 } else { self.cum[i - 1] };
        let offset = rank - before;
        let p = &self.strata[i];
        debug_assert!(offset < p.count as u64);
        let (a, b, c, d) = if p.c == 0 {
            let e = p.a as i64;
            (e, p.first as i64 + offset as i64 * p.step as i64, 0, e)
        } else {
            let d = p.first as i64 + offset as i64 * p.step as i64;
            let b = (p.a as i128 * d as i128 - 1) / p.c as i128;
            (p.a as i64, b as i64, p.c as i64, d)
        };
        Mat2::from_i64(a, b, c, d).expect("index elements are unimodular by construction")
    }

    /// One uniform draw.
    pub fn draw(&self, rng: &mut impl RngCore) -> Mat2 {
        self.unrank(uniform_below(rng, self.total as u128) as u64)
    }

    /// `n` uniform draws from a fresh generator for `seed`.
    pub fn sample(&self, n: usize, seed: &SampleSeed) -> Vec<Mat2> {
        let mut rng = seed.rng();
        (0..n).map(|_| self.draw(&mut rng)).collect()
    }
}

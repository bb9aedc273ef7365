//! Deterministic input generation and output checksumming.
//!
//! The PRNG is splitmix64 with the reference constants, so streams are
//! bit-exact across platforms and easy to reproduce in other languages. The
//! scalar mappings are normative for the harness (and restated in the
//! README):
//!
//! - f64: `((x >> 11) as f64) * 2^-52 - 1.0`, uniform in `[-1, 1)`
//! - f32: `((x >> 40) as f32) * 2^-23 - 1.0`, uniform in `[-1, 1)`
//! - i64: `((x >> 32) as i64) - 2^31`, uniform in `[-2^31, 2^31)`
//!
//! Checksums are 64-bit FNV-1a over the little-endian bytes of the output,
//! element by element.

use slidesum_core::GammaPair;

/// splitmix64, as published: additive constant `0x9E3779B97F4A7C15`,
/// finalizer multipliers `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64) * (1.0 / (1u64 << 52) as f64) - 1.0
    }

    #[inline]
    pub fn next_f32(&mut self) -> f32 {
        ((self.next_u64() >> 40) as f32) * (1.0 / (1u32 << 23) as f32) - 1.0
    }

    #[inline]
    pub fn next_i64(&mut self) -> i64 {
        ((self.next_u64() >> 32) as i64) - (1i64 << 31)
    }
}

pub fn gen_f64(seed: u64, n: usize) -> Vec<f64> {
    let mut rng = SplitMix64::new(seed);
    (0..n).map(|_| rng.next_f64()).collect()
}

pub fn gen_f32(seed: u64, n: usize) -> Vec<f32> {
    let mut rng = SplitMix64::new(seed);
    (0..n).map(|_| rng.next_f32()).collect()
}

pub fn gen_i64(seed: u64, n: usize) -> Vec<i64> {
    let mut rng = SplitMix64::new(seed);
    (0..n).map(|_| rng.next_i64()).collect()
}

/// Pairs for benchmarking the non-commutative operator: ratio components in
/// `[0.5, 2)` so chained products stay well conditioned, value components in
/// `[-1, 1)`.
pub fn gen_pairs(seed: u64, n: usize) -> Vec<GammaPair<f64>> {
    let mut rng = SplitMix64::new(seed);
    (0..n)
        .map(|_| {
            let u = 0.5 + (rng.next_f64() + 1.0) * 0.75;
            let v = rng.next_f64();
            GammaPair::new(u, v)
        })
        .collect()
}

/// Filter coefficients in `[-1, 1)`, one filter per row.
pub fn gen_filters_f32(seed: u64, count: usize, w: usize) -> Vec<Vec<f32>> {
    let mut rng = SplitMix64::new(seed);
    (0..count).map(|_| (0..w).map(|_| rng.next_f32()).collect()).collect()
}

pub fn gen_filters_f64(seed: u64, count: usize, w: usize) -> Vec<Vec<f64>> {
    let mut rng = SplitMix64::new(seed);
    (0..count).map(|_| (0..w).map(|_| rng.next_f64()).collect()).collect()
}

/// Incremental 64-bit FNV-1a.
pub struct Fnv1a {
    hash: u64,
}

impl Fnv1a {
    pub fn new() -> Self {
        Fnv1a { hash: 0xcbf29ce484222325 }
    }

    #[inline]
    pub fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.hash ^= b as u64;
            self.hash = self.hash.wrapping_mul(0x100000001b3);
        }
    }

    pub fn finish(&self) -> u64 {
        self.hash
    }
}

impl Default for Fnv1a {
    fn default() -> Self {
        Self::new()
    }
}

/// Little-endian byte feed for checksummable output elements.
pub trait LeBytes {
    fn feed(&self, h: &mut Fnv1a);
}

impl LeBytes for i64 {
    fn feed(&self, h: &mut Fnv1a) {
        h.write(&self.to_le_bytes());
    }
}

impl LeBytes for f32 {
    fn feed(&self, h: &mut Fnv1a) {
        h.write(&self.to_le_bytes());
    }
}

impl LeBytes for f64 {
    fn feed(&self, h: &mut Fnv1a) {
        h.write(&self.to_le_bytes());
    }
}

impl LeBytes for GammaPair<f64> {
    fn feed(&self, h: &mut Fnv1a) {
        h.write(&self.u.to_le_bytes());
        h.write(&self.v.to_le_bytes());
    }
}

pub fn checksum<T: LeBytes>(out: &[T]) -> u64 {
    let mut h = Fnv1a::new();
    for v in out {
        v.feed(&mut h);
    }
    h.finish()
}

//! Deterministic pseudo-random generator with a pinned bit-level algorithm.
//!
//! Simulated trajectories and generated test graphs are part of the golden
//! test surface, so the generator is specified exactly rather than delegated
//! to an external crate whose stream may change between versions. The
//! algorithm is SplitMix64 (Steele, Lea, Vigna; public domain):
//!
//! ```text
//! state <- state + 0x9E3779B97F4A7C15            (wrapping)
//! z <- state
//! z <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9    (wrapping)
//! z <- (z xor (z >> 27)) * 0x94D049BB133111EB    (wrapping)
//! output: z xor (z >> 31)
//! ```
//!
//! `index_below(k)` draws 64-bit words and rejects values at or above the
//! largest multiple of `k` that fits, then reduces modulo `k`, so every
//! residue is exactly equally likely.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix(self.state)
    }

    /// Uniform draw from `0..k`. Panics if `k == 0`.
    pub fn index_below(&mut self, k: usize) -> usize {
        assert!(k > 0, "index_below requires k > 0");
        let k = k as u64;
        // Largest multiple of k representable in u64; draws past it are
        // rejected so the modulo reduction stays unbiased.
        let threshold = (u64::MAX / k) * k;
        loop {
            let x = self.next_u64();
            if x < threshold {
                return (x % k) as usize;
            }
        }
    }

    /// Uniform draw from the half-open unit interval, using the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// In-place Fisher-Yates shuffle driven by this generator.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.index_below(i + 1);
            items.swap(i, j);
        }
    }
}

/// The SplitMix64 finalizer on its own. Used to derive independent per-walker
/// seeds: walker `w` runs on `SplitMix64::new(seed ^ mix(w))`, which makes the
/// reduced histogram independent of walker execution order.
pub fn mix(z: u64) -> u64 {
    let z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    let z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

//! Deterministic pseudo-random stream shared by every oracle.
//!
//! The recurrence is fixed so that sampling sequences can be reproduced by any
//! implementation from the seed alone:
//!
//! * Seeding: the 64-bit seed is passed once through SplitMix64
//!   (`z += 0x9E3779B97F4A7C15; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
//!   z = (z ^ (z >> 27)) * 0x94D049BB133111EB; z ^= z >> 31`). A zero result is
//!   replaced by `0x9E3779B97F4A7C15`.
//! * Step: xorshift64* (`x ^= x >> 12; x ^= x << 25; x ^= x >> 27`), output
//!   `x * 0x2545F4914F6CDD1D` (wrapping).
//! * Bounded draws `below(n)`: reject outputs `v > 2^64 - 1 - (2^64 mod n)`,
//!   then take `v % n`.

/// xorshift64* generator with SplitMix64 seeding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamRng {
    state: u64,
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl StreamRng {
    pub fn new(seed: u64) -> Self {
        let state = match splitmix64(seed) {
            0 => GOLDEN,
            s => s,
        };
        StreamRng { state }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform draw from `0..n`. Panics if `n == 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0)");
        let zone = u64::MAX - (u64::MAX % n + 1) % n;
        loop {
            let v = self.next_u64();
            if v <= zone {
                return v % n;
            }
        }
    }

    pub fn below_usize(&mut self, n: usize) -> usize {
        self.below(n as u64) as usize
    }

    /// Uniform ordered pair `(i, j)` with `i != j`, both in `0..k`.
    pub fn distinct_pair(&mut self, k: usize) -> (usize, usize) {
        debug_assert!(k >= 2);
        let i = self.below_usize(k);
        let mut j = self.below_usize(k - 1);
        if j >= i {
            j += 1;
        }
        (i, j)
    }

    /// Uniform float in `[0, 1)` from the top 53 bits.
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

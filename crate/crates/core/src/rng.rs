//! Counter-based pseudorandom generation.
//!
//! Everything random in this crate is a pure function of a seed and a
//! counter, so replications and edges can be evaluated in any order, on
//! any number of threads, with bit-identical results.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Stafford mix13 finalizer. Bijective on u64 with strong avalanche.
#[inline(always)]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The `counter`-th output of the splitmix64 stream seeded at `seed`.
#[inline(always)]
pub fn splitmix_at(seed: u64, counter: u64) -> u64 {
    mix64(seed.wrapping_add(counter.wrapping_mul(GOLDEN_GAMMA)).wrapping_add(GOLDEN_GAMMA))
}

/// Map a 64-bit word to the open interval (0, 1).
///
/// The top 52 bits are centered on their cell, so the extremes are
/// 2^-53 and 1 - 2^-53: 0.0 and 1.0 are both unreachable (quantile
/// functions are only defined on the open interval).
#[inline(always)]
pub fn unit_open(z: u64) -> f64 {
    ((z >> 12) as f64 + 0.5) * (1.0 / 4_503_599_627_370_496.0)
}

/// Sequential stream view over `splitmix_at`, for Monte Carlo inner loops.
#[derive(Clone, Debug)]
pub struct CounterStream {
    seed: u64,
    counter: u64,
}

impl CounterStream {
    pub fn new(seed: u64) -> Self {
        Self { seed, counter: 0 }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let z = splitmix_at(self.seed, self.counter);
        self.counter += 1;
        z
    }

    /// Next variate in (0, 1).
    #[inline]
    pub fn next_unit(&mut self) -> f64 {
        unit_open(self.next_u64())
    }
}

//! Seeded random streams.
//!
//! Every sample draws from its own PCG stream (`Pcg64Mcg`), keyed by
//! SplitMix64 finalisation of `(master_seed, domain, index)`. A sample's
//! randomness therefore depends only on its index, never on which worker
//! evaluates it or in what order.

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64Mcg;

pub type SampleRng = Pcg64Mcg;

/// Stream domains; keeps e.g. Monte Carlo permutations independent of the
/// random-baseline permutations drawn from the same master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Domain {
    MonteCarlo = 1,
    RandomBaseline = 2,
    RandomProfile = 3,
    Curriculum = 4,
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn substream_seed(master_seed: u64, domain: Domain, index: u64) -> u128 {
    let hi = splitmix64(master_seed ^ splitmix64(domain as u64));
    let lo = splitmix64(hi ^ splitmix64(index.wrapping_add(GOLDEN_GAMMA)));
    let hi = splitmix64(lo ^ hi);
    (u128::from(hi) << 64) | u128::from(lo)
}

pub fn substream(master_seed: u64, domain: Domain, index: u64) -> SampleRng {
    let seed = substream_seed(master_seed, domain, index);
    SampleRng::from_seed(seed.to_le_bytes())
}

/// In-place Fisher–Yates shuffle. Bounds are drawn as `u32` so the result is
/// identical on 32- and 64-bit targets.
pub fn fisher_yates<T, R: Rng + ?Sized>(items: &mut [T], rng: &mut R) {
    for i in (1..items.len()).rev() {
        let j = rng.random_range(0..=i as u32) as usize;
        items.swap(i, j);
    }
}

//! Deterministic, splittable seeding.
//!
//! A [`Seed`] names one ChaCha8 stream: a 64-bit key plus a 64-bit stream
//! index. Experiment seeds are derived in counter mode, so distinct
//! (combination, repetition, stage) triples map to distinct streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seed {
    pub key: u64,
    pub stream: u64,
}

/// Pipeline stage; each gets its own stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Stage {
    Params = 0,
    Generate = 1,
    Stretch = 2,
    LeafMin = 3,
    Optimize = 4,
    Gossip = 5,
}

const STAGE_BITS: u32 = 8;
const REPETITION_BITS: u32 = 32;
const COMBINATION_BITS: u32 = 64 - STAGE_BITS - REPETITION_BITS;

impl Seed {
    pub fn new(key: u64) -> Self {
        Seed { key, stream: 0 }
    }

    pub fn rng(self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.key);
        rng.set_stream(self.stream);
        rng
    }

    /// Child seed number `index`, independent of siblings and of the parent.
    pub fn derive(self, index: u64) -> Seed {
        Seed {
            key: splitmix64(splitmix64(self.key) ^ self.stream.rotate_left(17) ^ 0x5851_f42d_4c95_7f2d),
            stream: index,
        }
    }
}

/// Seed for one stage of one trial. Injective in
/// `(combination, repetition, stage)` for `combination < 2^24`.
pub fn seed_for(master: u64, combination: u64, repetition: u64, stage: Stage) -> Seed {
    assert!(combination < 1 << COMBINATION_BITS, "combination index too large");
    assert!(repetition < 1 << REPETITION_BITS, "repetition index too large");
    Seed {
        key: master,
        stream: (combination << (REPETITION_BITS + STAGE_BITS))
            | (repetition << STAGE_BITS)
            | stage as u64,
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

//! Seeded inputs shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regcycle_core::suites::random_permutation;
use regcycle_core::Permutation;

pub const SEED: u64 = 0x5eed;

pub fn elements(degree: usize, count: usize) -> Vec<Permutation> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..count).map(|_| random_permutation(degree, &mut rng)).collect()
}

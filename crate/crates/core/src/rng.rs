//! Seed-splittable random streams.
//!
//! Work is cut into fixed-size blocks and block `b` draws from ChaCha stream
//! `b` of the run seed, so results do not depend on how blocks are scheduled
//! across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Items generated per independent stream.
pub const BLOCK: usize = 4096;

/// Default seed when the caller supplies none.
pub const DEFAULT_SEED: u64 = 0x5EED_F2AC_7A1E;

/// The RNG for block `index` of a run seeded with `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Fills `n` items block by block in parallel; `draw` is called once per item
/// with the stream owned by that item's block.
pub fn fill_parallel<T, F>(n: usize, seed: u64, draw: F) -> Vec<T>
where
    T: Send + Default + Clone,
    F: Fn(&mut ChaCha8Rng) -> T + Sync,
{
    let mut out = vec![T::default(); n];
    out.par_chunks_mut(BLOCK)
        .enumerate()
        .for_each(|(b, chunk)| {
            let mut rng = stream(seed, b as u64);
            for slot in chunk.iter_mut() {
                *slot = draw(&mut rng);
            }
        });
    out
}

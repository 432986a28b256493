//! Seeded, splittable random streams.
//!
//! Every sampler draws from an [`RngStream`] identified by `(seed, stream)`. Batches are cut
//! into fixed-size chunks and chunk `i` draws from `base.derive(i)`, so the output of a batch
//! depends only on the base stream and never on how many threads consumed the chunks.

use rand::distr::{Distribution, Open01};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Number of draws served by one derived stream inside a batch.
pub const BATCH_CHUNK: usize = 1024;

/// Seed used by the command line when neither `--seed` nor `LPSYM_SEED` is given.
pub const DEFAULT_SEED: u64 = 100;

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RngStream { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream
    }

    /// A fresh stream with the same seed whose id is a hash of `(self.stream_id(), child)`.
    /// Does not consume randomness from `self`.
    pub fn derive(&self, child: u64) -> RngStream {
        let id = splitmix64(self.stream ^ splitmix64(child.wrapping_add(0xA076_1D64_78BD_642F)));
        RngStream::new(self.seed, id)
    }

    /// Uniform on the open interval (0, 1).
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        Open01.sample(&mut self.rng)
    }

    /// Unit exponential by inversion; strictly positive.
    #[inline]
    pub fn exp1(&mut self) -> f64 {
        -self.uniform().ln()
    }
}

impl RngCore for RngStream {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    #[inline]
    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// Runs `draw` `n` times over derived sub-streams of `base`, in parallel on the current rayon
/// pool. The result is identical for every pool size.
pub fn par_batch<T, F>(base: &RngStream, n: usize, draw: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut RngStream) -> Result<T> + Sync,
{
    if n == 0 {
        return Err(Error::EmptyBatch);
    }
    let chunks = n.div_ceil(BATCH_CHUNK);
    let parts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = base.derive(c as u64);
            let len = BATCH_CHUNK.min(n - c * BATCH_CHUNK);
            (0..len).map(|_| draw(&mut rng)).collect::<Result<Vec<T>>>()
        })
        .collect::<Result<Vec<Vec<T>>>>()?;
    Ok(parts.into_iter().flatten().collect())
}

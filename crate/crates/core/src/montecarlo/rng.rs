//! Counter-based streams. Path `i` of a run seeded with `seed` draws from
//! ChaCha8 stream `i`, so results depend neither on the worker count nor on
//! the chunk size, and stopping a path early does not shift later paths.

use crate::error::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const DEFAULT_CHUNK: usize = 10_000;

pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

pub fn path_rng(seed: u64, path: u64) -> ChaCha8Rng {
    chunk_rng(seed, path)
}

/// Split of `n` paths into fixed-size chunks; the last one may be short.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chunking {
    pub chunk_size: usize,
    pub n_chunks: usize,
}

impl Chunking {
    pub fn new(n: u64, chunk_size: usize) -> Result<Self> {
        if chunk_size == 0 {
            return Err(Error::config("chunk size must be positive"));
        }
        if n == 0 {
            return Err(Error::config("number of paths must be positive"));
        }
        let n_chunks = n.div_ceil(chunk_size as u64) as usize;
        Ok(Chunking { chunk_size, n_chunks })
    }

    pub fn first_of(&self, k: usize) -> u64 {
        k as u64 * self.chunk_size as u64
    }

    pub fn len_of(&self, n: u64, k: usize) -> usize {
        let start = k as u64 * self.chunk_size as u64;
        (n - start).min(self.chunk_size as u64) as usize
    }
}

/// Runs `job(paths)` on every chunk in parallel, where `paths` is the range
/// of global path indices of the chunk; results come back in chunk order.
pub fn run_chunks<A, F>(n: u64, chunking: Chunking, job: F) -> Result<Vec<A>>
where
    A: Send,
    F: Fn(std::ops::Range<u64>) -> Result<A> + Sync,
{
    (0..chunking.n_chunks)
        .into_par_iter()
        .map(|k| {
            let first = chunking.first_of(k);
            job(first..first + chunking.len_of(n, k) as u64)
        })
        .collect()
}

/// Builds a pool with `threads` workers, or the global default for `None`.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::config(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_differ_and_repeat() {
        let a: u64 = chunk_rng(7, 0).random();
        let b: u64 = chunk_rng(7, 1).random();
        let c: u64 = chunk_rng(7, 0).random();
        assert_ne!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn chunk_lengths() {
        let c = Chunking::new(25, 10).unwrap();
        assert_eq!(c.n_chunks, 3);
        assert_eq!((c.len_of(25, 0), c.len_of(25, 2)), (10, 5));
        assert!(Chunking::new(0, 10).is_err());
    }

    #[test]
    fn worker_count_independent() {
        let job = |r: std::ops::Range<u64>| Ok(r.map(|i| path_rng(3, i).random::<f64>()).collect::<Vec<_>>());
        let c = Chunking::new(1000, 64).unwrap();
        let one = with_threads(Some(1), || run_chunks(1000, c, job)).unwrap().unwrap();
        let four = with_threads(Some(4), || run_chunks(1000, c, job)).unwrap().unwrap();
        assert_eq!(one, four);
        let other = run_chunks(1000, Chunking::new(1000, 7).unwrap(), job).unwrap();
        assert_eq!(one.concat(), other.concat());
    }
}

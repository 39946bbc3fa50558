//! Reproducible random streams.
//!
//! A stream is a ChaCha8 keystream keyed by the master seed, with the
//! replica index as the ChaCha stream (nonce) and the word position as the
//! counter. Draw `i` of stream `(seed, id)` depends on nothing else, so
//! replica-level parallelism cannot change results.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

#[derive(Clone, Debug)]
pub struct RngStream {
    master_seed: u64,
    stream_id: u64,
    inner: ChaCha8Rng,
}

/// Derives the stream for `(master_seed, stream_id)`.
pub fn derive_stream(master_seed: u64, stream_id: u64) -> RngStream {
    RngStream::new(master_seed, stream_id)
}

impl RngStream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(master_seed);
        inner.set_stream(stream_id);
        Self {
            master_seed,
            stream_id,
            inner,
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Number of 32-bit words consumed so far.
    pub fn draw_index(&self) -> u128 {
        self.inner.get_word_pos()
    }

    /// Standard normal variate.
    pub fn normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.inner)
    }

    /// Uniform variate in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        // 53 random mantissa bits.
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn draws(seed: u64, id: u64, n: usize) -> Vec<f64> {
        let mut s = derive_stream(seed, id);
        (0..n).map(|_| s.normal()).collect()
    }

    #[test]
    fn same_key_same_sequence() {
        let a = draws(42, 0, 100);
        let b = draws(42, 0, 100);
        assert_eq!(
            a.iter().map(|x| x.to_bits()).collect::<Vec<_>>(),
            b.iter().map(|x| x.to_bits()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn distinct_streams_differ() {
        let a = draws(42, 0, 100);
        let b = draws(42, 1, 100);
        assert!(a.iter().zip(&b).all(|(x, y)| x != y));
        let c = draws(43, 0, 100);
        assert_ne!(a, c);
    }

    #[test]
    fn streams_are_uncorrelated() {
        let n = 10_000;
        let a = draws(7, 0, n);
        let b = draws(7, 1, n);
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        let (ma, mb) = (mean(&a), mean(&b));
        let cov: f64 = a.iter().zip(&b).map(|(x, y)| (x - ma) * (y - mb)).sum();
        let va: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
        let vb: f64 = b.iter().map(|y| (y - mb).powi(2)).sum();
        let r = cov / (va * vb).sqrt();
        assert!(r.abs() < 0.05, "correlation {r}");
    }

    #[test]
    fn uniform_in_unit_interval() {
        let mut s = derive_stream(1, 2);
        for _ in 0..1000 {
            let u = s.uniform();
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn draw_index_advances() {
        let mut s = derive_stream(1, 2);
        assert_eq!(s.draw_index(), 0);
        s.next_u64();
        assert_eq!(s.draw_index(), 2);
    }
}

//! Deterministic, splittable random streams.
//!
//! Every sampler in this crate is a pure function of an explicit [`RngStream`].
//! A stream is identified by a 64-bit master seed plus a 64-bit stream id; the
//! pair maps onto a ChaCha8 generator via `seed_from_u64(seed)` followed by
//! `set_stream(stream_id)`. ChaCha's stream parameter selects one of 2^64
//! non-overlapping key streams of the same keyed cipher, so distinct ids give
//! independent sequences and identical `(seed, stream_id)` pairs reproduce the
//! same draws bit-exactly. Work may be partitioned over disjoint stream ids and
//! merged in id order; the result is identical to generating each stream
//! sequentially.

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer, used to derive child stream ids.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A deterministic random stream: ChaCha8 keyed by a master seed, positioned
/// on one of 2^64 independent substreams.
#[derive(Debug, Clone)]
pub struct RngStream {
    inner: ChaCha8Rng,
    seed: u64,
    stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream_id);
        RngStream {
            inner,
            seed,
            stream_id,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Derive a child stream with an id mixed from this stream's id and the
    /// child index. Children of distinct `(stream_id, child)` pairs collide
    /// with probability ~2^-64; the derivation does not consume any state of
    /// the parent, so it is safe to call concurrently with drawing.
    pub fn substream(&self, child: u64) -> RngStream {
        let id = splitmix64(self.stream_id ^ splitmix64(child.wrapping_add(1)));
        RngStream::new(self.seed, id)
    }

    /// Uniform draw on the open interval (0, 1).
    #[inline]
    pub fn open01(&mut self) -> f64 {
        use rand::distr::Open01;
        use rand::Rng;
        self.inner.sample(Open01)
    }

    /// Standard normal draw (ziggurat).
    #[inline]
    pub fn standard_normal(&mut self) -> f64 {
        use rand::Rng;
        self.inner.sample(rand_distr::StandardNormal)
    }

    /// Standard exponential draw.
    #[inline]
    pub fn standard_exp(&mut self) -> f64 {
        use rand::Rng;
        self.inner.sample(rand_distr::Exp1)
    }
}

impl RngCore for RngStream {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    #[inline]
    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }
}

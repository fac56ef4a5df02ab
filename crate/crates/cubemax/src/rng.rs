//! Deterministic stream RNG.
//!
//! Every stochastic experiment draws from a `StreamRng` identified by
//! `(seed, stream)`. ChaCha8 is counter-based, so a draw is a pure function
//! of `(seed, stream, draw index)`: results are reproducible regardless of
//! how work is scheduled across threads, as long as each logical stream is
//! consumed sequentially. Floating-point conversion is done from raw 64-bit
//! words here rather than through distribution adapters, so the exact bit
//! semantics are pinned by this module alone.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Debug, Clone)]
pub struct StreamRng {
    inner: ChaCha8Rng,
    /// Cached second output of the Box-Muller pair.
    spare_normal: Option<f64>,
}

impl StreamRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        StreamRng {
            inner,
            spare_normal: None,
        }
    }

    /// Sub-stream id for worker `worker` of experiment component `component`.
    /// Keeps distinct sub-experiments on disjoint streams.
    pub fn stream_id(component: u32, worker: u32) -> u64 {
        ((component as u64) << 32) | worker as u64
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform on [0,1): 53 random mantissa bits.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on (0,1]: never returns exactly zero, safe under `ln`.
    #[inline]
    pub fn uniform_open(&mut self) -> f64 {
        ((self.inner.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box-Muller; the paired value is cached.
    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = self.uniform_open();
        let u2 = self.uniform();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = 2.0 * std::f64::consts::PI * u2;
        self.spare_normal = Some(radius * angle.sin());
        radius * angle.cos()
    }

    /// Fill `out` with i.i.d. uniforms on [0,1).
    pub fn fill_uniform(&mut self, out: &mut [f64]) {
        for v in out.iter_mut() {
            *v = self.uniform();
        }
    }
}

//! Seeded, splittable random streams.
//!
//! Every random quantity in the crate is drawn from a [`SeededRng`] addressed
//! by a `(seed, stream)` pair. The generator is ChaCha8 with its native 64-bit
//! stream selector, so distinct stream ids give independent sequences for the
//! same seed and no draw depends on scheduling order. Standard normals come
//! from the ziggurat sampler in `rand_distr::StandardNormal`.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{Matrix, Vector};

/// Stream ids used when building a problem instance from one cell seed.
pub mod streams {
    pub const THETA: u64 = 0;
    pub const FEATURE_MAP: u64 = 1;
    pub const RELATION: u64 = 2;
    pub const LATENT: u64 = 3;
    pub const FEATURE_NOISE: u64 = 4;
    pub const FRESH_SAMPLES: u64 = 5;
    pub const ORACLE: u64 = 6;
    pub const ORACLE_AUX: u64 = 7;
}

#[derive(Clone, Debug)]
pub struct SeededRng {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        SeededRng {
            seed,
            stream,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn standard_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.inner)
    }

    pub fn fill_standard_normal(&mut self, out: &mut [f64]) {
        for x in out {
            *x = StandardNormal.sample(&mut self.inner);
        }
    }

    pub fn gaussian_vector(&mut self, len: usize) -> Vector {
        Vector::from_fn(len, |_, _| self.standard_normal())
    }

    /// Entries are drawn row by row.
    pub fn gaussian_matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self.standard_normal();
            }
        }
        m
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

impl RngCore for SeededRng {
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

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed from a master seed and a path of indices, e.g.
/// `(p_index, rep)` for one sweep cell. Pure and order-independent across cells.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix64(master), |acc, &part| {
        splitmix64(acc ^ splitmix64(part))
    })
}

//! The single seeded generator used for every random draw.
//!
//! ChaCha8 is a counter-based stream cipher generator: a `u64` seed plus a
//! stream index fully determine the sequence, so parallel runs are
//! reproducible per run index.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub type Rng = ChaCha8Rng;

/// Generator for `seed` on the given stream.
pub fn seeded(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn standard_normals(rng: &mut Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

/// Starting point for the quadratic benchmarks: i.i.d. `N(0, 1/n)` entries,
/// so `‖q‖ ≈ 1`. Drawn on stream 1, disjoint from the matrix draws.
pub fn initial_point(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = seeded(seed, 1);
    let scale = 1.0 / (n as f64).sqrt();
    standard_normals(&mut rng, n).into_iter().map(|x| x * scale).collect()
}

//! Seeded randomness.
//!
//! All generators in this crate are [`Xoshiro256PlusPlus`] seeded through
//! SplitMix64 (`seed_from_u64`), so a 64-bit seed reproduces the same stream on
//! every platform. Uniform floats are `(next_u64 >> 11) · 2⁻⁵³` and fair bits are
//! drawn with `Rng::random::<bool>()`; Gaussians use `rand_distr::StandardNormal`.

use rand::SeedableRng;
pub use rand_xoshiro::Xoshiro256PlusPlus;

pub type DiscRng = Xoshiro256PlusPlus;

/// Generator for `seed`, used for matrix generation and single solver runs.
pub fn seeded(seed: u64) -> DiscRng {
    DiscRng::seed_from_u64(seed)
}

/// A second, non-overlapping stream for `seed` (the base stream advanced by
/// 2¹²⁸ steps). Benchmarks draw the matrix from [`seeded`] and the solver's
/// randomness from here so the two never correlate.
pub fn solver_stream(seed: u64) -> DiscRng {
    let mut rng = seeded(seed);
    rng.jump();
    rng
}

//! Shared fixtures for the criterion benchmarks.

use qgeom::spinor::{random_spinor, seeded_rng};
use qgeom::Spinor;

/// `n` seeded random unit spinors.
pub fn sample_states<S: Spinor>(seed: u64, n: usize) -> Vec<S> {
    let mut rng = seeded_rng(seed);
    (0..n).map(|_| random_spinor(&mut rng)).collect()
}

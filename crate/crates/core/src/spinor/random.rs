use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{GeometryError, Result};
use crate::spinor::{AnySpinor, Spinor, Spinor1, Spinor2, Spinor3};
use crate::Complex;

/// The generator used everywhere a seed is accepted.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(re, im)
}

/// Haar-random unit spinor: i.i.d. complex normal components, normalized.
pub fn random_spinor<S: Spinor, R: Rng + ?Sized>(rng: &mut R) -> S {
    loop {
        let mut s = S::zero();
        for z in s.components_mut() {
            *z = complex_normal(rng);
        }
        // A zero draw has probability zero, but stay total.
        if let Ok(u) = s.normalized() {
            return u;
        }
    }
}

/// Deterministic random state of 1, 2 or 3 qubits.
pub fn random_state(qubits: usize, seed: u64) -> Result<AnySpinor> {
    let mut rng = seeded_rng(seed);
    match qubits {
        1 => Ok(AnySpinor::One(random_spinor::<Spinor1, _>(&mut rng))),
        2 => Ok(AnySpinor::Two(random_spinor::<Spinor2, _>(&mut rng))),
        3 => Ok(AnySpinor::Three(random_spinor::<Spinor3, _>(&mut rng))),
        n => Err(GeometryError::UnsupportedQubits(n)),
    }
}

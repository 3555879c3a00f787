use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{StateVector, C64};

/// Haar-random pure state: i.i.d. standard complex Gaussian amplitudes, normalized.
pub fn haar_state(dim: usize, seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_state_from(dim, &mut rng)
}

pub fn haar_state_from<R: rand::Rng + ?Sized>(dim: usize, rng: &mut R) -> StateVector {
    let amps = (0..dim)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re, im)
        })
        .collect();
    let mut s = StateVector::new(amps);
    s.normalize();
    s
}

//! Seeded random sampling of octonions, units and slice points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{ImaginaryUnit, Octonion};

/// The generator used by every probe set; reproducible from a `u64` seed.
pub type ProbeRng = ChaCha8Rng;

pub fn rng(seed: u64) -> ProbeRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Octonion with independent standard normal coefficients.
pub fn octonion<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
    Octonion::new(std::array::from_fn(|_| rng.sample(StandardNormal)))
}

/// Uniformly distributed point of the unit sphere.
pub fn unit<R: Rng + ?Sized>(rng: &mut R) -> ImaginaryUnit {
    loop {
        let mut q = octonion(rng);
        q = q - Octonion::real(q.re());
        if q.norm() > 1e-3 {
            return ImaginaryUnit::normalized(q).expect("nonzero imaginary part");
        }
    }
}

/// Real vector with entries uniform in `[lo, hi)`.
pub fn real_vec<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(lo..hi)).collect()
}

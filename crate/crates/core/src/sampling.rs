//! Seeded random inputs for invariant checks.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fields::{DiscreteModeField, Mode, Normalization};
use crate::mode_algebra::{MetricParams, Momentum3, PhysicsConfig};
use crate::C64;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Momentum with components uniform in [−kmax, kmax], rejecting |k| < 1e-3.
pub fn momentum<R: Rng>(rng: &mut R, kmax: f64) -> Momentum3 {
    loop {
        let k = Momentum3::new(rng.gen_range(-kmax..kmax), rng.gen_range(-kmax..kmax), rng.gen_range(-kmax..kmax));
        if k.norm() > 1e-3 {
            return k;
        }
    }
}

pub fn complex<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Field with `n` distinct random momenta and random coefficients in all sectors.
pub fn field<R: Rng>(rng: &mut R, cfg: PhysicsConfig, n: usize, kmax: f64) -> DiscreteModeField {
    let modes = (0..n)
        .map(|_| Mode { k: momentum(rng, kmax), c: [[(); 3]; 2].map(|r| r.map(|_| complex(rng))) })
        .collect();
    DiscreteModeField::new(cfg, modes, Normalization::Unit).expect("random momenta are distinct")
}

/// Field on a fixed momentum set with fresh random coefficients.
pub fn field_on<R: Rng>(rng: &mut R, cfg: PhysicsConfig, ks: &[Momentum3]) -> DiscreteModeField {
    let modes = ks.iter().map(|k| Mode { k: *k, c: [[(); 3]; 2].map(|r| r.map(|_| complex(rng))) }).collect();
    DiscreteModeField::new(cfg, modes, Normalization::Unit).expect("momenta must be distinct")
}

/// α values with modulus in [0.3, 2] and random phase.
pub fn metric_params<R: Rng>(rng: &mut R) -> MetricParams {
    let a = [(); 6].map(|_| C64::from_polar(rng.gen_range(0.3..2.0), rng.gen_range(0.0..std::f64::consts::TAU)));
    MetricParams::from_flat(a).expect("moduli are bounded away from zero")
}

pub fn config<R: Rng>(rng: &mut R) -> PhysicsConfig {
    PhysicsConfig::new(rng.gen_range(0.3..3.0), rng.gen_range(0.2..4.0), rng.gen_range(0.5..2.0)).expect("positive ranges")
}

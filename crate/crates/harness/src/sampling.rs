//! Deterministic sampling utilities. Every experiment draws from its own
//! ChaCha substream keyed by (seed, unit index), so adding or reordering
//! experiments never perturbs the draws of another.

use minbasis::{C64, CVector64};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn substream(seed: u64, unit: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(unit);
    rng
}

/// Uniform point of the closed unit disc (area measure).
pub fn uniform_disc(rng: &mut ChaCha8Rng) -> C64 {
    let r: f64 = rng.gen::<f64>().sqrt();
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    C64::from_polar(r, theta)
}

/// Standard complex gaussian entry.
pub fn gaussian_c64(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(gaussian(rng), gaussian(rng))
}

/// Box-Muller draw from N(0, 1).
pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    (-2.0 * u1.ln()).sqrt() * u2.cos()
}

/// Point of the frame polydisc `q + sum zeta_j e_j` with `|zeta_j| < radii[j]`,
/// each factor uniform on its disc.
pub fn sample_frame_polydisc(
    rng: &mut ChaCha8Rng,
    q: &CVector64,
    vectors: &[CVector64],
    radii: &[f64],
) -> CVector64 {
    let mut z = q.clone();
    for (e, &r) in vectors.iter().zip(radii) {
        let zeta = uniform_disc(rng) * r;
        z = z.add(&e.scale(zeta));
    }
    z
}

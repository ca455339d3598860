//! Seeded rational perturbations.

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::scalar::Scalar;
use super::vector::Vector;
use super::KernelError;

/// Default bound on the denominators of perturbation offsets (relative to
/// `eps`): offsets are `eps · n / 2^16` with `|n| < 2^16`.
pub const DEFAULT_DENOMINATOR_BOUND: u64 = 1 << 16;

/// Deterministic generator for a seed.
pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes a tag into a seed (splitmix64 finalizer) so independent consumers of
/// one user seed never share a stream.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed
        .wrapping_add(tag.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A rational `n / bound` with `|n| < bound`, drawn uniformly.
pub fn unit_offset(rng: &mut impl Rng, bound: u64) -> Scalar {
    let b = bound as i64;
    let n = rng.gen_range(-(b - 1)..=(b - 1));
    Scalar::new(BigInt::from(n), BigInt::from(b))
}

pub fn random_rational_perturbation(
    v: &Vector,
    eps: &Scalar,
    seed: u64,
) -> Result<Vector, KernelError> {
    random_rational_perturbation_with(v, eps, seed, DEFAULT_DENOMINATOR_BOUND)
}

/// Returns `v'` with `|v'ᵢ − vᵢ| < eps` in every coordinate. The offsets are
/// `eps · n / bound` for integers `|n| < bound`, drawn from `seed`.
pub fn random_rational_perturbation_with(
    v: &Vector,
    eps: &Scalar,
    seed: u64,
    bound: u64,
) -> Result<Vector, KernelError> {
    if !eps.is_positive() {
        return Err(KernelError::NonPositiveEps(eps.clone()));
    }
    let mut rng = rng_for(seed);
    Ok(v.coords()
        .iter()
        .map(|c| c + eps * unit_offset(&mut rng, bound.max(2)))
        .collect::<Vec<_>>()
        .into())
}

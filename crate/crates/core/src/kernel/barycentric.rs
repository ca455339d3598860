use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::scalar::Scalar;
use super::KernelError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BarycentricPosition {
    Interior,
    Boundary,
    Outside,
}

/// Classifies a point of a closed simplex given its barycentric coordinates.
pub fn barycentric_position(coords: &[Scalar]) -> Result<BarycentricPosition, KernelError> {
    let sum: Scalar = coords.iter().sum();
    if !sum.is_one() {
        return Err(KernelError::BarycentricSum(sum));
    }
    Ok(classify_unchecked(coords))
}

fn classify_unchecked(coords: &[Scalar]) -> BarycentricPosition {
    if coords.iter().any(Signed::is_negative) {
        BarycentricPosition::Outside
    } else if coords.iter().any(Zero::is_zero) {
        BarycentricPosition::Boundary
    } else {
        BarycentricPosition::Interior
    }
}

/// Classifies free parameters `nᵢ / den` (with `den > 0`) together with the
/// eliminated coordinate `1 − Σ nᵢ/den`, using integer signs only.
pub fn classify_scaled(numerators: &[BigInt], den: &BigInt) -> BarycentricPosition {
    let rest = den - numerators.iter().sum::<BigInt>();
    let all = numerators.iter().chain(std::iter::once(&rest));
    if all.clone().any(Signed::is_negative) {
        BarycentricPosition::Outside
    } else if all.into_iter().any(Zero::is_zero) {
        BarycentricPosition::Boundary
    } else {
        BarycentricPosition::Interior
    }
}

/// Completes the free parameters `λ₁ … λ_d` of a `d`-simplex with the
/// eliminated last coordinate `1 − Σλ`.
pub fn complete(params: &[Scalar]) -> Vec<Scalar> {
    let mut full = params.to_vec();
    let rest = Scalar::one() - params.iter().sum::<Scalar>();
    full.push(rest);
    full
}

/// Completes edge-vector parameters `a₁ … a_d` (offsets from vertex 0) into
/// barycentric coordinates `(1 − Σa, a₁, …, a_d)`.
pub fn complete_from_first(params: &[Scalar]) -> Vec<Scalar> {
    let mut full = Vec::with_capacity(params.len() + 1);
    full.push(Scalar::one() - params.iter().sum::<Scalar>());
    full.extend(params.iter().cloned());
    full
}

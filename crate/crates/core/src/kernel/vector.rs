use std::ops::Index;

use super::scalar::{self, Scalar};
use super::KernelError;
use num_traits::Zero;

/// A point or direction in ℚⁿ. The length is fixed at construction and every
/// binary operation checks that both operands agree on it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Scalar::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| scalar::int(c)).collect())
    }

    pub fn basis(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = scalar::int(1);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Vector) -> Result<(), KernelError> {
        if self.dim() != other.dim() {
            return Err(KernelError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Vector) -> Result<Vector, KernelError> {
        self.check(other)?;
        Ok(Vector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector, KernelError> {
        self.check(other)?;
        Ok(Vector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scale(&self, factor: &Scalar) -> Vector {
        Vector(self.0.iter().map(|a| a * factor).collect())
    }

    pub fn dot(&self, other: &Vector) -> Result<Scalar, KernelError> {
        self.check(other)?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .fold(Scalar::zero(), |acc, (a, b)| acc + a * b))
    }

    /// Sup-norm distance.
    pub fn max_distance(&self, other: &Vector) -> Result<Scalar, KernelError> {
        let diff = self.sub(other)?;
        Ok(scalar::abs_max(diff.coords()))
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &Vector) -> Vector {
        let mut coords = self.0.clone();
        coords.extend(other.0.iter().cloned());
        Vector(coords)
    }

    /// Affine combination `Σ weights[i] · points[i]`. Panics on an empty point
    /// list; lengths are checked.
    pub fn combination(points: &[&Vector], weights: &[Scalar]) -> Result<Vector, KernelError> {
        if points.len() != weights.len() {
            return Err(KernelError::DimensionMismatch {
                expected: points.len(),
                found: weights.len(),
            });
        }
        let dim = points[0].dim();
        let mut acc = Vector::zeros(dim);
        for (p, w) in points.iter().zip(weights) {
            acc.check(p)?;
            for (a, c) in acc.0.iter_mut().zip(&p.0) {
                *a += c * w;
            }
        }
        Ok(acc)
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;

    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl From<Vec<Scalar>> for Vector {
    fn from(coords: Vec<Scalar>) -> Self {
        Vector(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::scalar::ratio;

    #[test]
    fn mismatched_lengths_are_rejected() {
        let a = Vector::from_ints(&[1, 2]);
        let b = Vector::from_ints(&[1, 2, 3]);
        assert!(matches!(
            a.add(&b),
            Err(KernelError::DimensionMismatch { .. })
        ));
        assert!(a.dot(&b).is_err());
    }

    #[test]
    fn combination_is_exact() {
        let a = Vector::from_ints(&[3, 0]);
        let b = Vector::from_ints(&[0, 3]);
        let mid = Vector::combination(&[&a, &b], &[ratio(1, 3), ratio(2, 3)]).unwrap();
        assert_eq!(mid, Vector::from_ints(&[1, 2]));
        assert_eq!(a.max_distance(&b).unwrap(), scalar::int(3));
    }
}

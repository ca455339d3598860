//! Closed-simplex intersection tests.

use num_traits::{One, Zero};

use super::feasibility::LinearSystem;
use super::scalar::Scalar;
use super::vector::Vector;

/// Axis-aligned bounding box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundingBox {
    pub lo: Vec<Scalar>,
    pub hi: Vec<Scalar>,
}

impl BoundingBox {
    /// Box of a non-empty point set of common dimension.
    pub fn of<'a>(points: impl IntoIterator<Item = &'a Vector>) -> Self {
        let mut iter = points.into_iter();
        let first = iter.next().expect("bounding box of an empty set");
        let mut lo = first.coords().to_vec();
        let mut hi = lo.clone();
        for p in iter {
            for (i, c) in p.coords().iter().enumerate() {
                if *c < lo[i] {
                    lo[i] = c.clone();
                }
                if *c > hi[i] {
                    hi[i] = c.clone();
                }
            }
        }
        BoundingBox { lo, hi }
    }

    pub fn intersect(&self, other: &BoundingBox) -> Option<BoundingBox> {
        let mut lo = Vec::with_capacity(self.lo.len());
        let mut hi = Vec::with_capacity(self.lo.len());
        for i in 0..self.lo.len() {
            let l = (&self.lo[i]).max(&other.lo[i]);
            let h = (&self.hi[i]).min(&other.hi[i]);
            if l > h {
                return None;
            }
            lo.push(l.clone());
            hi.push(h.clone());
        }
        Some(BoundingBox { lo, hi })
    }

    pub fn overlaps(&self, other: &BoundingBox) -> bool {
        (0..self.lo.len()).all(|i| self.lo[i] <= other.hi[i] && other.lo[i] <= self.hi[i])
    }

    pub fn contains(&self, p: &Vector) -> bool {
        p.coords()
            .iter()
            .enumerate()
            .all(|(i, c)| self.lo[i] <= *c && *c <= self.hi[i])
    }
}

/// Decides whether closed simplices (given by vertex lists in a common ℚⁿ)
/// share a point. On success returns barycentric coordinates in each simplex
/// of one common point.
pub fn common_point(simplices: &[Vec<&Vector>]) -> Option<Vec<Vec<Scalar>>> {
    let dim = simplices[0][0].dim();
    let offsets: Vec<usize> = simplices
        .iter()
        .scan(0, |acc, s| {
            let start = *acc;
            *acc += s.len();
            Some(start)
        })
        .collect();
    let vars: usize = simplices.iter().map(Vec::len).sum();
    let mut system = LinearSystem::new(vars);
    for (s, &off) in simplices.iter().zip(&offsets) {
        let mut row = vec![Scalar::zero(); vars];
        for v in 0..s.len() {
            row[off + v] = Scalar::one();
            system.nonnegative(off + v);
        }
        system.equal(row, Scalar::one());
    }
    // Image of simplex 0 equals image of simplex j, coordinate by coordinate.
    for j in 1..simplices.len() {
        for c in 0..dim {
            let mut row = vec![Scalar::zero(); vars];
            for (v, p) in simplices[0].iter().enumerate() {
                row[v] = p[c].clone();
            }
            for (v, p) in simplices[j].iter().enumerate() {
                row[offsets[j] + v] = -p[c].clone();
            }
            system.equal(row, Scalar::zero());
        }
    }
    let x = system.feasible_point()?;
    Some(
        simplices
            .iter()
            .zip(&offsets)
            .map(|(s, &off)| x[off..off + s.len()].to_vec())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::scalar::ratio;

    #[test]
    fn three_segments_through_origin() {
        let a = [Vector::from_ints(&[-1, 0]), Vector::from_ints(&[1, 0])];
        let b = [Vector::from_ints(&[0, -1]), Vector::from_ints(&[0, 1])];
        let c = [Vector::from_ints(&[-1, -1]), Vector::from_ints(&[1, 1])];
        let simplices = vec![a.iter().collect(), b.iter().collect(), c.iter().collect()];
        let bary = common_point(&simplices).unwrap();
        for coords in &bary {
            assert_eq!(coords, &vec![ratio(1, 2), ratio(1, 2)]);
        }
    }

    #[test]
    fn touching_at_an_endpoint_counts() {
        let a = [Vector::from_ints(&[0, 0]), Vector::from_ints(&[1, 0])];
        let b = [Vector::from_ints(&[1, 0]), Vector::from_ints(&[2, 5])];
        assert!(common_point(&[a.iter().collect(), b.iter().collect()]).is_some());
        let c = [Vector::from_ints(&[2, 0]), Vector::from_ints(&[3, 0])];
        assert!(common_point(&[a.iter().collect(), c.iter().collect()]).is_none());
    }

    #[test]
    fn boxes() {
        let pts = [Vector::from_ints(&[0, 3]), Vector::from_ints(&[2, -1])];
        let b = BoundingBox::of(pts.iter());
        assert_eq!(b.lo, Vector::from_ints(&[0, -1]).into_coords());
        let far = BoundingBox::of([Vector::from_ints(&[5, 5])].iter());
        assert!(!b.overlaps(&far));
        assert!(b.intersect(&far).is_none());
        assert!(b.contains(&Vector::from_ints(&[1, 1])));
    }
}

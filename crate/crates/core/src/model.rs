//! Triangulated closed oriented manifolds, PL maps and ornaments.

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::kernel::{
    common_point, derive_seed, random_rational_perturbation, BoundingBox, KernelError, Scalar,
    Vector,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("facet {facet} has {found} vertices, expected {expected}")]
    FacetSize {
        facet: usize,
        expected: usize,
        found: usize,
    },
    #[error("facet {facet} references vertex {vertex} but only {vertex_count} exist")]
    VertexOutOfRange {
        facet: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("{found} vertex images given for {expected} vertices")]
    ImageCount { expected: usize, found: usize },
    #[error("vertex {vertex} image has length {found}, ambient dimension is {expected}")]
    ImageLength {
        vertex: usize,
        expected: usize,
        found: usize,
    },
    #[error("components live in different ambient dimensions {0:?}")]
    AmbientMismatch([usize; 3]),
    #[error("no valid perturbation found after {0} attempts")]
    PerturbationExhausted(usize),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// A combinatorial closed oriented pseudomanifold. Each facet lists `dim + 1`
/// vertex indices; the listed order is the facet's orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulatedManifold {
    dim: usize,
    vertex_count: usize,
    facets: Vec<Vec<usize>>,
}

/// Why a complex fails to be a connected closed oriented pseudomanifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ManifoldDefect {
    Empty,
    RepeatedVertex {
        facet: usize,
    },
    /// A codimension-one face lying in a number of facets other than two.
    Ridge {
        face: Vec<usize>,
        facets: Vec<usize>,
    },
    /// Both facets induce the same orientation on their common face.
    Incoherent {
        face: Vec<usize>,
        facets: [usize; 2],
    },
    /// `facet` is not reachable from facet 0 through shared faces.
    Disconnected {
        components: usize,
        facet: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldReport {
    pub defect: Option<ManifoldDefect>,
}

impl ManifoldReport {
    pub fn is_valid(&self) -> bool {
        self.defect.is_none()
    }
}

/// Sorts `face` in place and returns the parity (`±1`) of the permutation.
fn sort_with_parity(face: &mut [usize]) -> i8 {
    let mut sign = 1;
    for i in 1..face.len() {
        let mut j = i;
        while j > 0 && face[j - 1] > face[j] {
            face.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}

impl TriangulatedManifold {
    pub fn new(
        dim: usize,
        vertex_count: usize,
        facets: Vec<Vec<usize>>,
    ) -> Result<Self, ModelError> {
        for (f, facet) in facets.iter().enumerate() {
            if facet.len() != dim + 1 {
                return Err(ModelError::FacetSize {
                    facet: f,
                    expected: dim + 1,
                    found: facet.len(),
                });
            }
            if let Some(&vertex) = facet.iter().find(|&&v| v >= vertex_count) {
                return Err(ModelError::VertexOutOfRange {
                    facet: f,
                    vertex,
                    vertex_count,
                });
            }
        }
        Ok(TriangulatedManifold {
            dim,
            vertex_count,
            facets,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// The same complex with a transposition applied to every facet.
    pub fn reversed(&self) -> TriangulatedManifold {
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let mut g = f.clone();
                if g.len() >= 2 {
                    g.swap(0, 1);
                }
                g
            })
            .collect();
        TriangulatedManifold {
            facets,
            ..self.clone()
        }
    }

    /// Checks the pseudomanifold, orientation, connectivity and
    /// simplex-nondegeneracy conditions.
    pub fn validate(&self) -> ManifoldReport {
        ManifoldReport {
            defect: self.find_defect(),
        }
    }

    fn find_defect(&self) -> Option<ManifoldDefect> {
        if self.facets.is_empty() {
            return Some(ManifoldDefect::Empty);
        }
        for (f, facet) in self.facets.iter().enumerate() {
            let mut sorted = facet.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Some(ManifoldDefect::RepeatedVertex { facet: f });
            }
        }
        // face (sorted) -> [(facet, induced orientation)]
        let mut faces: HashMap<Vec<usize>, Vec<(usize, i8)>> = HashMap::new();
        for (f, facet) in self.facets.iter().enumerate() {
            for omit in 0..facet.len() {
                let mut face: Vec<usize> = facet
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != omit)
                    .map(|(_, &v)| v)
                    .collect();
                let parity = sort_with_parity(&mut face);
                let sign = if omit % 2 == 0 { parity } else { -parity };
                faces.entry(face).or_default().push((f, sign));
            }
        }
        let mut entries: Vec<_> = faces.into_iter().collect();
        entries.sort();
        let mut adjacency = vec![Vec::new(); self.facets.len()];
        for (face, incident) in &entries {
            if incident.len() != 2 {
                return Some(ManifoldDefect::Ridge {
                    face: face.clone(),
                    facets: incident.iter().map(|&(f, _)| f).collect(),
                });
            }
            let (a, sa) = incident[0];
            let (b, sb) = incident[1];
            if sa == sb {
                return Some(ManifoldDefect::Incoherent {
                    face: face.clone(),
                    facets: [a, b],
                });
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let mut label = vec![usize::MAX; self.facets.len()];
        let mut components = 0;
        for start in 0..self.facets.len() {
            if label[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            label[start] = components;
            while let Some(f) = stack.pop() {
                for &g in &adjacency[f] {
                    if label[g] == usize::MAX {
                        label[g] = components;
                        stack.push(g);
                    }
                }
            }
            components += 1;
        }
        if components > 1 {
            let facet = label
                .iter()
                .position(|&c| c != 0)
                .expect("second component");
            return Some(ManifoldDefect::Disconnected { components, facet });
        }
        None
    }
}

pub fn validate_manifold(t: &TriangulatedManifold) -> ManifoldReport {
    t.validate()
}

/// A map that is affine on each facet, determined by its vertex images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLMap {
    domain: TriangulatedManifold,
    ambient_dim: usize,
    images: Vec<Vector>,
}

impl PLMap {
    pub fn new(
        domain: TriangulatedManifold,
        ambient_dim: usize,
        images: Vec<Vector>,
    ) -> Result<Self, ModelError> {
        if images.len() != domain.vertex_count() {
            return Err(ModelError::ImageCount {
                expected: domain.vertex_count(),
                found: images.len(),
            });
        }
        if let Some((vertex, v)) = images
            .iter()
            .enumerate()
            .find(|(_, v)| v.dim() != ambient_dim)
        {
            return Err(ModelError::ImageLength {
                vertex,
                expected: ambient_dim,
                found: v.dim(),
            });
        }
        Ok(PLMap {
            domain,
            ambient_dim,
            images,
        })
    }

    pub fn domain(&self) -> &TriangulatedManifold {
        &self.domain
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn images(&self) -> &[Vector] {
        &self.images
    }

    pub fn facet_images(&self, facet: usize) -> Vec<&Vector> {
        self.domain.facets[facet]
            .iter()
            .map(|&v| &self.images[v])
            .collect()
    }

    pub fn facet_box(&self, facet: usize) -> BoundingBox {
        BoundingBox::of(self.facet_images(facet))
    }

    /// Image of the point with the given barycentric coordinates in `facet`.
    pub fn evaluate(&self, facet: usize, barycentric: &[Scalar]) -> Result<Vector, KernelError> {
        Vector::combination(&self.facet_images(facet), barycentric)
    }

    pub fn with_images(&self, images: Vec<Vector>) -> Result<Self, ModelError> {
        PLMap::new(self.domain.clone(), self.ambient_dim, images)
    }

    pub fn with_domain(&self, domain: TriangulatedManifold) -> Result<Self, ModelError> {
        PLMap::new(domain, self.ambient_dim, self.images.clone())
    }
}

/// Three PL maps into a common `ℝ^m`. Whether the triple is actually free of
/// 1=2=3 points is decided by [`validate_ornament`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ornament {
    components: [PLMap; 3],
}

/// Facet triple and barycentric coordinates of a common image point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleWitness {
    pub facets: [usize; 3],
    pub barycentric: [Vec<Scalar>; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub witness: Option<TripleWitness>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.witness.is_none()
    }
}

impl Ornament {
    pub fn new(components: [PLMap; 3]) -> Result<Self, ModelError> {
        let dims = [
            components[0].ambient_dim,
            components[1].ambient_dim,
            components[2].ambient_dim,
        ];
        if dims[0] != dims[1] || dims[1] != dims[2] {
            return Err(ModelError::AmbientMismatch(dims));
        }
        Ok(Ornament { components })
    }

    pub fn components(&self) -> &[PLMap; 3] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &PLMap {
        &self.components[i]
    }

    pub fn ambient_dim(&self) -> usize {
        self.components[0].ambient_dim
    }

    pub fn domain_dims(&self) -> [usize; 3] {
        [
            self.components[0].domain.dim,
            self.components[1].domain.dim,
            self.components[2].domain.dim,
        ]
    }

    /// Flips the orientation of one component (`which` in `0..3`). Image sets
    /// are unchanged.
    pub fn reverse_component_orientation(&self, which: usize) -> Ornament {
        let mut components = self.components.clone();
        let reversed = components[which].domain.reversed();
        components[which].domain = reversed;
        Ornament { components }
    }

    pub fn with_images(&self, images: [Vec<Vector>; 3]) -> Result<Ornament, ModelError> {
        let [a, b, c] = images;
        Ornament::new([
            self.components[0].with_images(a)?,
            self.components[1].with_images(b)?,
            self.components[2].with_images(c)?,
        ])
    }

    pub fn images(&self) -> [Vec<Vector>; 3] {
        [
            self.components[0].images.clone(),
            self.components[1].images.clone(),
            self.components[2].images.clone(),
        ]
    }

    /// Bounding box of every vertex image.
    pub fn bounding_box(&self) -> BoundingBox {
        BoundingBox::of(self.components.iter().flat_map(|c| c.images.iter()))
    }

    /// The common image point described by a witness.
    pub fn witness_point(&self, w: &TripleWitness) -> Result<[Vector; 3], KernelError> {
        Ok([
            self.components[0].evaluate(w.facets[0], &w.barycentric[0])?,
            self.components[1].evaluate(w.facets[1], &w.barycentric[1])?,
            self.components[2].evaluate(w.facets[2], &w.barycentric[2])?,
        ])
    }
}

/// Pairs of facets (one from each map) whose closed images meet.
fn meeting_pairs(
    a: &PLMap,
    boxes_a: &[BoundingBox],
    b: &PLMap,
    boxes_b: &[BoundingBox],
) -> Vec<Vec<bool>> {
    (0..boxes_a.len())
        .into_par_iter()
        .map(|i| {
            (0..boxes_b.len())
                .map(|j| {
                    boxes_a[i].overlaps(&boxes_b[j])
                        && common_point(&[a.facet_images(i), b.facet_images(j)]).is_some()
                })
                .collect()
        })
        .collect()
}

/// Decides exactly whether `f₁(X₁) ∩ f₂(X₂) ∩ f₃(X₃)` is empty, treating
/// facets as closed. Returns the first witness in facet order otherwise.
pub fn validate_ornament(o: &Ornament) -> ValidationReport {
    let [c1, c2, c3] = &o.components;
    let boxes: Vec<Vec<BoundingBox>> = o
        .components
        .iter()
        .map(|c| (0..c.domain.facets.len()).map(|f| c.facet_box(f)).collect())
        .collect();
    let p12 = meeting_pairs(c1, &boxes[0], c2, &boxes[1]);
    let p13 = meeting_pairs(c1, &boxes[0], c3, &boxes[2]);
    let p23 = meeting_pairs(c2, &boxes[1], c3, &boxes[2]);
    let witness = (0..boxes[0].len()).into_par_iter().find_map_first(|i| {
        for j in 0..boxes[1].len() {
            if !p12[i][j] {
                continue;
            }
            let Some(b12) = boxes[0][i].intersect(&boxes[1][j]) else {
                continue;
            };
            for l in 0..boxes[2].len() {
                if !p13[i][l] || !p23[j][l] || !b12.overlaps(&boxes[2][l]) {
                    continue;
                }
                let simplices = [c1.facet_images(i), c2.facet_images(j), c3.facet_images(l)];
                if let Some(bary) = common_point(&simplices) {
                    let [x, y, z]: [Vec<Scalar>; 3] = bary.try_into().expect("three simplices");
                    return Some(TripleWitness {
                        facets: [i, j, l],
                        barycentric: [x, y, z],
                    });
                }
            }
        }
        None
    });
    ValidationReport { witness }
}

/// Perturbs every vertex image by less than `eps` (sup-metric) so that the
/// result is an ornament and the straight-line homotopy from `o` to it has no
/// 1=2=3 point at any time. `eps` is halved on every failed attempt.
pub fn perturb_ornament(o: &Ornament, eps: &Scalar, seed: u64) -> Result<Ornament, ModelError> {
    const MAX_ATTEMPTS: u64 = 64;
    let two = Scalar::from_integer(2.into());
    let mut radius = eps.clone();
    for attempt in 0..MAX_ATTEMPTS {
        let attempt_seed = derive_seed(seed, attempt);
        let mut images: [Vec<Vector>; 3] = Default::default();
        for (c, comp) in o.components.iter().enumerate() {
            images[c] = comp
                .images
                .iter()
                .enumerate()
                .map(|(v, p)| {
                    let s = derive_seed(attempt_seed, ((c as u64) << 32) | v as u64);
                    random_rational_perturbation(p, &radius, s)
                })
                .collect::<Result<_, _>>()?;
        }
        let candidate = o.with_images(images)?;
        if validate_ornament(&candidate).is_valid()
            && crate::sweep::is_ornament_homotopy(&crate::sweep::HomotopyTrack::straight_line(
                o, &candidate,
            ))
        {
            return Ok(candidate);
        }
        radius /= &two;
    }
    Err(ModelError::PerturbationExhausted(MAX_ATTEMPTS as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::scalar::ratio;

    fn triangle_boundary() -> TriangulatedManifold {
        TriangulatedManifold::new(1, 3, vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap()
    }

    #[test]
    fn cycle_is_valid() {
        assert!(triangle_boundary().validate().is_valid());
    }

    #[test]
    fn flipped_edge_is_incoherent() {
        let t = TriangulatedManifold::new(1, 3, vec![vec![0, 1], vec![2, 1], vec![2, 0]]).unwrap();
        assert!(matches!(
            t.validate().defect,
            Some(ManifoldDefect::Incoherent { .. })
        ));
    }

    #[test]
    fn two_cycles_are_disconnected() {
        let t = TriangulatedManifold::new(
            1,
            6,
            vec![
                vec![0, 1],
                vec![1, 2],
                vec![2, 0],
                vec![3, 4],
                vec![4, 5],
                vec![5, 3],
            ],
        )
        .unwrap();
        assert_eq!(
            t.validate().defect,
            Some(ManifoldDefect::Disconnected {
                components: 2,
                facet: 3
            })
        );
    }

    #[test]
    fn open_path_has_a_bad_ridge() {
        let t = TriangulatedManifold::new(1, 3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert!(matches!(
            t.validate().defect,
            Some(ManifoldDefect::Ridge { .. })
        ));
        let r = TriangulatedManifold::new(1, 2, vec![vec![0, 0], vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(
            r.validate().defect,
            Some(ManifoldDefect::RepeatedVertex { facet: 0 })
        );
    }

    #[test]
    fn constructor_checks_shapes() {
        assert!(matches!(
            TriangulatedManifold::new(1, 3, vec![vec![0, 1, 2]]),
            Err(ModelError::FacetSize { .. })
        ));
        assert!(matches!(
            TriangulatedManifold::new(1, 2, vec![vec![0, 5]]),
            Err(ModelError::VertexOutOfRange { .. })
        ));
        let t = triangle_boundary();
        assert!(matches!(
            PLMap::new(t.clone(), 2, vec![Vector::zeros(2); 2]),
            Err(ModelError::ImageCount { .. })
        ));
        assert!(matches!(
            PLMap::new(
                t,
                2,
                vec![Vector::zeros(2), Vector::zeros(3), Vector::zeros(2)]
            ),
            Err(ModelError::ImageLength { vertex: 1, .. })
        ));
    }

    fn segment_cycle(a: [i64; 2], b: [i64; 2]) -> PLMap {
        // A 2-vertex circle whose two edges both map onto the segment ab.
        let t = TriangulatedManifold::new(1, 2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        PLMap::new(t, 2, vec![Vector::from_ints(&a), Vector::from_ints(&b)]).unwrap()
    }

    #[test]
    fn concurrent_segments_are_not_an_ornament() {
        let o = Ornament::new([
            segment_cycle([-1, 0], [1, 0]),
            segment_cycle([0, -1], [0, 1]),
            segment_cycle([-1, -1], [1, 1]),
        ])
        .unwrap();
        let report = validate_ornament(&o);
        let w = report.witness.expect("origin is a 1=2=3 point");
        for p in o.witness_point(&w).unwrap() {
            assert_eq!(p, Vector::zeros(2));
        }
    }

    fn small_triangle(center: [i64; 2]) -> PLMap {
        let c = Vector::from_ints(&center);
        let offsets = [[0, 0], [1, 0], [0, 1]];
        let images = offsets
            .iter()
            .map(|o| c.add(&Vector::from_ints(o)).unwrap())
            .collect();
        PLMap::new(triangle_boundary(), 2, images).unwrap()
    }

    #[test]
    fn disjoint_triangles_are_an_ornament() {
        let o = Ornament::new([
            small_triangle([0, 0]),
            small_triangle([5, 0]),
            small_triangle([0, 5]),
        ])
        .unwrap();
        assert!(validate_ornament(&o).is_valid());
    }

    #[test]
    fn ambient_dims_must_agree() {
        let t = triangle_boundary();
        let m3 = PLMap::new(t, 3, vec![Vector::zeros(3); 3]).unwrap();
        assert!(matches!(
            Ornament::new([small_triangle([0, 0]), small_triangle([4, 4]), m3]),
            Err(ModelError::AmbientMismatch(_))
        ));
    }

    #[test]
    fn perturbation_of_separated_triangles_stays_close() {
        let o = Ornament::new([
            small_triangle([0, 0]),
            small_triangle([5, 0]),
            small_triangle([0, 5]),
        ])
        .unwrap();
        let eps = ratio(1, 100);
        let p = perturb_ornament(&o, &eps, 3).unwrap();
        assert!(validate_ornament(&p).is_valid());
        for c in 0..3 {
            for (a, b) in o.component(c).images().iter().zip(p.component(c).images()) {
                assert!(a.max_distance(b).unwrap() < eps);
            }
        }
    }
}

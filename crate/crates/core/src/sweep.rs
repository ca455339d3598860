//! μ as the algebraic number of 1=2=3 points of a generic homotopy.
//!
//! A homotopy `h_t` is stored as a keyframed track: vertex images at rational
//! times `0 = t₀ < … < t_n = 1`, interpolated linearly in between. The track
//! map `(x, t) ↦ (h_t(x), t)` is made affine on cells by cutting every prism
//! `σ × [t_j, t_{j+1}]` with the staircase triangulation induced by the global
//! vertex order, so each pair of adjacent prisms agrees on its common face.
//! A 1=2=3 point is then a solution of one square system per cell triple.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::degree::check_dimensions;
use crate::error::MuError;
use crate::kernel::{
    classify_scaled, common_point, complete_from_first, derive_seed, det_sign, is_consistent,
    random_rational_perturbation, rng_for, solve_square_scaled, unit_offset, BarycentricPosition,
    BoundingBox, Matrix, Scalar, Vector, DEFAULT_DENOMINATOR_BOUND,
};
use crate::model::{validate_ornament, Ornament, PLMap, TriangulatedManifold};

/// Orientation constant relating the sign of a 1=2=3 point to the
/// transversal intersection sign of `(x, y, z, t) ↦ (h₁−h₂, h₂−h₃)` with zero,
/// fixed so that the signed count along a track equals `μ(start) − μ(end)`.
/// See [`time_row_parity`] for the block determinant actually evaluated.
/// Calibrated once on the `k = 1` Borromean ornament.
pub const SWEEP_SIGN: i8 = 1;

/// Upper bound on keyframe repairs in [`resolve_generic`].
pub const MAX_TRACK_REPAIRS: u64 = 64;

/// Sign relating `det [[A₁, −A₂, 0], [0, A₂, −A₃]]` to the Jacobian of
/// `(h₁−h₂, h₂−h₃)` in `(x, y, z, t)`. Substituting `t₃ = τ`, `t₂ = τ + α`,
/// `t₁ = τ + α + β` and expanding along the two time rows leaves the Jacobian
/// with the factor `(−1)^{m+1}`, so the block determinant alone would flip
/// sign between odd and even `k`.
pub fn time_row_parity(m: usize) -> i8 {
    if m.is_multiple_of(2) {
        -1
    } else {
        1
    }
}

/// A keyframed PL homotopy of three maps with fixed domains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyTrack {
    domains: [TriangulatedManifold; 3],
    ambient_dim: usize,
    times: Vec<Scalar>,
    frames: Vec<[Vec<Vector>; 3]>,
}

/// One top-dimensional simplex of a triangulated prism `σ × [t_j, t_{j+1}]`:
/// vertices tagged by `(vertex index, level)` with level 0 at `t_j` and 1 at
/// `t_{j+1}`, listed in an order that agrees with the product orientation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrismCell {
    pub component: usize,
    pub facet: usize,
    pub interval: usize,
    pub vertices: Vec<(usize, u8)>,
}

/// An isolated transverse 1=2=3 point of a track.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedTriplePoint {
    pub cells: [PrismCell; 3],
    /// Barycentric coordinates in each cell, all strictly positive.
    pub barycentric: [Vec<Scalar>; 3],
    /// Common image in `ℝ^m × I`; the last coordinate is the time.
    pub point: Vector,
    pub time: Scalar,
    pub sign: i8,
}

/// A track on which detection succeeded, with its triple points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOutcome {
    pub track: HomotopyTrack,
    pub points: Vec<SignedTriplePoint>,
}

impl SweepOutcome {
    pub fn sign_sum(&self) -> i64 {
        self.points.iter().map(|p| i64::from(p.sign)).sum()
    }
}

fn malformed(msg: impl Into<String>) -> MuError {
    MuError::MalformedTrack(msg.into())
}

impl HomotopyTrack {
    pub fn new(
        domains: [TriangulatedManifold; 3],
        ambient_dim: usize,
        times: Vec<Scalar>,
        frames: Vec<[Vec<Vector>; 3]>,
    ) -> Result<Self, MuError> {
        if times.len() < 2 || times.len() != frames.len() {
            return Err(malformed("need at least two keyframes, one per time"));
        }
        if !times[0].is_zero() || !times[times.len() - 1].is_one() {
            return Err(malformed("keyframe times must run from 0 to 1"));
        }
        if times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(malformed("keyframe times must increase strictly"));
        }
        for frame in &frames {
            for (c, images) in frame.iter().enumerate() {
                if images.len() != domains[c].vertex_count() {
                    return Err(malformed(format!(
                        "component {c} has the wrong vertex count"
                    )));
                }
                if images.iter().any(|v| v.dim() != ambient_dim) {
                    return Err(malformed(format!("component {c} has a wrong-length image")));
                }
            }
        }
        Ok(HomotopyTrack {
            domains,
            ambient_dim,
            times,
            frames,
        })
    }

    /// Two-keyframe track from `a` to `b`; both must share domains.
    pub fn straight_line(a: &Ornament, b: &Ornament) -> Self {
        HomotopyTrack {
            domains: domains_of(a),
            ambient_dim: a.ambient_dim(),
            times: vec![Scalar::zero(), Scalar::one()],
            frames: vec![a.images(), b.images()],
        }
    }

    pub fn domains(&self) -> &[TriangulatedManifold; 3] {
        &self.domains
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn times(&self) -> &[Scalar] {
        &self.times
    }

    pub fn frames(&self) -> &[[Vec<Vector>; 3]] {
        &self.frames
    }

    pub fn keyframe(&self, j: usize) -> Ornament {
        let [a, b, c] = self.frames[j].clone();
        let maps = [a, b, c]
            .into_iter()
            .enumerate()
            .map(|(i, imgs)| {
                PLMap::new(self.domains[i].clone(), self.ambient_dim, imgs)
                    .expect("track shapes are checked at construction")
            })
            .collect::<Vec<_>>();
        let [x, y, z]: [PLMap; 3] = maps.try_into().expect("three components");
        Ornament::new([x, y, z]).expect("components share the ambient dimension")
    }

    pub fn start(&self) -> Ornament {
        self.keyframe(0)
    }

    pub fn end(&self) -> Ornament {
        self.keyframe(self.times.len() - 1)
    }

    /// The same homotopy run backwards, `t ↦ 1 − t`.
    pub fn reversed(&self) -> Self {
        let times = self.times.iter().rev().map(|t| Scalar::one() - t).collect();
        let frames = self.frames.iter().rev().cloned().collect();
        HomotopyTrack {
            times,
            frames,
            ..self.clone()
        }
    }

    /// Runs `self` on `[0, 1/2]` and `other` on `[1/2, 1]`. The end of `self`
    /// must coincide with the start of `other`.
    pub fn concat(&self, other: &HomotopyTrack) -> Result<Self, MuError> {
        if self.domains != other.domains || self.ambient_dim != other.ambient_dim {
            return Err(malformed("concatenated tracks must share domains"));
        }
        if self.frames.last() != other.frames.first() {
            return Err(malformed(
                "concatenated tracks must meet at a common ornament",
            ));
        }
        let half = Scalar::new(1.into(), 2.into());
        let mut times: Vec<Scalar> = self.times.iter().map(|t| t * &half).collect();
        let mut frames = self.frames.clone();
        for (t, f) in other.times.iter().zip(&other.frames).skip(1) {
            times.push(&half + t * &half);
            frames.push(f.clone());
        }
        Ok(HomotopyTrack {
            times,
            frames,
            ..self.clone()
        })
    }

    fn interpolate(&self, interval: usize, t: &Scalar) -> [Vec<Vector>; 3] {
        let (t0, t1) = (&self.times[interval], &self.times[interval + 1]);
        let w = (t - t0) / (t1 - t0);
        std::array::from_fn(|c| {
            self.frames[interval][c]
                .iter()
                .zip(&self.frames[interval + 1][c])
                .map(|(a, b)| {
                    Vector::combination(&[a, b], &[Scalar::one() - &w, w.clone()])
                        .expect("equal lengths")
                })
                .collect()
        })
    }

    fn perturbed(images: &[Vec<Vector>; 3], eps: &Scalar, seed: u64) -> [Vec<Vector>; 3] {
        let mut out: [Vec<Vector>; 3] = Default::default();
        for c in 0..3 {
            out[c] = images[c]
                .iter()
                .enumerate()
                .map(|(v, p)| {
                    let s = derive_seed(seed, ((c as u64) << 32) | v as u64);
                    random_rational_perturbation(p, eps, s).expect("eps is positive")
                })
                .collect();
        }
        out
    }

    /// Moves the track off a degeneracy found in `interval` near `time`.
    /// Interior keyframes at the degenerate time are perturbed; otherwise a
    /// perturbed keyframe is inserted at the midpoint of the interval. The
    /// endpoint ornaments never change.
    pub fn repair(&mut self, interval: usize, time: &Scalar, eps: &Scalar, seed: u64) {
        let last = self.times.len() - 1;
        for j in [interval, interval + 1] {
            if j > 0 && j < last && self.times[j] == *time {
                self.frames[j] = Self::perturbed(&self.frames[j], eps, seed);
                return;
            }
        }
        let two = Scalar::from_integer(2.into());
        let mid = (&self.times[interval] + &self.times[interval + 1]) / two;
        let images = Self::perturbed(&self.interpolate(interval, &mid), eps, seed);
        self.times.insert(interval + 1, mid);
        self.frames.insert(interval + 1, images);
    }

    /// Bounding box of all keyframe images.
    pub fn bounding_box(&self) -> BoundingBox {
        BoundingBox::of(self.frames.iter().flat_map(|f| f.iter().flatten()))
    }
}

fn domains_of(o: &Ornament) -> [TriangulatedManifold; 3] {
    [
        o.component(0).domain().clone(),
        o.component(1).domain().clone(),
        o.component(2).domain().clone(),
    ]
}

/// Staircase triangulation of `σ × I` for a facet listed as `v₀ … v_d`.
///
/// With `w₀ < … < w_d` the vertices in global order, cell `l` is
/// `(w₀,0) … (w_l,0) (w_l,1) … (w_d,1)`. Each cell is then reordered, if
/// needed, to agree with the orientation `(σ, ∂_t)`.
pub fn staircase(facet: &[usize]) -> Vec<Vec<(usize, u8)>> {
    let d = facet.len() - 1;
    let mut sorted = facet.to_vec();
    sorted.sort_unstable();
    // Abstract coordinates: listed vertex i ↦ e_i (v₀ ↦ 0), level ↦ last axis.
    let coord = |&(v, level): &(usize, u8)| -> Vec<Scalar> {
        let pos = facet.iter().position(|&w| w == v).expect("vertex of facet");
        let mut c = vec![Scalar::zero(); d + 1];
        if pos > 0 {
            c[pos - 1] = Scalar::one();
        }
        c[d] = Scalar::from_integer(level.into());
        c
    };
    (0..=d)
        .map(|l| {
            let mut cell: Vec<(usize, u8)> = sorted[..=l].iter().map(|&v| (v, 0)).collect();
            cell.extend(sorted[l..].iter().map(|&v| (v, 1)));
            let origin = coord(&cell[0]);
            let rows = cell[1..]
                .iter()
                .map(|p| coord(p).iter().zip(&origin).map(|(a, b)| a - b).collect())
                .collect();
            let m = Matrix::from_rows(rows).expect("square by construction");
            if det_sign(&m.transpose()).expect("square") < 0 {
                let n = cell.len();
                cell.swap(n - 2, n - 1);
            }
            cell
        })
        .collect()
}

struct CellData {
    cell: PrismCell,
    pts: Vec<Vector>,
    bbox: BoundingBox,
}

fn interval_cells(track: &HomotopyTrack, component: usize, interval: usize) -> Vec<CellData> {
    let domain = &track.domains[component];
    let mut out = Vec::new();
    for (f, facet) in domain.facets().iter().enumerate() {
        for vertices in staircase(facet) {
            let pts: Vec<Vector> = vertices
                .iter()
                .map(|&(v, level)| {
                    let j = interval + level as usize;
                    let t = Vector::new(vec![track.times[j].clone()]);
                    track.frames[j][component][v].concat(&t)
                })
                .collect();
            let bbox = BoundingBox::of(pts.iter());
            out.push(CellData {
                cell: PrismCell {
                    component,
                    facet: f,
                    interval,
                    vertices,
                },
                pts,
                bbox,
            });
        }
    }
    out
}

fn meeting_table(a: &[CellData], b: &[CellData]) -> Vec<Vec<bool>> {
    a.par_iter()
        .map(|ca| {
            b.iter()
                .map(|cb| {
                    ca.bbox.overlaps(&cb.bbox)
                        && common_point(&[ca.pts.iter().collect(), cb.pts.iter().collect()])
                            .is_some()
                })
                .collect()
        })
        .collect()
}

enum CellOutcome {
    Miss,
    Hit(Box<SignedTriplePoint>),
    Degenerate(Scalar),
}

fn point_time(pts: &[Vector], bary: &[Scalar]) -> Scalar {
    let last = pts[0].dim() - 1;
    pts.iter()
        .zip(bary)
        .fold(Scalar::zero(), |acc, (p, w)| acc + &p[last] * w)
}

fn solve_cells(cells: [&CellData; 3]) -> CellOutcome {
    let n = cells[0].pts[0].dim();
    let edges = |c: &CellData| -> Vec<Vector> {
        c.pts[1..]
            .iter()
            .map(|p| p.sub(&c.pts[0]).expect("equal dims"))
            .collect()
    };
    let (e1, e2, e3) = (edges(cells[0]), edges(cells[1]), edges(cells[2]));
    let unknowns = e1.len() + e2.len() + e3.len();
    let mut a = Matrix::zeros(2 * n, unknowns);
    let neg = |s: &Scalar| -s.clone();
    for (j, e) in e1.iter().enumerate() {
        for r in 0..n {
            a.set(r, j, e[r].clone());
        }
    }
    let off2 = e1.len();
    for (j, e) in e2.iter().enumerate() {
        for r in 0..n {
            a.set(r, off2 + j, neg(&e[r]));
            a.set(n + r, off2 + j, e[r].clone());
        }
    }
    let off3 = off2 + e2.len();
    for (j, e) in e3.iter().enumerate() {
        for r in 0..n {
            a.set(n + r, off3 + j, neg(&e[r]));
        }
    }
    let rhs = cells[1].pts[0]
        .sub(&cells[0].pts[0])
        .expect("equal dims")
        .concat(&cells[2].pts[0].sub(&cells[1].pts[0]).expect("equal dims"));
    if unknowns != 2 * n {
        // Cannot happen for dimension-checked tracks.
        return CellOutcome::Degenerate(Scalar::zero());
    }
    match solve_square_scaled(&a, &rhs).expect("square system") {
        Some(sol) => {
            let splits = [(0, off2), (off2, off3), (off3, unknowns)];
            let mut boundary = false;
            for &(s, e) in &splits {
                match classify_scaled(&sol.numerators[s..e], &sol.denominator) {
                    BarycentricPosition::Outside => return CellOutcome::Miss,
                    BarycentricPosition::Boundary => boundary = true,
                    BarycentricPosition::Interior => {}
                }
            }
            let x = sol.to_vector().into_coords();
            let bary: [Vec<Scalar>; 3] =
                std::array::from_fn(|i| complete_from_first(&x[splits[i].0..splits[i].1]));
            let point = Vector::combination(&cells[0].pts.iter().collect::<Vec<_>>(), &bary[0])
                .expect("matching lengths");
            let time = point[n - 1].clone();
            if boundary {
                return CellOutcome::Degenerate(time);
            }
            CellOutcome::Hit(Box::new(SignedTriplePoint {
                cells: [
                    cells[0].cell.clone(),
                    cells[1].cell.clone(),
                    cells[2].cell.clone(),
                ],
                barycentric: bary,
                point,
                time,
                sign: SWEEP_SIGN * time_row_parity(n - 1) * sol.det_sign,
            }))
        }
        None if !is_consistent(&a, &rhs).expect("matching rows") => CellOutcome::Miss,
        None => {
            let simplices: Vec<Vec<&Vector>> =
                cells.iter().map(|c| c.pts.iter().collect()).collect();
            match common_point(&simplices) {
                Some(bary) => CellOutcome::Degenerate(point_time(&cells[0].pts, &bary[0])),
                None => CellOutcome::Miss,
            }
        }
    }
}

fn check_track_dimensions(track: &HomotopyTrack) -> Result<(), MuError> {
    let dims = [
        track.domains[0].dim(),
        track.domains[1].dim(),
        track.domains[2].dim(),
    ];
    if dims.iter().sum::<usize>() + 1 != 2 * track.ambient_dim {
        return Err(MuError::DimensionMismatch {
            domain_dims: dims,
            ambient: track.ambient_dim,
        });
    }
    Ok(())
}

/// Finds every transverse 1=2=3 point of the track, sorted by time.
///
/// Fails with [`MuError::NonGenericTrack`] when a cell triple meets in a
/// non-transverse way (a solution on a cell boundary, or a singular system
/// whose closed cells share a point). A successful empty result certifies
/// that no level of the track has a 1=2=3 point at all.
pub fn detect_triple_points(track: &HomotopyTrack) -> Result<Vec<SignedTriplePoint>, MuError> {
    check_track_dimensions(track)?;
    let mut points = Vec::new();
    for interval in 0..track.times.len() - 1 {
        let cells: Vec<Vec<CellData>> =
            (0..3).map(|c| interval_cells(track, c, interval)).collect();
        let p12 = meeting_table(&cells[0], &cells[1]);
        let p13 = meeting_table(&cells[0], &cells[2]);
        let p23 = meeting_table(&cells[1], &cells[2]);
        let found: Vec<Result<Vec<SignedTriplePoint>, MuError>> = (0..cells[0].len())
            .into_par_iter()
            .map(|i| {
                let mut hits = Vec::new();
                for j in 0..cells[1].len() {
                    if !p12[i][j] {
                        continue;
                    }
                    for l in 0..cells[2].len() {
                        if !p13[i][l] || !p23[j][l] {
                            continue;
                        }
                        match solve_cells([&cells[0][i], &cells[1][j], &cells[2][l]]) {
                            CellOutcome::Miss => {}
                            CellOutcome::Hit(p) => hits.push(*p),
                            CellOutcome::Degenerate(time) => {
                                return Err(MuError::NonGenericTrack { interval, time })
                            }
                        }
                    }
                }
                Ok(hits)
            })
            .collect();
        for r in found {
            points.extend(r?);
        }
    }
    points.sort_by(|a, b| match a.time.cmp(&b.time) {
        Ordering::Equal => a.cells.cmp(&b.cells),
        other => other,
    });
    Ok(points)
}

/// True iff detection succeeds with no triple points, i.e. every level of
/// the track is an ornament.
pub fn is_ornament_homotopy(track: &HomotopyTrack) -> bool {
    matches!(detect_triple_points(track), Ok(p) if p.is_empty())
}

/// Default perturbation radius for keyframe repairs: `1/1024` of the track's
/// extent (at least `1/1024`).
pub fn default_repair_eps(track: &HomotopyTrack) -> Scalar {
    let b = track.bounding_box();
    let extent =
        b.lo.iter()
            .zip(&b.hi)
            .map(|(l, h)| h - l)
            .max()
            .unwrap_or_else(Scalar::zero)
            .max(Scalar::one());
    extent / Scalar::from_integer(1024.into())
}

/// Detects triple points, repairing non-generic keyframes until detection
/// succeeds. Endpoints are never modified.
pub fn resolve_generic(
    track: &HomotopyTrack,
    eps: &Scalar,
    seed: u64,
) -> Result<SweepOutcome, MuError> {
    let mut track = track.clone();
    for attempt in 0..MAX_TRACK_REPAIRS {
        match detect_triple_points(&track) {
            Ok(points) => return Ok(SweepOutcome { track, points }),
            Err(MuError::NonGenericTrack { interval, time }) => {
                track.repair(interval, &time, eps, derive_seed(seed, attempt));
            }
            Err(e) => return Err(e),
        }
    }
    Err(MuError::RetriesExhausted(MAX_TRACK_REPAIRS as usize))
}

/// Three seeded rational points well outside the bounding box of `o` and
/// pairwise far apart.
pub fn default_targets(o: &Ornament, seed: u64) -> [Vector; 3] {
    let b = o.bounding_box();
    let m = o.ambient_dim();
    let two = Scalar::from_integer(2.into());
    let center: Vec<Scalar> =
        b.lo.iter()
            .zip(&b.hi)
            .map(|(l, h)| (l + h) / &two)
            .collect();
    let extent =
        b.lo.iter()
            .zip(&b.hi)
            .map(|(l, h)| h - l)
            .max()
            .unwrap_or_else(Scalar::zero)
            .max(Scalar::one());
    let far = &extent * Scalar::from_integer(4.into());
    let mut rng = rng_for(derive_seed(seed, 0x7a59));
    let mut targets: [Vector; 3] = Default::default();
    for (i, target) in targets.iter_mut().enumerate() {
        let mut coords: Vec<Scalar> = center
            .iter()
            .map(|c| c + unit_offset(&mut rng, DEFAULT_DENOMINATOR_BOUND) * &extent / &two)
            .collect();
        match (i, m) {
            (0, _) => coords[0] += &far,
            (1, _) => coords[0] -= &far,
            (_, 1) => coords[0] += &far * &two,
            _ => coords[1] += &far,
        }
        *target = Vector::new(coords);
    }
    targets
}

/// The ornament with the domains of `o` and component `i` constant at
/// `targets[i]`.
pub fn trivial_like(o: &Ornament, targets: &[Vector; 3]) -> Result<Ornament, MuError> {
    if targets[0] == targets[1] || targets[1] == targets[2] || targets[0] == targets[2] {
        return Err(MuError::CoincidentTargets);
    }
    let images: [Vec<Vector>; 3] =
        std::array::from_fn(|i| vec![targets[i].clone(); o.component(i).domain().vertex_count()]);
    Ok(o.with_images(images)?)
}

/// Straight-line track from `o` to the trivial ornament at `targets`, made
/// generic by keyframe repairs, together with its triple points.
pub fn straight_line_homotopy_to_trivial(
    o: &Ornament,
    targets: &[Vector; 3],
    eps: &Scalar,
    seed: u64,
) -> Result<SweepOutcome, MuError> {
    let trivial = trivial_like(o, targets)?;
    let track = HomotopyTrack::straight_line(o, &trivial);
    resolve_generic(&track, eps, seed)
}

/// μ as the signed number of 1=2=3 points of a generic straight-line
/// homotopy to a trivial ornament at seeded targets.
pub fn mu_via_sweep(o: &Ornament, seed: u64) -> Result<i64, MuError> {
    check_dimensions(o)?;
    let targets = default_targets(o, seed);
    let trivial = trivial_like(o, &targets)?;
    let track = HomotopyTrack::straight_line(o, &trivial);
    let eps = default_repair_eps(&track);
    Ok(resolve_generic(&track, &eps, derive_seed(seed, 1))?.sign_sum())
}

/// Signed triple-point count of an arbitrary track with valid endpoint
/// ornaments; equals `μ(start) − μ(end)`.
pub fn relative_sweep(track: &HomotopyTrack, seed: u64) -> Result<SweepOutcome, MuError> {
    check_track_dimensions(track)?;
    if !validate_ornament(&track.start()).is_valid() {
        return Err(MuError::InvalidEndpoint("start"));
    }
    if !validate_ornament(&track.end()).is_valid() {
        return Err(MuError::InvalidEndpoint("end"));
    }
    resolve_generic(track, &default_repair_eps(track), seed)
}

/// Opposite-sign pairs (as indices into the input) and the unpaired rest.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pairing {
    /// `(positive, negative)` index pairs.
    pub pairs: Vec<(usize, usize)>,
    pub unpaired: Vec<usize>,
}

/// Greedy pairing in time order: each point is matched with the earliest
/// still-unmatched point of the opposite sign. The unmatched points all share
/// one sign and number `|Σ signs|`.
pub fn pair_opposite_signs(points: &[SignedTriplePoint]) -> Pairing {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].time.cmp(&points[b].time));
    let mut pairing = Pairing::default();
    let mut open: std::collections::VecDeque<usize> = Default::default();
    for i in order {
        let sign = points[i].sign;
        match open.front() {
            Some(&j) if points[j].sign != sign => {
                open.pop_front();
                pairing.pairs.push(if sign > 0 { (i, j) } else { (j, i) });
            }
            _ => open.push_back(i),
        }
    }
    pairing.unpaired = open.into_iter().collect();
    pairing
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staircase_of_an_edge() {
        let cells = staircase(&[4, 2]);
        assert_eq!(cells.len(), 2);
        for c in &cells {
            assert_eq!(c.len(), 3);
        }
        // Reversing the facet reverses every cell's orientation.
        let flipped = staircase(&[2, 4]);
        for (a, b) in cells.iter().zip(&flipped) {
            let mut sa = a.clone();
            let mut sb = b.clone();
            sa.sort();
            sb.sort();
            assert_eq!(sa, sb);
            assert_ne!(a, b);
        }
    }

    #[test]
    fn staircase_covers_the_prism_with_unit_volume_cells() {
        // The d+1 cells of the staircase each have volume 1/(d+1)! of the
        // unit prism over a standard simplex, so all are non-degenerate.
        let facet = [3, 0, 2, 1];
        let cells = staircase(&facet);
        assert_eq!(cells.len(), 4);
        let mut tops = cells
            .iter()
            .map(|c| c.iter().filter(|v| v.1 == 1).count())
            .collect::<Vec<_>>();
        tops.sort();
        assert_eq!(tops, vec![1, 2, 3, 4]);
    }

    fn fake_point(sign: i8, time: i64) -> SignedTriplePoint {
        let cell = PrismCell {
            component: 0,
            facet: 0,
            interval: 0,
            vertices: vec![],
        };
        SignedTriplePoint {
            cells: [cell.clone(), cell.clone(), cell],
            barycentric: Default::default(),
            point: Vector::zeros(1),
            time: Scalar::from_integer(time.into()),
            sign,
        }
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pair_opposite_signs(&[]), Pairing::default());
        let p = pair_opposite_signs(&[fake_point(1, 0), fake_point(-1, 1)]);
        assert_eq!(p.pairs, vec![(0, 1)]);
        assert!(p.unpaired.is_empty());
        let p = pair_opposite_signs(&[fake_point(1, 0), fake_point(1, 1), fake_point(-1, 2)]);
        assert_eq!(p.pairs, vec![(0, 2)]);
        assert_eq!(p.unpaired, vec![1]);
    }
}

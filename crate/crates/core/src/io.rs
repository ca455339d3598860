//! JSON interchange documents for ornaments and homotopy tracks.
//!
//! Coordinates are rational strings (`"p/q"` or `"p"`); facet orientation is
//! the listed vertex order. Output is canonical: rationals are reduced and
//! serialization is deterministic, so parsing and re-emitting a document
//! produced here is byte-identical.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degree::{DegreeResult, PreimageSolution};
use crate::error::MuError;
use crate::kernel::{format_scalar, parse_scalar, KernelError, Scalar, Vector};
use crate::model::{ModelError, Ornament, PLMap, TriangulatedManifold, TripleWitness};
use crate::sweep::{HomotopyTrack, PrismCell, SignedTriplePoint};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{location}: {source}")]
    Scalar {
        location: String,
        source: KernelError,
    },
    #[error("expected exactly three components, found {0}")]
    ComponentCount(usize),
    #[error("component {index}: {source}")]
    Component { index: usize, source: ModelError },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Track(#[from] MuError),
}

pub const DEFAULT_NAMES: [&str; 3] = ["X1", "X2", "X3"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub name: String,
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    pub facets: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrnamentDoc {
    pub m: usize,
    pub components: Vec<ComponentDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyframeDoc {
    pub t: String,
    /// Per component, per vertex, the image coordinates.
    pub vertices: Vec<Vec<Vec<String>>>,
}

/// An ornament document (the `t = 0` keyframe) plus keyframes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyDoc {
    pub m: usize,
    pub components: Vec<ComponentDoc>,
    pub keyframes: Vec<KeyframeDoc>,
}

pub fn vector_strings(v: &Vector) -> Vec<String> {
    v.coords().iter().map(format_scalar).collect()
}

pub fn scalar_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

fn parse_vector(coords: &[String], location: impl Fn() -> String) -> Result<Vector, IoError> {
    coords
        .iter()
        .map(|c| {
            parse_scalar(c).map_err(|source| IoError::Scalar {
                location: location(),
                source,
            })
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Vector::new)
}

fn component_doc(name: &str, map: &PLMap) -> ComponentDoc {
    ComponentDoc {
        name: name.to_string(),
        dim: map.domain().dim(),
        vertices: map.images().iter().map(vector_strings).collect(),
        facets: map.domain().facets().to_vec(),
    }
}

impl OrnamentDoc {
    pub fn from_ornament(o: &Ornament) -> Self {
        Self::from_ornament_named(o, DEFAULT_NAMES)
    }

    pub fn from_ornament_named(o: &Ornament, names: [&str; 3]) -> Self {
        OrnamentDoc {
            m: o.ambient_dim(),
            components: (0..3)
                .map(|i| component_doc(names[i], o.component(i)))
                .collect(),
        }
    }

    pub fn to_ornament(&self) -> Result<Ornament, IoError> {
        to_ornament(self.m, &self.components)
    }

    pub fn parse(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }
}

fn domain_of(index: usize, doc: &ComponentDoc) -> Result<TriangulatedManifold, IoError> {
    TriangulatedManifold::new(doc.dim, doc.vertices.len(), doc.facets.clone())
        .map_err(|source| IoError::Component { index, source })
}

fn to_ornament(m: usize, components: &[ComponentDoc]) -> Result<Ornament, IoError> {
    if components.len() != 3 {
        return Err(IoError::ComponentCount(components.len()));
    }
    let mut maps = Vec::with_capacity(3);
    for (index, c) in components.iter().enumerate() {
        let domain = domain_of(index, c)?;
        let images = c
            .vertices
            .iter()
            .enumerate()
            .map(|(v, coords)| {
                parse_vector(coords, || {
                    format!("component {index} ({}), vertex {v}", c.name)
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        maps.push(
            PLMap::new(domain, m, images).map_err(|source| IoError::Component { index, source })?,
        );
    }
    let [a, b, c]: [PLMap; 3] = maps.try_into().expect("three maps");
    Ok(Ornament::new([a, b, c])?)
}

impl HomotopyDoc {
    pub fn from_track(track: &HomotopyTrack) -> Self {
        let start = track.start();
        HomotopyDoc {
            m: track.ambient_dim(),
            components: (0..3)
                .map(|i| component_doc(DEFAULT_NAMES[i], start.component(i)))
                .collect(),
            keyframes: track
                .times()
                .iter()
                .zip(track.frames())
                .map(|(t, frame)| KeyframeDoc {
                    t: format_scalar(t),
                    vertices: frame
                        .iter()
                        .map(|imgs| imgs.iter().map(vector_strings).collect())
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_track(&self) -> Result<HomotopyTrack, IoError> {
        if self.components.len() != 3 {
            return Err(IoError::ComponentCount(self.components.len()));
        }
        let domains: Vec<TriangulatedManifold> = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| domain_of(i, c))
            .collect::<Result<_, _>>()?;
        let [d1, d2, d3]: [TriangulatedManifold; 3] = domains.try_into().expect("three domains");
        let mut times = Vec::new();
        let mut frames = Vec::new();
        for (j, kf) in self.keyframes.iter().enumerate() {
            times.push(parse_scalar(&kf.t).map_err(|source| IoError::Scalar {
                location: format!("keyframe {j}, t"),
                source,
            })?);
            if kf.vertices.len() != 3 {
                return Err(IoError::ComponentCount(kf.vertices.len()));
            }
            let mut frame: [Vec<Vector>; 3] = Default::default();
            for (c, imgs) in kf.vertices.iter().enumerate() {
                frame[c] = imgs
                    .iter()
                    .enumerate()
                    .map(|(v, coords)| {
                        parse_vector(coords, || {
                            format!("keyframe {j}, component {c}, vertex {v}")
                        })
                    })
                    .collect::<Result<_, _>>()?;
            }
            frames.push(frame);
        }
        Ok(HomotopyTrack::new([d1, d2, d3], self.m, times, frames)?)
    }

    pub fn parse(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub facets: [usize; 3],
    pub barycentric: Vec<Vec<String>>,
}

impl From<&TripleWitness> for WitnessDoc {
    fn from(w: &TripleWitness) -> Self {
        WitnessDoc {
            facets: w.facets,
            barycentric: w.barycentric.iter().map(|b| scalar_strings(b)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreimageDoc {
    pub facets: [usize; 3],
    pub barycentric: Vec<Vec<String>>,
    pub s: String,
    pub sign: i8,
}

impl From<&PreimageSolution> for PreimageDoc {
    fn from(p: &PreimageSolution) -> Self {
        PreimageDoc {
            facets: p.facets,
            barycentric: p.barycentric.iter().map(|b| scalar_strings(b)).collect(),
            s: format_scalar(&p.s),
            sign: p.sign,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeDoc {
    pub mu: i64,
    pub direction: Vec<String>,
    pub solutions: Vec<PreimageDoc>,
}

impl From<&DegreeResult> for DegreeDoc {
    fn from(r: &DegreeResult) -> Self {
        DegreeDoc {
            mu: r.mu,
            direction: vector_strings(r.ray.vector()),
            solutions: r.solutions.iter().map(PreimageDoc::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDoc {
    pub component: usize,
    pub facet: usize,
    pub interval: usize,
    /// `[vertex, level]` pairs.
    pub vertices: Vec<(usize, u8)>,
}

impl From<&PrismCell> for CellDoc {
    fn from(c: &PrismCell) -> Self {
        CellDoc {
            component: c.component,
            facet: c.facet,
            interval: c.interval,
            vertices: c.vertices.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriplePointDoc {
    pub cells: Vec<CellDoc>,
    pub barycentric: Vec<Vec<String>>,
    pub point: Vec<String>,
    pub t: String,
    pub sign: i8,
}

impl From<&SignedTriplePoint> for TriplePointDoc {
    fn from(p: &SignedTriplePoint) -> Self {
        TriplePointDoc {
            cells: p.cells.iter().map(CellDoc::from).collect(),
            barycentric: p.barycentric.iter().map(|b| scalar_strings(b)).collect(),
            point: vector_strings(&p.point),
            t: format_scalar(&p.time),
            sign: p.sign,
        }
    }
}

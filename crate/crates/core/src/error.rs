use thiserror::Error;

use crate::kernel::{KernelError, Scalar};
use crate::model::ModelError;

/// Failures of the two μ algorithms.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MuError {
    /// The product of the domains must have dimension `2m − 1`.
    #[error("domain dimensions {domain_dims:?} do not sum to 2m-1 for m = {ambient}")]
    DimensionMismatch {
        domain_dims: [usize; 3],
        ambient: usize,
    },
    /// Some facet triple meets the ray in a non-transverse way.
    #[error("ray direction is not a regular value (facets {facets:?})")]
    NonGenericDirection { facets: [usize; 3] },
    /// Some cell triple meets singularly or on a cell boundary.
    #[error("homotopy track is not generic in interval {interval} near t = {time}")]
    NonGenericTrack { interval: usize, time: Scalar },
    #[error("gave up after {0} genericity retries")]
    RetriesExhausted(usize),
    #[error("trivial-ornament targets must be pairwise distinct")]
    CoincidentTargets,
    #[error("the {0} ornament of the homotopy is not valid")]
    InvalidEndpoint(&'static str),
    #[error("malformed homotopy track: {0}")]
    MalformedTrack(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

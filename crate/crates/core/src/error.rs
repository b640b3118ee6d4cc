use thiserror::Error;

use crate::binomial::SmallDegree;
use crate::degeneracy::PeelError;
use crate::generators::GenError;

/// Failure of an extractor. [`ExtractError::reason`] gives a stable machine-readable code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtractError {
    #[error("graph contains the triangle {0:?}")]
    Triangle([usize; 3]),
    #[error("graph contains a K_{t}: {clique:?}")]
    Clique { t: usize, clique: Vec<usize> },
    #[error(transparent)]
    Peel(#[from] PeelError),
    #[error(transparent)]
    SmallDegree(#[from] SmallDegree),
    #[error(transparent)]
    Generator(#[from] GenError),
    #[error("vertex {vertex} has degree {degree} < {d}")]
    DegreeBelow { vertex: usize, degree: usize, d: usize },
    #[error("no acceptable sample in {attempts} attempts (best objective seen: {best})")]
    RetryExhausted { attempts: usize, best: String },
    #[error("sampled pair search exhausted its budget of {budget} pairs; use exhaustive mode")]
    PairBudget { budget: usize },
    #[error("({u}, {v}) is not an edge")]
    NotAnEdge { u: usize, v: usize },
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl ExtractError {
    pub fn reason(&self) -> &'static str {
        match self {
            ExtractError::Triangle(_) => "triangle",
            ExtractError::Clique { .. } => "clique",
            ExtractError::Peel(PeelError::EmptyCore { .. }) => "empty-core",
            ExtractError::Peel(PeelError::NoEdges) => "no-edges",
            ExtractError::SmallDegree(_) => "small-degree",
            ExtractError::Generator(_) => "generator",
            ExtractError::DegreeBelow { .. } => "degree-below",
            ExtractError::RetryExhausted { .. } => "retry-exhausted",
            ExtractError::PairBudget { .. } => "pair-budget",
            ExtractError::NotAnEdge { .. } => "not-an-edge",
            ExtractError::Param(_) => "parameter",
            ExtractError::Internal(_) => "internal",
        }
    }

    /// Vertices named by the error, if any.
    pub fn witness(&self) -> Option<Vec<usize>> {
        match self {
            ExtractError::Triangle(t) => Some(t.to_vec()),
            ExtractError::Clique { clique, .. } => Some(clique.clone()),
            ExtractError::DegreeBelow { vertex, .. } => Some(vec![*vertex]),
            ExtractError::NotAnEdge { u, v } => Some(vec![*u, *v]),
            _ => None,
        }
    }
}

pub(crate) fn require_triangle_free(g: &crate::graph::Graph) -> Result<(), ExtractError> {
    match crate::triangles::find_triangle(g) {
        Some(t) => Err(ExtractError::Triangle(t)),
        None => Ok(()),
    }
}

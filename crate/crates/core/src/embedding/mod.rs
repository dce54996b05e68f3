//! Divisor sequences, Cox-coordinate pullbacks, GIT presentations and the
//! scaffolding construction of complete-intersection embeddings.

mod cox;
mod divisor;
mod laurent;
mod presentation;

use thiserror::Error;

use crate::exactla::Point;
use crate::fan::FanError;

pub use cox::{cox_pullback_monomials, cox_variable_names, image_binomial, ray_decomposition, CoxPullback};
pub use divisor::{divisor_sequence, same_up_to_unimodular_rows, DivisorSequence};
pub use laurent::{laurent_inversion, Scaffolding, Strut};
pub use presentation::{
    dehomogenize, eliminate_linear_cone, match_presentations, GitPresentation, LinearConeReduction,
    PresentationMatch,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("rays span a sublattice of rank {rank} in dimension {dim}")]
    RaysNotSpanning { rank: usize, dim: usize },
    #[error("weight basis does not span the same lattice as the computed weights")]
    BasisMismatch,
    #[error("image of ray {ray} lies in no target cone")]
    RayNotMapped { ray: usize },
    #[error("image {image:?} of ray {ray} is not a nonnegative integer combination of the target rays {face:?}")]
    NoRayDecomposition { ray: usize, image: Point, face: Vec<usize> },
    #[error("image of the lattice map has corank {0}, expected 1")]
    Corank(usize),
    #[error("{0}")]
    Fan(#[from] FanError),
    #[error("{count} variable names for {expected} rays")]
    VariableCount { count: usize, expected: usize },
    #[error("strut {strut} is not nef on the shape (fails on cone {cone:?})")]
    NotNef { strut: usize, cone: Vec<usize> },
    #[error("strut {strut} has a non-lattice section polytope vertex on cone {cone:?}")]
    NonLatticeStrut { strut: usize, cone: Vec<usize> },
    #[error("unsupported scaffolding shape: {0}")]
    UnsupportedShape(String),
    #[error("equation {index} is not homogeneous for the weight matrix")]
    NotHomogeneous { index: usize },
}

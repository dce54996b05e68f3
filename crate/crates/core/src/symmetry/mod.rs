//! Lattice automorphisms of polytopes and their action on the deformation
//! parameters of ordinary double points.

mod action;
mod automorphisms;
mod invariants;

use thiserror::Error;

use crate::exactla::Point;
use crate::fan::FanError;

pub use action::{check_group_invariance, deformation_action, t1_weight, t1_weights, SignedPermutation, TorusWeight};
pub(crate) use action::parameter_name;
pub use automorphisms::{polytope_automorphisms, LatticeAutGroup, DEFAULT_TUPLE_CAP};
pub use invariants::{torus_invariant_monomials, DEFAULT_EXPONENT_BOUND};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("automorphism search would try {candidates} vertex tuples, cap is {cap}")]
    TooManyCandidates { candidates: u128, cap: u128 },
    #[error("origin is not in the interior of the polytope")]
    OriginNotInterior,
    #[error("cone with rays {0:?} is not Gorenstein of index one")]
    NotGorenstein(Vec<Point>),
    #[error("matrix does not permute the rays of the fan")]
    NotAnAutomorphism,
    #[error("image of chart {from} is not one of the labeled charts")]
    ImageNotCharted { from: String },
    #[error("labels of chart {to} do not pull back to a matching pair of chart {from}")]
    LabelsUnmatched { from: String, to: String },
    #[error("invariant monomials need exponents up to {needed}, bound is {bound}")]
    ExponentBoundExceeded { needed: u32, bound: u32 },
    #[error(transparent)]
    Fan(#[from] FanError),
}

#[cfg(test)]
pub(crate) mod tests_support {
    pub use super::action::tests::charts;
}

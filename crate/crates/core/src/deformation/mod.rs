//! Formal change of coordinates for quadratic corrections of an ordinary
//! double point, per-chart deformation families and versality bookkeeping.

mod family;
mod lift;
mod versality;

use thiserror::Error;

use crate::embedding::EmbeddingError;
use crate::fan::FanError;
use crate::polyring::GbError;

pub use family::{chart_family, normalize_chart, ChartFamily, ChartNormalForm, FamilyData};
pub use lift::{hensel_lift, lift_target, LiftState, LIFT_VARS};
pub use versality::{versality_report, ChartDiscriminant, ChartReport, VersalityReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeformationError {
    #[error("lift step {k} violates {property}")]
    InvariantViolated { k: usize, property: String },
    #[error("chart {0} does not match a maximal cone of the source fan")]
    UnknownChart(String),
    #[error("chart {chart}: no label for the target ray {ray}")]
    UnlabeledRay { chart: String, ray: usize },
    #[error("chart {chart} is not of the form ±(xy - zw) + quadratic corrections + constant: {detail}")]
    UnrecognizedShape { chart: String, detail: String },
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Groebner(#[from] GbError),
}

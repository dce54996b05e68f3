use num_bigint::BigInt;
use serde::Serialize;

use super::LatticePolytope;
use crate::exactla::RatVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    KPolystable,
    NotKPolystable,
    NotApplicable,
}

/// Barycenter test for a toric Fano given by the face fan of `P`: the variety
/// is K-polystable iff the polar of `P` has its barycenter at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KPolystabilityCertificate {
    pub reflexive: bool,
    /// `P = -P`, which already forces the polar barycenter to vanish.
    pub centrally_symmetric: bool,
    /// Barycenter of the polar; absent when the test does not apply.
    pub barycenter: Option<RatVector>,
    /// Normalized volume of the polar, i.e. the anticanonical degree.
    pub volume: Option<BigInt>,
    pub verdict: Verdict,
}

impl KPolystabilityCertificate {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::KPolystable
    }
}

pub fn kpolystable_certificate(p: &LatticePolytope) -> KPolystabilityCertificate {
    let centrally_symmetric = p.is_centrally_symmetric();
    let reflexive = p.origin_in_interior() && p.is_reflexive();
    let polar = if reflexive { p.polar().ok() } else { None };
    let Some(polar) = polar else {
        return KPolystabilityCertificate {
            reflexive,
            centrally_symmetric,
            barycenter: None,
            volume: None,
            verdict: Verdict::NotApplicable,
        };
    };
    let barycenter = polar.barycenter();
    let verdict = if barycenter.is_zero() { Verdict::KPolystable } else { Verdict::NotKPolystable };
    KPolystabilityCertificate {
        reflexive,
        centrally_symmetric,
        barycenter: Some(barycenter),
        volume: Some(polar.normalized_volume()),
        verdict,
    }
}

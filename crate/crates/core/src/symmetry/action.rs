//! Torus weights of the smoothing parameters and the signed-permutation
//! action of polytope automorphisms on them.
//!
//! Each ODP chart `i` carries the deformation `x_i y_i - z_i w_i + t_i = 0`.
//! If `g(σ_i) = σ_j`, pulling the coordinates of chart `j` back along `g`
//! (`m ↦ m·g` on row vectors) gives coordinates on chart `i`; the deformation
//! of chart `j` becomes `± (x_i y_i - z_i w_i) + t_j`, so `g` acts by
//! `t_i ↦ sign · t_j` with sign `+1` when `{x_j, y_j}` pulls back to
//! `{x_i, y_i}` and `-1` when it pulls back to `{z_i, w_i}`.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::SymmetryError;
use crate::exactla::{solve_square, IntMatrix, Point};
use crate::fan::{ChartLabeling, Cone, Fan};
use crate::polyring::{rat, MultiPoly};

/// Degree of a deformation parameter under the big torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusWeight {
    pub parameter: String,
    pub weight: Point,
}

/// Degree of the smoothing parameter of a Gorenstein cone: `-m` where
/// `<m, ρ> = 1` on every ray.
pub fn t1_weight(sigma: &Cone) -> Result<Point, SymmetryError> {
    let rays = sigma.rays();
    let err = || SymmetryError::NotGorenstein(rays.to_vec());
    let d = sigma.ambient_dim();
    // d independent rays determine m
    let mut basis: Vec<Point> = Vec::new();
    for r in rays {
        let mut trial = basis.clone();
        trial.push(r.clone());
        if crate::exactla::rank_of(&trial) == trial.len() {
            basis = trial;
        }
    }
    if basis.len() != d {
        return Err(err());
    }
    let m = solve_square(&IntMatrix::from_rows(&basis), &vec![BigInt::one(); d])
        .and_then(|m| m.to_integers())
        .ok_or_else(err)?;
    let m: Point = m.iter().map(|x| i64::try_from(x).expect("small")).collect();
    if rays.iter().any(|r| crate::exactla::dot(&m, r) != 1) {
        return Err(err());
    }
    Ok(m.iter().map(|x| -x).collect())
}

/// `t1_weight` for every labeled chart, parameters named `t_<chart>`.
pub fn t1_weights(fan: &Fan, charts: &[ChartLabeling]) -> Result<Vec<TorusWeight>, SymmetryError> {
    charts
        .iter()
        .map(|c| {
            let cone = Cone::new(c.cone.iter().map(|&i| fan.rays()[i].clone()).collect())?;
            Ok(TorusWeight { parameter: parameter_name(c), weight: t1_weight(&cone)? })
        })
        .collect()
}

pub(crate) fn parameter_name(c: &ChartLabeling) -> String {
    format!("t_{}", c.name)
}

/// `t_i ↦ sign[i] · t_{perm[i]}`.
///
/// Composition: `a.compose(&b)` is the action of `g_a · g_b`, with
/// `perm[i] = a.perm[b.perm[i]]` and `sign[i] = b.sign[i] · a.sign[b.perm[i]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignedPermutation {
    pub params: Vec<String>,
    pub perm: Vec<usize>,
    pub sign: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(params: Vec<String>) -> SignedPermutation {
        let n = params.len();
        SignedPermutation { params, perm: (0..n).collect(), sign: vec![1; n] }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p == i) && self.sign.iter().all(|&s| s == 1)
    }

    pub fn compose(&self, b: &SignedPermutation) -> SignedPermutation {
        let perm = b.perm.iter().map(|&j| self.perm[j]).collect();
        let sign = (0..b.perm.len()).map(|i| b.sign[i] * self.sign[b.perm[i]]).collect();
        SignedPermutation { params: self.params.clone(), perm, sign }
    }

    /// Substitute `t_i ↦ sign[i] · t_{perm[i]}` in a polynomial.
    pub fn apply(&self, p: &MultiPoly) -> MultiPoly {
        let map: HashMap<String, MultiPoly> = (0..self.params.len())
            .map(|i| {
                let target = MultiPoly::var(&self.params, &self.params[self.perm[i]]);
                (self.params[i].clone(), target.scale(&rat(self.sign[i] as i64)))
            })
            .collect();
        p.substitute(&map).in_vars(p.vars()).expect("parameters are among the variables")
    }

    /// Lines like `t_alpha -> -t_beta`.
    pub fn describe(&self) -> Vec<String> {
        (0..self.perm.len())
            .map(|i| {
                let s = if self.sign[i] < 0 { "-" } else { "" };
                format!("{} -> {}{}", self.params[i], s, self.params[self.perm[i]])
            })
            .collect()
    }
}

/// Signed permutation of the chart parameters induced by `g`.
pub fn deformation_action(g: &IntMatrix, fan: &Fan, charts: &[ChartLabeling]) -> Result<SignedPermutation, SymmetryError> {
    let ray_perm: Vec<usize> = fan
        .rays()
        .iter()
        .map(|r| fan.ray_index(&g.apply_i64(r)))
        .collect::<Option<_>>()
        .ok_or(SymmetryError::NotAnAutomorphism)?;
    let params: Vec<String> = charts.iter().map(parameter_name).collect();
    let mut perm = Vec::with_capacity(charts.len());
    let mut sign = Vec::with_capacity(charts.len());
    for ci in charts {
        let image: BTreeSet<usize> = ci.cone.iter().map(|&r| ray_perm[r]).collect();
        let j = charts
            .iter()
            .position(|c| c.cone.iter().copied().collect::<BTreeSet<_>>() == image)
            .ok_or_else(|| SymmetryError::ImageNotCharted { from: ci.name.clone() })?;
        let cj = &charts[j];
        let pair = |a: &Point, b: &Point| -> BTreeSet<Point> { [a.clone(), b.clone()].into_iter().collect() };
        let pulled_xy = pair(&g.pull_back_i64(&cj.x), &g.pull_back_i64(&cj.y));
        let pulled_zw = pair(&g.pull_back_i64(&cj.z), &g.pull_back_i64(&cj.w));
        let (xy, zw) = (pair(&ci.x, &ci.y), pair(&ci.z, &ci.w));
        let s = if pulled_xy == xy && pulled_zw == zw {
            1
        } else if pulled_xy == zw && pulled_zw == xy {
            -1
        } else {
            return Err(SymmetryError::LabelsUnmatched { from: ci.name.clone(), to: cj.name.clone() });
        };
        perm.push(j);
        sign.push(s);
    }
    Ok(SignedPermutation { params, perm, sign })
}

/// True iff every action fixes `p`.
pub fn check_group_invariance(p: &MultiPoly, actions: &[SignedPermutation]) -> bool {
    actions.iter().all(|a| &a.apply(p) == p)
}

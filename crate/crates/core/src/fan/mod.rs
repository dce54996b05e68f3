//! Rational polyhedral cones and fans.

mod chart;
mod classify;
mod hilbert;
mod morphism;

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{content, dot, kernel_basis_i64, neg, primitive, rank_of, Point};
use crate::polytope::LatticePolytope;

pub use chart::{canonical_labeling, ChartLabeling, LabelingError};
pub use classify::{classify_cone, singularity_report, ConeClass, SingularityReport};
pub use hilbert::{dual_cone_generators, hilbert_bound_needed, DEFAULT_HILBERT_BOUND};
pub use morphism::{
    closed_embedding_chart_check, toric_morphism_check, ChartEmbedding, GeneratorImage, MorphismEntry,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("cone needs at least one ray")]
    EmptyCone,
    #[error("ray {0:?} is zero or not primitive")]
    NonPrimitiveRay(Point),
    #[error("ray {ray:?} has {found} coordinates, expected {expected}")]
    DimensionMismatch { ray: Point, expected: usize, found: usize },
    #[error("cone is not strongly convex")]
    NotStronglyConvex,
    #[error("ray {0:?} is not extreme in its cone")]
    NotExtreme(Point),
    #[error("cone is not full-dimensional (rank {rank} in dimension {dim})")]
    NotFullDimensional { rank: usize, dim: usize },
    #[error("maximal cone {cone} refers to ray index {index}, but the fan has {rays} rays")]
    BadRayIndex { cone: usize, index: usize, rays: usize },
    #[error("origin is not in the interior of the polytope")]
    OriginNotInterior,
    #[error("Hilbert basis needs pairings up to {needed}, enumeration bound is {bound}")]
    HilbertBoundExceeded { needed: i64, bound: i64 },
    #[error("matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    MatrixShape { rows: usize, cols: usize, expected_rows: usize, expected_cols: usize },
    #[error("image of cone {cone:?} is not contained in any cone of the target fan")]
    ConeNotMapped { cone: Vec<usize> },
}

/// A cone generated by primitive rays. For full-dimensional cones `normals`
/// holds the primitive inward facet normals; for lower-dimensional cones it
/// is empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cone {
    rays: Vec<Point>,
    normals: Vec<Point>,
    ambient_dim: usize,
    dim: usize,
}

impl Cone {
    pub fn new(rays: Vec<Point>) -> Result<Cone, FanError> {
        let ambient_dim = rays.first().ok_or(FanError::EmptyCone)?.len();
        for r in &rays {
            if r.len() != ambient_dim {
                return Err(FanError::DimensionMismatch { ray: r.clone(), expected: ambient_dim, found: r.len() });
            }
            if content(r) != 1 {
                return Err(FanError::NonPrimitiveRay(r.clone()));
            }
        }
        let dim = rank_of(&rays);
        let normals = if dim == ambient_dim { facet_normals(&rays, ambient_dim) } else { Vec::new() };
        let cone = Cone { rays, normals, ambient_dim, dim };
        if dim == ambient_dim {
            if rank_of(&cone.normals) < ambient_dim {
                return Err(FanError::NotStronglyConvex);
            }
            for r in &cone.rays {
                // extreme iff the facets through r cut out a line
                let through: Vec<Point> = cone.normals.iter().filter(|n| dot(n, r) == 0).cloned().collect();
                if rank_of(&through) != ambient_dim - 1 {
                    return Err(FanError::NotExtreme(r.clone()));
                }
            }
        }
        Ok(cone)
    }

    pub fn rays(&self) -> &[Point] {
        &self.rays
    }

    pub fn normals(&self) -> &[Point] {
        &self.normals
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim
    }

    /// Membership test for full-dimensional cones.
    pub fn contains(&self, v: &[i64]) -> bool {
        self.normals.iter().all(|n| dot(n, v) >= 0)
    }

    /// Membership of `m` in the dual cone.
    pub fn dual_contains(&self, m: &[i64]) -> bool {
        self.rays.iter().all(|r| dot(m, r) >= 0)
    }
}

/// Inward normals of the facets of a full-dimensional cone.
fn facet_normals(rays: &[Point], dim: usize) -> Vec<Point> {
    if dim == 1 {
        return rays.iter().map(|r| primitive(r)).collect::<BTreeSet<_>>().into_iter().collect();
    }
    let mut out = BTreeSet::new();
    for combo in (0..rays.len()).combinations(dim - 1) {
        let sel: Vec<Point> = combo.iter().map(|&i| rays[i].clone()).collect();
        let ker = kernel_basis_i64(&sel, dim);
        if ker.len() != 1 {
            continue;
        }
        let n = primitive(&ker[0]);
        let values: Vec<i64> = rays.iter().map(|r| dot(&n, r)).collect();
        if values.iter().all(|&v| v >= 0) {
            out.insert(n);
        } else if values.iter().all(|&v| v <= 0) {
            out.insert(neg(&n));
        }
    }
    out.into_iter().collect()
}

/// On-disk fan format: `{"rays": [[int, ...], ...], "max_cones": [[idx, ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FanFile")]
pub struct Fan {
    rays: Vec<Point>,
    max_cones: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct FanFile {
    rays: Vec<Point>,
    max_cones: Vec<Vec<usize>>,
}

impl TryFrom<FanFile> for Fan {
    type Error = FanError;

    fn try_from(f: FanFile) -> Result<Fan, FanError> {
        Fan::new(f.rays, f.max_cones)
    }
}

impl Fan {
    pub fn new(rays: Vec<Point>, max_cones: Vec<Vec<usize>>) -> Result<Fan, FanError> {
        let fan = Fan { rays, max_cones };
        fan.validate()?;
        Ok(fan)
    }

    fn validate(&self) -> Result<(), FanError> {
        let dim = self.dim();
        for r in &self.rays {
            if r.len() != dim {
                return Err(FanError::DimensionMismatch { ray: r.clone(), expected: dim, found: r.len() });
            }
            if content(r) != 1 {
                return Err(FanError::NonPrimitiveRay(r.clone()));
            }
        }
        for (cone, idx) in self.max_cones.iter().enumerate() {
            if let Some(&index) = idx.iter().find(|&&i| i >= self.rays.len()) {
                return Err(FanError::BadRayIndex { cone, index, rays: self.rays.len() });
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.rays.first().map_or(0, |r| r.len())
    }

    pub fn rays(&self) -> &[Point] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn cone(&self, i: usize) -> Result<Cone, FanError> {
        Cone::new(self.max_cones[i].iter().map(|&j| self.rays[j].clone()).collect())
    }

    /// Index of the maximal cone with exactly this ray set (order-insensitive).
    pub fn find_cone(&self, rays: &[usize]) -> Option<usize> {
        let want: BTreeSet<usize> = rays.iter().copied().collect();
        self.max_cones.iter().position(|c| c.iter().copied().collect::<BTreeSet<_>>() == want)
    }

    pub fn ray_index(&self, r: &[i64]) -> Option<usize> {
        self.rays.iter().position(|x| x == r)
    }
}

/// Fan over the faces of a polytope containing the origin in its interior:
/// rays through the vertices, one maximal cone per facet.
pub fn face_fan(p: &LatticePolytope) -> Result<Fan, FanError> {
    if !p.origin_in_interior() {
        return Err(FanError::OriginNotInterior);
    }
    let rays = p.vertices().iter().map(|v| primitive(v)).collect();
    let cones = p.facets().iter().map(|f| f.vertices.clone()).collect();
    Fan::new(rays, cones)
}

/// Inner normal fan: rays are the facet normals, one maximal cone per vertex.
pub fn normal_fan(p: &LatticePolytope) -> Result<Fan, FanError> {
    let rays: Vec<Point> = p.facets().iter().map(|f| f.normal.clone()).collect();
    let cones = (0..p.vertices().len())
        .map(|v| (0..p.facets().len()).filter(|&j| p.facets()[j].vertices.contains(&v)).collect())
        .collect();
    Fan::new(rays, cones)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn numbered(fan: &Fan) -> BTreeSet<Vec<usize>> {
        fan.max_cones().iter().map(|c| c.iter().map(|i| i + 1).collect()).collect()
    }

    #[test]
    fn face_fan_of_p735_matches_cone_list() {
        let fan = sigma_x();
        assert_eq!(fan.rays().len(), 10);
        let expected: BTreeSet<Vec<usize>> = [
            vec![1, 4, 5],
            vec![1, 5, 7],
            vec![1, 4, 8],
            vec![1, 7, 8],
            vec![6, 9, 10],
            vec![2, 6, 10],
            vec![3, 6, 9],
            vec![2, 3, 6],
            vec![2, 3, 4, 5],
            vec![2, 4, 8, 10],
            vec![7, 8, 9, 10],
            vec![3, 5, 7, 9],
        ]
        .into_iter()
        .collect();
        assert_eq!(numbered(&fan), expected);
    }

    #[test]
    fn face_fan_of_square_and_ambient() {
        let sq = LatticePolytope::from_vertices(&[vec![1, 1], vec![-1, 1], vec![-1, -1], vec![1, -1]]).unwrap();
        assert_eq!(face_fan(&sq).unwrap().max_cones().len(), 4);
        let f = sigma_f();
        assert_eq!(f.rays().len(), 7);
        let unit = LatticePolytope::from_vertices(&crate::polytope::fixtures::unit_square()).unwrap();
        assert_eq!(face_fan(&unit).unwrap_err(), FanError::OriginNotInterior);
    }

    #[test]
    fn normal_fan_of_square_is_face_fan_of_polar() {
        let sq = LatticePolytope::from_vertices(&[vec![1, 1], vec![-1, 1], vec![-1, -1], vec![1, -1]]).unwrap();
        let nf = normal_fan(&sq).unwrap();
        let ff = face_fan(&sq.polar().unwrap()).unwrap();
        let rays = |f: &Fan| f.rays().iter().cloned().collect::<BTreeSet<_>>();
        assert_eq!(rays(&nf), rays(&ff));
        let cones = |f: &Fan| {
            f.max_cones()
                .iter()
                .map(|c| c.iter().map(|&i| f.rays()[i].clone()).collect::<BTreeSet<_>>())
                .collect::<BTreeSet<_>>()
        };
        assert_eq!(cones(&nf), cones(&ff));
    }

    #[test]
    fn normal_fan_of_interval_is_projective_line() {
        let seg = LatticePolytope::from_vertices(&[vec![-1], vec![1]]).unwrap();
        let nf = normal_fan(&seg).unwrap();
        assert_eq!(nf.rays().iter().cloned().collect::<BTreeSet<_>>(), [vec![-1], vec![1]].into_iter().collect());
        assert_eq!(nf.max_cones().len(), 2);
    }

    #[test]
    fn cone_validation() {
        assert_eq!(Cone::new(vec![vec![2, 0], vec![0, 1]]).unwrap_err(), FanError::NonPrimitiveRay(vec![2, 0]));
        assert_eq!(Cone::new(vec![vec![1, 0], vec![-1, 0], vec![0, 1]]).unwrap_err(), FanError::NotStronglyConvex);
        assert_eq!(
            Cone::new(vec![vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap_err(),
            FanError::NotExtreme(vec![1, 1])
        );
        let c = Cone::new(vec![vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert!(!c.is_full_dimensional());
    }
}

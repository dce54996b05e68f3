//! Lattice polytopes: hull, faces, polar duality, volume, barycenter and the
//! toric K-polystability certificate.
//!
//! A polytope is stored by its extreme points together with its facet
//! inequalities `<normal, x> >= -height`, normals primitive in the dual
//! lattice. Facets are found by brute force: every `dim`-subset of the input
//! points spanning a hyperplane is tested as a supporting hyperplane. That is
//! quadratic-ish in the number of subsets but exact, and polytopes here have a
//! handful of vertices in dimension at most 6.

mod certificate;
mod faces;
mod volume;

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{affine_rank, dot, kernel_basis_i64, neg, primitive, rank_of, sub, IntMatrix, Point};

pub use certificate::{kpolystable_certificate, KPolystabilityCertificate, Verdict};
pub use faces::{FVector, FaceRecord};
pub use volume::Anchor;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("polytope needs at least one point")]
    Empty,
    #[error("point {index} has {found} coordinates, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("points are not full-dimensional: affine rank {rank} in dimension {dim}")]
    Degenerate { dim: usize, rank: usize },
    #[error("the origin is not in the strict interior of the polytope")]
    OriginNotInterior,
    #[error("polar has non-integral vertex from facet {facet} (height {height})")]
    NonLatticePolar { facet: usize, height: i64 },
}

/// Facet inequality `<normal, x> >= -height` and the vertices attaining equality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Facet {
    pub normal: Point,
    pub height: i64,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    /// Proper nonempty faces plus the polytope itself, as sorted vertex-index sets, grouped by dimension.
    faces_by_dim: Vec<Vec<Vec<usize>>>,
}

/// On-disk polytope format: `{"dim": n, "vertices": [[int, ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub dim: usize,
    pub vertices: Vec<Point>,
}

impl LatticePolytope {
    /// Convex hull of the given points. The extreme points keep the order in
    /// which they first appear in the input, so external vertex numberings
    /// survive.
    pub fn from_vertices(points: &[Point]) -> Result<Self, PolytopeError> {
        let first = points.first().ok_or(PolytopeError::Empty)?;
        let dim = first.len();
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(PolytopeError::DimensionMismatch { index, expected: dim, found: p.len() });
            }
        }
        let mut seen = BTreeSet::new();
        let pts: Vec<Point> = points.iter().filter(|p| seen.insert((*p).clone())).cloned().collect();
        let rank = affine_rank(&pts);
        if rank != dim || dim == 0 {
            return Err(PolytopeError::Degenerate { dim, rank });
        }

        let hyperplanes = supporting_hyperplanes(&pts, dim);
        // a point is extreme iff the normals of the facets through it span the dual space
        let vertices: Vec<Point> = pts
            .iter()
            .filter(|p| {
                let normals: Vec<Point> = hyperplanes
                    .iter()
                    .filter(|(n, h)| dot(n, p) == -h)
                    .map(|(n, _)| n.clone())
                    .collect();
                rank_of(&normals) == dim
            })
            .cloned()
            .collect();

        let mut facets: Vec<Facet> = hyperplanes
            .into_iter()
            .map(|(normal, height)| {
                let on: Vec<usize> = (0..vertices.len())
                    .filter(|&i| dot(&normal, &vertices[i]) == -height)
                    .collect();
                Facet { normal, height, vertices: on }
            })
            .collect();
        facets.sort_by(|a, b| a.vertices.cmp(&b.vertices));

        let faces_by_dim = faces::face_lattice(dim, &vertices, &facets);
        Ok(LatticePolytope { dim, vertices, facets, faces_by_dim })
    }

    pub fn from_file(file: &PolytopeFile) -> Result<Self, PolytopeError> {
        let p = LatticePolytope::from_vertices(&file.vertices)?;
        if p.dim != file.dim {
            return Err(PolytopeError::DimensionMismatch { index: 0, expected: file.dim, found: p.dim });
        }
        Ok(p)
    }

    pub fn to_file(&self) -> PolytopeFile {
        PolytopeFile { dim: self.dim, vertices: self.vertices.clone() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Vertex-index sets of all faces of dimension `k` (`k = dim` gives the polytope itself).
    pub fn faces_of_dim(&self, k: usize) -> &[Vec<usize>] {
        &self.faces_by_dim[k]
    }

    pub fn vertex_index(&self, p: &[i64]) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.facets.iter().all(|f| dot(&f.normal, p) >= -f.height)
    }

    pub fn origin_in_interior(&self) -> bool {
        self.facets.iter().all(|f| f.height > 0)
    }

    /// Reflexive: origin interior and every facet at lattice distance one.
    pub fn is_reflexive(&self) -> bool {
        self.facets.iter().all(|f| f.height == 1)
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        let set: BTreeSet<&Point> = self.vertices.iter().collect();
        self.vertices.iter().all(|v| set.contains(&neg(v)))
    }

    /// Polar dual `{m : <m, v> >= -1 for all v in P}`; vertex `i` of the result
    /// comes from facet `i` of `self`.
    pub fn polar(&self) -> Result<LatticePolytope, PolytopeError> {
        if !self.origin_in_interior() {
            return Err(PolytopeError::OriginNotInterior);
        }
        let mut verts = Vec::with_capacity(self.facets.len());
        for (i, f) in self.facets.iter().enumerate() {
            if f.normal.iter().any(|x| x % f.height != 0) {
                return Err(PolytopeError::NonLatticePolar { facet: i, height: f.height });
            }
            verts.push(f.normal.iter().map(|x| x / f.height).collect());
        }
        LatticePolytope::from_vertices(&verts)
    }

    /// Image under a linear map given by an integer matrix.
    pub fn transform(&self, g: &IntMatrix) -> Result<LatticePolytope, PolytopeError> {
        let pts: Vec<Point> = self.vertices.iter().map(|v| g.apply_i64(v)).collect();
        LatticePolytope::from_vertices(&pts)
    }

    pub fn translate(&self, shift: &[i64]) -> Result<LatticePolytope, PolytopeError> {
        let pts: Vec<Point> = self.vertices.iter().map(|v| crate::exactla::add(v, shift)).collect();
        LatticePolytope::from_vertices(&pts)
    }

    /// Same vertex set, regardless of order.
    pub fn same_vertex_set(&self, other: &LatticePolytope) -> bool {
        let a: BTreeSet<&Point> = self.vertices.iter().collect();
        let b: BTreeSet<&Point> = other.vertices.iter().collect();
        a == b
    }
}

/// All hyperplanes `<n, x> = -h` through `dim` affinely independent input
/// points with every point on the side `<n, x> >= -h`. Normals are primitive.
pub(crate) fn supporting_hyperplanes(points: &[Point], dim: usize) -> Vec<(Point, i64)> {
    let mut found = BTreeSet::new();
    for combo in (0..points.len()).combinations(dim) {
        let base = &points[combo[0]];
        let diffs: Vec<Point> = combo[1..].iter().map(|&i| sub(&points[i], base)).collect();
        let normal = if diffs.is_empty() {
            // dimension one: the "hyperplane" is a point
            vec![1]
        } else {
            let ker = kernel_basis_i64(&diffs, dim);
            if ker.len() != 1 {
                continue;
            }
            primitive(&ker[0])
        };
        let level = dot(&normal, base);
        let values: Vec<i64> = points.iter().map(|p| dot(&normal, p)).collect();
        if values.iter().all(|&v| v >= level) {
            found.insert((normal.clone(), -level));
        }
        if values.iter().all(|&v| v <= level) {
            found.insert((neg(&normal), level));
        }
    }
    found.into_iter().collect()
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::exactla::Point;

    /// The ten vertices of the reflexive polytope with 4 ordinary double points, in the usual order.
    pub fn p735() -> Vec<Point> {
        let half = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0], vec![1, 0, 1]];
        let mut v = half.clone();
        v.extend(half.iter().map(|p| p.iter().map(|x| -x).collect()));
        v
    }

    /// Columns of the ray matrix of the smooth ambient 4-fold.
    pub fn ambient_rays() -> Vec<Point> {
        vec![
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![-1, 0, -1, -1],
            vec![0, -1, -1, -1],
            vec![0, 0, 1, 0],
            vec![0, 0, -1, -1],
            vec![0, 0, 0, 1],
        ]
    }

    pub fn unit_square() -> Vec<Point> {
        vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]
    }

    pub fn cube() -> Vec<Point> {
        let mut v = Vec::new();
        for a in [-1, 1] {
            for b in [-1, 1] {
                for c in [-1, 1] {
                    v.push(vec![a, b, c]);
                }
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn unit_square_has_four_facets() {
        let p = LatticePolytope::from_vertices(&unit_square()).unwrap();
        assert_eq!(p.facets().len(), 4);
        assert_eq!(p.vertices().len(), 4);
    }

    #[test]
    fn redundant_points_are_dropped() {
        let mut pts = unit_square();
        pts.push(vec![1, 0]);
        pts.push(vec![0, 0]);
        let p = LatticePolytope::from_vertices(&[vec![0, 0], vec![2, 0], vec![1, 0], vec![0, 2], vec![1, 1], vec![0, 1]])
            .unwrap();
        assert_eq!(p.vertices(), &[vec![0, 0], vec![2, 0], vec![0, 2]]);
        let q = LatticePolytope::from_vertices(&pts).unwrap();
        assert_eq!(q.vertices().len(), 4);
    }

    #[test]
    fn degenerate_input_is_rejected() {
        let err = LatticePolytope::from_vertices(&[vec![0, 0], vec![1, 1], vec![2, 2]]).unwrap_err();
        assert_eq!(err, PolytopeError::Degenerate { dim: 2, rank: 1 });
        assert_eq!(LatticePolytope::from_vertices(&[]).unwrap_err(), PolytopeError::Empty);
    }

    #[test]
    fn p735_has_ten_vertices_and_twelve_facets() {
        let p = LatticePolytope::from_vertices(&p735()).unwrap();
        assert_eq!(p.vertices().len(), 10);
        assert_eq!(p.facets().len(), 12);
        assert!(p.is_reflexive());
        assert!(p.is_centrally_symmetric());
    }

    #[test]
    fn ambient_polytope_is_four_dimensional_with_seven_vertices() {
        let p = LatticePolytope::from_vertices(&ambient_rays()).unwrap();
        assert_eq!(p.dim(), 4);
        assert_eq!(p.vertices().len(), 7);
        assert!(p.is_reflexive());
    }

    #[test]
    fn polar_of_p735() {
        let p = LatticePolytope::from_vertices(&p735()).unwrap();
        let q = p.polar().unwrap();
        assert_eq!(q.vertices().len(), 12);
        assert!(q.vertex_index(&[0, -1, -1]).is_some());
        // one facet of the polar per vertex of P
        assert_eq!(q.facets().len(), 10);
        assert!(q.polar().unwrap().same_vertex_set(&p));
    }

    #[test]
    fn polar_requires_interior_origin() {
        let p = LatticePolytope::from_vertices(&unit_square()).unwrap();
        assert_eq!(p.polar().unwrap_err(), PolytopeError::OriginNotInterior);
        let q = LatticePolytope::from_vertices(&[vec![-1, -1], vec![2, -1], vec![-1, 2]]).unwrap();
        assert!(q.is_reflexive());
        let r = LatticePolytope::from_vertices(&[vec![-1, -1], vec![3, -1], vec![-1, 3]]).unwrap();
        assert!(matches!(r.polar(), Err(PolytopeError::NonLatticePolar { .. })));
    }
}

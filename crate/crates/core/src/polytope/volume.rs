//! Normalized volume and barycenter through a pulling triangulation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::LatticePolytope;
use crate::exactla::{sub, IntMatrix, Point, RatVector};

/// Which vertex each face of the triangulation is pulled from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Anchor {
    LexMin,
    LexMax,
}

impl LatticePolytope {
    /// Full-dimensional simplices (as vertex indices) covering the polytope,
    /// obtained by coning from the anchor vertex of every face over the
    /// triangulated faces that miss it.
    pub fn triangulation(&self, anchor: Anchor) -> Vec<Vec<usize>> {
        let whole = self.faces_by_dim[self.dim][0].clone();
        self.pull(&whole, self.dim, anchor)
    }

    fn pull(&self, face: &[usize], face_dim: usize, anchor: Anchor) -> Vec<Vec<usize>> {
        if face.len() == face_dim + 1 {
            return vec![face.to_vec()];
        }
        let apex = match anchor {
            Anchor::LexMin => face.iter().copied().min_by(|&a, &b| self.vertices[a].cmp(&self.vertices[b])),
            Anchor::LexMax => face.iter().copied().max_by(|&a, &b| self.vertices[a].cmp(&self.vertices[b])),
        }
        .expect("faces are nonempty");
        let mut out = Vec::new();
        for sub_face in self.boundary_faces(face, face_dim) {
            if sub_face.contains(&apex) {
                continue;
            }
            for mut simplex in self.pull(sub_face, face_dim - 1, anchor) {
                simplex.insert(0, apex);
                out.push(simplex);
            }
        }
        out
    }

    fn simplex_volume(&self, simplex: &[usize]) -> BigInt {
        let base = &self.vertices[simplex[0]];
        let edges: Vec<Point> = simplex[1..].iter().map(|&i| sub(&self.vertices[i], base)).collect();
        IntMatrix::from_rows(&edges).determinant().abs()
    }

    /// `dim!` times the Euclidean volume.
    pub fn normalized_volume(&self) -> BigInt {
        self.normalized_volume_with(Anchor::LexMin)
    }

    pub fn normalized_volume_with(&self, anchor: Anchor) -> BigInt {
        self.triangulation(anchor).iter().map(|s| self.simplex_volume(s)).sum()
    }

    /// Exact centroid of the solid polytope.
    pub fn barycenter(&self) -> RatVector {
        self.barycenter_with(Anchor::LexMin)
    }

    pub fn barycenter_with(&self, anchor: Anchor) -> RatVector {
        let mut acc = vec![BigInt::zero(); self.dim];
        let mut total = BigInt::zero();
        for s in self.triangulation(anchor) {
            let w = self.simplex_volume(&s);
            for &i in &s {
                for (a, x) in acc.iter_mut().zip(&self.vertices[i]) {
                    *a += &w * BigInt::from(*x);
                }
            }
            total += w;
        }
        // each simplex centroid is the vertex sum over dim + 1
        let denom = total * BigInt::from(self.dim as u64 + 1);
        RatVector(acc.into_iter().map(|a| BigRational::new(a, denom.clone())).collect())
    }
}

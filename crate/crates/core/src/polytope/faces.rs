//! Face lattice, f-vector and lattice-point enumeration.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{Facet, LatticePolytope};
use crate::exactla::{affine_rank, content, dot, sub, Point};

/// One face of a polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceRecord {
    pub dimension: usize,
    pub vertices: Vec<usize>,
    pub lattice_points: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FVector {
    /// `counts[k]` = number of `k`-dimensional faces, for `k < dim`.
    pub counts: Vec<usize>,
    /// Lattice length of each edge, in the order of `faces_of_dim(1)`.
    pub edge_lengths: Vec<i64>,
    /// Vertex count of each facet, in facet order.
    pub facet_vertex_counts: Vec<usize>,
}

impl FVector {
    /// `sum (-1)^k f_k = 1 - (-1)^dim` over the proper faces.
    pub fn euler_holds(&self) -> bool {
        euler_sum(&self.counts) == 1 - sign(self.counts.len())
    }
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn euler_sum(counts: &[usize]) -> i64 {
    counts.iter().enumerate().map(|(k, &c)| sign(k) * c as i64).sum()
}

/// Every nonempty face as a vertex-index set: the whole polytope plus all
/// intersections of facets. Grouped by dimension, each group sorted.
pub(super) fn face_lattice(dim: usize, vertices: &[Point], facets: &[Facet]) -> Vec<Vec<Vec<usize>>> {
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier: Vec<Vec<usize>> = facets.iter().map(|f| f.vertices.clone()).collect();
    all.extend(frontier.iter().cloned());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for face in &frontier {
            for f in facets {
                let meet: Vec<usize> = face.iter().copied().filter(|i| f.vertices.binary_search(i).is_ok()).collect();
                if !meet.is_empty() && all.insert(meet.clone()) {
                    next.push(meet);
                }
            }
        }
        frontier = next;
    }
    let mut by_dim = vec![Vec::new(); dim + 1];
    by_dim[dim].push((0..vertices.len()).collect());
    for face in all {
        let pts: Vec<Point> = face.iter().map(|&i| vertices[i].clone()).collect();
        by_dim[affine_rank(&pts)].push(face);
    }
    by_dim
}

impl LatticePolytope {
    pub fn f_vector(&self) -> FVector {
        let counts = (0..self.dim).map(|k| self.faces_by_dim[k].len()).collect();
        let edge_lengths = if self.dim >= 2 {
            self.faces_by_dim[1]
                .iter()
                .map(|e| content(&sub(&self.vertices[e[1]], &self.vertices[e[0]])))
                .collect()
        } else {
            Vec::new()
        };
        let facet_vertex_counts = self.facets.iter().map(|f| f.vertices.len()).collect();
        FVector { counts, edge_lengths, facet_vertex_counts }
    }

    /// Euler relation on the boundary of every face of dimension at least one.
    pub fn euler_relation_holds(&self) -> bool {
        for k in 1..=self.dim {
            for face in &self.faces_by_dim[k] {
                let counts: Vec<usize> = (0..k)
                    .map(|j| self.faces_by_dim[j].iter().filter(|g| is_subset(g, face)).count())
                    .collect();
                if euler_sum(&counts) != 1 - sign(k) {
                    return false;
                }
            }
        }
        true
    }

    /// All faces with their lattice points, ordered by dimension.
    pub fn face_records(&self) -> Vec<FaceRecord> {
        let points = self.lattice_points();
        let mut out = Vec::new();
        for (dimension, faces) in self.faces_by_dim.iter().enumerate() {
            for face in faces {
                let on: Vec<&Facet> = self
                    .facets
                    .iter()
                    .filter(|f| face.iter().all(|i| f.vertices.binary_search(i).is_ok()))
                    .collect();
                let lattice_points = points
                    .iter()
                    .filter(|p| on.iter().all(|f| dot(&f.normal, p) == -f.height))
                    .cloned()
                    .collect();
                out.push(FaceRecord { dimension, vertices: face.clone(), lattice_points });
            }
        }
        out
    }

    /// Sub-faces of `face` of dimension one less.
    pub(crate) fn boundary_faces(&self, face: &[usize], face_dim: usize) -> Vec<&Vec<usize>> {
        if face_dim == 0 {
            return Vec::new();
        }
        self.faces_by_dim[face_dim - 1].iter().filter(|g| is_subset(g, face)).collect()
    }

    /// Lattice points of the polytope, by bounding-box scan, in lexicographic order.
    pub fn lattice_points(&self) -> Vec<Point> {
        let lo: Point = (0..self.dim).map(|k| self.vertices.iter().map(|v| v[k]).min().unwrap()).collect();
        let hi: Point = (0..self.dim).map(|k| self.vertices.iter().map(|v| v[k]).max().unwrap()).collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            if self.contains(&cur) {
                out.push(cur.clone());
            }
            // odometer increment, last coordinate fastest
            let mut k = self.dim;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if cur[k] < hi[k] {
                    cur[k] += 1;
                    break;
                }
                cur[k] = lo[k];
            }
        }
    }

    /// Lattice points strictly inside the polytope.
    pub fn interior_points(&self) -> Vec<Point> {
        self.lattice_points()
            .into_iter()
            .filter(|p| self.facets.iter().all(|f| dot(&f.normal, p) > -f.height))
            .collect()
    }

    /// Per facet, the number of lattice points in its relative interior.
    pub fn facet_interior_points(&self) -> Vec<usize> {
        let points = self.lattice_points();
        self.facets
            .iter()
            .enumerate()
            .map(|(i, f)| {
                points
                    .iter()
                    .filter(|p| dot(&f.normal, p) == -f.height)
                    .filter(|p| {
                        self.facets
                            .iter()
                            .enumerate()
                            .all(|(j, g)| j == i || dot(&g.normal, p) > -g.height)
                    })
                    .count()
            })
            .collect()
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|i| big.binary_search(i).is_ok())
}

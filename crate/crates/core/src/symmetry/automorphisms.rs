use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::SymmetryError;
use crate::exactla::{rank_of, rational_inverse, IntMatrix, Point};
use crate::polytope::LatticePolytope;

/// Largest number of ordered vertex tuples the search will try.
pub const DEFAULT_TUPLE_CAP: u128 = 50_000_000;

/// A finite group of unimodular matrices acting on a polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeAutGroup {
    /// All elements, sorted.
    pub elements: Vec<IntMatrix>,
    /// A generating subset, chosen greedily from the sorted element list.
    pub generators: Vec<IntMatrix>,
}

impl LatticeAutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &IntMatrix) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Closed under products and inverses, and contains the identity.
    pub fn is_group(&self) -> bool {
        let Some(first) = self.elements.first() else {
            return false;
        };
        let id = IntMatrix::identity(first.rows());
        if !self.contains(&id) {
            return false;
        }
        for a in &self.elements {
            if !self.elements.iter().any(|b| (a * b) == id) {
                return false;
            }
            for b in &self.elements {
                if !self.contains(&(a * b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generated_by(gens: &[IntMatrix]) -> Vec<IntMatrix> {
        let Some(first) = gens.first() else {
            return Vec::new();
        };
        let mut seen: BTreeSet<IntMatrix> = BTreeSet::new();
        let mut frontier = vec![IntMatrix::identity(first.rows())];
        seen.insert(frontier[0].clone());
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = &x * g;
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }
}

/// Multiplicative order of a finite-order matrix (`None` past 1000).
pub fn element_order(g: &IntMatrix) -> Option<u32> {
    let id = IntMatrix::identity(g.rows());
    let mut x = g.clone();
    for k in 1..=1000 {
        if x == id {
            return Some(k);
        }
        x = &x * g;
    }
    None
}

impl IntMatrix {
    /// Multiplicative order, if at most 1000.
    pub fn order(&self) -> Option<u32> {
        element_order(self)
    }
}

/// All `g ∈ GL(N)` with `g(vertices) = vertices`.
///
/// Fixes `d` independent vertices `b_1..b_d`, tries every ordered tuple of
/// distinct vertices `c_1..c_d` as their images, and keeps the integral
/// unimodular `g = C B⁻¹` that permute the vertex set.
pub fn polytope_automorphisms(p: &LatticePolytope, cap: u128) -> Result<LatticeAutGroup, SymmetryError> {
    if !p.origin_in_interior() {
        return Err(SymmetryError::OriginNotInterior);
    }
    let verts = p.vertices();
    let d = p.dim();
    let n = verts.len();
    let candidates: u128 = (0..d).map(|k| (n - k) as u128).product();
    if candidates > cap {
        return Err(SymmetryError::TooManyCandidates { candidates, cap });
    }

    let mut basis: Vec<usize> = Vec::new();
    for i in 0..n {
        let mut trial: Vec<Point> = basis.iter().map(|&b| verts[b].clone()).collect();
        trial.push(verts[i].clone());
        if rank_of(&trial) == trial.len() {
            basis.push(i);
        }
        if basis.len() == d {
            break;
        }
    }
    let b = IntMatrix::from_columns(&basis.iter().map(|&i| verts[i].clone()).collect::<Vec<_>>());
    let b_inv = rational_inverse(&b).expect("basis vertices are independent");
    let vertex_set: BTreeSet<&Point> = verts.iter().collect();

    let mut elements = Vec::new();
    for tuple in (0..n).permutations(d) {
        // g = C * B^{-1}, entries must be integers
        let mut entries = Vec::with_capacity(d * d);
        let mut integral = true;
        'outer: for r in 0..d {
            for c in 0..d {
                let mut acc = num_rational::BigRational::zero();
                for (k, &t) in tuple.iter().enumerate() {
                    acc += &b_inv[k][c] * num_rational::BigRational::from_integer(BigInt::from(verts[t][r]));
                }
                if !acc.is_integer() {
                    integral = false;
                    break 'outer;
                }
                entries.push(acc.to_integer());
            }
        }
        if !integral {
            continue;
        }
        let g = IntMatrix::new(d, d, entries);
        if !g.determinant().abs().is_one() {
            continue;
        }
        if verts.iter().all(|v| vertex_set.contains(&g.apply_i64(v))) {
            elements.push(g);
        }
    }
    elements.sort();
    elements.dedup();

    let mut generators: Vec<IntMatrix> = Vec::new();
    let mut span = LatticeAutGroup::generated_by(&[IntMatrix::identity(d)]);
    for g in &elements {
        if span.binary_search(g).is_err() {
            generators.push(g.clone());
            span = LatticeAutGroup::generated_by(&generators);
        }
    }
    Ok(LatticeAutGroup { elements, generators })
}

/// Permutation of vertex indices induced by `g` (`None` if `g` does not permute them).
pub fn vertex_permutation(p: &LatticePolytope, g: &IntMatrix) -> Option<Vec<usize>> {
    p.vertices().iter().map(|v| p.vertex_index(&g.apply_i64(v))).collect()
}

impl LatticePolytope {
    pub fn vertex_permutation(&self, g: &IntMatrix) -> Option<Vec<usize>> {
        vertex_permutation(self, g)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::polytope::fixtures::{cube, p735};

    pub fn g1() -> IntMatrix {
        IntMatrix::from_rows(&[[-1, 1, 1], [0, 1, 0], [0, 0, 1]])
    }
    pub fn g2() -> IntMatrix {
        IntMatrix::from_rows(&[[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    }
    pub fn g3() -> IntMatrix {
        IntMatrix::from_rows(&[[1, -1, 0], [0, 0, 1], [0, -1, 0]])
    }

    /// Independent count over all integer matrices with entries in [-1, 1]
    /// that permute the vertices. Enough for the polytopes below: each unit
    /// vector is a vertex or the midpoint of two vertices with coordinates in
    /// [-1, 1], so every column of an automorphism has entries in [-1, 1].
    fn brute_force_order(verts: &[Point]) -> usize {
        let d = verts[0].len();
        let set: BTreeSet<&Point> = verts.iter().collect();
        let mut count = 0;
        for entries in (0..d * d).map(|_| -1i64..=1).multi_cartesian_product() {
            let rows: Vec<Vec<i64>> = entries.chunks(d).map(|c| c.to_vec()).collect();
            let g = IntMatrix::from_rows(&rows);
            if g.determinant().abs().is_one() && verts.iter().all(|v| set.contains(&g.apply_i64(v))) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn p735_group() {
        let p = LatticePolytope::from_vertices(&p735()).unwrap();
        let g = polytope_automorphisms(&p, DEFAULT_TUPLE_CAP).unwrap();
        assert_eq!(g.order(), 16);
        assert!(g.is_group());
        for (m, ord) in [(g1(), 2), (g2(), 2), (g3(), 4)] {
            assert!(g.contains(&m));
            assert_eq!(m.order(), Some(ord));
        }
        assert_eq!(LatticeAutGroup::generated_by(&[g1(), g2(), g3()]), g.elements);
        assert_eq!(LatticeAutGroup::generated_by(&g.generators), g.elements);
    }

    #[test]
    fn cube_and_triangle() {
        let c = LatticePolytope::from_vertices(&cube()).unwrap();
        let gc = polytope_automorphisms(&c, DEFAULT_TUPLE_CAP).unwrap();
        assert_eq!(gc.order(), 48);
        assert_eq!(brute_force_order(&cube()), 48);
        let tri = vec![vec![1, 0], vec![0, 1], vec![-1, -1]];
        let t = LatticePolytope::from_vertices(&tri).unwrap();
        assert_eq!(polytope_automorphisms(&t, DEFAULT_TUPLE_CAP).unwrap().order(), 6);
        assert_eq!(brute_force_order(&tri), 6);
        assert_eq!(brute_force_order(&p735()), 16);
    }

    #[test]
    fn vertex_action_of_g3() {
        let p = LatticePolytope::from_vertices(&p735()).unwrap();
        let perm = p.vertex_permutation(&g3()).unwrap();
        // rho_2 -> rho_10 -> rho_9 -> rho_3 -> rho_2 and rho_5 -> rho_4 -> rho_8 -> rho_7 -> rho_5
        let one_based: Vec<usize> = perm.iter().map(|i| i + 1).collect();
        assert_eq!(one_based, vec![1, 10, 2, 8, 4, 6, 5, 7, 3, 9]);
    }

    #[test]
    fn cap_is_enforced() {
        let p = LatticePolytope::from_vertices(&p735()).unwrap();
        assert!(matches!(polytope_automorphisms(&p, 10), Err(SymmetryError::TooManyCandidates { .. })));
    }
}

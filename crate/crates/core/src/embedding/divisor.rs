use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::EmbeddingError;
use crate::exactla::{hnf, rank_of, same_row_lattice, snf, IntMatrix, Point};
use crate::fan::Fan;

/// `0 → M → Z^rays → Cl → 0` for a fan whose rays span `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorSequence {
    /// `Rᵀ`: one row per ray.
    pub ray_matrix_t: Vec<Point>,
    /// Free part of the class map, one row per free generator of `Cl`.
    pub weights: Vec<Point>,
    /// Orders of the torsion summands of `Cl` (empty when free).
    pub torsion: Vec<BigInt>,
}

fn to_rows(m: &IntMatrix) -> Vec<Point> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_i64().expect("small entry")).collect()).collect()
}

fn matrix(rows: &[Point], cols: usize) -> IntMatrix {
    if rows.is_empty() {
        IntMatrix::zeros(0, cols)
    } else {
        IntMatrix::from_rows(rows)
    }
}

/// Class-group presentation of a fan. The weight rows are reduced to Hermite
/// normal form, so the result only depends on the row lattice.
pub fn divisor_sequence(fan: &Fan) -> Result<DivisorSequence, EmbeddingError> {
    let rays = fan.rays();
    let d = fan.dim();
    let rank = rank_of(rays);
    if rank < d {
        return Err(EmbeddingError::RaysNotSpanning { rank, dim: d });
    }
    let rt = IntMatrix::from_rows(rays);
    let n = rt.rows();
    // S = U Rᵀ V, so x ↦ U x identifies Z^n / im Rᵀ with ⊕ Z/s_i ⊕ Z^(n-d)
    let (s, u, _) = snf(&rt);
    let torsion: Vec<BigInt> = (0..d).map(|i| s.get(i, i).clone()).filter(|x| !x.is_one()).collect();
    let free = u.select_rows(&(d..n).collect::<Vec<_>>());
    let (h, _) = hnf(&free);
    let weights = to_rows(&h).into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect();
    Ok(DivisorSequence { ray_matrix_t: rays.to_vec(), weights, torsion })
}

impl DivisorSequence {
    pub fn rays(&self) -> usize {
        self.ray_matrix_t.len()
    }

    pub fn weight_matrix(&self) -> IntMatrix {
        matrix(&self.weights, self.rays())
    }

    /// Weight of the Cox variable of ray `j`.
    pub fn column(&self, j: usize) -> Point {
        self.weights.iter().map(|r| r[j]).collect()
    }

    /// `D·Rᵀ = 0` and the ranks add up to the number of rays.
    pub fn is_exact(&self) -> bool {
        let d = self.ray_matrix_t.first().map_or(0, |r| r.len());
        let product = &self.weight_matrix() * &matrix(&self.ray_matrix_t, d);
        product.entries().iter().all(Zero::is_zero)
            && rank_of(&self.weights) + rank_of(&self.ray_matrix_t) == self.rays()
    }

    /// Replace the weight rows by another basis of the same row lattice.
    pub fn with_basis(&self, basis: &[Point]) -> Result<DivisorSequence, EmbeddingError> {
        if !same_up_to_unimodular_rows(&self.weights, basis) {
            return Err(EmbeddingError::BasisMismatch);
        }
        Ok(DivisorSequence { weights: basis.to_vec(), ..self.clone() })
    }
}

/// Whether two weight matrices differ by a unimodular row transformation.
pub fn same_up_to_unimodular_rows(a: &[Point], b: &[Point]) -> bool {
    let cols = |m: &[Point]| m.first().map_or(0, |r| r.len());
    a.len() == b.len()
        && cols(a) == cols(b)
        && rank_of(a) == a.len()
        && rank_of(b) == b.len()
        && same_row_lattice(&matrix(a, cols(a)), &matrix(b, cols(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::fixtures::sigma_f;

    fn fan(rays: Vec<Point>, cones: Vec<Vec<usize>>) -> Fan {
        Fan::new(rays, cones).unwrap()
    }

    #[test]
    fn ambient_weight_matrix() {
        let seq = divisor_sequence(&sigma_f()).unwrap();
        let expected = vec![
            vec![1, 0, 1, 0, 0, -1, 0],
            vec![0, 1, 0, 1, 0, -1, 0],
            vec![0, 0, 0, 0, 1, 1, 1],
        ];
        assert_eq!(seq.weights, expected);
        assert!(seq.torsion.is_empty());
        assert!(seq.is_exact());
        let other = vec![expected[0].clone(), vec![1, 1, 1, 1, 0, -2, 0], expected[2].clone()];
        assert_eq!(seq.with_basis(&other).unwrap().weights, other);
        assert_eq!(seq.with_basis(&[expected[0].clone(), expected[1].clone(), vec![0, 0, 0, 0, 2, 2, 2]]),
            Err(EmbeddingError::BasisMismatch));
    }

    #[test]
    fn projective_plane_and_product() {
        let p2 = fan(vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert_eq!(divisor_sequence(&p2).unwrap().weights, vec![vec![1, 1, 1]]);
        let p1p1 = fan(
            vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]],
        );
        let seq = divisor_sequence(&p1p1).unwrap();
        assert_eq!(seq.weights, vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]]);
        assert!(seq.is_exact());
    }

    #[test]
    fn torsion_of_a_quotient_surface() {
        // every 2x2 minor of these rays is even, so Cl has a Z/2 summand
        let f = fan(
            vec![vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]],
            vec![vec![0, 2], vec![2, 3], vec![1, 3], vec![0, 1]],
        );
        let seq = divisor_sequence(&f).unwrap();
        assert_eq!(seq.torsion, vec![BigInt::from(2)]);
        assert_eq!(seq.weights.len(), 2);
        assert!(seq.is_exact());
    }

    #[test]
    fn non_spanning_rays() {
        let f = fan(vec![vec![1, 0], vec![-1, 0]], vec![vec![0], vec![1]]);
        assert_eq!(divisor_sequence(&f), Err(EmbeddingError::RaysNotSpanning { rank: 1, dim: 2 }));
    }
}

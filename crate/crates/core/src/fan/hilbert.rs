//! Minimal generators of the monoid `σ∨ ∩ M`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Cone, FanError};
use crate::exactla::{dot, rank_of, rational_inverse, sub, IntMatrix, Point};

/// Largest pairing `<m, ρ>` scanned by default.
pub const DEFAULT_HILBERT_BOUND: i64 = 3;

/// An upper bound for `<h, ρ>` over Hilbert basis elements `h` and rays `ρ`.
///
/// Every element of `σ∨` lies in a simplicial cone on `d` extreme rays
/// `g_i` of `σ∨`; an irreducible element is either some `g_i` or a
/// combination with all coefficients in `[0, 1)`. Pairing with `ρ` is then
/// below `Σ_g <g, ρ>` over all extreme rays.
pub fn hilbert_bound_needed(sigma: &Cone) -> i64 {
    let mut needed = 0;
    for r in sigma.rays() {
        let pairings: Vec<i64> = sigma.normals().iter().map(|g| dot(g, r)).collect();
        let total: i64 = pairings.iter().sum();
        let single = pairings.iter().copied().max().unwrap_or(0);
        needed = needed.max(single).max(total - 1);
    }
    needed
}

/// Hilbert basis of the dual cone of a full-dimensional strongly convex cone,
/// sorted lexicographically.
///
/// Scans every dual lattice point whose pairing with each ray lies in
/// `[0, bound]` and keeps the ones that are not a sum of two nonzero scanned
/// points. Fails when `bound` is below [`hilbert_bound_needed`].
pub fn dual_cone_generators(sigma: &Cone, bound: i64) -> Result<Vec<Point>, FanError> {
    if !sigma.is_full_dimensional() {
        return Err(FanError::NotFullDimensional { rank: sigma.dim(), dim: sigma.ambient_dim() });
    }
    let needed = hilbert_bound_needed(sigma);
    if needed > bound {
        return Err(FanError::HilbertBoundExceeded { needed, bound });
    }
    let d = sigma.ambient_dim();

    // d independent rays give coordinates on M: m <-> (<m, ρ_i>)
    let mut basis: Vec<Point> = Vec::new();
    for r in sigma.rays() {
        let mut trial = basis.clone();
        trial.push(r.clone());
        if rank_of(&trial) == trial.len() {
            basis = trial;
        }
        if basis.len() == d {
            break;
        }
    }
    let sel = IntMatrix::from_rows(&basis);
    let det = sel.determinant();
    let inv = rational_inverse(&sel).expect("rays are independent");
    // adjugate = det * inverse is integral
    let adj: Vec<Vec<BigInt>> = inv
        .iter()
        .map(|row| row.iter().map(|x| (x * &det).to_integer()).collect())
        .collect();

    let mut elements: Vec<Point> = Vec::new();
    let mut values = vec![0i64; d];
    loop {
        if let Some(m) = solve(&adj, &det, &values) {
            if m.iter().any(|&x| x != 0) && sigma.rays().iter().all(|r| (0..=bound).contains(&dot(&m, r))) {
                elements.push(m);
            }
        }
        let mut k = 0;
        while k < d && values[k] == bound {
            values[k] = 0;
            k += 1;
        }
        if k == d {
            break;
        }
        values[k] += 1;
    }
    elements.sort();
    elements.dedup();

    let set: std::collections::BTreeSet<&Point> = elements.iter().collect();
    let mut basis_out: Vec<Point> = elements
        .iter()
        .filter(|m| !elements.iter().any(|a| a != *m && set.contains(&sub(m, a)) && sigma.dual_contains(&sub(m, a))))
        .cloned()
        .collect();
    basis_out.sort();
    Ok(basis_out)
}

fn solve(adj: &[Vec<BigInt>], det: &BigInt, values: &[i64]) -> Option<Point> {
    let mut out = Vec::with_capacity(adj.len());
    for row in adj {
        let mut acc = BigInt::zero();
        for (a, v) in row.iter().zip(values) {
            acc += a * BigInt::from(*v);
        }
        if !(&acc % det).is_zero() {
            return None;
        }
        out.push((acc / det).to_i64()?);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use std::collections::BTreeSet;

    fn sorted(v: &[[i64; 3]]) -> Vec<Point> {
        let mut out: Vec<Point> = v.iter().map(|x| x.to_vec()).collect();
        out.sort();
        out
    }

    /// All nonzero monoid elements in a coordinate box, and which of them
    /// are sums of two others.
    fn brute_force_irreducibles(sigma: &Cone, radius: i64) -> BTreeSet<Point> {
        let mut pts = Vec::new();
        for a in -radius..=radius {
            for b in -radius..=radius {
                for c in -radius..=radius {
                    let m = vec![a, b, c];
                    if m != vec![0, 0, 0] && sigma.dual_contains(&m) {
                        pts.push(m);
                    }
                }
            }
        }
        let all: BTreeSet<Point> = pts.iter().cloned().collect();
        pts.iter()
            .filter(|m| !pts.iter().any(|a| all.contains(&sub(m, a))))
            .cloned()
            .collect()
    }

    #[test]
    fn odp_cone_generators() {
        let fan = sigma_x();
        let alpha = cone_by_numbers(&fan, &[2, 3, 4, 5]);
        assert_eq!(
            dual_cone_generators(&alpha, DEFAULT_HILBERT_BOUND).unwrap(),
            sorted(&[[-1, 1, 1], [1, 0, 0], [0, 0, 1], [0, 1, 0]])
        );
        let beta = cone_by_numbers(&fan, &[2, 4, 8, 10]);
        assert_eq!(
            dual_cone_generators(&beta, DEFAULT_HILBERT_BOUND).unwrap(),
            sorted(&[[0, 0, -1], [0, 1, 0], [-1, 1, 0], [1, 0, -1]])
        );
    }

    #[test]
    fn smooth_cone_gives_dual_basis() {
        let c = Cone::new(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(dual_cone_generators(&c, 1).unwrap(), sorted(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]));
    }

    #[test]
    fn matches_brute_force_on_all_cones() {
        let fan = sigma_x();
        for i in 0..fan.max_cones().len() {
            let c = fan.cone(i).unwrap();
            let hb: BTreeSet<Point> = dual_cone_generators(&c, DEFAULT_HILBERT_BOUND).unwrap().into_iter().collect();
            assert_eq!(hb, brute_force_irreducibles(&c, 3), "cone {i}");
        }
    }

    #[test]
    fn non_gorenstein_cone() {
        // cone over a triangle with a multiplicity-2 corner
        let c = Cone::new(vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, -1, 1]]).unwrap();
        let hb: BTreeSet<Point> = dual_cone_generators(&c, 8).unwrap().into_iter().collect();
        assert_eq!(hb, brute_force_irreducibles(&c, 4));
    }

    #[test]
    fn bound_too_small_is_reported() {
        let c = Cone::new(vec![vec![1, 0], vec![1, 5]]).unwrap();
        assert!(matches!(dual_cone_generators(&c, 1), Err(FanError::HilbertBoundExceeded { .. })));
        let flat = Cone::new(vec![vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert!(matches!(dual_cone_generators(&flat, 3), Err(FanError::NotFullDimensional { .. })));
    }
}

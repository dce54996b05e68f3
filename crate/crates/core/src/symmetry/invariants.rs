//! Monomials in the deformation parameters of total torus weight zero.

use itertools::Itertools;

use super::{SymmetryError, TorusWeight};
use crate::exactla::{kernel_basis_i64, Point};
use crate::polyring::{rat, MultiPoly};

pub const DEFAULT_EXPONENT_BOUND: u32 = 4;

/// Exponent vectors `e ≥ 0` with `Σ e_i w_i = 0` on extreme rays of that cone.
///
/// An extreme ray has support `S` on which the restricted kernel is a line
/// spanned by a vector with all entries nonzero of one sign.
fn extreme_rays(weights: &[Point], n: usize) -> Vec<Point> {
    let d = weights.first().map_or(0, |w| w.len());
    let mut out = Vec::new();
    for size in 1..=n {
        for s in (0..n).combinations(size) {
            let rows: Vec<Point> = (0..d).map(|k| s.iter().map(|&i| weights[i][k]).collect()).collect();
            let ker = kernel_basis_i64(&rows, s.len());
            if ker.len() != 1 {
                continue;
            }
            let v = &ker[0];
            let sign = if v[0] > 0 { 1 } else { -1 };
            if v.iter().all(|x| x * sign > 0) {
                let mut full = vec![0; n];
                for (&i, x) in s.iter().zip(v) {
                    full[i] = x * sign;
                }
                out.push(full);
            }
        }
    }
    out
}

/// Exponent bound that certainly contains every minimal generator: each one
/// lies in the zonotope `Σ [0,1) r` of the extreme rays or is a ray itself.
fn bound_needed(rays: &[Point], n: usize) -> u32 {
    (0..n)
        .map(|i| {
            let sum: i64 = rays.iter().map(|r| r[i]).sum();
            let max = rays.iter().map(|r| r[i]).max().unwrap_or(0);
            (sum - 1).max(max).max(0) as u32
        })
        .max()
        .unwrap_or(0)
}

/// Minimal generators of the monoid of weight-zero monomials, as monic
/// monomials in the parameter names, lexicographically descending.
pub fn torus_invariant_monomials(weights: &[TorusWeight], bound: u32) -> Result<Vec<MultiPoly>, SymmetryError> {
    let n = weights.len();
    let names: Vec<String> = weights.iter().map(|w| w.parameter.clone()).collect();
    let ws: Vec<Point> = weights.iter().map(|w| w.weight.clone()).collect();
    let rays = extreme_rays(&ws, n);
    if rays.is_empty() {
        return Ok(Vec::new());
    }
    let needed = bound_needed(&rays, n);
    if needed > bound {
        return Err(SymmetryError::ExponentBoundExceeded { needed, bound });
    }
    let d = ws[0].len();
    let invariant: Vec<Point> = (0..n)
        .map(|_| 0..=needed as i64)
        .multi_cartesian_product()
        .filter(|e| e.iter().any(|&x| x > 0))
        .filter(|e| (0..d).all(|k| e.iter().zip(&ws).map(|(x, w)| x * w[k]).sum::<i64>() == 0))
        .collect();
    let mut minimal: Vec<Point> = invariant
        .iter()
        .filter(|e| !invariant.iter().any(|f| f != *e && f.iter().zip(e.iter()).all(|(a, b)| a <= b)))
        .cloned()
        .collect();
    minimal.sort_by(|a, b| b.cmp(a));
    Ok(minimal
        .into_iter()
        .map(|e| MultiPoly::monomial(&names, e.iter().map(|&x| x as u32).collect(), rat(1)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::fixtures::sigma_x;
    use crate::symmetry::action::tests::charts;
    use crate::symmetry::t1_weights;

    fn tw(ws: &[&[i64]]) -> Vec<TorusWeight> {
        ws.iter()
            .enumerate()
            .map(|(i, w)| TorusWeight { parameter: format!("t{}", i + 1), weight: w.to_vec() })
            .collect()
    }

    #[test]
    fn parameters_of_the_four_odps() {
        let w = t1_weights(&sigma_x(), &charts()).unwrap();
        let mons: Vec<String> =
            torus_invariant_monomials(&w, DEFAULT_EXPONENT_BOUND).unwrap().iter().map(|m| m.to_string()).collect();
        assert_eq!(mons, vec!["t_alpha*t_gamma", "t_beta*t_delta"]);
    }

    #[test]
    fn small_cases() {
        let m = torus_invariant_monomials(&tw(&[&[1], &[-1]]), 4).unwrap();
        assert_eq!(m.iter().map(|p| p.to_string()).collect::<Vec<_>>(), vec!["t1*t2"]);
        assert!(torus_invariant_monomials(&tw(&[&[1, 0], &[0, 1]]), 4).unwrap().is_empty());
        let m = torus_invariant_monomials(&tw(&[&[2], &[-3]]), 4).unwrap();
        assert_eq!(m.iter().map(|p| p.to_string()).collect::<Vec<_>>(), vec!["t1^3*t2^2"]);
        let m = torus_invariant_monomials(&tw(&[&[0], &[1]]), 4).unwrap();
        assert_eq!(m.iter().map(|p| p.to_string()).collect::<Vec<_>>(), vec!["t1"]);
    }

    #[test]
    fn bound_is_reported() {
        assert_eq!(
            torus_invariant_monomials(&tw(&[&[5], &[-7]]), 4),
            Err(SymmetryError::ExponentBoundExceeded { needed: 7, bound: 4 })
        );
    }

    /// Non-minimal generators by a plain box scan agree on mixed-sign weights.
    #[test]
    fn agrees_with_a_wide_scan() {
        let w = tw(&[&[1, 0], &[-1, 1], &[0, -1], &[-2, 0]]);
        let got: Vec<Vec<u32>> =
            torus_invariant_monomials(&w, 4).unwrap().iter().map(|m| m.terms().keys().next().unwrap().clone()).collect();
        let mut scan: Vec<Vec<u32>> = Vec::new();
        let box_: Vec<Vec<u32>> = (0..4).map(|_| 0..=6u32).multi_cartesian_product().collect();
        let inv = |e: &Vec<u32>| {
            (0..2).all(|k| e.iter().zip(&w).map(|(x, t)| *x as i64 * t.weight[k]).sum::<i64>() == 0)
                && e.iter().any(|&x| x > 0)
        };
        for e in box_.iter().filter(|e| inv(e)) {
            if !box_.iter().any(|f| inv(f) && f != e && f.iter().zip(e).all(|(a, b)| a <= b)) {
                scan.push(e.clone());
            }
        }
        scan.sort_by(|a, b| b.cmp(a));
        assert_eq!(got, scan);
    }
}

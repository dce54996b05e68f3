//! Exact integer and rational linear algebra.
//!
//! Every lattice computation in the crate goes through [`IntMatrix`]
//! (arbitrary-precision entries) or the small `i64` [`Point`] helpers below.
//! Nothing here touches floating point.

mod matrix;
mod normal_form;
mod rational;

pub use matrix::IntMatrix;
pub use normal_form::{hnf, kernel_basis, kernel_basis_i64, same_row_lattice, snf};
pub use rational::{rational_inverse, solve_square, RatVector};

use num_integer::Integer;

/// A lattice point or dual-lattice vector.
pub type Point = Vec<i64>;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[i64]) -> Point {
    a.iter().map(|x| -x).collect()
}

pub fn content(a: &[i64]) -> i64 {
    a.iter().fold(0i64, |g, x| g.gcd(x))
}

/// Divides out the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(a: &[i64]) -> Point {
    let g = content(a);
    if g == 0 {
        return a.to_vec();
    }
    a.iter().map(|x| x / g).collect()
}

/// Rank of a list of integer vectors.
pub fn rank_of(points: &[Point]) -> usize {
    if points.is_empty() {
        return 0;
    }
    IntMatrix::from_rows(points).rank()
}

/// Rank of the affine hull of a point set (so a single point has rank 0).
pub fn affine_rank(points: &[Point]) -> usize {
    match points.split_first() {
        None => 0,
        Some((first, rest)) => {
            let diffs: Vec<Point> = rest.iter().map(|p| sub(p, first)).collect();
            rank_of(&diffs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_and_content() {
        assert_eq!(primitive(&[4, -6, 2]), vec![2, -3, 1]);
        assert_eq!(primitive(&[0, 0]), vec![0, 0]);
        assert_eq!(content(&[0, -9, 6]), 3);
    }

    #[test]
    fn affine_rank_of_square() {
        let pts = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        assert_eq!(affine_rank(&pts), 2);
        assert_eq!(affine_rank(&pts[..1]), 0);
        assert_eq!(affine_rank(&[vec![0, 0], vec![1, 1], vec![2, 2]]), 1);
    }
}

use std::fmt;
use std::ops::{Deref, DerefMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::IntMatrix;

/// Vector of exact rationals (barycenters, solutions of lattice systems).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatVector(pub Vec<BigRational>);

impl RatVector {
    pub fn zeros(n: usize) -> Self {
        RatVector(vec![BigRational::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RatVector(v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Integer entries if every coordinate is integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|x| x.to_string()).collect()
    }
}

impl Deref for RatVector {
    type Target = Vec<BigRational>;
    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

impl DerefMut for RatVector {
    fn deref_mut(&mut self) -> &mut Self::Target {
        &mut self.0
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Serialize for RatVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

fn to_rat_rows(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

/// Inverse over the rationals; `None` for singular or non-square input.
pub fn rational_inverse(m: &IntMatrix) -> Option<Vec<Vec<BigRational>>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let mut a = to_rat_rows(m);
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(p, c);
        inv.swap(p, c);
        let piv = a[c][c].clone();
        for j in 0..n {
            a[c][j] = &a[c][j] / &piv;
            inv[c][j] = &inv[c][j] / &piv;
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..n {
                let d = &f * &a[c][j];
                a[i][j] -= d;
                let d = &f * &inv[c][j];
                inv[i][j] -= d;
            }
        }
    }
    Some(inv)
}

/// Unique solution of the square system `m * x = b`, if `m` is invertible.
pub fn solve_square(m: &IntMatrix, b: &[BigInt]) -> Option<RatVector> {
    let inv = rational_inverse(m)?;
    let b: Vec<BigRational> = b.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    Some(RatVector(
        inv.iter()
            .map(|row| row.iter().zip(&b).map(|(x, y)| x * y).sum())
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_small_system() {
        let m = IntMatrix::from_rows(&[[2, 0], [1, 3]]);
        let x = solve_square(&m, &[BigInt::from(1), BigInt::from(2)]).unwrap();
        // 2x = 1, x + 3y = 2  =>  x = 1/2, y = 1/2
        assert_eq!(x.to_strings(), vec!["1/2", "1/2"]);
        assert!(solve_square(&IntMatrix::from_rows(&[[1, 2], [2, 4]]), &[BigInt::one(), BigInt::one()]).is_none());
    }
}

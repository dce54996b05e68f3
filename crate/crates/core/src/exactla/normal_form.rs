//! Hermite and Smith normal forms and integer kernels.
//!
//! HNF convention (fixed so fixtures stay bit-stable): `H = U * M` with `U`
//! unimodular, built by integer row operations. Pivot positions are found by
//! scanning columns left to right; each pivot is positive, entries below a
//! pivot are zero and entries above a pivot lie in `[0, pivot)`. Zero rows
//! sit at the bottom. Equivalently, `H^T = M^T * U^T` is the column-style
//! Hermite form of `M^T` with nonnegative reduced off-pivot entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{IntMatrix, Point};

/// Hermite normal form `(H, U)` with `H = U * M`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.rows();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    for c in 0..h.cols() {
        if r == rows {
            break;
        }
        let mut has_pivot = false;
        loop {
            let pivot = (r..rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&a, &b| h.get(a, c).abs().cmp(&h.get(b, c).abs()).then(a.cmp(&b)));
            let Some(p) = pivot else { break };
            has_pivot = true;
            h.swap_rows(p, r);
            u.swap_rows(p, r);
            let mut clean = true;
            for i in r + 1..rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = -h.get(i, c).div_floor(h.get(r, c));
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                if !h.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !has_pivot {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h.get(i, c).div_floor(h.get(r, c));
            h.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form `(S, U, V)` with `S = U * M * V`, `S` diagonal,
/// nonnegative, and `S[i][i]` dividing `S[i+1][i+1]`.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = s.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (s, u, v);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = -s.get(i, t).div_floor(s.get(t, t));
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= s.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = -s.get(t, j).div_floor(s.get(t, t));
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= s.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and go again
            let offending = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !s.get(i, j).is_multiple_of(s.get(t, t)))
            });
            match offending {
                Some(i) => {
                    let one = BigInt::from(1);
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    (s, u, v)
}

/// Lattice basis of `{v in Z^cols : M v = 0}`, saturated, returned as the
/// nonzero rows of its Hermite normal form.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (h, u) = hnf(&m.transpose());
    let raw: Vec<Vec<BigInt>> = (0..h.rows())
        .filter(|&i| h.is_zero_row(i))
        .map(|i| u.row(i).to_vec())
        .collect();
    if raw.is_empty() {
        return raw;
    }
    let (canon, _) = hnf(&IntMatrix::from_big_rows(&raw, m.cols()));
    (0..canon.rows())
        .filter(|&i| !canon.is_zero_row(i))
        .map(|i| canon.row(i).to_vec())
        .collect()
}

/// [`kernel_basis`] with `i64` input and output.
pub fn kernel_basis_i64(rows: &[Point], cols: usize) -> Vec<Point> {
    let m = if rows.is_empty() {
        IntMatrix::zeros(0, cols)
    } else {
        IntMatrix::from_rows(rows)
    };
    kernel_basis(&m)
        .into_iter()
        .map(|v| v.iter().map(|x| x.to_i64().expect("kernel entry overflows i64")).collect())
        .collect()
}

/// Whether the two matrices have the same row lattice (same HNF up to zero rows).
pub fn same_row_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    if a.cols() != b.cols() {
        return false;
    }
    let nonzero = |m: &IntMatrix| {
        let (h, _) = hnf(m);
        (0..h.rows())
            .filter(|&i| !h.is_zero_row(i))
            .map(|i| h.row(i).to_vec())
            .collect::<Vec<_>>()
    };
    nonzero(a) == nonzero(b)
}

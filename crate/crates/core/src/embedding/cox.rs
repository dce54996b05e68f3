use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::EmbeddingError;
use crate::exactla::{dot, kernel_basis_i64, primitive, rank_of, solve_square, IntMatrix, Point};
use crate::fan::{Cone, Fan, FanError};
use crate::polyring::{rat, MultiPoly};

/// `prefix1, …, prefixN`.
pub fn cox_variable_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Pullback of torus-invariant divisors along a toric morphism.
///
/// `coefficients[j][i]` is the coefficient of target ray `j` in the image of
/// source ray `i`, so the target Cox variable `j` pulls back to
/// `∏_i x_i^coefficients[j][i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxPullback {
    pub source_vars: Vec<String>,
    pub target_vars: Vec<String>,
    pub coefficients: Vec<Point>,
}

impl CoxPullback {
    /// Nonzero `(target ray, coefficient)` pairs of the image of source ray `i`.
    pub fn decomposition_of(&self, i: usize) -> Vec<(usize, i64)> {
        self.coefficients.iter().enumerate().filter(|(_, row)| row[i] != 0).map(|(j, row)| (j, row[i])).collect()
    }

    /// `R_tgt · B = A · R_src`.
    pub fn commutes(&self, a: &IntMatrix, src: &Fan, tgt: &Fan) -> bool {
        (0..src.rays().len()).all(|i| {
            let mut sum = vec![0i64; tgt.dim()];
            for (j, c) in self.decomposition_of(i) {
                for (s, r) in sum.iter_mut().zip(&tgt.rays()[j]) {
                    *s += c * r;
                }
            }
            sum == a.apply_i64(&src.rays()[i])
        })
    }

    pub fn with_names(mut self, source: Vec<String>, target: Vec<String>) -> Result<CoxPullback, EmbeddingError> {
        let (ns, nt) = (self.coefficients.first().map_or(0, |r| r.len()), self.coefficients.len());
        if source.len() != ns {
            return Err(EmbeddingError::VariableCount { count: source.len(), expected: ns });
        }
        if target.len() != nt {
            return Err(EmbeddingError::VariableCount { count: target.len(), expected: nt });
        }
        self.source_vars = source;
        self.target_vars = target;
        Ok(self)
    }
}

/// Nonnegative integer coordinates of `v` in the independent rays `face`.
fn coordinates(v: &[i64], face: &[Point]) -> Option<Vec<i64>> {
    if face.is_empty() {
        return v.iter().all(|&x| x == 0).then(Vec::new);
    }
    if rank_of(face) < face.len() {
        return None;
    }
    let k = face.len();
    let d = v.len();
    // pick k coordinates on which the face rays are independent
    let rows = (0..d)
        .combinations(k)
        .find(|rows| rank_of(&face.iter().map(|r| rows.iter().map(|&i| r[i]).collect()).collect::<Vec<Point>>()) == k)?;
    let m = IntMatrix::from_rows(&rows.iter().map(|&i| face.iter().map(|r| r[i]).collect::<Point>()).collect::<Vec<_>>());
    let rhs: Vec<BigInt> = rows.iter().map(|&i| BigInt::from(v[i])).collect();
    let c = solve_square(&m, &rhs)?.to_integers()?;
    if c.iter().any(|x| x.is_negative()) {
        return None;
    }
    let c: Vec<i64> = c.iter().map(|x| x.to_i64().expect("small")).collect();
    let back: Point = (0..d).map(|i| face.iter().zip(&c).map(|(r, x)| r[i] * x).sum()).collect();
    (back == v).then_some(c)
}

/// Writes `A(ρ)` for every source ray as a combination of the rays of the
/// smallest target cone containing it.
pub fn ray_decomposition(a: &IntMatrix, src: &Fan, tgt: &Fan) -> Result<CoxPullback, EmbeddingError> {
    if a.rows() != tgt.dim() || a.cols() != src.dim() {
        return Err(FanError::MatrixShape {
            rows: a.rows(),
            cols: a.cols(),
            expected_rows: tgt.dim(),
            expected_cols: src.dim(),
        }
        .into());
    }
    let cones: Vec<Cone> = (0..tgt.max_cones().len()).map(|i| tgt.cone(i)).collect::<Result<_, _>>()?;
    let n_src = src.rays().len();
    let mut coefficients = vec![vec![0i64; n_src]; tgt.rays().len()];
    for (i, ray) in src.rays().iter().enumerate() {
        let v = a.apply_i64(ray);
        let t = cones.iter().position(|c| c.contains(&v)).ok_or(EmbeddingError::RayNotMapped { ray: i })?;
        let vanishing: Vec<&Point> = cones[t].normals().iter().filter(|n| dot(n, &v) == 0).collect();
        let face: Vec<usize> = tgt.max_cones()[t]
            .iter()
            .copied()
            .filter(|&j| vanishing.iter().all(|n| dot(n, &tgt.rays()[j]) == 0))
            .collect();
        let face_rays: Vec<Point> = face.iter().map(|&j| tgt.rays()[j].clone()).collect();
        let c = coordinates(&v, &face_rays).ok_or_else(|| EmbeddingError::NoRayDecomposition {
            ray: i,
            image: v.clone(),
            face: face.clone(),
        })?;
        for (&j, x) in face.iter().zip(c) {
            coefficients[j][i] = x;
        }
    }
    Ok(CoxPullback {
        source_vars: cox_variable_names("x", n_src),
        target_vars: cox_variable_names("u", tgt.rays().len()),
        coefficients,
    })
}

/// Target Cox variable `u_j ↦ ∏ x_i^B[j][i]`.
pub fn cox_pullback_monomials(b: &CoxPullback) -> Vec<(String, MultiPoly)> {
    b.target_vars
        .iter()
        .zip(&b.coefficients)
        .map(|(u, row)| {
            let exps = row.iter().map(|&e| e as u32).collect();
            (u.clone(), MultiPoly::monomial(&b.source_vars, exps, rat(1)))
        })
        .collect()
}

/// Equation `u^{e+} - u^{e-}` of the image of a corank-one lattice map, with
/// `e = Rᵀ_tgt · m` for the primitive annihilator `m` of the image.
///
/// Sign: the term of smaller total degree comes with `+`; on a tie the first
/// term in printing order does.
pub fn image_binomial<S: AsRef<str>>(a: &IntMatrix, src: &Fan, tgt: &Fan, vars: &[S]) -> Result<MultiPoly, EmbeddingError> {
    if a.rows() != tgt.dim() || a.cols() != src.dim() {
        return Err(FanError::MatrixShape {
            rows: a.rows(),
            cols: a.cols(),
            expected_rows: tgt.dim(),
            expected_cols: src.dim(),
        }
        .into());
    }
    if vars.len() != tgt.rays().len() {
        return Err(EmbeddingError::VariableCount { count: vars.len(), expected: tgt.rays().len() });
    }
    let at: Vec<Point> = a.transpose().to_i64_rows().expect("small entries");
    let ker = kernel_basis_i64(&at, tgt.dim());
    if ker.len() != 1 {
        return Err(EmbeddingError::Corank(ker.len()));
    }
    let m = primitive(&ker[0]);
    let e: Vec<i64> = tgt.rays().iter().map(|r| dot(&m, r)).collect();
    let plus: Vec<u32> = e.iter().map(|&x| x.max(0) as u32).collect();
    let minus: Vec<u32> = e.iter().map(|&x| (-x).max(0) as u32).collect();
    let f = (MultiPoly::monomial(vars, plus, rat(1)) - MultiPoly::monomial(vars, minus, rat(1))).primitive_integer();
    let (low, c) = f.terms().iter().min_by_key(|(e, _)| e.iter().sum::<u32>()).expect("binomial");
    let high_degree = f.terms().keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0);
    if low.iter().sum::<u32>() < high_degree && c.is_negative() {
        return Ok(f.scale(&rat(-1)));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use num_rational::BigRational;
    use num_traits::Zero;

    use super::*;
    use crate::fan::fixtures::{embedding_matrix, sigma_f, sigma_x};

    fn p2() -> Fan {
        Fan::new(vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    fn p1p1() -> Fan {
        Fan::new(
            vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]],
        )
        .unwrap()
    }

    fn p1() -> Fan {
        Fan::new(vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap()
    }

    #[test]
    fn decomposition_table() {
        let (a, x, f) = (embedding_matrix(), sigma_x(), sigma_f());
        let b = ray_decomposition(&a, &x, &f).unwrap();
        // (ray of X, [(ray of F, coefficient)]) with 1-based numbers
        let table: [&[(usize, i64)]; 10] = [
            &[(6, 1), (7, 2)],
            &[(1, 1), (5, 1)],
            &[(2, 1), (5, 1)],
            &[(1, 1), (7, 1)],
            &[(2, 1), (7, 1)],
            &[(5, 2), (6, 1)],
            &[(3, 1), (7, 1)],
            &[(4, 1), (7, 1)],
            &[(3, 1), (5, 1)],
            &[(4, 1), (5, 1)],
        ];
        for (i, row) in table.iter().enumerate() {
            let got: Vec<(usize, i64)> = b.decomposition_of(i).into_iter().map(|(j, c)| (j + 1, c)).collect();
            assert_eq!(got, row.to_vec(), "ray {}", i + 1);
        }
        assert!(b.commutes(&a, &x, &f));
    }

    #[test]
    fn pullback_monomials() {
        let b = ray_decomposition(&embedding_matrix(), &sigma_x(), &sigma_f()).unwrap();
        let got: Vec<String> = cox_pullback_monomials(&b).iter().map(|(u, m)| format!("{u} {m}")).collect();
        assert_eq!(
            got,
            vec![
                "u1 x2*x4",
                "u2 x3*x5",
                "u3 x7*x9",
                "u4 x8*x10",
                "u5 x2*x3*x6^2*x9*x10",
                "u6 x1*x6",
                "u7 x1^2*x4*x5*x7*x8",
            ]
        );
    }

    #[test]
    fn identity_morphism() {
        let b = ray_decomposition(&IntMatrix::identity(2), &p2(), &p2()).unwrap();
        assert_eq!(b.coefficients, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let names: Vec<String> = cox_pullback_monomials(&b).iter().map(|(_, m)| m.to_string()).collect();
        assert_eq!(names, vec!["x1", "x2", "x3"]);
    }

    #[test]
    fn binomial_of_the_embedding() {
        let vars = cox_variable_names("u", 7);
        let f = image_binomial(&embedding_matrix(), &sigma_x(), &sigma_f(), &vars).unwrap();
        assert_eq!(f, MultiPoly::parse("u5*u7 - u6^2*u1*u2*u3*u4", &vars).unwrap());
    }

    /// The diagonal `P¹ → P¹×P¹`: Cox points `[a:b] × [c:d]` over the image
    /// have `a/b = c/d`, so the binomial vanishes there and not elsewhere.
    #[test]
    fn diagonal_binomial_by_evaluation() {
        let vars = cox_variable_names("u", 4);
        let a = IntMatrix::from_rows(&[[1], [1]]);
        let f = image_binomial(&a, &p1(), &p1p1(), &vars).unwrap();
        assert_eq!(f.to_string(), "u1*u4 - u2*u3");
        let at = |p: [i64; 4]| {
            let vals: HashMap<String, BigRational> = vars.iter().cloned().zip(p.iter().map(|&x| rat(x))).collect();
            f.evaluate(&vals).constant_term()
        };
        for (s, t) in [(1, 1), (2, 3), (-5, 7), (4, -1)] {
            // the torus point s/t, written with two different scalings of each factor
            assert!(at([s, t, 3 * s, 3 * t]).is_zero());
            assert!(!at([s, t, 3 * s + 1, 3 * t]).is_zero());
        }
    }

    #[test]
    fn corank_is_checked() {
        let vars = cox_variable_names("u", 3);
        let err = image_binomial(&IntMatrix::identity(2), &p2(), &p2(), &vars).unwrap_err();
        assert_eq!(err, EmbeddingError::Corank(0));
    }
}

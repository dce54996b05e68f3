//! Complete-intersection embeddings from a scaffolding of a Fano polytope.
//!
//! The shape is a smooth complete toric variety `Z` with rays `v_1..v_z` in
//! `M`; each strut is a nef divisor `D_i = Σ a_ij E_j` on `Z`. The ambient
//! space has Cox variables `I_1..I_r, E_1..E_z` and weight matrix `[Id | a]`.
//! Each linear relation `Σ c_j v_j = 0` among the shape rays gives the
//! binomial `E^{c+} · I^{δ-} = E^{c-} · I^{δ+}` where `δ = a·c`, the
//! `I`-powers being forced by homogeneity.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{EmbeddingError, GitPresentation};
use crate::exactla::{dot, rank_of, solve_square, IntMatrix, Point};
use crate::polyring::{rat, MultiPoly};
use crate::polytope::LatticePolytope;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strut {
    /// Coefficient of each shape divisor `E_j`.
    pub coeffs: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scaffolding {
    pub shape_rays: Vec<Point>,
    pub shape_max_cones: Vec<Vec<usize>>,
    pub struts: Vec<Strut>,
    /// Integer relations `Σ c_j v_j = 0` among the shape rays.
    pub relations: Vec<Vec<i64>>,
}

impl Scaffolding {
    fn dim(&self) -> usize {
        self.shape_rays.first().map_or(0, |r| r.len())
    }

    fn check_shape(&self) -> Result<(), EmbeddingError> {
        let z = self.shape_rays.len();
        let d = self.dim();
        for (i, s) in self.struts.iter().enumerate() {
            if s.coeffs.len() != z {
                return Err(EmbeddingError::UnsupportedShape(format!("strut {i} has {} coefficients for {z} rays", s.coeffs.len())));
            }
        }
        for (i, cone) in self.shape_max_cones.iter().enumerate() {
            if cone.iter().any(|&j| j >= z) {
                return Err(EmbeddingError::UnsupportedShape(format!("cone {i} names a missing ray")));
            }
            let rays: Vec<Point> = cone.iter().map(|&j| self.shape_rays[j].clone()).collect();
            if cone.len() != d || rank_of(&rays) != d {
                return Err(EmbeddingError::UnsupportedShape(format!("cone {i} is not simplicial and full-dimensional")));
            }
        }
        for (i, c) in self.relations.iter().enumerate() {
            let holds = c.len() == z && (0..d).all(|k| c.iter().zip(&self.shape_rays).map(|(x, v)| x * v[k]).sum::<i64>() == 0);
            if !holds {
                return Err(EmbeddingError::UnsupportedShape(format!("relation {i} does not hold among the shape rays")));
            }
        }
        let expected = z - rank_of(&self.shape_rays);
        if self.relations.len() != expected || rank_of(&self.relations) != expected {
            return Err(EmbeddingError::UnsupportedShape(format!(
                "need {expected} independent relations among the shape rays, got {}",
                self.relations.len()
            )));
        }
        Ok(())
    }

    /// Vertices of the section polytope `{m : <m, v_j> ≥ -a_j}` of strut `i`,
    /// one per maximal shape cone, after checking that the strut is nef.
    pub fn section_polytope(&self, i: usize) -> Result<Vec<Point>, EmbeddingError> {
        self.check_shape()?;
        let a = &self.struts[i].coeffs;
        let mut vertices: Vec<Point> = Vec::new();
        for cone in &self.shape_max_cones {
            let m = IntMatrix::from_rows(&cone.iter().map(|&j| self.shape_rays[j].clone()).collect::<Vec<_>>());
            let rhs: Vec<BigInt> = cone.iter().map(|&j| BigInt::from(-a[j])).collect();
            let sol = solve_square(&m, &rhs).expect("cone rays are independent");
            let m_sigma: Point = sol
                .to_integers()
                .ok_or_else(|| EmbeddingError::NonLatticeStrut { strut: i, cone: cone.clone() })?
                .iter()
                .map(|x| x.to_i64().expect("small"))
                .collect();
            if self.shape_rays.iter().zip(a).any(|(v, &aj)| dot(&m_sigma, v) < -aj) {
                return Err(EmbeddingError::NotNef { strut: i, cone: cone.clone() });
            }
            if !vertices.contains(&m_sigma) {
                vertices.push(m_sigma);
            }
        }
        vertices.sort();
        Ok(vertices)
    }

    /// Whether the section polytopes of the struts have convex hull `p`.
    pub fn scaffolds(&self, p: &LatticePolytope) -> Result<bool, EmbeddingError> {
        let mut all = Vec::new();
        for i in 0..self.struts.len() {
            all.extend(self.section_polytope(i)?);
        }
        Ok(LatticePolytope::from_vertices(&all).is_ok_and(|q| q.same_vertex_set(p)))
    }
}

/// Ambient GIT presentation and equations of the complete intersection.
///
/// Variables are `y1..y(r+z)`, the first `r` for the struts. The stability
/// vector is `-K` minus the equation degrees.
pub fn laurent_inversion(s: &Scaffolding) -> Result<GitPresentation, EmbeddingError> {
    s.check_shape()?;
    if !s.shape_rays.is_empty() {
        for i in 0..s.struts.len() {
            s.section_polytope(i)?;
        }
    }
    let r = s.struts.len();
    let z = s.shape_rays.len();
    let vars: Vec<String> = (1..=r + z).map(|i| format!("y{i}")).collect();
    let weights: Vec<Point> = s
        .struts
        .iter()
        .enumerate()
        .map(|(i, strut)| (0..r).map(|k| i64::from(k == i)).chain(strut.coeffs.iter().copied()).collect())
        .collect();
    let equations: Vec<MultiPoly> = s
        .relations
        .iter()
        .map(|c| {
            let delta: Vec<i64> = s.struts.iter().map(|st| dot(&st.coeffs, c)).collect();
            let side = |sign: i64| -> Vec<u32> {
                // E-part from c with this sign, I-part from δ with the opposite sign
                delta
                    .iter()
                    .map(|&d| (-sign * d).max(0) as u32)
                    .chain(c.iter().map(|&x| (sign * x).max(0) as u32))
                    .collect()
            };
            MultiPoly::monomial(&vars, side(1), rat(1)) - MultiPoly::monomial(&vars, side(-1), rat(1))
        })
        .collect();
    let mut pres = GitPresentation::new(vars, weights, Vec::new(), equations)?;
    pres.stability = pres.anticanonical_of_complete_intersection();
    Ok(pres)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::embedding::{eliminate_linear_cone, match_presentations};
    use crate::polytope::fixtures::p735;

    pub fn scaffolding() -> Scaffolding {
        Scaffolding {
            shape_rays: vec![vec![0, -1, 0], vec![0, 0, -1], vec![-1, 1, 1], vec![0, 1, 1], vec![1, 0, 0]],
            // P²-bundle over P¹: omit one of {v1, v2, v4} and one of {v3, v5}
            shape_max_cones: vec![
                vec![1, 3, 2],
                vec![1, 3, 4],
                vec![0, 3, 2],
                vec![0, 3, 4],
                vec![0, 1, 2],
                vec![0, 1, 4],
            ],
            struts: vec![
                Strut { coeffs: vec![1, 0, 0, -1, 0] },
                Strut { coeffs: vec![0, 1, 0, -1, 0] },
                Strut { coeffs: vec![0, 0, 1, 1, 1] },
            ],
            relations: vec![vec![1, 1, 0, 1, 0], vec![0, 0, 1, -1, 1]],
        }
    }

    fn rho(numbers: &[usize]) -> Vec<Point> {
        let v = p735();
        let mut out: Vec<Point> = numbers.iter().map(|n| v[n - 1].clone()).collect();
        out.sort();
        out
    }

    #[test]
    fn section_polytopes_are_the_struts() {
        let s = scaffolding();
        assert_eq!(s.section_polytope(0).unwrap(), rho(&[2, 4]));
        assert_eq!(s.section_polytope(1).unwrap(), rho(&[3, 5]));
        assert_eq!(s.section_polytope(2).unwrap(), rho(&[1, 6, 7, 8, 9, 10]));
        assert!(s.scaffolds(&LatticePolytope::from_vertices(&p735()).unwrap()).unwrap());
    }

    #[test]
    fn ambient_presentation_and_equations() {
        let p = laurent_inversion(&scaffolding()).unwrap();
        assert_eq!(
            p.weights,
            vec![
                vec![1, 0, 0, 1, 0, 0, -1, 0],
                vec![0, 1, 0, 0, 1, 0, -1, 0],
                vec![0, 0, 1, 0, 0, 1, 1, 1],
            ]
        );
        assert_eq!(p.stability, vec![1, 1, 1]);
        assert_eq!(p.anticanonical(), vec![1, 1, 4]);
        assert_eq!(p.line_bundles, vec![vec![0, 0, 1], vec![0, 0, 2]]);
        let parse = |s: &str| MultiPoly::parse(s, &p.vars).unwrap();
        assert_eq!(p.equations, vec![parse("y4*y5*y7 - y3"), parse("y6*y8 - y7*y1*y2*y3")]);
    }

    #[test]
    fn linear_cone_reduction_recovers_the_hypersurface() {
        let p = laurent_inversion(&scaffolding()).unwrap();
        let red = eliminate_linear_cone(&p).unwrap();
        let gone = red.eliminated.as_ref().unwrap();
        assert_eq!(gone.variable, "y3");
        assert_eq!(gone.value.to_string(), "y4*y5*y7");
        let q = &red.presentation;
        assert_eq!(q.equations, vec![MultiPoly::parse("y6*y8 - y7^2*y1*y2*y4*y5", &q.vars).unwrap()]);
        assert_eq!(q.line_bundles, vec![vec![0, 0, 2]]);
        assert_eq!(q.anticanonical_of_complete_intersection(), q.stability);

        let f = crate::embedding::presentation::tests::ambient_presentation(&["u5*u7 - u1*u2*u3*u4*u6^2"]);
        let m = match_presentations(q, &f).unwrap();
        let pairs: Vec<String> = m.renaming.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        assert_eq!(pairs, vec!["y1->u1", "y2->u2", "y4->u3", "y5->u4", "y6->u5", "y7->u6", "y8->u7"]);
    }

    #[test]
    fn single_strut_on_a_point() {
        let s = Scaffolding { shape_rays: vec![], shape_max_cones: vec![], struts: vec![Strut { coeffs: vec![] }], relations: vec![] };
        let p = laurent_inversion(&s).unwrap();
        assert_eq!(p.weights, vec![vec![1]]);
        assert!(p.equations.is_empty());
        assert_eq!(p.stability, vec![1]);
    }

    #[test]
    fn rejections() {
        let mut s = scaffolding();
        s.struts[0].coeffs = vec![-1, 0, 0, 0, 0];
        assert!(matches!(laurent_inversion(&s), Err(EmbeddingError::NotNef { strut: 0, .. })));
        let mut s = scaffolding();
        s.relations[1] = vec![0, 0, 1, 1, 1];
        assert!(matches!(laurent_inversion(&s), Err(EmbeddingError::UnsupportedShape(_))));
        let mut s = scaffolding();
        s.relations.pop();
        assert!(matches!(laurent_inversion(&s), Err(EmbeddingError::UnsupportedShape(_))));
    }
}

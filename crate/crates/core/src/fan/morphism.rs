//! Lattice maps between fans.

use serde::Serialize;

use super::{dual_cone_generators, Cone, Fan, FanError};
use crate::exactla::{dot, IntMatrix, Point};

/// Where one maximal source cone lands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismEntry {
    pub source: Vec<usize>,
    /// A maximal target cone containing the image.
    pub target_max_cone: usize,
    /// Rays of the smallest target cone containing the image.
    pub target: Vec<usize>,
}

fn check_shape(a: &IntMatrix, rows: usize, cols: usize) -> Result<(), FanError> {
    if a.rows() != rows || a.cols() != cols {
        return Err(FanError::MatrixShape { rows: a.rows(), cols: a.cols(), expected_rows: rows, expected_cols: cols });
    }
    Ok(())
}

/// For every maximal cone of `src`, the smallest cone of `tgt` containing its
/// image under `a`. Fails on the first cone whose image meets no target cone.
pub fn toric_morphism_check(a: &IntMatrix, src: &Fan, tgt: &Fan) -> Result<Vec<MorphismEntry>, FanError> {
    check_shape(a, tgt.dim(), src.dim())?;
    let targets: Vec<Cone> = (0..tgt.max_cones().len()).map(|i| tgt.cone(i)).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for source in src.max_cones() {
        let images: Vec<Point> = source.iter().map(|&i| a.apply_i64(&src.rays()[i])).collect();
        let mut best: Option<MorphismEntry> = None;
        for (t, cone) in targets.iter().enumerate() {
            if !images.iter().all(|v| cone.contains(v)) {
                continue;
            }
            // facets of the target cone containing the whole image cut out the minimal face
            let vanishing: Vec<&Point> =
                cone.normals().iter().filter(|n| images.iter().all(|v| dot(n, v) == 0)).collect();
            let face: Vec<usize> = tgt.max_cones()[t]
                .iter()
                .copied()
                .filter(|&j| vanishing.iter().all(|n| dot(n, &tgt.rays()[j]) == 0))
                .collect();
            if best.as_ref().is_none_or(|b| face.len() < b.target.len()) {
                best = Some(MorphismEntry { source: source.clone(), target_max_cone: t, target: face });
            }
        }
        match best {
            Some(e) => out.push(e),
            None => return Err(FanError::ConeNotMapped { cone: source.clone() }),
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorImage {
    /// Generator of `τ∨ ∩ M_tgt`.
    pub generator: Point,
    /// For smooth `τ`: position in `τ.rays()` of the ray this generator is dual to.
    pub dual_to_ray: Option<usize>,
    /// `Aᵀ · generator` in `M_src`.
    pub image: Point,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartEmbedding {
    pub image_in_target: bool,
    pub images: Vec<GeneratorImage>,
    /// Generators of `σ∨ ∩ M_src` not hit by any image.
    pub missing: Vec<Point>,
    pub holds: bool,
}

/// Whether the chart map `Spec C[σ∨∩M_src] -> Spec C[τ∨∩M_tgt]` induced by
/// `a` is a closed embedding, i.e. whether `Aᵀ` maps the generators of
/// `τ∨ ∩ M_tgt` onto a generating set of `σ∨ ∩ M_src`.
pub fn closed_embedding_chart_check(
    a: &IntMatrix,
    sigma: &Cone,
    tau: &Cone,
    bound: i64,
) -> Result<ChartEmbedding, FanError> {
    check_shape(a, tau.ambient_dim(), sigma.ambient_dim())?;
    let image_in_target = sigma.rays().iter().all(|r| tau.contains(&a.apply_i64(r)));
    let src_gens = dual_cone_generators(sigma, bound)?;
    let tgt_gens = dual_cone_generators(tau, bound)?;
    let smooth = tau.is_simplicial() && super::classify_cone(tau) == super::ConeClass::Smooth;
    let images: Vec<GeneratorImage> = tgt_gens
        .into_iter()
        .map(|g| {
            let dual_to_ray = if smooth { tau.rays().iter().position(|r| dot(&g, r) == 1) } else { None };
            let image = a.pull_back_i64(&g);
            GeneratorImage { generator: g, dual_to_ray, image }
        })
        .collect();
    let missing: Vec<Point> = src_gens.into_iter().filter(|m| !images.iter().any(|g| &g.image == m)).collect();
    let holds = image_in_target && missing.is_empty();
    Ok(ChartEmbedding { image_in_target, images, missing, holds })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::exactla::rational_inverse;
    use num_traits::Signed;

    fn numbers(v: &[usize]) -> Vec<usize> {
        v.iter().map(|i| i + 1).collect()
    }

    /// Containment oracle for fans with simplicial full-dimensional cones:
    /// coordinates in the ray basis must be nonnegative.
    fn contained_in_simplicial(v: &[i64], rays: &[Point]) -> bool {
        let inv = rational_inverse(&IntMatrix::from_columns(rays)).unwrap();
        inv.iter().all(|row| {
            let s: num_rational::BigRational =
                row.iter().zip(v).map(|(x, y)| x * num_rational::BigRational::from_integer((*y).into())).sum();
            !s.is_negative()
        })
    }

    #[test]
    fn embedding_maps_odp_cones_to_expected_charts() {
        let (x, f) = (sigma_x(), sigma_f());
        let table = toric_morphism_check(&embedding_matrix(), &x, &f).unwrap();
        let lookup = |src: &[usize]| {
            let idx: Vec<usize> = src.iter().map(|n| n - 1).collect();
            let e = table.iter().find(|e| e.source == idx).unwrap();
            numbers(&e.target)
        };
        assert_eq!(lookup(&[2, 3, 4, 5]), vec![1, 2, 5, 7]);
        assert_eq!(lookup(&[2, 4, 8, 10]), vec![1, 4, 5, 7]);
        assert_eq!(lookup(&[7, 8, 9, 10]), vec![3, 4, 5, 7]);
        assert_eq!(lookup(&[3, 5, 7, 9]), vec![2, 3, 5, 7]);
    }

    #[test]
    fn identity_maps_each_cone_to_itself() {
        let x = sigma_x();
        let table = toric_morphism_check(&IntMatrix::identity(3), &x, &x).unwrap();
        for e in table {
            assert_eq!(e.source, e.target);
        }
    }

    #[test]
    fn swapped_rows_break_the_morphism() {
        let (x, f) = (sigma_x(), sigma_f());
        let mut a = embedding_matrix();
        a.swap_rows(0, 2);
        let err = toric_morphism_check(&a, &x, &f).unwrap_err();
        let FanError::ConeNotMapped { cone } = err else { panic!("unexpected error") };
        // independent check: no cone of the smooth target fan contains all image rays
        let images: Vec<Point> = cone.iter().map(|&i| a.apply_i64(&x.rays()[i])).collect();
        for tc in f.max_cones() {
            let rays: Vec<Point> = tc.iter().map(|&j| f.rays()[j].clone()).collect();
            assert!(!images.iter().all(|v| contained_in_simplicial(v, &rays)));
        }
    }

    #[test]
    fn alpha_chart_is_a_closed_embedding() {
        let (x, f) = (sigma_x(), sigma_f());
        let sigma = cone_by_numbers(&x, &[2, 3, 4, 5]);
        let tau = cone_by_numbers(&f, &[1, 2, 5, 7]);
        let r = closed_embedding_chart_check(&embedding_matrix(), &sigma, &tau, 3).unwrap();
        assert!(r.holds);
        let ray_numbers = [1, 2, 5, 7];
        let assign = |u: usize| {
            r.images.iter().find(|g| g.dual_to_ray.map(|k| ray_numbers[k]) == Some(u)).unwrap().image.clone()
        };
        assert_eq!(assign(1), vec![0, 1, 0]); // w
        assert_eq!(assign(2), vec![0, 0, 1]); // z
        assert_eq!(assign(5), vec![-1, 1, 1]); // x
        assert_eq!(assign(7), vec![1, 0, 0]); // y
    }

    #[test]
    fn every_chart_embeds() {
        let (x, f) = (sigma_x(), sigma_f());
        let a = embedding_matrix();
        for e in toric_morphism_check(&a, &x, &f).unwrap() {
            let sigma = x.cone(x.find_cone(&e.source).unwrap()).unwrap();
            let tau = f.cone(e.target_max_cone).unwrap();
            let r = closed_embedding_chart_check(&a, &sigma, &tau, 3).unwrap();
            assert!(r.holds, "{:?}", e.source);
            // oracle: each source generator is an image of some target generator
            let src = dual_cone_generators(&sigma, 3).unwrap();
            let tgt = dual_cone_generators(&tau, 3).unwrap();
            for m in src {
                assert!(tgt.iter().any(|g| a.pull_back_i64(g) == m));
            }
        }
    }

    #[test]
    fn identity_chart_embeds() {
        let x = sigma_x();
        let c = x.cone(0).unwrap();
        assert!(closed_embedding_chart_check(&IntMatrix::identity(3), &c, &c, 3).unwrap().holds);
    }
}

//! Smooth / ordinary-double-point classification of cones.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::chart::equal_sum_pairing;
use super::{Cone, Fan, FanError};
use crate::exactla::{solve_square, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "diagnostic", rename_all = "snake_case")]
pub enum ConeClass {
    Smooth,
    Odp,
    Other(String),
}

/// Smooth: simplicial with unimodular rays (any dimension). ODP: a 3-dimensional
/// cone over a unimodular lattice parallelogram at height one.
pub fn classify_cone(sigma: &Cone) -> ConeClass {
    let rays = sigma.rays();
    if !sigma.is_full_dimensional() {
        return ConeClass::Other(format!("cone of dimension {} in rank {}", sigma.dim(), sigma.ambient_dim()));
    }
    if sigma.is_simplicial() {
        let det = IntMatrix::from_rows(rays).determinant().abs();
        if det.is_one() {
            return ConeClass::Smooth;
        }
        return ConeClass::Other(format!("simplicial with multiplicity {det}"));
    }
    if sigma.ambient_dim() != 3 || rays.len() != 4 {
        return ConeClass::Other(format!("{} rays in dimension {}", rays.len(), sigma.ambient_dim()));
    }
    // height function: <m, ρ> = 1 on three rays, then check the fourth
    let first = IntMatrix::from_rows(&rays[..3]);
    let ones = vec![BigInt::one(); 3];
    let height = solve_square(&first, &ones).and_then(|m| m.to_integers());
    let gorenstein = height.is_some_and(|m| {
        let m: Vec<BigInt> = m;
        rays[3].iter().zip(&m).map(|(r, x)| BigInt::from(*r) * x).sum::<BigInt>().is_one()
    });
    if !gorenstein {
        return ConeClass::Other("not Gorenstein of index one".into());
    }
    let Ok(((a, _), (c, d))) = equal_sum_pairing(rays) else {
        return ConeClass::Other("height-one section is not a parallelogram".into());
    };
    let det = IntMatrix::from_rows(&[&rays[a], &rays[c], &rays[d]]).determinant().abs();
    if det.is_one() {
        ConeClass::Odp
    } else {
        ConeClass::Other(format!("parallelogram section of area {det}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifiedCone {
    pub rays: Vec<usize>,
    pub class: ConeClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityReport {
    pub cones: Vec<ClassifiedCone>,
    pub smooth: usize,
    pub odp: usize,
    pub other: usize,
}

impl SingularityReport {
    pub fn all_smooth(&self) -> bool {
        self.odp == 0 && self.other == 0
    }
}

pub fn singularity_report(fan: &Fan) -> Result<SingularityReport, FanError> {
    let mut cones = Vec::new();
    let (mut smooth, mut odp, mut other) = (0, 0, 0);
    for (i, rays) in fan.max_cones().iter().enumerate() {
        let class = classify_cone(&fan.cone(i)?);
        match class {
            ConeClass::Smooth => smooth += 1,
            ConeClass::Odp => odp += 1,
            ConeClass::Other(_) => other += 1,
        }
        cones.push(ClassifiedCone { rays: rays.clone(), class });
    }
    Ok(SingularityReport { cones, smooth, odp, other })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::fan::face_fan;
    use crate::polytope::LatticePolytope;

    #[test]
    fn cones_of_p735() {
        let fan = sigma_x();
        assert_eq!(classify_cone(&cone_by_numbers(&fan, &[1, 4, 5])), ConeClass::Smooth);
        assert_eq!(classify_cone(&cone_by_numbers(&fan, &[2, 3, 4, 5])), ConeClass::Odp);
        let r = singularity_report(&fan).unwrap();
        assert_eq!((r.smooth, r.odp, r.other), (8, 4, 0));
    }

    #[test]
    fn standard_square_cone_is_odp() {
        let c = Cone::new(vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]).unwrap();
        assert_eq!(classify_cone(&c), ConeClass::Odp);
        let wide = Cone::new(vec![vec![0, 0, 1], vec![2, 0, 1], vec![0, 1, 1], vec![2, 1, 1]]).unwrap();
        assert!(matches!(classify_cone(&wide), ConeClass::Other(_)));
    }

    #[test]
    fn smooth_fans() {
        assert!(singularity_report(&sigma_f()).unwrap().all_smooth());
        let p3 = LatticePolytope::from_vertices(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, -1, -1]]).unwrap();
        let r = singularity_report(&face_fan(&p3).unwrap()).unwrap();
        assert_eq!((r.smooth, r.other), (4, 0));
    }

    #[test]
    fn cube_cones_are_not_odp() {
        let cube = LatticePolytope::from_vertices(&crate::polytope::fixtures::cube()).unwrap();
        let r = singularity_report(&face_fan(&cube).unwrap()).unwrap();
        assert_eq!(r.other, 6);
    }
}

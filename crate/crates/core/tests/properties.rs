use fano_forge_core::exactla::{hnf, snf, IntMatrix, Point};
use fano_forge_core::fan::{classify_cone, face_fan, Cone};
use fano_forge_core::polyring::{buchberger, rat, GbOptions, Ideal, MonomialOrder, MultiPoly};
use fano_forge_core::polytope::LatticePolytope;
use fano_forge_core::symmetry::t1_weight;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn p735() -> Vec<Point> {
    vec![
        vec![0, 0, 1],
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![-1, 0, 0],
        vec![0, -1, 0],
        vec![0, 0, -1],
        vec![1, 1, 1],
        vec![-1, 1, 1],
        vec![1, -1, -1],
        vec![-1, -1, -1],
    ]
}

fn rows(m: &IntMatrix) -> Vec<Point> {
    m.to_i64_rows().unwrap()
}

/// Product of elementary row operations: `(i, j, c)` adds `c` times row `j`
/// to row `i`, or negates row `i` when `i == j`.
fn unimodular(ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut m: Vec<Point> = (0..3).map(|i| (0..3).map(|j| i64::from(i == j)).collect()).collect();
    for &(i, j, c) in ops {
        if i == j {
            m[i].iter_mut().for_each(|x| *x = -*x);
        } else {
            let r = m[j].clone();
            m[i].iter_mut().zip(r).for_each(|(a, b)| *a += c * b);
        }
    }
    IntMatrix::from_rows(&m)
}

fn gl3() -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..3usize, 0..3usize, -2..=2i64), 0..6).prop_map(|ops| unimodular(&ops))
}

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1..=5usize, 1..=5usize)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-12..=12i64, c), r))
        .prop_map(|m| IntMatrix::from_rows(&m))
}

fn p735_cones() -> Vec<Cone> {
    let fan = face_fan(&LatticePolytope::from_vertices(&p735()).unwrap()).unwrap();
    (0..fan.max_cones().len()).map(|i| fan.cone(i).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hnf_transform_is_unimodular(m in matrix()) {
        let (h, u) = hnf(&m);
        prop_assert!(u.is_unimodular());
        prop_assert_eq!(&u * &m, h.clone());
        let hr = rows(&h);
        let mut prev: Option<usize> = None;
        for (i, row) in hr.iter().enumerate() {
            match row.iter().position(|&x| x != 0) {
                None => prop_assert!(hr[i..].iter().flatten().all(|&x| x == 0)),
                Some(p) => {
                    prop_assert!(prev.is_none_or(|q| p > q) && row[p] > 0);
                    prop_assert!(hr[..i].iter().all(|r| (0..row[p]).contains(&r[p])));
                    prev = Some(p);
                }
            }
        }
    }

    #[test]
    fn snf_is_a_divisibility_chain(m in matrix()) {
        let (s, u, v) = snf(&m);
        prop_assert!(u.is_unimodular() && v.is_unimodular());
        prop_assert_eq!(&(&u * &m) * &v, s.clone());
        let sr = rows(&s);
        for (i, row) in sr.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                prop_assert!(i == j || x == 0);
            }
        }
        let diag: Vec<i64> = (0..sr.len().min(sr[0].len())).map(|i| sr[i][i]).collect();
        prop_assert!(diag.iter().all(|&d| d >= 0));
        for w in diag.windows(2) {
            let divides = if w[0] == 0 { w[1] == 0 } else { w[1] % w[0] == 0 };
            prop_assert!(divides, "{:?}", diag);
        }
    }

    #[test]
    fn cone_classes_are_lattice_invariant(g in gl3()) {
        for c in p735_cones() {
            let moved = Cone::new(c.rays().iter().map(|r| g.apply_i64(r)).collect()).unwrap();
            prop_assert_eq!(classify_cone(&c), classify_cone(&moved));
        }
    }

    #[test]
    fn volume_and_barycenter_are_equivariant(g in gl3()) {
        let p = LatticePolytope::from_vertices(&p735()).unwrap().translate(&[1, 0, 2]).unwrap();
        let q = p.transform(&g).unwrap();
        prop_assert_eq!(p.normalized_volume(), q.normalized_volume());
        let b = p.barycenter().0;
        let gr = rows(&g);
        let moved: Vec<BigRational> = gr
            .iter()
            .map(|row| row.iter().zip(&b).map(|(&a, x)| BigRational::from_integer(BigInt::from(a)) * x).sum())
            .collect();
        prop_assert_eq!(q.barycenter().0, moved);
    }

    #[test]
    fn t1_weights_are_equivariant(g in gl3()) {
        for c in p735_cones().iter().filter(|c| c.rays().len() == 4) {
            let moved = Cone::new(c.rays().iter().map(|r| g.apply_i64(r)).collect()).unwrap();
            prop_assert_eq!(g.pull_back_i64(&t1_weight(&moved).unwrap()), t1_weight(c).unwrap());
        }
    }

    #[test]
    fn polar_is_an_involution(g in gl3()) {
        let p = LatticePolytope::from_vertices(&p735()).unwrap().transform(&g).unwrap();
        prop_assert!(p.is_reflexive());
        let q = p.polar().unwrap();
        prop_assert!(p.f_vector().euler_holds() && q.f_vector().euler_holds());
        prop_assert!(q.polar().unwrap().same_vertex_set(&p));
    }
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0..=2u32, 3), -3..=3i64), 1..=3)
        .prop_map(|terms| MultiPoly::from_terms(&["x", "y", "z"], terms.into_iter().map(|(e, c)| (e, rat(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reduced_groebner_bases_are_canonical(
        gens in prop::collection::vec(poly(), 2..=3),
        order in prop_oneof![Just(MonomialOrder::Lex), Just(MonomialOrder::DegRevLex)],
        c in -2..=2i64,
    ) {
        let vars = ["x", "y", "z"];
        let gens: Vec<MultiPoly> = gens.into_iter().filter(|p| !p.is_zero()).collect();
        prop_assume!(gens.len() >= 2);
        let opts = GbOptions { budget: 20_000 };
        let gb = buchberger(&Ideal::with_vars(gens.clone(), &vars), order, opts);
        prop_assume!(gb.is_ok());
        let gb = gb.unwrap();
        prop_assert!(gb.is_reduced() && gb.satisfies_criterion());
        prop_assert!(gens.iter().all(|g| gb.contains(g)));
        // same ideal, different generators
        let mut other: Vec<MultiPoly> = gens.iter().rev().cloned().collect();
        other[0] = &other[0] + &other[1].scale(&rat(c));
        other.push(&gens[0] * &MultiPoly::var(&vars, "y"));
        let again = buchberger(&Ideal::with_vars(other, &vars), order, opts).unwrap();
        prop_assert_eq!(again.polys, gb.polys);
    }
}

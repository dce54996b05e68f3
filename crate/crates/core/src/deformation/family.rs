use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::lift::{LiftState, LIFT_VARS, S};
use super::DeformationError;
use crate::embedding::{dehomogenize, GitPresentation};
use crate::exactla::{IntMatrix, Point};
use crate::fan::{closed_embedding_chart_check, toric_morphism_check, ChartLabeling, Cone, Fan, DEFAULT_HILBERT_BOUND};
use crate::polyring::{rat, MultiPoly};

fn default_bound() -> i64 {
    DEFAULT_HILBERT_BOUND
}

/// A family of hypersurfaces in a toric ambient space whose central fiber
/// is the toric variety of `source`, embedded by `embedding`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyData {
    pub source: Fan,
    pub target: Fan,
    /// Rows of the lattice map `N_source → N_target`.
    pub embedding: Vec<Point>,
    /// Cox variables of the target (one per target ray, in ray order) and
    /// the family equation as its only equation.
    pub presentation: GitPresentation,
    /// Parameters of the base.
    pub base: Vec<String>,
    pub charts: Vec<ChartLabeling>,
    #[serde(default = "default_bound")]
    pub hilbert_bound: i64,
}

impl FamilyData {
    pub fn embedding_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.embedding)
    }

    pub fn equation(&self) -> &MultiPoly {
        &self.presentation.equations[0]
    }
}

/// The family restricted to one singular chart, in the chart's coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartFamily {
    pub chart: String,
    /// Target rays of the chart the singular chart maps into.
    pub target_cone: Vec<usize>,
    /// `(Cox variable, chart coordinate)`.
    pub renaming: Vec<(String, String)>,
    /// Names of `x, y, z, w` on this chart.
    pub coordinates: [String; 4],
    pub base: Vec<String>,
    pub equation: MultiPoly,
}

fn coordinate_name(label: char, chart: &str) -> String {
    format!("{label}_{chart}")
}

/// Dehomogenize the family at the target cone containing the chart and
/// rename Cox variables by the chart labels of their dual generators.
pub fn chart_family(global_eq: &MultiPoly, chart: &ChartLabeling, data: &FamilyData) -> Result<ChartFamily, DeformationError> {
    let a = data.embedding_matrix();
    let table = toric_morphism_check(&a, &data.source, &data.target)?;
    let mut wanted = chart.cone.clone();
    wanted.sort();
    let entry = table
        .iter()
        .find(|e| {
            let mut s = e.source.clone();
            s.sort();
            s == wanted
        })
        .ok_or_else(|| DeformationError::UnknownChart(chart.name.clone()))?;
    let sigma = Cone::new(chart.cone.iter().map(|&i| data.source.rays()[i].clone()).collect())?;
    let tau = Cone::new(entry.target.iter().map(|&j| data.target.rays()[j].clone()).collect())?;
    let check = closed_embedding_chart_check(&a, &sigma, &tau, data.hilbert_bound)?;
    let mut renaming = Vec::new();
    let mut map = HashMap::new();
    for (pos, &ray) in entry.target.iter().enumerate() {
        let label = check
            .images
            .iter()
            .find(|g| g.dual_to_ray == Some(pos))
            .and_then(|g| chart.label_of(&g.image))
            .ok_or(DeformationError::UnlabeledRay { chart: chart.name.clone(), ray })?;
        let from = data.presentation.vars[ray].clone();
        let to = coordinate_name(label, &chart.name);
        map.insert(from.clone(), to.clone());
        renaming.push((from, to));
    }
    let local = dehomogenize(global_eq, &entry.target, &data.presentation).rename(&map);
    let coordinates = ['x', 'y', 'z', 'w'].map(|c| coordinate_name(c, &chart.name));
    let mut order: Vec<String> = coordinates.to_vec();
    order.extend(data.base.iter().cloned());
    order.extend(local.vars().iter().filter(|v| !order.contains(v)).cloned().collect::<Vec<_>>());
    let equation = local.in_vars(&order).expect("superset of the variables");
    Ok(ChartFamily {
        chart: chart.name.clone(),
        target_cone: entry.target.clone(),
        renaming,
        coordinates,
        base: data.base.clone(),
        equation,
    })
}

/// A chart family recognized as `±(xy - zw) + q1 u² + q2 v² + q3 u²v² + q4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartNormalForm {
    pub chart: String,
    /// `+1` for `xy - zw`, `-1` for `zw - xy`. For `-1` the pairs are
    /// swapped before reading the constant, which leaves it unchanged.
    pub sign: i8,
    /// The pair `(u, v)` carrying the corrections.
    pub pair: [String; 2],
    /// `(parameter, monomial it multiplies)`.
    pub corrections: Vec<(String, MultiPoly)>,
    /// The parameter the smoothing parameter of the chart maps to.
    pub constant: String,
}

/// Reads off the constant parameter after checking the shape of the family.
pub fn normalize_chart(cf: &ChartFamily) -> Result<ChartNormalForm, DeformationError> {
    let bad = |detail: String| DeformationError::UnrecognizedShape { chart: cf.chart.clone(), detail };
    let eq = &cf.equation;
    let [x, y, z, w] = cf.coordinates.clone();
    let base: Vec<&String> = cf.base.iter().filter(|b| eq.var_index(b).is_some()).collect();
    let zero: HashMap<String, BigRational> = base.iter().map(|b| ((*b).clone(), BigRational::zero())).collect();
    let central = eq.evaluate(&zero);
    let xy_zw = &MultiPoly::var(eq.vars(), &x) * &MultiPoly::var(eq.vars(), &y)
        - &MultiPoly::var(eq.vars(), &z) * &MultiPoly::var(eq.vars(), &w);
    let sign: i8 = if central == xy_zw {
        1
    } else if central == xy_zw.scale(&rat(-1)) {
        -1
    } else {
        return Err(bad(format!("central fiber is {central}")));
    };

    let base_idx: Vec<usize> = base.iter().map(|b| eq.var_index(b).expect("present")).collect();
    let mut by_param: BTreeMap<String, Vec<(Vec<u32>, BigRational)>> = BTreeMap::new();
    for (e, c) in (eq - &central).terms() {
        let params: Vec<usize> = base_idx.iter().copied().filter(|&i| e[i] > 0).collect();
        let [i] = params[..] else {
            return Err(bad(format!("term with parameters {params:?} is not linear in one parameter")));
        };
        if e[i] != 1 {
            return Err(bad(format!("parameter {} appears with exponent {}", eq.vars()[i], e[i])));
        }
        let mut rest = e.clone();
        rest[i] = 0;
        by_param.entry(eq.vars()[i].clone()).or_default().push((rest, c.clone()));
    }

    let mut constant = None;
    let mut corrections = Vec::new();
    for (param, terms) in &by_param {
        let [(e, c)] = &terms[..] else {
            return Err(bad(format!("parameter {param} multiplies {} monomials", terms.len())));
        };
        if e.iter().all(|&x| x == 0) {
            if !c.is_one() || constant.is_some() {
                return Err(bad(format!("constant term {c}*{param}")));
            }
            constant = Some(param.clone());
        } else {
            let m = MultiPoly::monomial(eq.vars(), e.clone(), c.clone());
            corrections.push((param.clone(), m));
        }
    }
    let constant = constant.ok_or_else(|| bad("no parameter appears as a constant term".to_string()))?;

    let pair = [[x.clone(), y.clone()], [z.clone(), w.clone()]]
        .into_iter()
        .find(|[u, v]| corrections.iter().all(|(_, m)| is_correction(m, u, v)))
        .ok_or_else(|| {
            let shown: Vec<String> = corrections.iter().map(|(p, m)| format!("{p}*({m})")).collect();
            bad(format!("corrections {} are not u^2, v^2, u^2*v^2 for one pair", shown.join(", ")))
        })?;
    let mut shapes: Vec<(u32, u32)> = corrections.iter().map(|(_, m)| shape(m, &pair[0], &pair[1])).collect();
    shapes.sort();
    shapes.dedup();
    if shapes.len() != corrections.len() {
        return Err(bad("two parameters multiply the same monomial".to_string()));
    }
    let corrections = corrections.into_iter().map(|(p, m)| (p, m.in_vars(&m.used_vars()).expect("used"))).collect();
    Ok(ChartNormalForm { chart: cf.chart.clone(), sign, pair, corrections, constant })
}

fn shape(m: &MultiPoly, u: &str, v: &str) -> (u32, u32) {
    (m.degree_in(u), m.degree_in(v))
}

fn is_correction(m: &MultiPoly, u: &str, v: &str) -> bool {
    let (du, dv) = shape(m, u, v);
    m.num_terms() == 1
        && m.total_degree() == Some(du + dv)
        && matches!((du, dv), (2, 0) | (0, 2) | (2, 2))
}

impl ChartNormalForm {
    /// Substitutes the lifted coordinates `u ↦ x_k, v ↦ y_k` (with the lift
    /// parameters matched to the correction parameters) into
    /// `±(uv) ∓ (other pair) + constant` and compares with the chart family
    /// modulo degree `k + 1` in the correction parameters.
    pub fn matches_lift(&self, cf: &ChartFamily, state: &LiftState) -> bool {
        let eq = &cf.equation;
        let vars = eq.vars();
        let [x, y, z, w] = cf.coordinates.clone();
        let (u, v) = (&self.pair[0], &self.pair[1]);
        let (other_a, other_b) = if *u == x { (&z, &w) } else { (&x, &y) };
        // sign of u·v in the central fiber
        let sigma = if (*u == x) == (self.sign == 1) { 1 } else { -1 };
        let var = |n: &str| MultiPoly::var(vars, n);
        let mut map: HashMap<String, MultiPoly> = HashMap::new();
        map.insert(LIFT_VARS[3].to_string(), var(u));
        map.insert(LIFT_VARS[4].to_string(), var(v));
        for (s, want) in S.iter().zip([(2, 0), (0, 2), (2, 2)]) {
            let value = self
                .corrections
                .iter()
                .find(|(_, m)| shape(m, u, v) == want)
                .map(|(p, m)| {
                    let c = m.terms().values().next().expect("monomial").clone();
                    var(p).scale(&(c * rat(sigma)))
                })
                .unwrap_or_else(|| MultiPoly::zero(vars));
            map.insert(s.to_string(), value);
        }
        let product = (&state.x_k * &state.y_k).substitute(&map);
        let Some(product) = product.in_vars(vars) else {
            return false;
        };
        let candidate = &(&product.scale(&rat(sigma)) - &(&var(other_a) * &var(other_b)).scale(&rat(sigma))) + &var(&self.constant);
        let params: Vec<&str> = self.corrections.iter().map(|(p, _)| p.as_str()).collect();
        let k = state.k as u32;
        candidate.truncate_in(&params, k) == eq.truncate_in(&params, k)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::deformation::hensel_lift;
    use crate::embedding::tests_support::{ambient_presentation, FAMILY};
    use crate::fan::fixtures::{embedding_matrix, sigma_f, sigma_x};
    use crate::symmetry::tests_support::charts;

    pub fn family_data() -> FamilyData {
        FamilyData {
            source: sigma_x(),
            target: sigma_f(),
            embedding: embedding_matrix().to_i64_rows().unwrap(),
            presentation: ambient_presentation(&[FAMILY]),
            base: ["c1", "c2", "c3", "c4"].map(String::from).to_vec(),
            charts: charts(),
            hilbert_bound: DEFAULT_HILBERT_BOUND,
        }
    }

    fn expect(cf: &ChartFamily, src: &str) -> MultiPoly {
        MultiPoly::parse(src, cf.equation.vars()).unwrap()
    }

    #[test]
    fn families_on_the_four_charts() {
        let data = family_data();
        let cfs: Vec<ChartFamily> = data.charts.iter().map(|c| chart_family(data.equation(), c, &data).unwrap()).collect();
        let want = [
            "x_alpha*y_alpha - w_alpha*z_alpha + c1*w_alpha^2*z_alpha^2 + c2*w_alpha^2 + c3*z_alpha^2 + c4",
            "z_beta*w_beta - x_beta*y_beta + c1*y_beta^2 + c2*x_beta^2*y_beta^2 + c3 + c4*x_beta^2",
            "z_gamma*w_gamma - x_gamma*y_gamma + c1 + c2*y_gamma^2 + c3*x_gamma^2 + c4*x_gamma^2*y_gamma^2",
            "z_delta*w_delta - x_delta*y_delta + c1*x_delta^2 + c2 + c3*x_delta^2*y_delta^2 + c4*y_delta^2",
        ];
        for (cf, w) in cfs.iter().zip(want) {
            assert_eq!(cf.equation, expect(cf, w), "chart {}", cf.chart);
        }
        let numbers: Vec<Vec<usize>> = cfs.iter().map(|c| c.target_cone.iter().map(|j| j + 1).collect()).collect();
        assert_eq!(numbers, vec![vec![1, 2, 5, 7], vec![1, 4, 5, 7], vec![3, 4, 5, 7], vec![2, 3, 5, 7]]);
        let alpha: Vec<String> = cfs[0].renaming.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        assert_eq!(alpha, vec!["u1->w_alpha", "u2->z_alpha", "u5->x_alpha", "u7->y_alpha"]);
    }

    #[test]
    fn zero_parameters_give_the_node() {
        let data = family_data();
        let zero: HashMap<String, BigRational> = data.base.iter().map(|b| (b.clone(), BigRational::zero())).collect();
        let central = data.equation().evaluate(&zero);
        let cf = chart_family(&central, &data.charts[0], &data).unwrap();
        assert_eq!(cf.equation, expect(&cf, "x_alpha*y_alpha - z_alpha*w_alpha"));
    }

    #[test]
    fn constants_per_chart() {
        let data = family_data();
        let constants: Vec<String> = data
            .charts
            .iter()
            .map(|c| normalize_chart(&chart_family(data.equation(), c, &data).unwrap()).unwrap().constant)
            .collect();
        assert_eq!(constants, vec!["c4", "c3", "c1", "c2"]);
    }

    fn plain(src: &str) -> ChartFamily {
        let vars = ["x", "y", "z", "w", "c"];
        ChartFamily {
            chart: "plain".into(),
            target_cone: vec![],
            renaming: vec![],
            coordinates: ["x", "y", "z", "w"].map(String::from),
            base: vec!["c".into()],
            equation: MultiPoly::parse(src, &vars).unwrap(),
        }
    }

    #[test]
    fn plain_node_and_rejections() {
        let nf = normalize_chart(&plain("x*y - z*w + c")).unwrap();
        assert_eq!((nf.constant.as_str(), nf.sign), ("c", 1));
        assert!(nf.corrections.is_empty());
        for bad in ["x*y - z*w + c*x", "x*y + z*w + c", "x*y - z*w + 2*c", "x*y - z*w + c^2", "x*y - z*w"] {
            assert!(
                matches!(normalize_chart(&plain(bad)), Err(DeformationError::UnrecognizedShape { .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn normal_forms_agree_with_the_lift() {
        let data = family_data();
        let states = hensel_lift(6).unwrap();
        for c in &data.charts {
            let cf = chart_family(data.equation(), c, &data).unwrap();
            let nf = normalize_chart(&cf).unwrap();
            for k in [1, 3, 6] {
                assert!(nf.matches_lift(&cf, &states[k]), "chart {} k {k}", c.name);
            }
            let mut flipped = nf.clone();
            flipped.sign = -flipped.sign;
            assert!(!flipped.matches_lift(&cf, &states[3]));
            let mut swapped = nf.clone();
            swapped.corrections[0].0 = nf.corrections[1].0.clone();
            swapped.corrections[1].0 = nf.corrections[0].0.clone();
            assert!(!swapped.matches_lift(&cf, &states[3]));
        }
    }
}

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use super::family::{chart_family, normalize_chart, ChartFamily, ChartNormalForm, FamilyData};
use super::DeformationError;
use crate::polyring::{discriminant, EliminationOrder, GbOptions, MultiPoly};
use crate::symmetry::parameter_name;

/// Discriminant of one chart family over the base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartDiscriminant {
    /// Generators of the eliminated Jacobian ideal.
    pub generators: Vec<MultiPoly>,
    /// For a principal discriminant divisible by the constant parameter `q`:
    /// the generator as `q · cofactor`, scaled so the cofactor is `1` at the origin.
    pub cofactor: Option<MultiPoly>,
}

impl ChartDiscriminant {
    pub fn is_principal(&self) -> bool {
        self.generators.len() == 1
    }

    /// `q · (1 + higher order terms)`.
    pub fn is_constant_times_unit(&self) -> bool {
        self.cofactor.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartReport {
    pub chart: String,
    /// Smoothing parameter of the chart.
    pub parameter: String,
    pub family: ChartFamily,
    pub normal_form: Option<ChartNormalForm>,
    /// Why the normal form could not be read off.
    pub error: Option<String>,
    pub discriminant: Option<ChartDiscriminant>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VersalityReport {
    pub charts: Vec<ChartReport>,
    /// `(smoothing parameter, base parameter it maps to)`.
    pub psi: Vec<(String, Option<String>)>,
    /// The constants are pairwise distinct and exhaust the base.
    pub bijective: bool,
}

fn split_off(g: &MultiPoly, q: &str) -> Option<MultiPoly> {
    let i = g.var_index(q)?;
    if g.terms().keys().any(|e| e[i] == 0) {
        return None;
    }
    let cofactor = MultiPoly::from_terms(
        g.vars(),
        g.terms().iter().map(|(e, c)| {
            let mut e = e.clone();
            e[i] -= 1;
            (e, c.clone())
        }),
    );
    let c0 = cofactor.constant_term();
    if c0.is_zero() {
        return None;
    }
    Some(cofactor.scale(&c0.recip()))
}

fn chart_discriminant(
    cf: &ChartFamily,
    nf: &ChartNormalForm,
    order: EliminationOrder,
    opts: GbOptions,
) -> Result<ChartDiscriminant, DeformationError> {
    let fiber: Vec<&str> = cf.coordinates.iter().map(String::as_str).collect();
    let ideal = discriminant(&cf.equation, &fiber, order, opts)?;
    let generators = ideal.generators().to_vec();
    let cofactor = match &generators[..] {
        [g] => split_off(g, &nf.constant),
        _ => None,
    };
    Ok(ChartDiscriminant { generators, cofactor })
}

/// Per-chart families, their constants and the induced map from smoothing
/// parameters to base parameters. Discriminants are computed only when
/// `discriminants` is set.
pub fn versality_report(
    data: &FamilyData,
    discriminants: bool,
    order: EliminationOrder,
    opts: GbOptions,
) -> Result<VersalityReport, DeformationError> {
    let mut charts = Vec::new();
    for chart in &data.charts {
        let family = chart_family(data.equation(), chart, data)?;
        let (normal_form, error) = match normalize_chart(&family) {
            Ok(nf) => (Some(nf), None),
            Err(e @ DeformationError::UnrecognizedShape { .. }) => (None, Some(e.to_string())),
            Err(e) => return Err(e),
        };
        let discriminant = match (&normal_form, discriminants) {
            (Some(nf), true) => Some(chart_discriminant(&family, nf, order, opts)?),
            _ => None,
        };
        charts.push(ChartReport {
            chart: chart.name.clone(),
            parameter: parameter_name(chart),
            family,
            normal_form,
            error,
            discriminant,
        });
    }
    let psi: Vec<(String, Option<String>)> = charts
        .iter()
        .map(|c| (c.parameter.clone(), c.normal_form.as_ref().map(|nf| nf.constant.clone())))
        .collect();
    let hit: BTreeSet<&String> = psi.iter().filter_map(|(_, q)| q.as_ref()).collect();
    let base: BTreeSet<&String> = data.base.iter().collect();
    let bijective = psi.iter().all(|(_, q)| q.is_some()) && hit.len() == psi.len() && hit == base;
    Ok(VersalityReport { charts, psi, bijective })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::family::tests::family_data;
    use crate::embedding::GitPresentation;

    #[test]
    fn smoothing_parameters_map_bijectively() {
        let r = versality_report(&family_data(), false, EliminationOrder::Block, GbOptions::default()).unwrap();
        let psi: Vec<String> = r.psi.iter().map(|(t, q)| format!("{t}->{}", q.as_deref().unwrap_or("?"))).collect();
        assert_eq!(psi, vec!["t_alpha->c4", "t_beta->c3", "t_gamma->c1", "t_delta->c2"]);
        assert!(r.bijective);
    }

    #[test]
    fn dropping_a_constant_breaks_bijectivity() {
        let mut data = family_data();
        let eq = "u5*u7 - u1*u2*u3*u4*u6^2 + u6^2*(c1*u1^2*u2^2 + c2*u1^2*u4^2 + c3*u2^2*u3^2)";
        let p = &data.presentation;
        data.presentation = GitPresentation::new(
            p.vars.clone(),
            p.weights.clone(),
            p.stability.clone(),
            vec![p.parse_equation(eq).unwrap()],
        )
        .unwrap();
        let r = versality_report(&data, false, EliminationOrder::Block, GbOptions::default()).unwrap();
        assert!(!r.bijective);
        assert!(r.charts[0].normal_form.is_none());
        assert!(r.charts[0].error.is_some());
        assert_eq!(r.psi[1].1.as_deref(), Some("c3"));
    }

    #[test]
    fn discriminants_are_the_constant_times_a_unit() {
        let r = versality_report(&family_data(), true, EliminationOrder::Block, GbOptions::default()).unwrap();
        for c in &r.charts {
            let d = c.discriminant.as_ref().unwrap();
            assert!(d.is_principal(), "chart {}", c.chart);
            assert!(d.is_constant_times_unit(), "chart {}: {}", c.chart, d.generators[0]);
        }
    }
}

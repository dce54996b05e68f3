use std::collections::BTreeMap;
use std::path::Path;

use anyhow::Context;
use fano_forge_core::exactla::{IntMatrix, Point};
use fano_forge_core::fan::{canonical_labeling, dual_cone_generators, face_fan, singularity_report, ChartLabeling, ConeClass, Fan, DEFAULT_HILBERT_BOUND};
use fano_forge_core::polyring::MultiPoly;
use fano_forge_core::symmetry::{
    check_group_invariance, deformation_action, polytope_automorphisms, t1_weights, torus_invariant_monomials, SignedPermutation,
    DEFAULT_EXPONENT_BOUND, DEFAULT_TUPLE_CAP,
};
use serde::Deserialize;
use serde_json::json;

use super::{field, read_polytope, rows};
use crate::report::Run;
use crate::Settings;

#[derive(Deserialize)]
struct NamedElement {
    name: String,
    matrix: Vec<Point>,
}

/// Labelings for every ODP cone of the face fan, named `chart1`, `chart2`, ...
fn canonical_charts(fan: &Fan, bound: i64) -> anyhow::Result<Vec<ChartLabeling>> {
    let report = singularity_report(fan)?;
    let mut charts = Vec::new();
    for c in report.cones.iter().filter(|c| c.class == ConeClass::Odp) {
        let cone = fan.cone(fan.find_cone(&c.rays).expect("cone of the fan"))?;
        let gens = dual_cone_generators(&cone, bound)?;
        charts.push(canonical_labeling(&format!("chart{}", charts.len() + 1), c.rays.clone(), &gens)?);
    }
    Ok(charts)
}

pub fn aut(path: &Path, s: Settings) -> anyhow::Result<Run> {
    let mut run = Run::new("aut");
    let (p, raw) = read_polytope(&mut run, path)?;
    let fan = face_fan(&p)?;
    let bound = s.hilbert_bound.unwrap_or(DEFAULT_HILBERT_BOUND);
    let charts = match field::<Vec<ChartLabeling>>(&raw, "charts")? {
        Some(c) => c,
        None => canonical_charts(&fan, bound)?,
    };
    let named: Vec<NamedElement> = field(&raw, "elements")?.unwrap_or_default();
    let invariants: Vec<String> = field(&raw, "invariants")?.unwrap_or_default();

    let group = run.time("automorphisms", || polytope_automorphisms(&p, DEFAULT_TUPLE_CAP))?;
    run.put("order", group.order());
    run.check("automorphisms form a group", group.is_group(), "");
    run.put(
        "generators",
        group.generators.iter().map(|g| json!({"matrix": rows(g), "order": g.order()})).collect::<Vec<_>>(),
    );

    let actions: BTreeMap<&IntMatrix, SignedPermutation> = run.time("actions", || {
        group
            .elements
            .iter()
            .map(|g| deformation_action(g, &fan, &charts).map(|a| (g, a)))
            .collect::<Result<_, _>>()
    })?;
    let homomorphism = group.elements.iter().all(|a| {
        group.elements.iter().all(|b| actions.get(&(a * b)) == Some(&actions[a].compose(&actions[b])))
    });
    run.check("action on smoothing parameters is a homomorphism", homomorphism, format!("{} pairs", group.order().pow(2)));
    run.put(
        "charts",
        charts.iter().map(|c| json!({"name": c.name, "cone": c.cone, "canonical_labels": c.canonical})).collect::<Vec<_>>(),
    );
    run.put(
        "action_table",
        group.generators.iter().map(|g| json!({"matrix": rows(g), "action": actions[g].describe()})).collect::<Vec<_>>(),
    );

    let mut named_out = Vec::new();
    for e in &named {
        let g = IntMatrix::from_rows(&e.matrix);
        let member = group.contains(&g);
        run.check(format!("{} is an automorphism", e.name), member, "");
        named_out.push(json!({
            "name": e.name,
            "matrix": e.matrix,
            "member": member,
            "order": g.order(),
            "identity_action": actions.get(&g).map(|a| a.is_identity()),
            "action": actions.get(&g).map(|a| a.describe()),
        }));
    }
    run.put("named_elements", named_out);

    let weights = t1_weights(&fan, &charts)?;
    run.put("torus_weights", weights.iter().map(|w| json!({"parameter": w.parameter, "weight": w.weight})).collect::<Vec<_>>());
    let monomials = run.time("invariant monomials", || torus_invariant_monomials(&weights, DEFAULT_EXPONENT_BOUND))?;
    let weight_zero = monomials.iter().all(|m| {
        m.terms().keys().all(|e| {
            let total: Point = (0..weights.first().map_or(0, |w| w.weight.len()))
                .map(|k| e.iter().zip(&weights).map(|(&x, w)| x as i64 * w.weight[k]).sum())
                .collect();
            total.iter().all(|&x| x == 0)
        })
    });
    run.put("torus_invariant_monomials", &monomials);
    run.check("invariant monomials have torus weight zero", weight_zero, "");

    let params: Vec<String> = weights.iter().map(|w| w.parameter.clone()).collect();
    let all_actions: Vec<SignedPermutation> = actions.values().cloned().collect();
    let mut checks = Vec::new();
    for src in &invariants {
        let poly = MultiPoly::parse(src, &params).with_context(|| format!("invariant {src:?}"))?;
        let ok = check_group_invariance(&poly, &all_actions);
        run.check(format!("{poly} is invariant under the automorphism group"), ok, "");
        checks.push(json!({"polynomial": poly, "invariant": ok}));
    }
    run.put("invariance_checks", checks);
    Ok(run)
}


use std::path::Path;

use fano_forge_core::deformation::{hensel_lift, versality_report, FamilyData};
use fano_forge_core::polyring::{rat, MultiPoly};
use serde_json::json;

use crate::report::Run;
use crate::Settings;

fn product(vars: &[String], names: &[&String]) -> MultiPoly {
    names
        .iter()
        .fold(MultiPoly::constant(vars, rat(1)), |acc, n| &acc * &MultiPoly::var(vars, n))
}

pub fn deform(path: &Path, s: Settings) -> anyhow::Result<Run> {
    let mut run = Run::new("deform");
    let mut data: FamilyData = run.read_json(path)?;
    if let Some(b) = s.hilbert_bound {
        data.hilbert_bound = b;
    }
    run.flag("order", super::order_name(s.order));
    run.flag("k", s.k);
    run.flag("hilbert_bound", data.hilbert_bound);
    run.flag("budget", s.gb.budget);

    let report = run.time("versality", || versality_report(&data, true, s.order, s.gb))?;
    let states = hensel_lift(s.k)?;
    let last = states.last().expect("state 0 always exists");

    let mut charts = Vec::new();
    for c in &report.charts {
        run.check(format!("chart {}: family has the expected shape", c.chart), c.normal_form.is_some(), c.error.clone().unwrap_or_default());
        let mut entry = json!({
            "chart": c.chart,
            "parameter": c.parameter,
            "target_cone": c.family.target_cone,
            "renaming": c.family.renaming.iter().map(|(a, b)| format!("{a} -> {b}")).collect::<Vec<_>>(),
            "equation": c.family.equation,
        });
        if let Some(nf) = &c.normal_form {
            let lift = nf.matches_lift(&c.family, last);
            run.check(format!("chart {}: agrees with the formal lift to order {}", c.chart, s.k), lift, "");
            entry["sign"] = json!(nf.sign);
            entry["correction_pair"] = json!(nf.pair);
            entry["correction_terms"] = json!(nf.corrections.iter().map(|(p, m)| format!("{p}*{m}")).collect::<Vec<_>>());
            entry["constant_param"] = json!(nf.constant);
        }
        if let Some(d) = &c.discriminant {
            run.check(format!("chart {}: discriminant is principal", c.chart), d.is_principal(), "");
            run.check(
                format!("chart {}: discriminant is the constant parameter times a unit", c.chart),
                d.is_constant_times_unit(),
                "",
            );
            entry["discriminant_generators"] = json!(d.generators);
            if let Some(g) = d.generators.first().filter(|_| d.is_principal()) {
                entry["discriminant_generator"] = json!(g);
            }
            entry["discriminant_cofactor"] = json!(d.cofactor);
        }
        charts.push(entry);
    }
    run.put("charts", charts);
    run.put(
        "psi",
        report.psi.iter().map(|(t, q)| json!({"parameter": t, "constant": q})).collect::<Vec<_>>(),
    );
    run.put("bijective", report.bijective);
    run.check("smoothing parameters map bijectively onto the base", report.bijective, "");

    // each chart contributes the hyperplane of its constant when its discriminant is q·unit
    let constants: Vec<&String> = report
        .charts
        .iter()
        .filter(|c| c.discriminant.as_ref().is_some_and(|d| d.is_constant_times_unit()))
        .filter_map(|c| c.normal_form.as_ref().map(|nf| &nf.constant))
        .collect();
    let union = product(&data.base, &constants);
    let all: Vec<&String> = data.base.iter().collect();
    run.put("discriminant_union", &union);
    run.check("union of chart discriminants is the product of the base parameters", union == product(&data.base, &all), "");
    Ok(run)
}

use std::path::Path;

use fano_forge_core::embedding::{cox_pullback_monomials, divisor_sequence, image_binomial, ray_decomposition, EmbeddingError, GitPresentation};
use fano_forge_core::exactla::{IntMatrix, Point};
use fano_forge_core::fan::{closed_embedding_chart_check, toric_morphism_check, Cone, DEFAULT_HILBERT_BOUND};
use serde::Deserialize;
use serde_json::{json, Value};

use super::{field, read_geometry};
use crate::report::Run;
use crate::Settings;

#[derive(Deserialize)]
struct MatrixFile {
    rows: Vec<Point>,
}

fn combination(terms: &[(usize, i64)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|&(j, c)| if c == 1 { format!("r{}", j + 1) } else { format!("{c}*r{}", j + 1) })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn embed(matrix: &Path, source: &Path, target: &Path, s: Settings) -> anyhow::Result<Run> {
    let mut run = Run::new("embed");
    let file: MatrixFile = run.read_json(matrix)?;
    let a = IntMatrix::from_rows(&file.rows);
    let src = read_geometry(&mut run, source)?.fan()?;
    let tgt_geometry = read_geometry(&mut run, target)?;
    let tgt = tgt_geometry.fan()?;
    let basis: Option<Vec<Point>> = field(tgt_geometry.raw(), "weight_basis")?;
    let bound = s.hilbert_bound.unwrap_or(DEFAULT_HILBERT_BOUND);
    run.flag("hilbert_bound", bound);

    let mut seq = divisor_sequence(&tgt)?;
    run.put("weights_hnf", &seq.weights);
    run.put("torsion", seq.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>());
    run.check("divisor sequence is exact", seq.is_exact(), "");
    if let Some(b) = &basis {
        let same = seq.with_basis(b);
        run.check("supplied weight basis spans the class lattice", same.is_ok(), "");
        if let Ok(with) = same {
            seq = with;
        }
    }
    run.put("weights", &seq.weights);

    let table = match toric_morphism_check(&a, &src, &tgt) {
        Ok(t) => {
            run.check("A maps every source cone into a target cone", true, "");
            t
        }
        Err(e) => {
            run.check("A maps every source cone into a target cone", false, e.to_string());
            return Ok(run);
        }
    };
    run.put(
        "morphism",
        table.iter().map(|e| json!({"source": e.source, "target": e.target, "target_max_cone": e.target_max_cone})).collect::<Vec<_>>(),
    );

    let b = match ray_decomposition(&a, &src, &tgt) {
        Ok(b) => b,
        Err(e) => {
            run.check("every source ray decomposes over its target face", false, e.to_string());
            return Ok(run);
        }
    };
    run.check("ray decomposition commutes with A", b.commutes(&a, &src, &tgt), "");
    run.put("b_matrix", &b.coefficients);
    run.put(
        "ray_images",
        (0..src.rays().len()).map(|i| format!("A(rho{}) = {}", i + 1, combination(&b.decomposition_of(i)))).collect::<Vec<_>>(),
    );
    run.put(
        "pullbacks",
        cox_pullback_monomials(&b).iter().map(|(u, m)| format!("{u} -> {m}")).collect::<Vec<_>>(),
    );

    match image_binomial(&a, &src, &tgt, &b.target_vars) {
        Ok(eq) => {
            run.put("image_equation", &eq);
            match GitPresentation::new(b.target_vars.clone(), seq.weights.clone(), Vec::new(), vec![eq]) {
                Ok(mut p) => {
                    p.stability = p.anticanonical_of_complete_intersection();
                    run.check("image equation is homogeneous", true, "");
                    run.put("presentation", json!({"vars": p.vars, "weights": p.weights, "stability": p.stability, "line_bundles": p.line_bundles}));
                }
                Err(e) => run.check("image equation is homogeneous", false, e.to_string()),
            }
        }
        // a surjective lattice map has no equation: the image is the whole target
        Err(EmbeddingError::Corank(0)) => run.put("image_equation", Value::Null),
        Err(e) => run.check("image is a hypersurface", false, e.to_string()),
    }

    let mut charts = Vec::new();
    for e in &table {
        let sigma = Cone::new(e.source.iter().map(|&i| src.rays()[i].clone()).collect())?;
        let tau = Cone::new(e.target.iter().map(|&j| tgt.rays()[j].clone()).collect())?;
        let c = closed_embedding_chart_check(&a, &sigma, &tau, bound)?;
        run.check(format!("closed embedding on chart {:?}", e.source), c.holds, "");
        charts.push(json!({
            "source": e.source,
            "target": e.target,
            "image_in_target": c.image_in_target,
            "missing": c.missing,
            "holds": c.holds,
        }));
    }
    run.put("chart_checks", charts);
    Ok(run)
}

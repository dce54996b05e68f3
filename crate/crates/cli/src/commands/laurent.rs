use std::path::Path;

use fano_forge_core::embedding::{eliminate_linear_cone, laurent_inversion, match_presentations, GitPresentation, Scaffolding, Strut};
use fano_forge_core::fan::Fan;
use fano_forge_core::exactla::Point;
use serde::Deserialize;
use serde_json::{json, Value};

use super::read_polytope;
use crate::report::{sibling, Run};
use crate::Settings;

/// A shape fan given inline or as a path relative to the scaffolding file.
#[derive(Deserialize)]
#[serde(untagged)]
enum ShapeRef {
    Path(String),
    Inline(Fan),
}

#[derive(Deserialize)]
struct ScaffoldingFile {
    shape: ShapeRef,
    struts: Vec<Vec<i64>>,
    relations: Vec<Vec<i64>>,
    #[serde(default)]
    polytope: Option<String>,
    #[serde(default)]
    compare_with: Option<GitPresentation>,
}

fn presentation_json(p: &GitPresentation) -> Value {
    json!({
        "vars": p.vars,
        "weights": p.weights,
        "stability": p.stability,
        "anticanonical": p.anticanonical(),
        "line_bundles": p.line_bundles,
        "equations": p.equations,
    })
}

pub fn laurent(path: &Path, _: Settings) -> anyhow::Result<Run> {
    let mut run = Run::new("laurent");
    let file: ScaffoldingFile = run.read_json(path)?;
    let shape: Fan = match file.shape {
        ShapeRef::Inline(f) => f,
        ShapeRef::Path(p) => run.read_json(&sibling(path, &p))?,
    };
    let s = Scaffolding {
        shape_rays: shape.rays().to_vec(),
        shape_max_cones: shape.max_cones().to_vec(),
        struts: file.struts.into_iter().map(|coeffs| Strut { coeffs }).collect(),
        relations: file.relations,
    };
    let pres = run.time("laurent inversion", || laurent_inversion(&s))?;
    let sections: Vec<Vec<Point>> = (0..s.struts.len()).map(|i| s.section_polytope(i)).collect::<Result<_, _>>()?;
    run.put("section_polytopes", &sections);
    if let Some(p) = &file.polytope {
        let (polytope, _) = read_polytope(&mut run, &sibling(path, p))?;
        run.check("section polytopes scaffold the polytope", s.scaffolds(&polytope)?, "");
    }
    run.put("presentation", presentation_json(&pres));
    run.check("stability is in the positive orthant", pres.stability_in_positive_orthant(), "");

    let red = eliminate_linear_cone(&pres)?;
    run.put(
        "eliminated",
        red.eliminated.as_ref().map(|e| json!({"variable": e.variable, "equation": e.equation, "value": e.value})),
    );
    run.put("reduced", presentation_json(&red.presentation));
    run.check(
        "reduced stability is the anticanonical class of the complete intersection",
        red.presentation.anticanonical_of_complete_intersection() == red.presentation.stability,
        "",
    );
    if let Some(target) = &file.compare_with {
        let m = match_presentations(&red.presentation, target);
        run.put("renaming", m.as_ref().map(|m| m.renaming.iter().map(|(a, b)| format!("{a} -> {b}")).collect::<Vec<_>>()));
        run.check("reduced presentation matches the comparison presentation", m.is_some(), "");
    }
    Ok(run)
}

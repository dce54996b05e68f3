use std::path::Path;

use anyhow::{bail, Context};
use fano_forge_core::polyring::{discriminant as eliminate_discriminant, rat, EliminationOrder, MultiPoly};
use serde::Deserialize;
use serde_json::json;

use super::order_name;
use crate::report::Run;
use crate::Settings;

#[derive(Deserialize)]
struct FamilyFile {
    vars: Vec<String>,
    equation: String,
    #[serde(default)]
    fiber: Vec<String>,
    #[serde(default)]
    base: Vec<String>,
}

/// `g = m · h` with `m` the largest monomial dividing `g`.
fn split_monomial(g: &MultiPoly) -> (MultiPoly, MultiPoly) {
    let n = g.vars().len();
    let common: Vec<u32> = (0..n).map(|i| g.terms().keys().map(|e| e[i]).min().unwrap_or(0)).collect();
    let h = MultiPoly::from_terms(
        g.vars(),
        g.terms().iter().map(|(e, c)| (e.iter().zip(&common).map(|(a, b)| a - b).collect(), c.clone())),
    );
    let m = MultiPoly::monomial(g.vars(), common, rat(1));
    (m, h)
}

pub fn discriminant(path: &Path, fiber: Option<&[String]>, base: Option<&[String]>, s: Settings) -> anyhow::Result<Run> {
    let mut run = Run::new("discriminant");
    let file: FamilyFile = run.read_json(path)?;
    let fiber: Vec<String> = fiber.map_or(file.fiber.clone(), <[String]>::to_vec);
    let base: Vec<String> = base.map_or(file.base.clone(), <[String]>::to_vec);
    if fiber.is_empty() {
        bail!("no fiber variables given");
    }
    for v in &file.vars {
        if !fiber.contains(v) && !base.contains(v) {
            bail!("variable {v} is neither a fiber variable nor a base parameter");
        }
    }
    let f = MultiPoly::parse(&file.equation, &file.vars).with_context(|| format!("equation in {}", path.display()))?;
    run.flag("order", order_name(s.order));
    run.flag("budget", s.gb.budget);
    run.put("equation", &f);
    run.put("fiber", &fiber);
    run.put("base", &base);

    let fiber_refs: Vec<&str> = fiber.iter().map(String::as_str).collect();
    let ideal = run.time(order_name(s.order), || eliminate_discriminant(&f, &fiber_refs, s.order, s.gb))?;
    let gens = ideal.generators().to_vec();
    run.put("generators", &gens);
    run.put("principal", gens.len() == 1);
    if let [g] = &gens[..] {
        let (m, h) = split_monomial(g);
        run.put("factored", json!({"monomial": m, "cofactor": h}));
    }
    let in_base = gens.iter().all(|g| g.used_vars().iter().all(|v| base.contains(v)));
    run.check("generators involve only base parameters", in_base, "");

    let other = match s.order {
        EliminationOrder::Lex => EliminationOrder::Block,
        EliminationOrder::Block => EliminationOrder::Lex,
    };
    let cross = run.time(order_name(other), || eliminate_discriminant(&f, &fiber_refs, other, s.gb))?;
    let same = ideal.same_ideal(&cross, s.gb)?;
    run.put("cross_check_order", order_name(other));
    run.put("cross_check_generators", cross.generators());
    run.check(format!("{} and {} elimination ideals agree", order_name(s.order), order_name(other)), same, "");
    Ok(run)
}

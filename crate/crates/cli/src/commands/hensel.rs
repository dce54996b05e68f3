use fano_forge_core::deformation::{hensel_lift, lift_target};
use serde_json::json;

use crate::report::Run;
use crate::Settings;

pub fn hensel(s: Settings) -> anyhow::Result<Run> {
    let mut run = Run::new("hensel");
    run.flag("k", s.k);
    let states = run.time("lift", || hensel_lift(s.k))?;
    run.put("target", lift_target());
    let mut out = Vec::new();
    for (i, st) in states.iter().enumerate() {
        let prev = i.checked_sub(1).map(|j| &states[j]);
        for (name, ok) in st.invariants(prev) {
            run.check(format!("k={}: {name}", st.k), ok, "");
        }
        out.push(json!({"k": st.k, "x_k": st.x_k, "y_k": st.y_k, "f_k": st.f_k}));
    }
    run.put("states", out);
    Ok(run)
}

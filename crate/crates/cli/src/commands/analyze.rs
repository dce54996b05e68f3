use std::collections::BTreeMap;
use std::path::Path;

use fano_forge_core::fan::{face_fan, singularity_report, Fan};
use fano_forge_core::polytope::{kpolystable_certificate, Anchor, LatticePolytope};
use serde_json::json;

use super::{read_geometry, Geometry};
use crate::report::Run;
use crate::Settings;

pub fn analyze(path: &Path, _: Settings) -> anyhow::Result<Run> {
    let mut run = Run::new("analyze");
    match read_geometry(&mut run, path)? {
        Geometry::Polytope(p, _) => polytope(&mut run, &p)?,
        Geometry::Fan(f, _) => fan(&mut run, &f)?,
    }
    Ok(run)
}

fn polytope(run: &mut Run, p: &LatticePolytope) -> anyhow::Result<()> {
    let fv = run.time("faces", || p.f_vector());
    let mut facet_shapes: BTreeMap<usize, usize> = BTreeMap::new();
    for &n in &fv.facet_vertex_counts {
        *facet_shapes.entry(n).or_default() += 1;
    }
    let mut edge_lengths: BTreeMap<i64, usize> = BTreeMap::new();
    for &l in &fv.edge_lengths {
        *edge_lengths.entry(l).or_default() += 1;
    }
    run.put("dim", p.dim());
    run.put("vertices", p.vertices());
    run.put("f_vector", &fv.counts);
    run.put(
        "facets_by_vertex_count",
        facet_shapes.iter().map(|(k, v)| (k.to_string(), v)).collect::<BTreeMap<_, _>>(),
    );
    run.put("edges_by_lattice_length", edge_lengths.iter().map(|(k, v)| (k.to_string(), v)).collect::<BTreeMap<_, _>>());
    run.put("origin_in_interior", p.origin_in_interior());
    run.put("centrally_symmetric", p.is_centrally_symmetric());
    run.check("Euler relation for the f-vector", fv.euler_holds(), "");

    let cert = run.time("certificate", || kpolystable_certificate(p));
    run.put("reflexive", cert.reflexive);
    run.put("polar_normalized_volume", cert.volume.as_ref().map(|v| v.to_string()));
    run.put("polar_barycenter", &cert.barycenter);
    run.put("verdict", cert.verdict);
    if cert.reflexive {
        let polar = p.polar()?;
        run.put("polar_vertices", polar.vertices());
        let back = polar.polar()?;
        run.check("polar of the polar is the polytope", back.same_vertex_set(p), "");
        let agree = polar.normalized_volume_with(Anchor::LexMin) == polar.normalized_volume_with(Anchor::LexMax)
            && polar.barycenter_with(Anchor::LexMin) == polar.barycenter_with(Anchor::LexMax);
        run.check("volume and barycenter agree for two triangulations", agree, "");
        if cert.centrally_symmetric {
            let zero = cert.barycenter.as_ref().is_some_and(|b| b.is_zero());
            run.check("central symmetry gives a zero barycenter", zero, "");
        }
    }
    if p.origin_in_interior() {
        let fan = face_fan(p)?;
        singularities(run, &fan)?;
    }
    Ok(())
}

fn fan(run: &mut Run, f: &Fan) -> anyhow::Result<()> {
    run.put("dim", f.dim());
    run.put("rays", f.rays());
    run.put("max_cones", f.max_cones());
    singularities(run, f)
}

fn singularities(run: &mut Run, f: &Fan) -> anyhow::Result<()> {
    let report = run.time("singularities", || singularity_report(f))?;
    run.put(
        "singularities",
        json!({
            "smooth": report.smooth,
            "odp": report.odp,
            "other": report.other,
            "all_smooth": report.all_smooth(),
            "cones": report.cones,
        }),
    );
    Ok(())
}

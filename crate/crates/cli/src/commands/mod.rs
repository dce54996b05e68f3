mod analyze;
mod aut;
mod deform;
mod discriminant;
mod embed;
mod hensel;
mod laurent;

use std::path::Path;

use anyhow::Context;
use fano_forge_core::exactla::{IntMatrix, Point};
use fano_forge_core::fan::{face_fan, Fan};
use fano_forge_core::polyring::EliminationOrder;
use fano_forge_core::polytope::{LatticePolytope, PolytopeFile};
use serde::Deserialize;
use serde_json::Value;

use crate::report::Run;

pub use analyze::analyze;
pub use aut::aut;
pub use deform::deform;
pub use discriminant::discriminant;
pub use embed::embed;
pub use hensel::hensel;
pub use laurent::laurent;

fn order_name(o: EliminationOrder) -> &'static str {
    match o {
        EliminationOrder::Lex => "lex",
        EliminationOrder::Block => "block",
    }
}

fn rows(m: &IntMatrix) -> Vec<Point> {
    m.to_i64_rows().expect("entries fit in i64")
}

/// A polytope file or a fan file.
enum Geometry {
    Polytope(LatticePolytope, Value),
    Fan(Fan, Value),
}

impl Geometry {
    fn fan(&self) -> anyhow::Result<Fan> {
        match self {
            Geometry::Polytope(p, _) => Ok(face_fan(p)?),
            Geometry::Fan(f, _) => Ok(f.clone()),
        }
    }

    fn raw(&self) -> &Value {
        match self {
            Geometry::Polytope(_, v) | Geometry::Fan(_, v) => v,
        }
    }
}

fn read_geometry(run: &mut Run, path: &Path) -> anyhow::Result<Geometry> {
    let raw: Value = run.read_json(path)?;
    let what = || format!("interpreting {}", path.display());
    if raw.get("vertices").is_some() {
        let file = PolytopeFile::deserialize(&raw).with_context(what)?;
        let p = LatticePolytope::from_file(&file).with_context(what)?;
        Ok(Geometry::Polytope(p, raw))
    } else {
        let fan = Fan::deserialize(&raw).with_context(what)?;
        Ok(Geometry::Fan(fan, raw))
    }
}

fn read_polytope(run: &mut Run, path: &Path) -> anyhow::Result<(LatticePolytope, Value)> {
    match read_geometry(run, path)? {
        Geometry::Polytope(p, raw) => Ok((p, raw)),
        Geometry::Fan(..) => anyhow::bail!("{} is a fan, expected a polytope", path.display()),
    }
}

/// Optional field of an input file.
fn field<T: serde::de::DeserializeOwned>(raw: &Value, key: &str) -> anyhow::Result<Option<T>> {
    raw.get(key).map(|v| T::deserialize(v).with_context(|| format!("field {key}"))).transpose()
}

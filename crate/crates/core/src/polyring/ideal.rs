use serde::{Deserialize, Serialize};

use super::{buchberger, BlockInner, GbError, GbOptions, GroebnerBasis, MonomialOrder, MultiPoly};

/// Finite list of generators over a common variable list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    vars: Vec<String>,
    gens: Vec<MultiPoly>,
}

impl Ideal {
    /// Generators are moved onto the union of their variable lists; zero
    /// generators are dropped.
    pub fn new(gens: Vec<MultiPoly>) -> Ideal {
        let mut vars: Vec<String> = Vec::new();
        for g in &gens {
            for v in g.vars() {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
        Ideal::with_vars(gens, &vars)
    }

    /// Generators over an explicit variable list (which must cover them).
    pub fn with_vars<S: AsRef<str>>(gens: Vec<MultiPoly>, vars: &[S]) -> Ideal {
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        let gens = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.in_vars(&vars).expect("variable list covers the generators"))
            .collect();
        Ideal { vars, gens }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Unit ideal test via a Gröbner basis.
    pub fn is_unit(&self, opts: GbOptions) -> Result<bool, GbError> {
        if self.gens.is_empty() {
            return Ok(false);
        }
        Ok(buchberger(self, MonomialOrder::DegRevLex, opts)?.is_unit_ideal())
    }

    /// Equality of ideals by mutual reduction against degrevlex bases.
    pub fn same_ideal(&self, other: &Ideal, opts: GbOptions) -> Result<bool, GbError> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ok(true),
            (true, false) | (false, true) => return Ok(false),
            _ => {}
        }
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        let a = Ideal::with_vars(self.gens.clone(), &vars);
        let b = Ideal::with_vars(other.gens.clone(), &vars);
        let ga = buchberger(&a, MonomialOrder::DegRevLex, opts)?;
        let gb = buchberger(&b, MonomialOrder::DegRevLex, opts)?;
        Ok(b.gens.iter().all(|g| ga.contains(g)) && a.gens.iter().all(|g| gb.contains(g)))
    }
}

/// Order used to eliminate the leading block of variables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EliminationOrder {
    /// Pure lex on all variables.
    Lex,
    /// Lex on the eliminated block, degrevlex on the kept variables.
    #[default]
    Block,
}

/// `I ∩ Q[kept variables]`: generators of a reduced Gröbner basis of the
/// elimination ideal, each scaled to a primitive integer polynomial with
/// positive leading coefficient, over the kept variables in their original order.
pub fn eliminate(ideal: &Ideal, drop: &[&str], order: EliminationOrder, opts: GbOptions) -> Result<Ideal, GbError> {
    let dropped: Vec<String> = ideal.vars().iter().filter(|v| drop.contains(&v.as_str())).cloned().collect();
    let kept: Vec<String> = ideal.vars().iter().filter(|v| !drop.contains(&v.as_str())).cloned().collect();
    let mut ranked = dropped.clone();
    ranked.extend(kept.iter().cloned());
    let reordered = Ideal::with_vars(ideal.generators().to_vec(), &ranked);
    let mono = match order {
        EliminationOrder::Lex => MonomialOrder::Lex,
        EliminationOrder::Block => {
            MonomialOrder::Block { split: dropped.len(), first: BlockInner::Lex, second: BlockInner::DegRevLex }
        }
    };
    let gb: GroebnerBasis = buchberger(&reordered, mono, opts)?;
    let gens = gb
        .polys
        .iter()
        .filter_map(|p| p.in_vars(&kept))
        .map(|p| p.primitive_integer())
        .collect();
    Ok(Ideal::with_vars(gens, &kept))
}

/// `f` together with its partial derivatives in the fiber variables (zero derivatives dropped).
pub fn jacobian_ideal(f: &MultiPoly, fiber: &[&str]) -> Ideal {
    let mut gens = vec![f.clone()];
    gens.extend(fiber.iter().map(|v| f.derivative(v)));
    Ideal::with_vars(gens, f.vars())
}

/// Locus in the base over which the fiber `f = 0` is singular: the
/// elimination of the fiber variables from the Jacobian ideal.
pub fn discriminant(f: &MultiPoly, fiber: &[&str], order: EliminationOrder, opts: GbOptions) -> Result<Ideal, GbError> {
    eliminate(&jacobian_ideal(f, fiber), fiber, order, opts)
}

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{same_up_to_unimodular_rows, EmbeddingError};
use crate::exactla::Point;
use crate::polyring::{MultiPoly, ParseError};

/// A toric variety as a GIT quotient together with equations in its Cox ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationFile", into = "PresentationFile")]
pub struct GitPresentation {
    pub vars: Vec<String>,
    /// Weight matrix, one row per grading, one column per Cox variable.
    pub weights: Vec<Point>,
    pub stability: Point,
    pub equations: Vec<MultiPoly>,
    /// Degree of each equation.
    pub line_bundles: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct PresentationFile {
    vars: Vec<String>,
    weights: Vec<Point>,
    stability: Point,
    #[serde(default)]
    equations: Vec<String>,
    #[serde(default, skip_deserializing)]
    line_bundles: Vec<Point>,
}

#[derive(Debug, thiserror::Error)]
pub enum PresentationFileError {
    #[error("equation {index}: {source}")]
    Parse { index: usize, source: ParseError },
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

impl TryFrom<PresentationFile> for GitPresentation {
    type Error = PresentationFileError;

    fn try_from(f: PresentationFile) -> Result<Self, Self::Error> {
        let equations = f
            .equations
            .iter()
            .enumerate()
            .map(|(index, s)| parse_over(s, &f.vars).map_err(|source| PresentationFileError::Parse { index, source }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GitPresentation::new(f.vars, f.weights, f.stability, equations)?)
    }
}

impl From<GitPresentation> for PresentationFile {
    fn from(p: GitPresentation) -> Self {
        PresentationFile {
            vars: p.vars,
            weights: p.weights,
            stability: p.stability,
            equations: p.equations.iter().map(|e| e.to_string()).collect(),
            line_bundles: p.line_bundles,
        }
    }
}

/// Parse with the Cox variables first, then any other names in sorted order.
fn parse_over(src: &str, cox: &[String]) -> Result<MultiPoly, ParseError> {
    let mut extra: Vec<String> =
        MultiPoly::parse_infer(src)?.vars().iter().filter(|v| !cox.contains(v)).cloned().collect();
    extra.sort();
    let vars: Vec<String> = cox.iter().cloned().chain(extra).collect();
    MultiPoly::parse(src, &vars)
}

impl GitPresentation {
    /// Parse a polynomial over the Cox variables plus any parameters it names.
    pub fn parse_equation(&self, src: &str) -> Result<MultiPoly, ParseError> {
        parse_over(src, &self.vars)
    }

    /// Checks that every equation is homogeneous and records its degree.
    /// Variables of an equation that are not Cox variables have degree zero.
    pub fn new(
        vars: Vec<String>,
        weights: Vec<Point>,
        stability: Point,
        equations: Vec<MultiPoly>,
    ) -> Result<GitPresentation, EmbeddingError> {
        for row in &weights {
            if row.len() != vars.len() {
                return Err(EmbeddingError::VariableCount { count: vars.len(), expected: row.len() });
            }
        }
        let mut p = GitPresentation { vars, weights, stability, equations, line_bundles: Vec::new() };
        p.line_bundles = p
            .equations
            .iter()
            .enumerate()
            .map(|(index, e)| p.equation_degree(e).ok_or(EmbeddingError::NotHomogeneous { index }))
            .collect::<Result<_, _>>()?;
        Ok(p)
    }

    pub fn grading_rank(&self) -> usize {
        self.weights.len()
    }

    /// Weight of the Cox variable at position `j`.
    pub fn column(&self, j: usize) -> Point {
        self.weights.iter().map(|r| r[j]).collect()
    }

    fn term_degree(&self, poly: &MultiPoly, exps: &[u32]) -> Point {
        let mut deg = vec![0i64; self.grading_rank()];
        for (name, &e) in poly.vars().iter().zip(exps) {
            if let Some(j) = self.vars.iter().position(|v| v == name) {
                for (d, w) in deg.iter_mut().zip(self.column(j)) {
                    *d += w * e as i64;
                }
            }
        }
        deg
    }

    /// Common degree of all terms, `None` if the polynomial is not homogeneous.
    pub fn equation_degree(&self, poly: &MultiPoly) -> Option<Point> {
        let degrees: BTreeSet<Point> = poly.terms().keys().map(|e| self.term_degree(poly, e)).collect();
        match degrees.len() {
            0 => Some(vec![0; self.grading_rank()]),
            1 => degrees.into_iter().next(),
            _ => None,
        }
    }

    /// Sum of all columns: the weights of `-K`.
    pub fn anticanonical(&self) -> Point {
        self.weights.iter().map(|r| r.iter().sum()).collect()
    }

    /// `-K` minus the degrees of all equations.
    pub fn anticanonical_of_complete_intersection(&self) -> Point {
        let mut w = self.anticanonical();
        for l in &self.line_bundles {
            for (a, b) in w.iter_mut().zip(l) {
                *a -= b;
            }
        }
        w
    }

    pub fn stability_in_positive_orthant(&self) -> bool {
        self.stability.iter().all(|&x| x > 0)
    }
}

/// Set every Cox variable outside `tau` (given by positions in `pres.vars`)
/// to 1 and drop it from the variable list.
pub fn dehomogenize(eq: &MultiPoly, tau: &[usize], pres: &GitPresentation) -> MultiPoly {
    let ones: HashMap<String, BigRational> = pres
        .vars
        .iter()
        .enumerate()
        .filter(|(j, _)| !tau.contains(j))
        .map(|(_, v)| (v.clone(), BigRational::one()))
        .collect();
    let kept: Vec<String> = eq.vars().iter().filter(|v| !ones.contains_key(*v)).cloned().collect();
    eq.evaluate(&ones).in_vars(&kept).expect("dropped variables were evaluated")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EliminatedVariable {
    pub variable: String,
    /// Index of the equation that was solved.
    pub equation: usize,
    pub value: MultiPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearConeReduction {
    pub presentation: GitPresentation,
    /// `None` when no equation is linear in a variable it otherwise avoids.
    pub eliminated: Option<EliminatedVariable>,
}

impl LinearConeReduction {
    pub fn reduced(&self) -> bool {
        self.eliminated.is_some()
    }
}

/// Solve the first equation of the form `c·y + (terms without y)` for `y`,
/// substitute into the other equations and drop `y` from the presentation.
pub fn eliminate_linear_cone(pres: &GitPresentation) -> Result<LinearConeReduction, EmbeddingError> {
    for (i, eq) in pres.equations.iter().enumerate() {
        for (k, name) in pres.vars.iter().enumerate() {
            let Some(pos) = eq.var_index(name) else { continue };
            let linear: Vec<(&Vec<u32>, &BigRational)> = eq.terms().iter().filter(|(e, _)| e[pos] > 0).collect();
            let [(e, c)] = linear[..] else { continue };
            if e[pos] != 1 || e.iter().sum::<u32>() != 1 {
                continue;
            }
            let y = MultiPoly::var(eq.vars(), name);
            let rest = eq - &y.scale(c);
            let value = rest.scale(&(-BigRational::one() / c));
            let kept: Vec<String> = pres.vars.iter().filter(|v| *v != name).cloned().collect();
            let map: HashMap<String, MultiPoly> = [(name.clone(), value.clone())].into();
            let equations: Vec<MultiPoly> = pres
                .equations
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, f)| {
                    let g = f.substitute(&map);
                    let vars: Vec<String> = g.vars().iter().filter(|v| *v != name).cloned().collect();
                    g.in_vars(&vars).expect("variable was substituted away")
                })
                .collect();
            let weights: Vec<Point> = pres
                .weights
                .iter()
                .map(|r| r.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, &x)| x).collect())
                .collect();
            let presentation = GitPresentation::new(kept, weights, pres.stability.clone(), equations)?;
            let value = value.in_vars(&value.used_vars()).expect("used variables");
            return Ok(LinearConeReduction {
                presentation,
                eliminated: Some(EliminatedVariable { variable: name.clone(), equation: i, value }),
            });
        }
    }
    Ok(LinearConeReduction { presentation: pres.clone(), eliminated: None })
}

/// A renaming of Cox variables carrying one presentation onto another.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationMatch {
    /// `(variable of the first, variable of the second)`.
    pub renaming: Vec<(String, String)>,
}

/// Largest number of Cox variables [`match_presentations`] searches over.
const MATCH_VARIABLE_CAP: usize = 9;

fn normalized(eqs: &[MultiPoly], vars: &[String]) -> Option<BTreeSet<String>> {
    eqs.iter().map(|e| e.in_vars(vars).map(|e| e.primitive_integer().to_string())).collect()
}

/// First variable bijection, in lexicographic order of target positions,
/// under which the weight matrices agree up to a unimodular row change and
/// the equations agree up to scaling. Gives up above nine variables.
pub fn match_presentations(a: &GitPresentation, b: &GitPresentation) -> Option<PresentationMatch> {
    let n = a.vars.len();
    if n != b.vars.len() || n > MATCH_VARIABLE_CAP || a.equations.len() != b.equations.len() {
        return None;
    }
    let target = normalized(&b.equations, &b.vars)?;
    for perm in (0..n).permutations(n) {
        let map: HashMap<String, String> = (0..n).map(|i| (a.vars[i].clone(), b.vars[perm[i]].clone())).collect();
        let renamed: Vec<MultiPoly> = a.equations.iter().map(|e| e.rename(&map)).collect();
        if normalized(&renamed, &b.vars).as_ref() != Some(&target) {
            continue;
        }
        // column perm[i] of b must correspond to column i of a
        let mut permuted = vec![vec![0i64; n]; a.grading_rank()];
        for (r, row) in a.weights.iter().enumerate() {
            for i in 0..n {
                permuted[r][perm[i]] = row[i];
            }
        }
        if same_up_to_unimodular_rows(&permuted, &b.weights) {
            return Some(PresentationMatch { renaming: (0..n).map(|i| (a.vars[i].clone(), b.vars[perm[i]].clone())).collect() });
        }
    }
    None
}

//! Names `x, y, z, w` for the four generators of an ordinary double point chart.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{add, Point};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelingError {
    #[error("expected 4 dual generators, found {0}")]
    WrongCount(usize),
    #[error("x + y != z + w")]
    UnequalSums,
    #[error("labels {0:?} are not the dual generators of the cone")]
    NotGenerators(Vec<Point>),
    #[error("no pairing of the generators has equal sums")]
    NoPairing,
    #[error("more than one pairing of the generators has equal sums")]
    AmbiguousPairing,
}

/// Coordinates on the chart `Spec C[x,y,z,w]/(xy - zw)` of an ordinary
/// double point, given by the four generators of `σ∨ ∩ M` with `x + y = z + w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartLabeling {
    /// Short name of the chart, e.g. "alpha".
    pub name: String,
    /// Ray indices (0-based) of the cone.
    pub cone: Vec<usize>,
    pub x: Point,
    pub y: Point,
    pub z: Point,
    pub w: Point,
    /// Set when the labels come from [`canonical_labeling`] rather than being given.
    #[serde(default)]
    pub canonical: bool,
}

impl ChartLabeling {
    pub fn generators(&self) -> [&Point; 4] {
        [&self.x, &self.y, &self.z, &self.w]
    }

    /// Checks the relation and that the labels are exactly `generators`.
    pub fn validate(&self, generators: &[Point]) -> Result<(), LabelingError> {
        if add(&self.x, &self.y) != add(&self.z, &self.w) {
            return Err(LabelingError::UnequalSums);
        }
        let mut mine: Vec<Point> = self.generators().into_iter().cloned().collect();
        let mut theirs = generators.to_vec();
        mine.sort();
        theirs.sort();
        if mine != theirs {
            return Err(LabelingError::NotGenerators(mine));
        }
        equal_sum_pairing(generators).map(|_| ())
    }

    /// Label of a dual vector, if it is one of the four generators.
    pub fn label_of(&self, m: &[i64]) -> Option<char> {
        ['x', 'y', 'z', 'w'].into_iter().zip(self.generators()).find(|(_, g)| g.as_slice() == m).map(|(c, _)| c)
    }
}

/// The unique split of four vectors into two pairs with equal sums, as
/// index pairs `((a, b), (c, d))` with `a = 0`.
pub(crate) fn equal_sum_pairing(gens: &[Point]) -> Result<((usize, usize), (usize, usize)), LabelingError> {
    if gens.len() != 4 {
        return Err(LabelingError::WrongCount(gens.len()));
    }
    let splits = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))];
    let found: Vec<_> = splits
        .into_iter()
        .filter(|((a, b), (c, d))| add(&gens[*a], &gens[*b]) == add(&gens[*c], &gens[*d]))
        .collect();
    match found.len() {
        0 => Err(LabelingError::NoPairing),
        1 => Ok(found[0]),
        _ => Err(LabelingError::AmbiguousPairing),
    }
}

/// Rule-based labels: `x` is the lexicographically smallest generator, `y`
/// its equal-sum partner, `z < w` the other two.
pub fn canonical_labeling(name: &str, cone: Vec<usize>, generators: &[Point]) -> Result<ChartLabeling, LabelingError> {
    let mut gens = generators.to_vec();
    gens.sort();
    let ((_, b), (c, d)) = equal_sum_pairing(&gens)?;
    let (z, w) = if gens[c] < gens[d] { (c, d) } else { (d, c) };
    Ok(ChartLabeling {
        name: name.to_string(),
        cone,
        x: gens[0].clone(),
        y: gens[b].clone(),
        z: gens[z].clone(),
        w: gens[w].clone(),
        canonical: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha() -> ChartLabeling {
        ChartLabeling {
            name: "alpha".into(),
            cone: vec![1, 2, 3, 4],
            x: vec![-1, 1, 1],
            y: vec![1, 0, 0],
            z: vec![0, 0, 1],
            w: vec![0, 1, 0],
            canonical: false,
        }
    }

    #[test]
    fn given_labels_validate() {
        let gens = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, 1, 1]];
        alpha().validate(&gens).unwrap();
        assert_eq!(alpha().label_of(&[0, 1, 0]), Some('w'));
        let mut bad = alpha();
        std::mem::swap(&mut bad.y, &mut bad.z);
        assert_eq!(bad.validate(&gens), Err(LabelingError::UnequalSums));
    }

    #[test]
    fn canonical_rule() {
        let gens = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, 1, 1]];
        let c = canonical_labeling("alpha", vec![1, 2, 3, 4], &gens).unwrap();
        assert_eq!((c.x.clone(), c.y.clone()), (vec![-1, 1, 1], vec![1, 0, 0]));
        assert_eq!((c.z.clone(), c.w.clone()), (vec![0, 0, 1], vec![0, 1, 0]));
        assert!(c.canonical);
        c.validate(&gens).unwrap();
    }

    #[test]
    fn pairing_must_be_unique() {
        let square = vec![vec![0, 0], vec![1, 1], vec![1, 0], vec![0, 1]];
        assert!(equal_sum_pairing(&square).is_ok());
        let line = vec![vec![0], vec![1], vec![2], vec![3]];
        assert_eq!(equal_sum_pairing(&line), Ok(((0, 3), (1, 2))));
        let flat = vec![vec![0], vec![0], vec![0], vec![0]];
        assert_eq!(equal_sum_pairing(&flat), Err(LabelingError::AmbiguousPairing));
    }
}

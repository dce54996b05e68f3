//! Power series `x_∞, y_∞ ∈ C[x,y][[s1,s2,s3]]` with
//! `x_∞ · y_∞ = xy + s1 x² + s2 y² + s3 x² y²`, built one `s`-degree at a time.

use serde::Serialize;

use super::DeformationError;
use crate::polyring::MultiPoly;

pub const LIFT_VARS: [&str; 5] = ["s1", "s2", "s3", "x", "y"];
pub(crate) const S: [&str; 3] = ["s1", "s2", "s3"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftState {
    pub k: usize,
    pub x_k: MultiPoly,
    pub y_k: MultiPoly,
    /// `x_k y_k` minus the target.
    pub f_k: MultiPoly,
}

/// `xy + s1 x² + s2 y² + s3 x² y²`.
pub fn lift_target() -> MultiPoly {
    MultiPoly::parse("x*y + s1*x^2 + s2*y^2 + s3*x^2*y^2", &LIFT_VARS).expect("valid")
}

fn p(src: &str) -> MultiPoly {
    MultiPoly::parse(src, &LIFT_VARS).expect("valid")
}

fn s_degree(e: &[u32]) -> u32 {
    e[0] + e[1] + e[2]
}

fn xy_degree(e: &[u32]) -> u32 {
    e[3] + e[4]
}

/// Every term has `s`-degree in `lo..=hi` and `(x, y)`-degree at least `xy_min`.
fn terms_within(f: &MultiPoly, lo: u32, hi: u32, xy_min: u32) -> bool {
    f.terms().keys().all(|e| (lo..=hi).contains(&s_degree(e)) && xy_degree(e) >= xy_min)
}

impl LiftState {
    /// The lift invariants at this step, by name. `prev` is step `k - 1`.
    pub fn invariants(&self, prev: Option<&LiftState>) -> Vec<(&'static str, bool)> {
        let k = self.k as u32;
        let mut out = vec![(
            "x_k, y_k in R_{<=k} ∩ (x,y)",
            terms_within(&self.x_k, 0, k, 1) && terms_within(&self.y_k, 0, k, 1),
        )];
        if let Some(prev) = prev {
            out.push((
                "x_k - x_{k-1}, y_k - y_{k-1} in R_k",
                terms_within(&(&self.x_k - &prev.x_k), k, k, 0) && terms_within(&(&self.y_k - &prev.y_k), k, k, 0),
            ));
        }
        out.push((
            "x_k y_k - target in R_{>=k+1} ∩ (x,y)^2",
            terms_within(&self.f_k, k + 1, u32::MAX, 2) && self.f_k == &(&self.x_k * &self.y_k) - &lift_target(),
        ));
        out
    }
}

fn check(state: &LiftState, prev: Option<&LiftState>) -> Result<(), DeformationError> {
    match state.invariants(prev).into_iter().find(|(_, ok)| !ok) {
        Some((property, _)) => Err(DeformationError::InvariantViolated { k: state.k, property: property.to_string() }),
        None => Ok(()),
    }
}

/// States `0..=k_max`. Step 1 is the explicit base case
/// `x_1 = x + s2 y + s3 x² y`, `y_1 = y + s1 x`; each later step writes
/// `f_k = A x + B y` with every term of positive `x`-degree in `A x`, takes
/// the `s`-degree `k+1` parts `a, b` and sets `x_{k+1} = x_k - b`,
/// `y_{k+1} = y_k - a`. All invariants are checked at every step.
pub fn hensel_lift(k_max: usize) -> Result<Vec<LiftState>, DeformationError> {
    let target = lift_target();
    let mut states = vec![LiftState { k: 0, x_k: p("x"), y_k: p("y"), f_k: &p("x*y") - &target }];
    if k_max >= 1 {
        let (x1, y1) = (p("x + s2*y + s3*x^2*y"), p("y + s1*x"));
        let f1 = &(&x1 * &y1) - &target;
        states.push(LiftState { k: 1, x_k: x1, y_k: y1, f_k: f1 });
    }
    while states.len() <= k_max {
        let last = states.last().expect("nonempty");
        let k = last.k;
        let mut a = MultiPoly::zero(&LIFT_VARS);
        let mut b = MultiPoly::zero(&LIFT_VARS);
        for (e, c) in last.f_k.terms() {
            if s_degree(e) != k as u32 + 1 {
                continue;
            }
            // divide by x when possible, otherwise by y
            let mut q = e.clone();
            let part = if e[3] > 0 {
                q[3] -= 1;
                &mut a
            } else {
                q[4] -= 1;
                &mut b
            };
            *part = &*part + &MultiPoly::monomial(&LIFT_VARS, q, c.clone());
        }
        let x_next = &last.x_k - &b;
        let y_next = &last.y_k - &a;
        let f_next = &(&x_next * &y_next) - &target;
        states.push(LiftState { k: k + 1, x_k: x_next, y_k: y_next, f_k: f_next });
    }
    for (i, s) in states.iter().enumerate() {
        check(s, i.checked_sub(1).map(|j| &states[j]))?;
    }
    Ok(states)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_steps() {
        let st = hensel_lift(1).unwrap();
        assert_eq!(st[0].x_k, p("x"));
        assert_eq!(st[0].y_k, p("y"));
        assert_eq!(st[1].x_k, p("x + s2*y + s3*x^2*y"));
        assert_eq!(st[1].y_k, p("y + s1*x"));
        assert_eq!(st[1].f_k, p("s1*s2*x*y + s1*s3*x^3*y"));
    }

    /// Independent expansion: multiply out `x_6 y_6` term by term over the
    /// (x, y)-coefficients and compare with the target degree by degree.
    #[test]
    fn sixth_step_by_direct_expansion() {
        let st = hensel_lift(6).unwrap();
        let (x6, y6) = (&st[6].x_k, &st[6].y_k);
        let mut product = MultiPoly::zero(&LIFT_VARS);
        for (ea, ca) in x6.terms() {
            for (eb, cb) in y6.terms() {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                product = &product + &MultiPoly::monomial(&LIFT_VARS, e, ca * cb);
            }
        }
        let diff = &product - &lift_target();
        assert_eq!(diff, st[6].f_k);
        assert!(diff.terms().keys().all(|e| s_degree(e) >= 7 && xy_degree(e) >= 2));
        assert_eq!(diff.truncate_in(&S, 6), MultiPoly::zero(&LIFT_VARS));
    }

    #[test]
    fn zero_steps() {
        let st = hensel_lift(0).unwrap();
        assert_eq!(st.len(), 1);
        assert_eq!(st[0].f_k, p("-s1*x^2 - s2*y^2 - s3*x^2*y^2"));
    }
}

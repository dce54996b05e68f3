//! Buchberger's algorithm with the Gebauer–Möller criteria.
//!
//! Internally polynomials have integer coefficients and are reduced
//! fraction-free, dividing out the content after every step; the reduced
//! basis is made monic over Q at the end.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use super::{Exponents, Ideal, MonomialOrder, MultiPoly};

pub const DEFAULT_BUDGET: u64 = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GbError {
    #[error("Gröbner basis computation exceeded the budget of {0} reduction steps")]
    BudgetExceeded(u64),
    #[error("ideal has no nonzero generator")]
    ZeroIdeal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbOptions {
    /// Cap on elementary reduction steps.
    pub budget: u64,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { budget: DEFAULT_BUDGET }
    }
}

/// Terms sorted by decreasing monomial; integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly {
    terms: Vec<(Exponents, BigInt)>,
}

impl Poly {
    fn from_multi(p: &MultiPoly, order: &MonomialOrder) -> Poly {
        let mut den = BigInt::one();
        for c in p.terms().values() {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let mut terms: Vec<(Exponents, BigInt)> = p
            .terms()
            .iter()
            .map(|(e, c)| (e.clone(), (c * BigRational::from_integer(den.clone())).to_integer()))
            .collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out = Poly { terms };
        out.make_primitive();
        out
    }

    fn to_multi(&self, vars: &[String]) -> MultiPoly {
        let lead = BigRational::from_integer(self.terms[0].1.clone());
        MultiPoly::from_terms(vars, self.terms.iter().map(|(e, c)| (e.clone(), BigRational::from_integer(c.clone()) / &lead)))
    }

    fn lm(&self) -> &Exponents {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = num_integer::gcd(g, c.clone());
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide by the content, making the leading coefficient positive.
    fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = self.content();
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.1 = &t.1 / &g;
            }
        }
    }

    /// `a * self - b * x^shift * g`.
    fn combine(&self, a: &BigInt, b: &BigInt, shift: &[u32], g: &Poly, order: &MonomialOrder) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted: Vec<Exponents> = g.terms.iter().map(|(e, _)| e.iter().zip(shift).map(|(x, y)| x + y).collect()).collect();
        while i < self.terms.len() || j < g.terms.len() {
            let ord = if i == self.terms.len() {
                Ordering::Less
            } else if j == g.terms.len() {
                Ordering::Greater
            } else {
                order.cmp(&self.terms[i].0, &shifted[j])
            };
            match ord {
                Ordering::Greater => {
                    out.push((self.terms[i].0.clone(), a * &self.terms[i].1));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((shifted[j].clone(), -(b * &g.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a * &self.terms[i].1 - b * &g.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn disjoint(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn quotient(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

struct Engine<'a> {
    order: &'a MonomialOrder,
    polys: Vec<Poly>,
    steps: u64,
    budget: u64,
}

impl Engine<'_> {
    fn tick(&mut self) -> Result<(), GbError> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(GbError::BudgetExceeded(self.budget));
        }
        Ok(())
    }

    /// Full reduction of `f` by the polynomials at `basis`. Returns the
    /// remainder and the factor `s` with remainder = s * (true remainder of f).
    fn reduce(&mut self, f: &Poly, basis: &[usize]) -> Result<(Poly, BigRational), GbError> {
        let mut p = f.clone();
        let mut rem: Vec<(Exponents, BigInt)> = Vec::new();
        let mut scale = BigRational::one();
        while !p.is_zero() {
            let (lt, lc) = p.terms[0].clone();
            let divisor = basis.iter().copied().find(|&k| divides(self.polys[k].lm(), &lt));
            match divisor {
                None => {
                    rem.push((lt, lc));
                    p.terms.remove(0);
                }
                Some(k) => {
                    self.tick()?;
                    let g = &self.polys[k];
                    let gc = &g.terms[0].1;
                    let d = num_integer::gcd(gc.clone(), lc.clone());
                    let (mut a, mut b) = (gc / &d, &lc / &d);
                    if a.is_negative() {
                        a = -a;
                        b = -b;
                    }
                    let shift = quotient(&lt, g.lm());
                    p = p.combine(&a, &b, &shift, g, self.order);
                    if !a.is_one() {
                        for t in &mut rem {
                            t.1 *= &a;
                        }
                    }
                    scale *= BigRational::from_integer(a);
                    // keep coefficients small
                    let mut c = p.content();
                    for t in &rem {
                        if c.is_one() {
                            break;
                        }
                        c = num_integer::gcd(c, t.1.clone());
                    }
                    if !c.is_zero() && !c.is_one() {
                        for t in p.terms.iter_mut().chain(rem.iter_mut()) {
                            t.1 = &t.1 / &c;
                        }
                        scale /= BigRational::from_integer(c);
                    }
                }
            }
        }
        Ok((Poly { terms: rem }, scale))
    }

    fn spoly(&self, i: usize, j: usize) -> Poly {
        let (f, g) = (&self.polys[i], &self.polys[j]);
        let l = lcm(f.lm(), g.lm());
        let (fc, gc) = (&f.terms[0].1, &g.terms[0].1);
        let d = num_integer::gcd(fc.clone(), gc.clone());
        let mf = quotient(&l, f.lm());
        let mg = quotient(&l, g.lm());
        // (gc/d) * x^mf * f - (fc/d) * x^mg * g
        let shifted_f = Poly {
            terms: f.terms.iter().map(|(e, c)| (e.iter().zip(&mf).map(|(x, y)| x + y).collect(), c.clone())).collect(),
        };
        shifted_f.combine(&(gc / &d), &(fc / &d), &mg, g, self.order)
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exponents,
}

/// Gebauer–Möller update of the active basis `g` and pair list `b` with the new polynomial `h`.
fn update(polys: &[Poly], g: &mut Vec<usize>, b: &mut Vec<Pair>, h: usize) {
    let lh = polys[h].lm().clone();
    let mut c: Vec<Pair> = g.iter().map(|&k| Pair { i: k, j: h, lcm: lcm(polys[k].lm(), &lh) }).collect();
    let mut d: Vec<Pair> = Vec::new();
    while !c.is_empty() {
        let p = c.remove(0);
        let keep = disjoint(&lh, polys[p.i].lm())
            || (!c.iter().any(|q| divides(&q.lcm, &p.lcm)) && !d.iter().any(|q| divides(&q.lcm, &p.lcm)));
        if keep {
            d.push(p);
        }
    }
    let e: Vec<Pair> = d.into_iter().filter(|p| !disjoint(&lh, polys[p.i].lm())).collect();
    b.retain(|p| {
        !divides(&lh, &p.lcm)
            || lcm(polys[p.i].lm(), &lh) == p.lcm
            || lcm(&lh, polys[p.j].lm()) == p.lcm
    });
    b.extend(e);
    g.retain(|&k| !divides(&lh, polys[k].lm()));
    g.push(h);
}

/// Reduced Gröbner basis over the ideal's variable list, monic and sorted by
/// decreasing leading monomial.
#[derive(Clone, Debug, Serialize)]
pub struct GroebnerBasis {
    pub vars: Vec<String>,
    #[serde(skip)]
    pub order: MonomialOrder,
    pub polys: Vec<MultiPoly>,
    pub steps: u64,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.order == other.order && self.polys == other.polys
    }
}

pub fn buchberger(ideal: &Ideal, order: MonomialOrder, opts: GbOptions) -> Result<GroebnerBasis, GbError> {
    let vars = ideal.vars().to_vec();
    let mut engine = Engine { order: &order, polys: Vec::new(), steps: 0, budget: opts.budget };
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for gen in ideal.generators() {
        if gen.is_zero() {
            continue;
        }
        let f = Poly::from_multi(gen, &order);
        let (mut h, _) = engine.reduce(&f, &active)?;
        if h.is_zero() {
            continue;
        }
        h.make_primitive();
        engine.polys.push(h);
        let idx = engine.polys.len() - 1;
        update(&engine.polys, &mut active, &mut pairs, idx);
    }
    if active.is_empty() {
        return Err(GbError::ZeroIdeal);
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm first, ties by index
        let pick = (0..pairs.len())
            .min_by(|&a, &b| {
                order.cmp(&pairs[a].lcm, &pairs[b].lcm).then_with(|| (pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
            })
            .expect("nonempty");
        let pair = pairs.remove(pick);
        let s = engine.spoly(pair.i, pair.j);
        let (mut h, _) = engine.reduce(&s, &active)?;
        if h.is_zero() {
            continue;
        }
        h.make_primitive();
        engine.polys.push(h);
        let idx = engine.polys.len() - 1;
        update(&engine.polys, &mut active, &mut pairs, idx);
    }

    // active is minimal; inter-reduce the tails
    let mut reduced = Vec::new();
    for &k in &active {
        let others: Vec<usize> = active.iter().copied().filter(|&o| o != k).collect();
        let (mut r, _) = engine.reduce(&engine.polys[k].clone(), &others)?;
        r.make_primitive();
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    let polys = reduced.iter().map(|p| p.to_multi(&vars)).collect();
    Ok(GroebnerBasis { vars, order, polys, steps: engine.steps })
}

impl GroebnerBasis {
    fn engine(&self) -> (Engine<'_>, Vec<usize>) {
        let polys: Vec<Poly> = self.polys.iter().map(|p| Poly::from_multi(p, &self.order)).collect();
        let idx = (0..polys.len()).collect();
        (Engine { order: &self.order, polys, steps: 0, budget: u64::MAX }, idx)
    }

    /// Normal form of `p` (over the basis variables) modulo the basis.
    pub fn reduce(&self, p: &MultiPoly) -> MultiPoly {
        let q = p.in_vars(&self.vars).expect("polynomial uses only basis variables");
        if q.is_zero() {
            return q;
        }
        let mut den = BigInt::one();
        for c in q.terms().values() {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let mut f = Poly {
            terms: q
                .terms()
                .iter()
                .map(|(e, c)| (e.clone(), (c * BigRational::from_integer(den.clone())).to_integer()))
                .collect(),
        };
        f.terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let (mut engine, idx) = self.engine();
        let (r, scale) = engine.reduce(&f, &idx).expect("unbounded budget");
        let factor = BigRational::one() / (scale * BigRational::from_integer(den));
        MultiPoly::from_terms(&self.vars, r.terms.into_iter().map(|(e, c)| (e, BigRational::from_integer(c) * &factor)))
    }

    pub fn contains(&self, p: &MultiPoly) -> bool {
        self.reduce(p).is_zero()
    }

    /// Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn satisfies_criterion(&self) -> bool {
        let (mut engine, idx) = self.engine();
        for i in 0..idx.len() {
            for j in i + 1..idx.len() {
                let s = engine.spoly(i, j);
                match engine.reduce(&s, &idx) {
                    Ok((r, _)) if r.is_zero() => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// Reduced: monic, and no term of any element is divisible by another leading monomial.
    pub fn is_reduced(&self) -> bool {
        let (engine, _) = self.engine();
        let lms: Vec<&Exponents> = engine.polys.iter().map(|p| p.lm()).collect();
        engine.polys.iter().enumerate().all(|(i, p)| {
            p.terms.iter().all(|(e, _)| lms.iter().enumerate().all(|(j, l)| j == i || !divides(l, e)))
        }) && self.polys.iter().zip(&engine.polys).all(|(m, p)| m.coefficient(p.lm()).is_one())
    }

    /// Leading monomial of each element.
    pub fn leading_monomials(&self) -> Vec<Exponents> {
        self.polys.iter().map(|p| Poly::from_multi(p, &self.order).lm().clone()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(src: &[&str], vars: &[&str]) -> Ideal {
        Ideal::new(src.iter().map(|s| MultiPoly::parse(s, vars).unwrap()).collect())
    }

    #[test]
    fn principal_ideal_is_its_own_basis() {
        let i = ideal(&["x^2 + 1"], &["x"]);
        let gb = buchberger(&i, MonomialOrder::Lex, GbOptions::default()).unwrap();
        assert_eq!(gb.polys, vec![MultiPoly::parse("x^2 + 1", &["x"]).unwrap()]);
    }

    #[test]
    fn substitution_relation_appears() {
        let vars = ["x", "s", "t"];
        let i = ideal(&["x - s", "x^2 - t"], &vars);
        let gb = buchberger(&i, MonomialOrder::Lex, GbOptions::default()).unwrap();
        assert!(gb.polys.contains(&MultiPoly::parse("s^2 - t", &vars).unwrap()));
        assert!(gb.satisfies_criterion());
        assert!(gb.is_reduced());
    }

    #[test]
    fn textbook_example() {
        // Cox-Little-O'Shea: <x^3 - 2xy, x^2 y - 2y^2 + x> in grlex gives {x^2, xy, y^2 - x/2}
        let vars = ["x", "y"];
        let i = ideal(&["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"], &vars);
        let gb = buchberger(&i, MonomialOrder::DegRevLex, GbOptions::default()).unwrap();
        let want: Vec<MultiPoly> =
            ["x^2", "x*y", "y^2 - 1/2*x"].iter().map(|s| MultiPoly::parse(s, &vars).unwrap()).collect();
        assert_eq!(gb.polys, want);
    }

    #[test]
    fn reduce_gives_exact_remainder() {
        let vars = ["x", "y"];
        let gb = buchberger(&ideal(&["2*x - 1"], &vars), MonomialOrder::Lex, GbOptions::default()).unwrap();
        let r = gb.reduce(&MultiPoly::parse("x^2 + y", &vars).unwrap());
        assert_eq!(r, MultiPoly::parse("y + 1/4", &vars).unwrap());
    }

    #[test]
    fn unit_ideal_and_budget() {
        let vars = ["x", "y"];
        let gb = buchberger(&ideal(&["x*y - 1", "x"], &vars), MonomialOrder::Lex, GbOptions::default()).unwrap();
        assert!(gb.is_unit_ideal());
        let err = buchberger(&ideal(&["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"], &vars), MonomialOrder::Lex, GbOptions { budget: 1 });
        assert_eq!(err.unwrap_err(), GbError::BudgetExceeded(1));
        assert_eq!(buchberger(&ideal(&["0"], &vars), MonomialOrder::Lex, GbOptions::default()).unwrap_err(), GbError::ZeroIdeal);
    }
}

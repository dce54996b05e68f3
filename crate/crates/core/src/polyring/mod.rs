//! Exact multivariate polynomials over Q, Gröbner bases and elimination.

mod groebner;
mod ideal;
mod order;
mod text;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use groebner::{buchberger, GbError, GbOptions, GroebnerBasis, DEFAULT_BUDGET};
pub use ideal::{discriminant, eliminate, jacobian_ideal, EliminationOrder, Ideal};
pub use order::{BlockInner, MonomialOrder};
pub use text::ParseError;

pub type Exponents = Vec<u32>;

/// Polynomial with rational coefficients in an ordered list of named variables.
///
/// Binary operations between polynomials over different variable lists work
/// over the union of the lists (left operand's variables first).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Exponents, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl MultiPoly {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> MultiPoly {
        MultiPoly { vars: vars.iter().map(|s| s.as_ref().to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: BigRational) -> MultiPoly {
        let mut p = MultiPoly::zero(vars);
        let n = p.vars.len();
        p.insert(vec![0; n], c);
        p
    }

    /// The variable `name`, which must be in `vars`.
    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> MultiPoly {
        let mut p = MultiPoly::zero(vars);
        let i = p.var_index(name).unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut e = vec![0; p.vars.len()];
        e[i] = 1;
        p.insert(e, BigRational::one());
        p
    }

    pub fn monomial<S: AsRef<str>>(vars: &[S], exps: Exponents, c: BigRational) -> MultiPoly {
        let mut p = MultiPoly::zero(vars);
        assert_eq!(exps.len(), p.vars.len());
        p.insert(exps, c);
        p
    }

    pub fn from_terms<S: AsRef<str>>(vars: &[S], terms: impl IntoIterator<Item = (Exponents, BigRational)>) -> MultiPoly {
        let mut p = MultiPoly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len());
            p.insert(e, c);
        }
        p
    }

    /// Adds `c * x^e` in place, dropping the term if it cancels.
    fn insert(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, BigRational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&vec![0; self.vars.len()]).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coefficient(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.var_index(name) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Variables that actually occur.
    pub fn used_vars(&self) -> Vec<String> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .map(|i| self.vars[i].clone())
            .collect()
    }

    /// Same polynomial over another variable list. `None` if a used variable is missing.
    pub fn in_vars<S: AsRef<str>>(&self, vars: &[S]) -> Option<MultiPoly> {
        let target: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        let map: Vec<Option<usize>> = self.vars.iter().map(|v| target.iter().position(|t| t == v)).collect();
        let mut out = MultiPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    ne[map[i]?] = x;
                }
            }
            out.terms.insert(ne, c.clone());
        }
        Some(out)
    }

    /// Union of the two variable lists, `self`'s first.
    fn union_vars(&self, other: &MultiPoly) -> Vec<String> {
        let mut vars: Vec<String> = self.vars.to_vec();
        for v in other.vars.iter() {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    fn aligned(&self, other: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let vars = self.union_vars(other);
        (self.in_vars(&vars).expect("superset"), other.in_vars(&vars).expect("superset"))
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect();
        out
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::constant(&self.vars, BigRational::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    pub fn derivative(&self, name: &str) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        let Some(i) = self.var_index(name) else {
            return out;
        };
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut ne = e.clone();
                ne[i] -= 1;
                out.insert(ne, c * rat(e[i] as i64));
            }
        }
        out
    }

    /// Simultaneous substitution of variables by polynomials. The result
    /// lives over `self`'s variables plus those of the replacements.
    pub fn substitute(&self, map: &HashMap<String, MultiPoly>) -> MultiPoly {
        let mut vars: Vec<String> = self.vars.to_vec();
        let mut keys: Vec<&String> = map.keys().collect();
        keys.sort();
        for k in keys {
            for v in map[k].vars.iter() {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
        let images: Vec<MultiPoly> = self
            .vars
            .iter()
            .map(|v| match map.get(v) {
                Some(p) => p.in_vars(&vars).expect("superset"),
                None => MultiPoly::var(&vars, v),
            })
            .collect();
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::constant(&vars, BigRational::one()), p.clone()]).collect();
        let mut out = MultiPoly::zero(&vars);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(&vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    term = &term * &powers[i][k as usize];
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Substitute rational values; the named variables stay in the list with degree zero.
    pub fn evaluate(&self, values: &HashMap<String, BigRational>) -> MultiPoly {
        let map: HashMap<String, MultiPoly> = values
            .iter()
            .map(|(k, v)| (k.clone(), MultiPoly::constant(&self.vars, v.clone())))
            .collect();
        self.substitute(&map)
    }

    /// Rename variables; names not in `map` are kept.
    pub fn rename(&self, map: &HashMap<String, String>) -> MultiPoly {
        let vars: Vec<String> = self.vars.iter().map(|v| map.get(v).cloned().unwrap_or_else(|| v.clone())).collect();
        MultiPoly { vars: vars.into(), terms: self.terms.clone() }
    }

    /// Terms whose total degree in `names` equals `k`.
    pub fn homogeneous_part_in(&self, names: &[&str], k: u32) -> MultiPoly {
        let idx: Vec<usize> = names.iter().filter_map(|n| self.var_index(n)).collect();
        let mut out = MultiPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            if idx.iter().map(|&i| e[i]).sum::<u32>() == k {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Terms whose total degree in `names` is at most `k`.
    pub fn truncate_in(&self, names: &[&str], k: u32) -> MultiPoly {
        let idx: Vec<usize> = names.iter().filter_map(|n| self.var_index(n)).collect();
        let mut out = MultiPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            if idx.iter().map(|&i| e[i]).sum::<u32>() <= k {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Smallest total degree in `names` over all terms (`None` for zero).
    pub fn min_degree_in(&self, names: &[&str]) -> Option<u32> {
        let idx: Vec<usize> = names.iter().filter_map(|n| self.var_index(n)).collect();
        self.terms.keys().map(|e| idx.iter().map(|&i| e[i]).sum()).min()
    }

    /// Positive rational multiple with coprime integer coefficients, first term
    /// (in printing order) positive.
    pub fn primitive_integer(&self) -> MultiPoly {
        let Some(lead) = self.terms_graded_desc().first().map(|(_, c)| (*c).clone()) else {
            return self.clone();
        };
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            num = num_integer::gcd(num, (c * BigRational::from_integer(den.clone())).to_integer());
        }
        let mut factor = BigRational::new(den, num);
        if lead < BigRational::zero() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Divide by the leading coefficient under the printing order.
    pub fn monic(&self) -> MultiPoly {
        match self.terms_graded_desc().first() {
            Some((_, c)) => self.scale(&(BigRational::one() / (*c).clone())),
            None => self.clone(),
        }
    }

    /// Terms in printing order: total degree descending, then lexicographic descending.
    pub fn terms_graded_desc(&self) -> Vec<(&Exponents, &BigRational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| MonomialOrder::DegLex.cmp(b.0, a.0));
        t
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut a, b) = self.aligned(rhs);
        for (e, c) in b.terms {
            a.insert(e, c);
        }
        a
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        self.scale(&-BigRational::one())
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let (a, b) = self.aligned(rhs);
        let mut out = MultiPoly::zero(&a.vars);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::print(self))
    }
}

/// Serialized as its text form.
impl serde::Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&text::print(self))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.vars.join(","), text::print(self))
    }
}

impl MultiPoly {
    /// Parse over the given variables.
    pub fn parse<S: AsRef<str>>(src: &str, vars: &[S]) -> Result<MultiPoly, ParseError> {
        text::parse(src, Some(&vars.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>()))
    }

    /// Parse with variables taken in order of first appearance.
    pub fn parse_infer(src: &str) -> Result<MultiPoly, ParseError> {
        text::parse(src, None)
    }
}

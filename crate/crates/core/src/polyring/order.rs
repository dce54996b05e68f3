use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Order inside one block of a block order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockInner {
    Lex,
    DegRevLex,
}

/// Monomial order on exponent vectors; the variable list order is the
/// variable ranking (first variable largest).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// Graded, ties broken lexicographically. Used for printing.
    DegLex,
    /// First `split` variables compared by `first`, ties broken on the rest
    /// by `second`. An elimination order for the first block.
    Block { split: usize, first: BlockInner, second: BlockInner },
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

fn inner(kind: BlockInner, a: &[u32], b: &[u32]) -> Ordering {
    match kind {
        BlockInner::Lex => lex(a, b),
        BlockInner::DegRevLex => degrevlex(a, b),
    }
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::DegLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| lex(a, b))
            }
            MonomialOrder::Block { split, first, second } => {
                inner(first, &a[..split], &b[..split]).then_with(|| inner(second, &a[split..], &b[split..]))
            }
        }
    }
}

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Monomial orders on exponent vectors, all compatible with multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
#[derive(Default)]
pub enum MonomialOrder {
    /// Lexicographic, first variable most significant.
    Lex,
    /// Graded reverse lexicographic.
    #[default]
    DegRevLex,
    /// Degrevlex on the first `split` variables, ties broken by degrevlex on
    /// the rest. Eliminates the first block.
    BlockElim { split: usize },
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

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::BlockElim { split } => {
                let s = split.min(a.len());
                degrevlex(&a[..s], &b[..s]).then_with(|| degrevlex(&a[s..], &b[s..]))
            }
        }
    }
}

use std::collections::BTreeSet;

use crate::broad::{BroadPoset, Pair};
use crate::dendro::{is_dendroidal, Tree};
use crate::error::{Error, Result};

use super::regenerate;

/// Largest carrier accepted by subtree enumeration.
pub const DEFAULT_SUBTREE_CAP: usize = 16;

/// Every subtree of `A`, sorted.
///
/// A subtree is a dendroidally ordered subset whose inclusion is monotone.
/// Besides induced subsets these include the trees in which some stumps have
/// been turned into leaves by dropping their stump vertex: such a subtree
/// has fewer relations than the induced one on the same subset.
pub fn enumerate_subtrees(a: &BroadPoset) -> Result<Vec<BroadPoset>> {
    let tree = Tree::from_poset(a)?;
    if a.len() > DEFAULT_SUBTREE_CAP {
        return Err(Error::BudgetExceeded {
            size: 1u128 << a.len(),
            budget: 1u128 << DEFAULT_SUBTREE_CAP,
        });
    }
    let vertices: Vec<Pair> = tree
        .vertices()
        .into_iter()
        .map(|(w, x)| Pair::new(w, x))
        .collect();
    let stumps = tree.stumps();
    let mut found = BTreeSet::new();
    for dropped in 0u32..(1 << stumps.len()) {
        let kept: Vec<Pair> = vertices
            .iter()
            .filter(|p| {
                !(p.source.is_empty()
                    && stumps
                        .iter()
                        .position(|&s| s == p.target)
                        .is_some_and(|i| dropped & (1 << i) != 0))
            })
            .cloned()
            .collect();
        let base = regenerate(a.flavour(), a.carrier().to_vec(), kept)?;
        for subset in 1u32..(1 << a.len()) {
            let members: Vec<usize> = (0..a.len()).filter(|&i| subset & (1 << i) != 0).collect();
            let candidate = base.induced(&members);
            if is_dendroidal(&candidate).is_dendroidal {
                found.insert(candidate);
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Subtrees of degree one less than `A`.
pub fn maximal_subtrees(a: &BroadPoset) -> Result<Vec<BroadPoset>> {
    let d = Tree::from_poset(a)?.degree();
    if d == 0 {
        return Ok(Vec::new());
    }
    Ok(enumerate_subtrees(a)?
        .into_iter()
        .filter(|b| {
            Tree::from_poset(b)
                .map(|t| t.degree() + 1 == d)
                .unwrap_or(false)
        })
        .collect())
}

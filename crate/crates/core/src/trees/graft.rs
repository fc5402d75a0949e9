use std::collections::BTreeMap;
use std::sync::Arc;

use crate::broad::{pushout, BroadPoset, MonotoneMap};
use crate::dendro::Tree;
use crate::error::{Error, Result};

/// The result of grafting `B` onto a leaf of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grafted {
    pub poset: BroadPoset,
    /// Elements of `B` whose name changed: the root of `B` becomes the leaf,
    /// and names already used in `A` get primes appended.
    pub renaming: BTreeMap<String, String>,
}

/// `A ∘ B`: the pushout of `⋆ → A` at `leaf` and `⋆ → B` at the root of `B`.
pub fn graft(a: &BroadPoset, leaf: &str, b: &BroadPoset) -> Result<Grafted> {
    if a.flavour() != b.flavour() {
        return Err(Error::FlavourMismatch(a.flavour(), b.flavour()));
    }
    let ta = Tree::from_poset(a)?;
    let tb = Tree::from_poset(b)?;
    let x = a.index_of(leaf)?;
    if !ta.is_leaf(x) {
        return Err(Error::NotALeaf(leaf.to_string()));
    }
    let star = Arc::new(BroadPoset::star(a.flavour(), leaf));
    let f = MonotoneMap::from_indices(star.clone(), ta.poset().clone(), vec![x])?;
    let g = MonotoneMap::from_indices(star, tb.poset().clone(), vec![tb.root()])?;
    let po = pushout(&f, &g, a.len() + b.len())?;
    let renaming = b
        .carrier()
        .iter()
        .filter_map(|y| {
            let image = po.right.apply(y).expect("total");
            (image != y).then(|| (y.clone(), image.to_string()))
        })
        .collect();
    Ok(Grafted {
        poset: Arc::unwrap_or_clone(po.poset),
        renaming,
    })
}

/// Grafts a tree onto each listed leaf of `A`, in leaf-name order.
pub fn full_graft(a: &BroadPoset, assignment: &BTreeMap<String, BroadPoset>) -> Result<BroadPoset> {
    let ta = Tree::from_poset(a)?;
    for leaf in assignment.keys() {
        let x = a.index_of(leaf)?;
        if !ta.is_leaf(x) {
            return Err(Error::NotALeaf(leaf.clone()));
        }
    }
    let mut current = a.clone();
    for (leaf, b) in assignment {
        current = graft(&current, leaf, b)?.poset;
    }
    Ok(current)
}

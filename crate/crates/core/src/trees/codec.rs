use crate::broad::{BroadPoset, Flavour};
use crate::dendro::Tree;
use crate::error::Result;

use super::graft::graft;
use super::term::TreeTerm;

/// `[T]`: a bare edge is `⋆`, a corolla is `γₙ`, and otherwise the images of
/// the non-leaf children are grafted onto the root corolla.
pub fn to_broad(term: &TreeTerm, flavour: Flavour) -> Result<BroadPoset> {
    let Some(children) = &term.vertex else {
        return Ok(BroadPoset::star(flavour, &term.edge));
    };
    let leaves: Vec<&str> = children.iter().map(|c| c.edge.as_str()).collect();
    let mut current = BroadPoset::corolla(flavour, &term.edge, &leaves)?;
    for child in children.iter().filter(|c| !c.is_leaf()) {
        let image = to_broad(child, flavour)?;
        current = graft(&current, &child.edge, &image)?.poset;
    }
    Ok(current)
}

/// `Tr(A)`: the root edge carrying the root vertex, whose children are the
/// terms of the subtrees `A_a` for `a` in the root's children word.
pub fn to_term(a: &BroadPoset) -> Result<TreeTerm> {
    let tree = Tree::from_poset(a)?;
    Ok(term_at(&tree, tree.root()))
}

fn term_at(tree: &Tree, x: usize) -> TreeTerm {
    TreeTerm {
        edge: tree.name(x).to_string(),
        vertex: tree
            .up(x)
            .map(|word| word.iter().map(|&c| term_at(tree, c)).collect()),
    }
}

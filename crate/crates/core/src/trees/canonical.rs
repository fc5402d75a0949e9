use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::broad::{BroadPoset, Flavour, MonotoneMap};
use crate::dendro::Tree;
use crate::error::{Error, Result};
use crate::iso::find_isomorphism_with;

use super::term::TreeTerm;

/// A string determining a tree up to isomorphism in its flavour.
///
/// A leaf is `l`; an edge with a vertex is `(` followed by its children's
/// codes and `)`, so a stump is `()`. Commutative codes sort the children's
/// codes; planar codes keep them in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalCode {
    pub flavour: Flavour,
    pub code: String,
}

impl CanonicalCode {
    pub fn of_term(term: &TreeTerm, flavour: Flavour) -> Self {
        CanonicalCode {
            flavour,
            code: term_code(term, flavour),
        }
    }

    pub fn of_tree(tree: &Tree) -> Self {
        CanonicalCode {
            flavour: tree.poset().flavour(),
            code: subtree_codes(tree)[tree.root()].clone(),
        }
    }

    pub fn as_str(&self) -> &str {
        &self.code
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code)
    }
}

fn assemble(mut child_codes: Vec<String>, flavour: Flavour) -> String {
    if flavour == Flavour::Commutative {
        child_codes.sort();
    }
    let mut out = String::from("(");
    for c in child_codes {
        out.push_str(&c);
    }
    out.push(')');
    out
}

fn term_code(term: &TreeTerm, flavour: Flavour) -> String {
    match &term.vertex {
        None => "l".to_string(),
        Some(children) => assemble(
            children.iter().map(|c| term_code(c, flavour)).collect(),
            flavour,
        ),
    }
}

/// The code of `A_x` for every edge `x`.
pub(crate) fn subtree_codes(tree: &Tree) -> Vec<String> {
    let mut codes = vec![String::new(); tree.len()];
    let mut order: Vec<usize> = (0..tree.len()).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(tree.depth(x)));
    for x in order {
        codes[x] = match tree.up(x) {
            None => "l".to_string(),
            Some(word) => assemble(
                word.iter().map(|&c| codes[c].clone()).collect(),
                tree.poset().flavour(),
            ),
        };
    }
    codes
}

pub fn canonical_code(a: &BroadPoset) -> Result<CanonicalCode> {
    Ok(CanonicalCode::of_tree(&Tree::from_poset(a)?))
}

/// An isomorphism between two trees, if there is one.
///
/// In the commutative flavour the witness is the lexicographically least
/// isomorphism; in the planar flavour isomorphisms are unique.
pub fn tree_isomorphism(a: &Arc<BroadPoset>, b: &Arc<BroadPoset>) -> Result<Option<MonotoneMap>> {
    if a.flavour() != b.flavour() {
        return Err(Error::FlavourMismatch(a.flavour(), b.flavour()));
    }
    let ta = Tree::new(a.clone())?;
    let tb = Tree::new(b.clone())?;
    let (ca, cb) = (subtree_codes(&ta), subtree_codes(&tb));
    if ca[ta.root()] != cb[tb.root()] {
        return Ok(None);
    }
    let assignment = match a.flavour() {
        Flavour::Planar => {
            let mut assignment = vec![usize::MAX; a.len()];
            let mut stack = vec![(ta.root(), tb.root())];
            while let Some((x, y)) = stack.pop() {
                assignment[x] = y;
                stack.extend(
                    ta.children(x)
                        .iter()
                        .copied()
                        .zip(tb.children(y).iter().copied()),
                );
            }
            assignment
        }
        Flavour::Commutative => {
            let key = |t: &Tree, codes: &[String]| -> Vec<String> {
                (0..t.len())
                    .map(|x| format!("{}:{}", t.depth(x), codes[x]))
                    .collect()
            };
            let (ka, kb) = (key(&ta, &ca), key(&tb, &cb));
            find_isomorphism_with(a, b, Some((&ka, &kb))).expect("equal codes imply an isomorphism")
        }
    };
    Ok(Some(MonotoneMap::from_indices(
        a.clone(),
        b.clone(),
        assignment,
    )?))
}

pub fn are_isomorphic(a: &BroadPoset, b: &BroadPoset) -> Result<bool> {
    if a.flavour() != b.flavour() {
        return Err(Error::FlavourMismatch(a.flavour(), b.flavour()));
    }
    Ok(canonical_code(a)? == canonical_code(b)?)
}

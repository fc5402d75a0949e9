use std::collections::BTreeSet;

use crate::broad::Flavour;
use crate::error::{Error, Result};

use super::term::TreeTerm;

/// Default largest edge count accepted by [`enumerate_trees`].
pub const DEFAULT_TREE_CAP: usize = 7;

/// One tree per isomorphism class with at most `max_edges` edges, ordered by
/// edge count and then canonical code. Edges are named `a`, `b`, `c`, … in
/// preorder; commutative representatives list children in code order.
pub fn enumerate_trees(max_edges: usize, flavour: Flavour) -> Result<Vec<TreeTerm>> {
    enumerate_trees_with_cap(max_edges, flavour, DEFAULT_TREE_CAP)
}

pub fn enumerate_trees_with_cap(
    max_edges: usize,
    flavour: Flavour,
    cap: usize,
) -> Result<Vec<TreeTerm>> {
    if max_edges > cap {
        return Err(Error::BudgetExceeded {
            size: max_edges as u128,
            budget: cap as u128,
        });
    }
    let by_size = codes_by_size(max_edges, flavour);
    let mut out = Vec::new();
    for codes in by_size.iter().skip(1) {
        for code in codes {
            out.push(term_from_code(code));
        }
    }
    Ok(out)
}

/// `codes[n]` lists the canonical codes of trees with `n` edges, sorted.
fn codes_by_size(max_edges: usize, flavour: Flavour) -> Vec<Vec<String>> {
    let mut codes: Vec<Vec<String>> = vec![Vec::new(); max_edges + 1];
    for n in 1..=max_edges {
        let mut found = BTreeSet::new();
        if n == 1 {
            found.insert("l".to_string());
        }
        // A vertex on the root edge whose children use the other n - 1 edges.
        let mut children = Vec::new();
        child_lists(&codes, n - 1, flavour, &mut children, &mut |list| {
            found.insert(format!("({})", list.concat()));
        });
        codes[n] = found.into_iter().collect();
    }
    codes
}

fn child_lists(
    codes: &[Vec<String>],
    remaining: usize,
    flavour: Flavour,
    current: &mut Vec<String>,
    emit: &mut dyn FnMut(&[String]),
) {
    if remaining == 0 {
        emit(current);
        return;
    }
    for size in 1..=remaining {
        for code in &codes[size] {
            if flavour == Flavour::Commutative && current.last().is_some_and(|last| code < last) {
                continue;
            }
            current.push(code.clone());
            child_lists(codes, remaining - size, flavour, current, emit);
            current.pop();
        }
    }
}

fn edge_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("e{i}")
    }
}

fn term_from_code(code: &str) -> TreeTerm {
    let bytes = code.as_bytes();
    let mut pos = 0;
    let mut next_name = 0;
    build(bytes, &mut pos, &mut next_name)
}

fn build(code: &[u8], pos: &mut usize, next_name: &mut usize) -> TreeTerm {
    let edge = edge_name(*next_name);
    *next_name += 1;
    if code[*pos] == b'l' {
        *pos += 1;
        return TreeTerm::leaf(edge);
    }
    *pos += 1;
    let mut children = Vec::new();
    while code[*pos] != b')' {
        children.push(build(code, pos, next_name));
    }
    *pos += 1;
    TreeTerm::node(edge, children)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::CanonicalCode;

    #[test]
    fn single_edge_trees() {
        let trees = enumerate_trees(1, Flavour::Commutative).unwrap();
        let printed: Vec<String> = trees.iter().map(ToString::to_string).collect();
        assert_eq!(printed, vec!["a()", "a"]);
    }

    #[test]
    fn planar_counts() {
        // Sequence of planar trees with stumps by edge count.
        let trees = enumerate_trees(5, Flavour::Planar).unwrap();
        let mut counts = [0usize; 6];
        for t in &trees {
            counts[t.edge_count()] += 1;
        }
        assert_eq!(counts[1..], [2, 2, 6, 22, 90]);
    }

    #[test]
    fn codes_match_representatives() {
        for flavour in [Flavour::Commutative, Flavour::Planar] {
            let trees = enumerate_trees(5, flavour).unwrap();
            let codes: BTreeSet<CanonicalCode> = trees
                .iter()
                .map(|t| CanonicalCode::of_term(t, flavour))
                .collect();
            assert_eq!(codes.len(), trees.len());
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_trees(8, Flavour::Planar),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}

//! The dendroidal axioms and the tree structure they determine.
//!
//! For a broad poset `A`, `b` is a descendant of `a` (`b ≤_d a`) when `b`
//! occurs in some word `b'` with `b' ≤ a`. A finite broad poset is
//! dendroidally ordered when every related word is simple, `≤_d` has a
//! maximum (the root), and every non-leaf `a` has children: the set `â` of
//! words strictly below `a` has a maximum `a↑` in the induced word order.
//!
//! The root is the *maximum* of `≤_d`: every edge is a descendant of the root.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::broad::{BroadPoset, BroadWord, Pair};
use crate::error::{Error, Result};

/// What lies directly above an edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeClassification {
    /// Nothing is below the edge.
    Leaf,
    /// The edge carries a vertex with no inputs (`ε ≤ a`).
    Stump,
    /// The edge carries a vertex with these children.
    HasChildren(BroadWord),
}

/// Outcome of checking the dendroidal axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DendroReport {
    pub is_dendroidal: bool,
    pub simple: bool,
    pub has_root: bool,
    pub children_axiom: bool,
    pub root: Option<String>,
    pub violations: Vec<String>,
}

/// `≤_d` as a matrix: `m[b][a]` when `b ≤_d a`.
pub fn descendant_matrix(a: &BroadPoset) -> Vec<Vec<bool>> {
    a.descendant_matrix()
}

/// `≤_d` as the list of pairs `(b, a)` with `b ≤_d a`, reflexive pairs
/// included, in carrier order.
pub fn descendant_order(a: &BroadPoset) -> Vec<(String, String)> {
    let m = a.descendant_matrix();
    let mut out = Vec::new();
    for (b, row) in m.iter().enumerate() {
        for (x, &below) in row.iter().enumerate() {
            if below {
                out.push((a.name(b).to_string(), a.name(x).to_string()));
            }
        }
    }
    out
}

/// The maximum of the words strictly below `x`, if `x` is not a leaf.
///
/// Returns `Ok(None)` for a leaf and an error when `â` has no maximum.
fn children_word(a: &BroadPoset, x: usize) -> Result<Option<Vec<usize>>> {
    let below = a.sources(x);
    if below.is_empty() {
        return Ok(None);
    }
    below
        .iter()
        .find(|w| below.iter().all(|u| a.word_leq(u, w)))
        .map(|w| Some(w.clone()))
        .ok_or_else(|| {
            Error::NotDendroidal(format!("the words below `{}` have no maximum", a.name(x)))
        })
}

/// Leaf, stump, or the children word of an edge.
pub fn classify_edge(a: &BroadPoset, edge: &str) -> Result<EdgeClassification> {
    let x = a.index_of(edge)?;
    Ok(match children_word(a, x)? {
        None => EdgeClassification::Leaf,
        Some(w) if w.is_empty() => EdgeClassification::Stump,
        Some(w) => EdgeClassification::HasChildren(a.word(&w)),
    })
}

/// Checks simplicity, the root axiom and the children axiom.
pub fn is_dendroidal(a: &BroadPoset) -> DendroReport {
    let validation = a.as_relation().validate();
    let mut violations = validation.violations.clone();

    let mut simple = true;
    for p in a.pairs().filter(|p| !p.is_simple()) {
        simple = false;
        violations.push(format!(
            "not simple: {} ≤ {} repeats a letter",
            a.word(&p.source),
            a.name(p.target)
        ));
    }

    let m = a.descendant_matrix();
    let tops: Vec<usize> = (0..a.len())
        .filter(|&x| (0..a.len()).all(|y| m[y][x]))
        .collect();
    let root = match tops.as_slice() {
        [r] => Some(*r),
        _ => None,
    };
    let has_root = root.is_some();
    if !has_root {
        let maximal: Vec<&str> = (0..a.len())
            .filter(|&x| (0..a.len()).all(|y| !m[x][y] || m[y][x]))
            .map(|x| a.name(x))
            .collect();
        violations.push(if a.is_empty() {
            "no root: the carrier is empty".to_string()
        } else {
            format!(
                "no root: the descendant order has maximal elements {}",
                maximal.join(", ")
            )
        });
    }

    let mut children_axiom = true;
    for x in 0..a.len() {
        if let Err(e) = children_word(a, x) {
            children_axiom = false;
            violations.push(e.to_string());
        }
    }

    DendroReport {
        is_dendroidal: validation.is_valid() && simple && has_root && children_axiom,
        simple,
        has_root,
        children_axiom,
        root: root.map(|r| a.name(r).to_string()),
        violations,
    }
}

/// Links: pairs `b < a` with nothing strictly between `b` and `a`, ordered
/// by target.
pub fn link_pairs(a: &BroadPoset) -> Vec<Pair> {
    let mut out: Vec<Pair> = a
        .pairs()
        .filter(|p| {
            a.sources(p.target)
                .iter()
                .all(|other| *other == p.source || !a.word_leq(&p.source, other))
        })
        .cloned()
        .collect();
    out.sort_by(|x, y| (x.target, &x.source).cmp(&(y.target, &y.source)));
    out
}

pub fn links(a: &BroadPoset) -> Vec<(BroadWord, String)> {
    link_pairs(a)
        .iter()
        .map(|p| (a.word(&p.source), a.name(p.target).to_string()))
        .collect()
}

/// Number of links.
pub fn degree(a: &BroadPoset) -> usize {
    link_pairs(a).len()
}

/// Elements with nothing below them.
pub fn leaves(a: &BroadPoset) -> Vec<String> {
    (0..a.len())
        .filter(|&x| a.sources(x).is_empty())
        .map(|x| a.name(x).to_string())
        .collect()
}

pub fn root(a: &BroadPoset) -> Result<String> {
    Ok(Tree::new(Arc::new(a.clone()))?.root_name().to_string())
}

pub fn parent(a: &BroadPoset, edge: &str) -> Result<String> {
    let t = Tree::new(Arc::new(a.clone()))?;
    let x = t.poset().index_of(edge)?;
    t.parent(x)
        .map(|p| t.poset().name(p).to_string())
        .ok_or_else(|| Error::NoParent(edge.to_string()))
}

pub fn join(a: &BroadPoset, x: &str, y: &str) -> Result<String> {
    let t = Tree::new(Arc::new(a.clone()))?;
    let (i, j) = (t.poset().index_of(x)?, t.poset().index_of(y)?);
    Ok(t.poset().name(t.join(i, j)).to_string())
}

pub fn subtree_at(a: &BroadPoset, edge: &str) -> Result<BroadPoset> {
    let t = Tree::new(Arc::new(a.clone()))?;
    Ok(t.subtree_at(t.poset().index_of(edge)?))
}

pub fn root_corolla(a: &BroadPoset) -> Result<BroadPoset> {
    Ok(Tree::new(Arc::new(a.clone()))?.root_corolla())
}

/// A dendroidally ordered set with its derived structure cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    poset: Arc<BroadPoset>,
    root: usize,
    up: Vec<Option<Vec<usize>>>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
}

impl Tree {
    pub fn new(poset: Arc<BroadPoset>) -> Result<Tree> {
        let report = is_dendroidal(&poset);
        if !report.is_dendroidal {
            return Err(Error::NotDendroidal(report.violations.join("; ")));
        }
        let root = poset.index_of(report.root.as_deref().expect("root exists"))?;
        let up = (0..poset.len())
            .map(|x| children_word(&poset, x))
            .collect::<Result<Vec<_>>>()?;
        let mut parent = vec![None; poset.len()];
        for (x, word) in up.iter().enumerate() {
            for &c in word.iter().flatten() {
                if parent[c].is_some() {
                    return Err(Error::NotDendroidal(format!(
                        "`{}` has two parents",
                        poset.name(c)
                    )));
                }
                parent[c] = Some(x);
            }
        }
        let mut depth = vec![0; poset.len()];
        let mut stack = vec![root];
        let mut seen = 1;
        while let Some(x) = stack.pop() {
            for &c in up[x].iter().flatten() {
                depth[c] = depth[x] + 1;
                stack.push(c);
                seen += 1;
            }
        }
        if seen != poset.len() {
            return Err(Error::NotDendroidal(
                "some edge is not reachable from the root through children".into(),
            ));
        }
        Ok(Tree {
            poset,
            root,
            up,
            parent,
            depth,
        })
    }

    pub fn from_poset(poset: &BroadPoset) -> Result<Tree> {
        Tree::new(Arc::new(poset.clone()))
    }

    pub fn poset(&self) -> &Arc<BroadPoset> {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        self.poset.name(x)
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn root_name(&self) -> &str {
        self.poset.name(self.root)
    }

    /// `x↑`: `None` for a leaf, the (possibly empty) children word otherwise.
    pub fn up(&self, x: usize) -> Option<&[usize]> {
        self.up[x].as_deref()
    }

    /// Children of `x`; empty for leaves and stumps.
    pub fn children(&self, x: usize) -> &[usize] {
        self.up(x).unwrap_or(&[])
    }

    pub fn classify(&self, x: usize) -> EdgeClassification {
        match self.up(x) {
            None => EdgeClassification::Leaf,
            Some([]) => EdgeClassification::Stump,
            Some(w) => EdgeClassification::HasChildren(self.poset.word(w)),
        }
    }

    pub fn is_leaf(&self, x: usize) -> bool {
        self.up[x].is_none()
    }

    pub fn is_stump(&self, x: usize) -> bool {
        matches!(self.up(x), Some([]))
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        self.parent[x]
    }

    pub fn depth(&self, x: usize) -> usize {
        self.depth[x]
    }

    /// `b ≤_d a`.
    pub fn is_descendant(&self, b: usize, a: usize) -> bool {
        if self.depth[b] < self.depth[a] {
            return false;
        }
        let mut x = b;
        for _ in 0..self.depth[b] - self.depth[a] {
            x = self.parent[x].expect("non-root has a parent");
        }
        x == a
    }

    /// The least common ancestor, found by climbing parents.
    pub fn join(&self, a: usize, b: usize) -> usize {
        let (mut x, mut y) = (a, b);
        while self.depth[x] > self.depth[y] {
            x = self.parent[x].expect("deeper edge has a parent");
        }
        while self.depth[y] > self.depth[x] {
            y = self.parent[y].expect("deeper edge has a parent");
        }
        while x != y {
            x = self.parent[x].expect("below the root");
            y = self.parent[y].expect("below the root");
        }
        x
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_leaf(x)).collect()
    }

    pub fn stumps(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_stump(x)).collect()
    }

    /// Edges that are neither the root nor a leaf.
    pub fn inner_edges(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| x != self.root && !self.is_leaf(x))
            .collect()
    }

    /// Vertices `(x↑, x)` in carrier order of `x`.
    pub fn vertices(&self) -> Vec<(Vec<usize>, usize)> {
        (0..self.len())
            .filter_map(|x| self.up[x].clone().map(|w| (w, x)))
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.up.iter().filter(|u| u.is_some()).count()
    }

    /// Descendants of `a`, in carrier order.
    pub fn descendants(&self, a: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| self.is_descendant(b, a))
            .collect()
    }

    /// `A_a`: the induced broad poset on the descendants of `a`.
    pub fn subtree_at(&self, a: usize) -> BroadPoset {
        self.poset.induced(&self.descendants(a))
    }

    /// `A_root`: the root together with its children as a corolla.
    pub fn root_corolla(&self) -> BroadPoset {
        let mut subset: Vec<usize> = self.children(self.root).to_vec();
        subset.push(self.root);
        subset.sort_unstable();
        let root_only = self.up[self.root].clone();
        let keep: Vec<Pair> = root_only
            .into_iter()
            .map(|w| Pair::new(w, self.root))
            .collect();
        let names: Vec<String> = subset.iter().map(|&x| self.name(x).to_string()).collect();
        let index = |x: usize| subset.binary_search(&x).expect("in subset");
        let pairs = keep.into_iter().map(|p| {
            Pair::new(
                p.source.iter().map(|&l| index(l)).collect(),
                index(p.target),
            )
        });
        BroadPoset::from_indexed(self.poset.flavour(), names, pairs)
    }

    /// The paths from the root, as edge sequences, used for invariants.
    pub fn path_to_root(&self, x: usize) -> Vec<usize> {
        let mut path = vec![x];
        let mut cur = x;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path
    }
}

use std::sync::Arc;

use crate::broad::{BroadPoset, MonotoneMap, Pair};
use crate::dendro::{is_dendroidal, Tree};
use crate::error::{Error, Result};

use super::{regenerate, FaceKind};

fn inclusion(sub: BroadPoset, a: &Arc<BroadPoset>) -> Result<MonotoneMap> {
    MonotoneMap::inclusion(Arc::new(sub), a.clone())
}

/// `A/e`: the inclusion of `A` without the inner edge `e`.
pub fn inner_face(a: &Arc<BroadPoset>, edge: &str) -> Result<MonotoneMap> {
    let t = Tree::new(a.clone())?;
    let e = a.index_of(edge)?;
    if e == t.root() || t.is_leaf(e) {
        return Err(Error::NotInnerEdge(edge.to_string()));
    }
    let rest: Vec<usize> = (0..a.len()).filter(|&x| x != e).collect();
    inclusion(a.induced(&rest), a)
}

/// `A/C`: the inclusion of `A` with the vertex on `edge` pruned. The vertex
/// must be an outer cluster: all its children are leaves, or it is a stump.
pub fn outer_face(a: &Arc<BroadPoset>, edge: &str) -> Result<MonotoneMap> {
    let t = Tree::new(a.clone())?;
    let x = a.index_of(edge)?;
    let not_cluster = || Error::NotOuterCluster(format!("the vertex on `{edge}`"));
    let children = t.up(x).ok_or_else(not_cluster)?;
    if children.iter().any(|&c| !t.is_leaf(c)) {
        return Err(not_cluster());
    }
    if children.is_empty() {
        let kept: Vec<Pair> = t
            .vertices()
            .into_iter()
            .filter(|(_, y)| *y != x)
            .map(|(w, y)| Pair::new(w, y))
            .collect();
        return inclusion(regenerate(a.flavour(), a.carrier().to_vec(), kept)?, a);
    }
    let rest: Vec<usize> = (0..a.len()).filter(|y| !children.contains(y)).collect();
    inclusion(a.induced(&rest), a)
}

/// The inclusion `A_b → A` for a child `b` of the root whose siblings are
/// all leaves.
pub fn root_face(a: &Arc<BroadPoset>, branch: &str) -> Result<MonotoneMap> {
    let t = Tree::new(a.clone())?;
    let b = a.index_of(branch)?;
    let siblings = t.children(t.root());
    let qualifies = siblings.contains(&b) && siblings.iter().all(|&s| s == b || t.is_leaf(s));
    if !qualifies {
        return Err(Error::NoRootFace(branch.to_string()));
    }
    inclusion(t.subtree_at(b), a)
}

/// All face maps into `A`, ordered by identifier and then kind.
pub fn faces(a: &Arc<BroadPoset>) -> Result<Vec<(FaceKind, MonotoneMap)>> {
    let t = Tree::new(a.clone())?;
    let mut out = Vec::new();
    for x in 0..a.len() {
        let name = a.name(x).to_string();
        if x != t.root() && !t.is_leaf(x) {
            out.push((
                FaceKind::InnerFace { edge: name.clone() },
                inner_face(a, &name)?,
            ));
        }
        if let Some(children) = t.up(x) {
            if children.iter().all(|&c| t.is_leaf(c)) {
                let kind = FaceKind::OuterFace {
                    children: a.word(children),
                    edge: name.clone(),
                };
                out.push((kind, outer_face(a, &name)?));
            }
        }
        if t.parent(x) == Some(t.root()) {
            if let Ok(f) = root_face(a, &name) {
                out.push((FaceKind::RootFace { branch: name }, f));
            }
        }
    }
    out.sort_by(|(k1, _), (k2, _)| k1.order_key().cmp(&k2.order_key()));
    Ok(out)
}

/// Which face a maximal subtree `B ⊆ A` is.
pub fn classify_maximal(a: &Arc<BroadPoset>, b: &BroadPoset) -> Result<FaceKind> {
    let ta = Tree::new(a.clone())?;
    let not_maximal = |why: &str| Error::NotMaximal(format!("{b}: {why}"));
    if !b.is_sub_poset_of(a) {
        return Err(not_maximal("not contained in the tree"));
    }
    if !is_dendroidal(b).is_dendroidal {
        return Err(not_maximal("not dendroidally ordered"));
    }
    let tb = Tree::from_poset(b)?;
    if tb.degree() + 1 != ta.degree() {
        return Err(not_maximal("degree is not one less"));
    }
    let in_b = |x: usize| b.index(a.name(x)).is_some();
    let (kind, face) = if !in_b(ta.root()) {
        let branch = tb.root_name().to_string();
        let f = root_face(a, &branch).map_err(|_| not_maximal("misses the root"))?;
        (FaceKind::RootFace { branch }, f)
    } else {
        let missing: Vec<usize> = (0..a.len()).filter(|&x| !in_b(x)).collect();
        let missing_inner: Vec<usize> = missing
            .iter()
            .copied()
            .filter(|&x| !ta.is_leaf(x))
            .collect();
        match (missing.len(), missing_inner.as_slice()) {
            (1, [e]) => {
                let edge = a.name(*e).to_string();
                let f = inner_face(a, &edge)?;
                (FaceKind::InnerFace { edge }, f)
            }
            (_, []) => {
                // The pruned vertex is the one whose edge became a leaf.
                let x = (0..a.len())
                    .find(|&x| in_b(x) && !ta.is_leaf(x) && tb.is_leaf(b.index(a.name(x)).unwrap()))
                    .ok_or_else(|| not_maximal("no pruned vertex"))?;
                let edge = a.name(x).to_string();
                let f = outer_face(a, &edge)
                    .map_err(|_| not_maximal("pruned vertex is not an outer cluster"))?;
                let children = a.word(ta.up(x).unwrap_or(&[]));
                (FaceKind::OuterFace { children, edge }, f)
            }
            _ => return Err(not_maximal("misses more than one inner edge")),
        }
    };
    if **face.domain() != *b {
        return Err(not_maximal("not obtained by removing a single vertex"));
    }
    Ok(kind)
}

/// The degeneracy `σ: A → A/parent` collapsing the unary vertex
/// `child ≤ parent`, sending `parent` to `child`.
pub fn degeneracy(a: &Arc<BroadPoset>, child: &str, parent: &str) -> Result<MonotoneMap> {
    let t = Tree::new(a.clone())?;
    let (c, p) = (a.index_of(child)?, a.index_of(parent)?);
    if t.up(p) != Some(&[c][..]) {
        return Err(Error::NotUnaryVertex(format!("{child} ≤ {parent}")));
    }
    let rest: Vec<usize> = (0..a.len()).filter(|&x| x != p).collect();
    let codomain = Arc::new(a.induced(&rest));
    let assignment = (0..a.len())
        .map(|x| {
            let name = if x == p { child } else { a.name(x) };
            codomain.index_of(name)
        })
        .collect::<Result<Vec<_>>>()?;
    MonotoneMap::from_indices(a.clone(), codomain, assignment)
}

/// Every degeneracy out of `A`, as `((child, parent), σ)`, ordered by parent.
pub fn degeneracies(a: &Arc<BroadPoset>) -> Result<Vec<((String, String), MonotoneMap)>> {
    let t = Tree::new(a.clone())?;
    let mut out = Vec::new();
    for p in 0..a.len() {
        if let Some(&[c]) = t.up(p) {
            let (child, parent) = (a.name(c).to_string(), a.name(p).to_string());
            let sigma = degeneracy(a, &child, &parent)?;
            out.push(((child, parent), sigma));
        }
    }
    Ok(out)
}

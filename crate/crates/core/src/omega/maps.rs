use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::broad::{BroadPoset, BroadWord, MonotoneMap, Pair};
use crate::dendro::Tree;
use crate::error::{Error, Result};
use crate::trees::graft;

use super::faces::{classify_maximal, degeneracy};
use super::FaceKind;

/// The kind of an arrow between trees, up to isomorphism on either side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Isomorphism,
    InnerFace {
        edge: String,
    },
    OuterFace {
        children: BroadWord,
        edge: String,
    },
    RootFace {
        branch: String,
    },
    /// Collapses the unary vertex `child ≤ parent`.
    Degeneracy {
        child: String,
        parent: String,
    },
    Other,
}

impl From<FaceKind> for MapKind {
    fn from(kind: FaceKind) -> Self {
        match kind {
            FaceKind::InnerFace { edge } => MapKind::InnerFace { edge },
            FaceKind::OuterFace { children, edge } => MapKind::OuterFace { children, edge },
            FaceKind::RootFace { branch } => MapKind::RootFace { branch },
        }
    }
}

impl MapKind {
    pub fn is_face(&self) -> bool {
        matches!(
            self,
            MapKind::InnerFace { .. } | MapKind::OuterFace { .. } | MapKind::RootFace { .. }
        )
    }

    /// The kind without its edge names, for comparing maps between
    /// differently named trees.
    pub fn label(&self) -> &'static str {
        match self {
            MapKind::Isomorphism => "isomorphism",
            MapKind::InnerFace { .. } => "inner face",
            MapKind::OuterFace { .. } => "outer face",
            MapKind::RootFace { .. } => "root face",
            MapKind::Degeneracy { .. } => "degeneracy",
            MapKind::Other => "other",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapKind::Isomorphism => f.write_str("isomorphism"),
            MapKind::InnerFace { edge } => write!(f, "inner face at {edge}"),
            MapKind::OuterFace { children, edge } => {
                write!(f, "outer face pruning {children} ≤ {edge}")
            }
            MapKind::RootFace { branch } => write!(f, "root face onto {branch}"),
            MapKind::Degeneracy { child, parent } => {
                write!(f, "degeneracy collapsing {child} ≤ {parent}")
            }
            MapKind::Other => f.write_str("other"),
        }
    }
}

/// Classifies an arrow between trees.
///
/// An injective map is a face when its image, carrying the transported
/// relation, is a maximal subtree of the codomain; a surjective map is a
/// degeneracy when it identifies exactly the two edges of a unary vertex and
/// is an isomorphism otherwise. Edge names in the result refer to the
/// codomain for faces and to the domain for degeneracies.
pub fn classify_map(f: &MonotoneMap) -> Result<MapKind> {
    let (a, b) = (f.domain(), f.codomain());
    let ta = Tree::new(a.clone())?;
    let tb = Tree::new(b.clone())?;
    if f.is_isomorphism() {
        return Ok(MapKind::Isomorphism);
    }
    if f.is_injective() && ta.degree() + 1 == tb.degree() {
        let image = transported_image(f);
        return Ok(classify_maximal(b, &image)
            .map(MapKind::from)
            .unwrap_or(MapKind::Other));
    }
    if f.is_surjective() && a.len() == b.len() + 1 {
        let mut first_hit = vec![None; b.len()];
        let mut pair = None;
        for x in 0..a.len() {
            let y = f.image_index(x);
            match first_hit[y] {
                None => first_hit[y] = Some(x),
                Some(z) => pair = Some((z, x)),
            }
        }
        let (x, y) = pair.expect("one collision");
        let vertex = if ta.up(y) == Some(&[x][..]) {
            Some((x, y))
        } else if ta.up(x) == Some(&[y][..]) {
            Some((y, x))
        } else {
            None
        };
        if let Some((child, parent)) = vertex {
            let sigma = degeneracy(a, a.name(child), a.name(parent))?;
            let rest = sigma
                .codomain()
                .carrier()
                .iter()
                .map(|n| f.image_index(a.index(n).expect("kept element")))
                .collect();
            let residual = MonotoneMap::from_indices(sigma.codomain().clone(), b.clone(), rest)?;
            if residual.is_isomorphism() {
                return Ok(MapKind::Degeneracy {
                    child: a.name(child).to_string(),
                    parent: a.name(parent).to_string(),
                });
            }
        }
    }
    Ok(MapKind::Other)
}

/// The image of an injective map with the domain's relation carried along.
fn transported_image(f: &MonotoneMap) -> BroadPoset {
    let a = f.domain();
    let b = f.codomain();
    let mut members: Vec<usize> = f.indices().to_vec();
    members.sort_unstable();
    let carrier: Vec<String> = members.iter().map(|&y| b.name(y).to_string()).collect();
    let pos = |y: usize| members.binary_search(&y).expect("in image");
    let pairs = a.pairs().map(|p| {
        Pair::new(
            p.source.iter().map(|&l| pos(f.image_index(l))).collect(),
            pos(f.image_index(p.target)),
        )
    });
    BroadPoset::from_indexed(a.flavour(), carrier, pairs.collect::<Vec<_>>())
}

/// `A ∘ α: A ∘ B → A ∘ B'` for `α: B → B'` preserving the root, grafting
/// both sides onto `leaf`.
pub fn graft_map(a: &BroadPoset, leaf: &str, alpha: &MonotoneMap) -> Result<MonotoneMap> {
    let (b, b2) = (alpha.domain(), alpha.codomain());
    let tb = Tree::new(b.clone())?;
    let tb2 = Tree::new(b2.clone())?;
    if alpha.image_index(tb.root()) != tb2.root() {
        return Err(Error::GraftUndefined(format!(
            "the map sends the root `{}` to `{}`, not to the root `{}`",
            tb.root_name(),
            b2.name(alpha.image_index(tb.root())),
            tb2.root_name()
        )));
    }
    let g = graft(a, leaf, b)?;
    let g2 = graft(a, leaf, b2)?;
    let rename = |renaming: &BTreeMap<String, String>, name: &str| -> String {
        renaming
            .get(name)
            .cloned()
            .unwrap_or_else(|| name.to_string())
    };
    let mut assignment: BTreeMap<String, String> =
        a.carrier().iter().map(|x| (x.clone(), x.clone())).collect();
    for y in b.carrier() {
        let image = alpha.apply(y).expect("total");
        assignment.insert(rename(&g.renaming, y), rename(&g2.renaming, image));
    }
    MonotoneMap::new(Arc::new(g.poset), Arc::new(g2.poset), &assignment)
}

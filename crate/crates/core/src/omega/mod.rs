//! The dendroidal category: subtrees, face and degeneracy maps, and the
//! factorization of every arrow into degeneracies, an isomorphism and faces.
//!
//! Faces and degeneracies are literal: a face is the inclusion of a maximal
//! subtree (same element names), and a degeneracy collapses a unary vertex
//! onto its child, keeping the child's name.

mod faces;
mod factor;
mod maps;
mod subtrees;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::broad::{saturate, BroadPoset, BroadWord, Flavour, Pair};
use crate::error::Result;

pub use faces::{
    classify_maximal, degeneracies, degeneracy, faces, inner_face, outer_face, root_face,
};
pub use factor::{factorize, Factorization};
pub use maps::{classify_map, graft_map, MapKind};
pub use subtrees::{enumerate_subtrees, maximal_subtrees, DEFAULT_SUBTREE_CAP};

/// How a maximal subtree sits inside its tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceKind {
    /// The inner edge `edge` is removed, merging two vertices.
    InnerFace { edge: String },
    /// The vertex `children ≤ edge`, whose children are all leaves (or which
    /// is a stump), is pruned.
    OuterFace { children: BroadWord, edge: String },
    /// The root vertex is pruned, keeping the subtree above `branch`; every
    /// other child of the root is a leaf.
    RootFace { branch: String },
}

impl FaceKind {
    /// The edge naming the face, used to order faces.
    pub fn identifier(&self) -> &str {
        match self {
            FaceKind::InnerFace { edge } => edge,
            FaceKind::OuterFace { edge, .. } => edge,
            FaceKind::RootFace { branch } => branch,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            FaceKind::InnerFace { .. } => 0,
            FaceKind::OuterFace { .. } => 1,
            FaceKind::RootFace { .. } => 2,
        }
    }

    /// Faces are tried by identifier, then inner before outer before root.
    pub(crate) fn order_key(&self) -> (&str, u8) {
        (self.identifier(), self.rank())
    }
}

impl fmt::Display for FaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceKind::InnerFace { edge } => write!(f, "inner face at {edge}"),
            FaceKind::OuterFace { children, edge } => {
                write!(f, "outer face pruning {children} ≤ {edge}")
            }
            FaceKind::RootFace { branch } => write!(f, "root face onto {branch}"),
        }
    }
}

/// The broad poset generated by `pairs` on a sorted carrier, failing if the
/// closure would identify elements.
pub(crate) fn regenerate(
    flavour: Flavour,
    carrier: Vec<String>,
    pairs: Vec<Pair>,
) -> Result<BroadPoset> {
    let n = carrier.len();
    let closed = saturate(flavour, n, pairs, n.max(1))?;
    Ok(BroadPoset::from_indexed(flavour, carrier, closed))
}

//! Broad posets, dendroidally ordered sets, and the dendroidal category.
//!
//! A *broad poset* relates words of elements to single elements, the way an
//! operad relates a list of inputs to an output. Finite broad posets satisfying
//! three extra axioms are exactly trees (with leaves and stumps), and monotone
//! maps between them are the arrows of the dendroidal category.
//!
//! The crate is organised bottom-up:
//!
//! * [`broad`]: words, broad relations, closures, monotone maps and the
//!   monoidal structure (products, tensor products, internal homs, pushouts).
//! * [`dendro`]: the tree axioms and the structure they imply (root, children,
//!   parents, joins, vertices, degree, subtrees).
//! * [`trees`]: the tree term language, the codec between terms and broad
//!   posets, grafting, canonical codes and exhaustive enumeration.
//! * [`omega`]: subtrees, face and degeneracy maps, and the factorization of
//!   every arrow into degeneracies, an isomorphism, and faces.
//!
//! Every element is named by a string. Carriers are kept sorted by name, and
//! commutative words are sorted by the same order, so equality of broad posets
//! is structural.

#![allow(clippy::needless_range_loop)]

pub mod broad;
pub mod dendro;
mod error;
pub mod iso;
pub mod json;
pub mod omega;
pub mod trees;

pub use broad::{
    BroadPoset, BroadRelation, BroadWord, Flavour, Generated, MonotoneMap, ValidationReport,
};
pub use dendro::{DendroReport, EdgeClassification, Tree};
pub use error::{Error, Result};
pub use omega::{FaceKind, Factorization, MapKind};
pub use trees::{CanonicalCode, TreeTerm};

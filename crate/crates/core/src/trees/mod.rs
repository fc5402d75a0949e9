//! Tree terms, the codec between terms and dendroidally ordered sets,
//! grafting, canonical codes, and exhaustive enumeration.

mod canonical;
mod codec;
mod enumerate;
mod graft;
mod term;

pub use canonical::{are_isomorphic, canonical_code, tree_isomorphism, CanonicalCode};
pub use codec::{to_broad, to_term};
pub use enumerate::{enumerate_trees, enumerate_trees_with_cap, DEFAULT_TREE_CAP};
pub use graft::{full_graft, graft, Grafted};
pub use term::{parse_term, print_term, TreeTerm};

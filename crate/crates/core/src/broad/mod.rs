//! Finite broad relations and broad posets in both flavours.

mod closure;
mod monoidal;
mod monotone;
mod poset;
mod pushout;
mod relation;
mod sigma;
mod word;

pub use closure::{generate_broad_poset, Generated};
pub use monoidal::{internal_hom, map_name, pair_name, product, tensor, InternalHom, Product};
pub use monotone::{count_monotone, enumerate_monotone, is_monotone, MonotoneMap, DEFAULT_BUDGET};
pub use poset::{embed_poset, underlying_poset, FinitePoset};
pub use pushout::{pushout, Pushout};
pub use relation::{BroadPoset, BroadRelation, Pair, ValidationReport};
pub use sigma::{abelianize, forget_symmetry};
pub use word::{BroadWord, Flavour};

pub(crate) use closure::saturate;
pub(crate) use word::normalize;

use thiserror::Error;

use crate::broad::Flavour;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("closure produced a word of length {length}, above the bound {bound}")]
    ClosureOverflow { length: usize, bound: usize },
    #[error("unknown element `{0}`")]
    Identifier(String),
    #[error("flavour mismatch: {0} vs {1}")]
    FlavourMismatch(Flavour, Flavour),
    #[error("search space of {size} candidates exceeds the budget of {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error("generated relation identifies `{0}` with `{1}` beyond the set-level pushout")]
    Collapse(String, String),
    #[error("not a broad poset: {0}")]
    NotABroadPoset(String),
    #[error("not dendroidally ordered: {0}")]
    NotDendroidal(String),
    #[error("the relation is not finitely representable: {0}")]
    Unrepresentable(String),
    #[error("`{0}` is the root and has no parent")]
    NoParent(String),
    #[error("`{0}` is not a leaf")]
    NotALeaf(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("edge `{0}` occurs more than once")]
    DuplicateEdge(String),
    #[error("not monotone: {0}")]
    NotMonotone(String),
    #[error("map is not total: `{0}` has no image")]
    NotTotal(String),
    #[error("codomain of the first map is not the domain of the second")]
    DomainMismatch,
    #[error("not a maximal subtree: {0}")]
    NotMaximal(String),
    #[error("`{0}` is not an inner edge")]
    NotInnerEdge(String),
    #[error("{0} is not an outer cluster")]
    NotOuterCluster(String),
    #[error("no root face with branch `{0}`")]
    NoRootFace(String),
    #[error("{0} is not a unary vertex")]
    NotUnaryVertex(String),
    #[error("grafting is not defined: {0}")]
    GraftUndefined(String),
}

pub type Result<T> = std::result::Result<T, Error>;

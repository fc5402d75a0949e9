use super::closure::generate_broad_poset;
use super::monoidal::distinct_permutations;
use super::relation::{BroadPoset, BroadRelation, Pair};
use super::word::Flavour;
use crate::error::{Error, Result};

/// Commutative broad poset obtained by reading every source word as a
/// multiset.
pub fn abelianize(a: &BroadPoset, max_word_len: usize) -> Result<BroadPoset> {
    if a.flavour() != Flavour::Planar {
        return Err(Error::FlavourMismatch(a.flavour(), Flavour::Planar));
    }
    let rel = BroadRelation::from_indexed(
        Flavour::Commutative,
        a.carrier().to_vec(),
        a.pairs().cloned(),
    );
    let generated = generate_broad_poset(&rel, max_word_len)?;
    if let Some((x, y)) = generated.collapsed.iter().next() {
        return Err(Error::Collapse(x.clone(), y.clone()));
    }
    Ok(generated.poset)
}

/// Planar broad poset relating every ordering of each source multiset.
pub fn forget_symmetry(a: &BroadPoset) -> Result<BroadPoset> {
    if a.flavour() != Flavour::Commutative {
        return Err(Error::FlavourMismatch(a.flavour(), Flavour::Commutative));
    }
    let pairs = a.pairs().flat_map(|p| {
        distinct_permutations(&p.source)
            .into_iter()
            .map(move |w| Pair::new(w, p.target))
    });
    Ok(BroadPoset::from_indexed(
        Flavour::Planar,
        a.carrier().to_vec(),
        pairs,
    ))
}

use std::collections::BTreeSet;
use std::sync::Arc;

use super::closure::generate_broad_poset;
use super::monotone::{enumerate_monotone, MonotoneMap};
use super::relation::{BroadPoset, BroadRelation, Pair};
use super::word::{normalize, Flavour};
use crate::error::{Error, Result};

/// Name of the element `(a, b)` of `A × B` or `A ⊗ B`.
pub fn pair_name(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// The carrier `A × B`, sorted by name, with `index[i][j]` the position of
/// `(aᵢ, bⱼ)`.
fn pair_carrier(a: &BroadPoset, b: &BroadPoset) -> (Vec<String>, Vec<Vec<usize>>) {
    let mut named: Vec<(String, usize, usize)> = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.carrier().iter().enumerate() {
        for (j, y) in b.carrier().iter().enumerate() {
            named.push((pair_name(x, y), i, j));
        }
    }
    named.sort();
    let mut index = vec![vec![0; b.len()]; a.len()];
    for (pos, (_, i, j)) in named.iter().enumerate() {
        index[*i][*j] = pos;
    }
    (named.into_iter().map(|(n, _, _)| n).collect(), index)
}

fn check_flavours(a: &BroadPoset, b: &BroadPoset) -> Result<Flavour> {
    if a.flavour() != b.flavour() {
        return Err(Error::FlavourMismatch(a.flavour(), b.flavour()));
    }
    Ok(a.flavour())
}

/// The cartesian product with its projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub poset: Arc<BroadPoset>,
    pub left: MonotoneMap,
    pub right: MonotoneMap,
}

/// `A × B`: a word of pairs is below `(a, b)` exactly when both coordinate
/// words are.
pub fn product(a: &Arc<BroadPoset>, b: &Arc<BroadPoset>) -> Result<Product> {
    let flavour = check_flavours(a, b)?;
    let (carrier, index) = pair_carrier(a, b);
    let with_reflexive = |p: &BroadPoset| -> Vec<Pair> {
        (0..p.len())
            .map(|x| Pair::new(vec![x], x))
            .chain(p.pairs().cloned())
            .collect()
    };
    let (pa, pb) = (with_reflexive(a), with_reflexive(b));
    let mut pairs = BTreeSet::new();
    for u in &pa {
        for v in pb.iter().filter(|v| v.source.len() == u.source.len()) {
            if u.is_reflexive() && v.is_reflexive() {
                continue;
            }
            let arrangements = match flavour {
                Flavour::Planar => vec![v.source.clone()],
                Flavour::Commutative => distinct_permutations(&v.source),
            };
            for w in arrangements {
                let mut source: Vec<usize> = u
                    .source
                    .iter()
                    .zip(&w)
                    .map(|(&x, &y)| index[x][y])
                    .collect();
                normalize(flavour, &mut source);
                pairs.insert(Pair::new(source, index[u.target][v.target]));
            }
        }
    }
    let poset = Arc::new(BroadPoset::from_indexed(flavour, carrier, pairs));
    let mut left = vec![0; poset.len()];
    let mut right = vec![0; poset.len()];
    for (i, row) in index.iter().enumerate() {
        for (j, &pos) in row.iter().enumerate() {
            left[pos] = i;
            right[pos] = j;
        }
    }
    Ok(Product {
        left: MonotoneMap::from_indices_unchecked(poset.clone(), a.clone(), left),
        right: MonotoneMap::from_indices_unchecked(poset.clone(), b.clone(), right),
        poset,
    })
}

/// All distinct orderings of a word, in lexicographic order.
pub(crate) fn distinct_permutations(word: &[usize]) -> Vec<Vec<usize>> {
    let mut current = word.to_vec();
    current.sort_unstable();
    let mut out = vec![current.clone()];
    // Standard next-permutation iteration visits each distinct ordering once.
    loop {
        let Some(i) = (1..current.len())
            .rev()
            .find(|&i| current[i - 1] < current[i])
        else {
            return out;
        };
        let j = (i..current.len())
            .rev()
            .find(|&j| current[j] > current[i - 1])
            .expect("successor exists");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// `A ⊗ B`, generated by `(a,b₁)⋯(a,bₙ) ≤ (a,b)` for `b₁⋯bₙ ≤ b` and
/// `(a₁,b)⋯(aₘ,b) ≤ (a,b)` for `a₁⋯aₘ ≤ a`.
pub fn tensor(a: &BroadPoset, b: &BroadPoset, max_word_len: usize) -> Result<BroadPoset> {
    let flavour = check_flavours(a, b)?;
    let (carrier, index) = pair_carrier(a, b);
    let mut generators = Vec::new();
    for x in 0..a.len() {
        for p in b.pairs() {
            generators.push(Pair::new(
                p.source.iter().map(|&y| index[x][y]).collect(),
                index[x][p.target],
            ));
        }
    }
    for y in 0..b.len() {
        for p in a.pairs() {
            generators.push(Pair::new(
                p.source.iter().map(|&x| index[x][y]).collect(),
                index[p.target][y],
            ));
        }
    }
    let rel = BroadRelation::from_indexed(flavour, carrier, generators);
    let generated = generate_broad_poset(&rel, max_word_len)?;
    debug_assert!(generated.is_faithful());
    Ok(generated.poset)
}

/// The internal hom `[A, B]` with the monotone map behind each element.
#[derive(Debug, Clone)]
pub struct InternalHom {
    pub poset: Arc<BroadPoset>,
    /// `maps[i]` is the map named by carrier element `i`.
    pub maps: Vec<MonotoneMap>,
}

/// Element name of a map in `[A, B]`.
pub fn map_name(f: &MonotoneMap) -> String {
    let parts: Vec<String> = f
        .assignment()
        .into_iter()
        .map(|(x, y)| format!("{x}={y}"))
        .collect();
    format!("[{}]", parts.join(","))
}

/// `[A, B]`: carrier `Hom(A, B)`, with `f₁⋯fₙ ≤ f` when
/// `f₁(a)⋯fₙ(a) ≤ f(a)` for every `a`. Words are considered up to the
/// longest source length of `B` (at least 1).
pub fn internal_hom(a: &Arc<BroadPoset>, b: &Arc<BroadPoset>, budget: u128) -> Result<InternalHom> {
    let flavour = check_flavours(a, b)?;
    if a.is_empty() {
        return Err(Error::Unrepresentable(
            "maps out of the empty broad poset relate words of every length".into(),
        ));
    }
    let mut maps = enumerate_monotone(a, b, budget)?;
    maps.sort_by_cached_key(map_name);
    let carrier: Vec<String> = maps.iter().map(map_name).collect();
    let h = maps.len();
    let max_len = b.max_source_len().max(1);
    let size = (h as u128).checked_pow(max_len as u32).unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }

    let mut pairs = Vec::new();
    let mut images = vec![Vec::new(); a.len()];
    for len in 0..=max_len {
        for word in words(flavour, h, len) {
            for (x, image) in images.iter_mut().enumerate() {
                image.clear();
                image.extend(word.iter().map(|&f| maps[f].image_index(x)));
                normalize(flavour, image);
            }
            for (t, target) in maps.iter().enumerate() {
                if len == 1 && word[0] == t {
                    continue;
                }
                let related = images
                    .iter()
                    .enumerate()
                    .all(|(x, image)| b.holds(image, target.image_index(x)));
                if related {
                    pairs.push(Pair::new(word.clone(), t));
                }
            }
        }
    }
    Ok(InternalHom {
        poset: Arc::new(BroadPoset::from_indexed(flavour, carrier, pairs)),
        maps,
    })
}

/// All words of the given length over `0..n`: sequences in the planar
/// flavour, sorted sequences in the commutative one.
fn words(flavour: Flavour, n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn go(
        flavour: Flavour,
        n: usize,
        len: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        let start = match flavour {
            Flavour::Commutative => current.last().copied().unwrap_or(0),
            Flavour::Planar => 0,
        };
        for x in start..n {
            current.push(x);
            go(flavour, n, len, current, out);
            current.pop();
        }
    }
    go(flavour, n, len, &mut current, &mut out);
    out
}

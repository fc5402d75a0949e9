use std::collections::BTreeSet;
use std::sync::Arc;

use super::closure::generate_broad_poset;
use super::monotone::MonotoneMap;
use super::relation::{BroadPoset, BroadRelation, Pair};
use crate::error::{Error, Result};

/// A pushout square `A → P ← B` under a common `C`.
#[derive(Debug, Clone)]
pub struct Pushout {
    pub poset: Arc<BroadPoset>,
    pub left: MonotoneMap,
    pub right: MonotoneMap,
}

/// Pushout of `f: C → A` and `g: C → B`.
///
/// Elements of the set-level pushout are named by the least `A`-name in their
/// class, or failing that the least `B`-name; a `B`-only name that clashes
/// with another class gets primes appended. The relation is generated from
/// the images of both relations; if generation identifies further elements
/// the result is reported as [`Error::Collapse`].
pub fn pushout(f: &MonotoneMap, g: &MonotoneMap, max_word_len: usize) -> Result<Pushout> {
    if f.domain() != g.domain() {
        return Err(Error::DomainMismatch);
    }
    let (a, b) = (f.codomain(), g.codomain());
    if a.flavour() != b.flavour() {
        return Err(Error::FlavourMismatch(a.flavour(), b.flavour()));
    }
    let (na, nb) = (a.len(), b.len());
    let mut classes = UnionFind::new(na + nb);
    for c in 0..f.domain().len() {
        classes.union(f.image_index(c), na + g.image_index(c));
    }

    // Representative slot of each class: least A member, else least B member.
    let mut leader = vec![usize::MAX; na + nb];
    for x in 0..na + nb {
        let root = classes.find(x);
        if leader[root] == usize::MAX {
            leader[root] = x;
        }
    }
    let mut taken: BTreeSet<String> = BTreeSet::new();
    let mut class_name = vec![String::new(); na + nb];
    for x in 0..na {
        if leader[classes.find(x)] == x {
            class_name[x] = a.name(x).to_string();
            taken.insert(a.name(x).to_string());
        }
    }
    for y in 0..nb {
        let x = na + y;
        if leader[classes.find(x)] == x {
            let mut name = b.name(y).to_string();
            while taken.contains(&name) {
                name.push('\'');
            }
            taken.insert(name.clone());
            class_name[x] = name;
        }
    }
    let carrier: Vec<String> = taken.into_iter().collect();
    let slot: Vec<usize> = (0..na + nb)
        .map(|x| {
            let name = &class_name[leader[classes.find(x)]];
            carrier.binary_search(name).expect("named class")
        })
        .collect();

    let generators = a
        .pairs()
        .map(|p| Pair::new(p.source.iter().map(|&l| slot[l]).collect(), slot[p.target]))
        .chain(b.pairs().map(|p| {
            Pair::new(
                p.source.iter().map(|&l| slot[na + l]).collect(),
                slot[na + p.target],
            )
        }));
    let rel = BroadRelation::from_indexed(a.flavour(), carrier, generators);
    let generated = generate_broad_poset(&rel, max_word_len)?;
    if let Some((x, y)) = generated.collapsed.iter().next() {
        return Err(Error::Collapse(x.clone(), y.clone()));
    }
    let poset = Arc::new(generated.poset);
    let left = MonotoneMap::from_indices_unchecked(a.clone(), poset.clone(), slot[..na].to_vec());
    let right = MonotoneMap::from_indices_unchecked(b.clone(), poset.clone(), slot[na..].to_vec());
    Ok(Pushout { poset, left, right })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            // Keep the smaller index as root so leaders are stable.
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            self.parent[hi] = lo;
        }
    }
}

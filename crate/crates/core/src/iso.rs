//! Isomorphism search between broad posets.
//!
//! Equality of broad posets is on the nose; isomorphism is a bijection of
//! carriers carrying the relation onto the relation. The search assigns
//! elements in carrier order and tries images in carrier order, so the first
//! witness found is the lexicographically least one.

use std::sync::Arc;

use crate::broad::{normalize, BroadPoset, MonotoneMap, Pair};

/// Per-element data preserved by every isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Signature {
    // Source lengths of the pairs with this target.
    as_target: Vec<usize>,
    // (source length, multiplicity) for each pair containing this element.
    as_letter: Vec<(usize, usize)>,
    extra: String,
}

fn signatures(p: &BroadPoset, extra: Option<&[String]>) -> Vec<Signature> {
    let mut sigs: Vec<Signature> = (0..p.len())
        .map(|i| Signature {
            as_target: Vec::new(),
            as_letter: Vec::new(),
            extra: extra.map(|e| e[i].clone()).unwrap_or_default(),
        })
        .collect();
    for pair in p.pairs() {
        sigs[pair.target].as_target.push(pair.source.len());
        let mut letters = pair.source.clone();
        letters.sort_unstable();
        let mut i = 0;
        while i < letters.len() {
            let j = letters[i..]
                .iter()
                .take_while(|&&l| l == letters[i])
                .count();
            sigs[letters[i]].as_letter.push((pair.source.len(), j));
            i += j;
        }
    }
    for s in &mut sigs {
        s.as_target.sort_unstable();
        s.as_letter.sort_unstable();
    }
    sigs
}

/// The lexicographically least isomorphism `a → b`, as an index assignment.
pub fn find_isomorphism(a: &BroadPoset, b: &BroadPoset) -> Option<Vec<usize>> {
    find_isomorphism_with(a, b, None)
}

/// As [`find_isomorphism`], additionally requiring elements to agree on the
/// given invariants (`extra.0[i]` for `a`, `extra.1[j]` for `b`). Callers
/// must only pass invariants preserved by every isomorphism.
pub fn find_isomorphism_with(
    a: &BroadPoset,
    b: &BroadPoset,
    extra: Option<(&[String], &[String])>,
) -> Option<Vec<usize>> {
    if a.flavour() != b.flavour() || a.len() != b.len() || a.pair_count() != b.pair_count() {
        return None;
    }
    let sa = signatures(a, extra.map(|e| e.0));
    let sb = signatures(b, extra.map(|e| e.1));
    let mut sorted_a = sa.clone();
    let mut sorted_b = sb.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return None;
    }
    let mut checks: Vec<Vec<&Pair>> = vec![Vec::new(); a.len()];
    for p in a.pairs() {
        let last = p
            .source
            .iter()
            .copied()
            .chain([p.target])
            .max()
            .unwrap_or(0);
        checks[last].push(p);
    }
    let candidates: Vec<Vec<usize>> = sa
        .iter()
        .map(|s| (0..b.len()).filter(|&j| sb[j] == *s).collect())
        .collect();
    let mut search = Search {
        b,
        checks,
        candidates,
        assignment: vec![usize::MAX; a.len()],
        used: vec![false; b.len()],
        buf: Vec::new(),
    };
    search.run(0).then_some(search.assignment)
}

struct Search<'a> {
    b: &'a BroadPoset,
    checks: Vec<Vec<&'a Pair>>,
    candidates: Vec<Vec<usize>>,
    assignment: Vec<usize>,
    used: Vec<bool>,
    buf: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.assignment.len() {
            return true;
        }
        for k in 0..self.candidates[depth].len() {
            let j = self.candidates[depth][k];
            if self.used[j] {
                continue;
            }
            self.assignment[depth] = j;
            if self.consistent(depth) {
                self.used[j] = true;
                if self.run(depth + 1) {
                    return true;
                }
                self.used[j] = false;
            }
        }
        false
    }

    fn consistent(&mut self, depth: usize) -> bool {
        let flavour = self.b.flavour();
        for p in &self.checks[depth] {
            self.buf.clear();
            self.buf
                .extend(p.source.iter().map(|&l| self.assignment[l]));
            normalize(flavour, &mut self.buf);
            if !self.b.holds(&self.buf, self.assignment[p.target]) {
                return false;
            }
        }
        true
    }
}

pub fn are_isomorphic(a: &BroadPoset, b: &BroadPoset) -> bool {
    find_isomorphism(a, b).is_some()
}

/// The lexicographically least isomorphism as a monotone map.
pub fn isomorphism(a: &Arc<BroadPoset>, b: &Arc<BroadPoset>) -> Option<MonotoneMap> {
    let assignment = find_isomorphism(a, b)?;
    MonotoneMap::from_indices(a.clone(), b.clone(), assignment).ok()
}

/// Whether `f` is an isomorphism: bijective and mapping the relation onto
/// the codomain's relation.
pub fn is_isomorphism(f: &MonotoneMap) -> bool {
    f.is_isomorphism()
}

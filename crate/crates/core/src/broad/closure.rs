use std::collections::{BTreeMap, HashSet, VecDeque};

use super::relation::{substitute, BroadPoset, BroadRelation, Pair};
use super::word::{normalize, Flavour};
use crate::error::{Error, Result};

/// The broad poset generated by a relation, with the elements that the
/// closure identified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub poset: BroadPoset,
    /// Maps every collapsed element to its class representative (the least
    /// name in its class). Representatives themselves are not listed.
    pub collapsed: BTreeMap<String, String>,
}

impl Generated {
    pub fn is_faithful(&self) -> bool {
        self.collapsed.is_empty()
    }

    /// The representative an original element ended up as.
    pub fn representative<'a>(&'a self, name: &'a str) -> &'a str {
        self.collapsed.get(name).map(String::as_str).unwrap_or(name)
    }
}

/// Reflexive-transitive closure of `rel`, quotiented by mutual unary
/// comparability.
pub fn generate_broad_poset(rel: &BroadRelation, max_word_len: usize) -> Result<Generated> {
    let closed = saturate(rel.flavour(), rel.len(), rel.pairs().cloned(), max_word_len)?;
    Ok(quotient(rel.flavour(), rel.carrier(), closed))
}

/// Transitive closure over index pairs; reflexive pairs are never stored.
pub(crate) fn saturate(
    flavour: Flavour,
    n: usize,
    generators: impl IntoIterator<Item = Pair>,
    max_word_len: usize,
) -> Result<Vec<Pair>> {
    let mut state = Saturation {
        flavour,
        max_word_len,
        seen: HashSet::new(),
        list: Vec::new(),
        by_target: vec![Vec::new(); n],
        containing: vec![Vec::new(); n],
        queue: VecDeque::new(),
    };
    for p in generators {
        state.add(p.source, p.target)?;
    }
    while let Some(id) = state.queue.pop_front() {
        let pair = state.list[id].clone();
        // Substitute known pairs into the letters of the new pair.
        for pos in 0..pair.source.len() {
            let letter = pair.source[pos];
            if flavour == Flavour::Commutative && pos > 0 && pair.source[pos - 1] == letter {
                continue;
            }
            let inner: Vec<usize> = state.by_target[letter].clone();
            for q in inner {
                let word = substitute(&pair.source, pos, &state.list[q].source);
                state.add(word, pair.target)?;
            }
        }
        // Substitute the new pair into known pairs that use its target.
        let outer: Vec<usize> = state.containing[pair.target].clone();
        for q in outer {
            let host = state.list[q].clone();
            for pos in 0..host.source.len() {
                if host.source[pos] != pair.target {
                    continue;
                }
                let word = substitute(&host.source, pos, &pair.source);
                state.add(word, host.target)?;
                if flavour == Flavour::Commutative {
                    break;
                }
            }
        }
    }
    let mut pairs = state.list;
    pairs.sort();
    Ok(pairs)
}

struct Saturation {
    flavour: Flavour,
    max_word_len: usize,
    seen: HashSet<Pair>,
    list: Vec<Pair>,
    by_target: Vec<Vec<usize>>,
    containing: Vec<Vec<usize>>,
    queue: VecDeque<usize>,
}

impl Saturation {
    fn add(&mut self, mut source: Vec<usize>, target: usize) -> Result<()> {
        normalize(self.flavour, &mut source);
        if source.len() == 1 && source[0] == target {
            return Ok(());
        }
        if source.len() > self.max_word_len {
            return Err(Error::ClosureOverflow {
                length: source.len(),
                bound: self.max_word_len,
            });
        }
        let pair = Pair::new(source, target);
        if self.seen.contains(&pair) {
            return Ok(());
        }
        let id = self.list.len();
        self.by_target[target].push(id);
        let mut letters = pair.source.clone();
        letters.sort_unstable();
        letters.dedup();
        for l in letters {
            self.containing[l].push(id);
        }
        self.seen.insert(pair.clone());
        self.list.push(pair);
        self.queue.push_back(id);
        Ok(())
    }
}

/// Identifies mutually comparable elements, keeping the least name of each
/// class. `pairs` must be transitively closed.
fn quotient(flavour: Flavour, carrier: &[String], pairs: Vec<Pair>) -> Generated {
    let n = carrier.len();
    let unary: HashSet<(usize, usize)> = pairs
        .iter()
        .filter(|p| p.source.len() == 1)
        .map(|p| (p.source[0], p.target))
        .collect();
    let rep: Vec<usize> = (0..n)
        .map(|x| {
            (0..x)
                .find(|&y| unary.contains(&(x, y)) && unary.contains(&(y, x)))
                .unwrap_or(x)
        })
        .collect();
    if rep.iter().enumerate().all(|(i, &r)| i == r) {
        return Generated {
            poset: BroadPoset::from_indexed(flavour, carrier.to_vec(), pairs),
            collapsed: BTreeMap::new(),
        };
    }
    let mut new_index = vec![usize::MAX; n];
    let mut new_carrier = Vec::new();
    let mut collapsed = BTreeMap::new();
    for x in 0..n {
        if rep[x] == x {
            new_index[x] = new_carrier.len();
            new_carrier.push(carrier[x].clone());
        } else {
            collapsed.insert(carrier[x].clone(), carrier[rep[x]].clone());
        }
    }
    let remapped = pairs.into_iter().map(|p| {
        Pair::new(
            p.source.iter().map(|&l| new_index[rep[l]]).collect(),
            new_index[rep[p.target]],
        )
    });
    Generated {
        poset: BroadPoset::from_indexed(flavour, new_carrier, remapped),
        collapsed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::broad::BroadWord;

    fn rel(flavour: Flavour, carrier: &[&str], pairs: &[(&[&str], &str)]) -> BroadRelation {
        BroadRelation::new(
            flavour,
            carrier.iter().copied(),
            pairs.iter().map(|(w, t)| (w.to_vec(), *t)),
        )
        .unwrap()
    }

    #[test]
    fn corolla_generates_itself() {
        let r = rel(
            Flavour::Commutative,
            &["r", "l1", "l2"],
            &[(&["l1", "l2"], "r")],
        );
        let g = generate_broad_poset(&r, 3).unwrap();
        assert!(g.is_faithful());
        assert_eq!(g.poset.pair_count(), 1);
    }

    #[test]
    fn empty_generators_give_a_point() {
        let r = rel(Flavour::Planar, &["x"], &[]);
        let g = generate_broad_poset(&r, 1).unwrap();
        assert_eq!(g.poset, BroadPoset::star(Flavour::Planar, "x"));
    }

    #[test]
    fn stump_substitution_adds_unary_pair() {
        let r = rel(
            Flavour::Commutative,
            &["r", "a", "b"],
            &[(&["a", "b"], "r"), (&[], "a")],
        );
        let g = generate_broad_poset(&r, 3).unwrap();
        let p = &g.poset;
        assert!(p
            .holds_named(&BroadWord::new(Flavour::Commutative, ["b"]), "r")
            .unwrap());
        assert_eq!(p.pair_count(), 3);
        assert!(p.as_relation().validate().is_valid());
    }

    #[test]
    fn mutual_unary_pairs_collapse_to_least_name() {
        let r = rel(
            Flavour::Commutative,
            &["x", "y", "z"],
            &[(&["y"], "x"), (&["x"], "y"), (&["z"], "y")],
        );
        let g = generate_broad_poset(&r, 3).unwrap();
        assert_eq!(g.collapsed.get("y").map(String::as_str), Some("x"));
        assert_eq!(g.poset.carrier(), &["x".to_string(), "z".to_string()]);
        assert_eq!(g.poset.pair_count(), 1);
    }

    #[test]
    fn unbounded_growth_overflows() {
        // a·a ≤ a generates aⁿ ≤ a for every n.
        let r = rel(Flavour::Planar, &["a"], &[(&["a", "a"], "a")]);
        let err = generate_broad_poset(&r, 5).unwrap_err();
        assert!(matches!(err, Error::ClosureOverflow { bound: 5, .. }));
    }
}

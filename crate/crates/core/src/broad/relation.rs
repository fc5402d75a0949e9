use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::{normalize, BroadWord, Flavour};
use crate::error::{Error, Result};

/// A relation pair `source ≤ target`, stored by carrier index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub source: Vec<usize>,
    pub target: usize,
}

impl Pair {
    pub fn new(source: Vec<usize>, target: usize) -> Self {
        Pair { source, target }
    }

    pub fn is_reflexive(&self) -> bool {
        self.source.len() == 1 && self.source[0] == self.target
    }

    /// True when no letter occurs twice in the source.
    pub fn is_simple(&self) -> bool {
        let mut seen = self.source.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

/// Substitutes `inner` for the letter at `pos` of `outer`.
pub(crate) fn substitute(outer: &[usize], pos: usize, inner: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(outer.len() + inner.len() - 1);
    out.extend_from_slice(&outer[..pos]);
    out.extend_from_slice(inner);
    out.extend_from_slice(&outer[pos + 1..]);
    out
}

/// Finite broad-relation data with no axioms assumed.
///
/// The carrier is sorted by name and deduplicated; reflexive pairs are
/// dropped on construction since every algorithm treats them as present.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BroadRelation {
    flavour: Flavour,
    carrier: Vec<String>,
    pairs: BTreeSet<Pair>,
}

impl BroadRelation {
    pub fn new<C, P, W, T>(flavour: Flavour, carrier: C, pairs: P) -> Result<Self>
    where
        C: IntoIterator,
        C::Item: Into<String>,
        P: IntoIterator<Item = (W, T)>,
        W: IntoIterator,
        W::Item: AsRef<str>,
        T: AsRef<str>,
    {
        let mut carrier: Vec<String> = carrier.into_iter().map(Into::into).collect();
        carrier.sort();
        carrier.dedup();
        let lookup = |name: &str| {
            carrier
                .binary_search_by(|c| c.as_str().cmp(name))
                .map_err(|_| Error::Identifier(name.to_string()))
        };
        let mut indexed = Vec::new();
        for (source, target) in pairs {
            let source = source
                .into_iter()
                .map(|l| lookup(l.as_ref()))
                .collect::<Result<Vec<_>>>()?;
            indexed.push(Pair::new(source, lookup(target.as_ref())?));
        }
        Ok(Self::from_indexed(flavour, carrier, indexed))
    }

    /// `carrier` must already be sorted and free of duplicates.
    pub(crate) fn from_indexed(
        flavour: Flavour,
        carrier: Vec<String>,
        pairs: impl IntoIterator<Item = Pair>,
    ) -> Self {
        debug_assert!(carrier.windows(2).all(|w| w[0] < w[1]));
        let pairs = pairs
            .into_iter()
            .map(|mut p| {
                normalize(flavour, &mut p.source);
                p
            })
            .filter(|p| !p.is_reflexive())
            .collect();
        BroadRelation {
            flavour,
            carrier,
            pairs,
        }
    }

    pub fn flavour(&self) -> Flavour {
        self.flavour
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.carrier[index]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.carrier.binary_search_by(|c| c.as_str().cmp(name)).ok()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index(name)
            .ok_or_else(|| Error::Identifier(name.to_string()))
    }

    pub fn pairs(&self) -> impl Iterator<Item = &Pair> + '_ {
        self.pairs.iter()
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn word(&self, indices: &[usize]) -> BroadWord {
        BroadWord::new(
            self.flavour,
            indices.iter().map(|&i| self.carrier[i].clone()),
        )
    }

    pub fn named_pairs(&self) -> Vec<(BroadWord, String)> {
        self.pairs
            .iter()
            .map(|p| (self.word(&p.source), self.carrier[p.target].clone()))
            .collect()
    }

    pub fn format_pair(&self, pair: &Pair) -> String {
        format!(
            "{} ≤ {}",
            self.word(&pair.source),
            self.carrier[pair.target]
        )
    }

    fn sources_by_target(&self) -> Vec<Vec<&[usize]>> {
        let mut by_target = vec![Vec::new(); self.carrier.len()];
        for p in &self.pairs {
            by_target[p.target].push(p.source.as_slice());
        }
        by_target
    }

    /// Checks transitivity, anti-symmetry and stratification.
    ///
    /// Transitivity is checked one substitution at a time, which suffices:
    /// simultaneous substitutions are iterated single ones.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let by_target = self.sources_by_target();

        let mut transitive = true;
        'outer: for p in &self.pairs {
            for (pos, &letter) in p.source.iter().enumerate() {
                for inner in &by_target[letter] {
                    let mut derived = substitute(&p.source, pos, inner);
                    normalize(self.flavour, &mut derived);
                    let derived = Pair::new(derived, p.target);
                    if !derived.is_reflexive() && !self.pairs.contains(&derived) {
                        transitive = false;
                        violations.push(format!(
                            "transitivity: {} and {} imply missing {}",
                            self.format_pair(p),
                            self.format_pair(&Pair::new(inner.to_vec(), letter)),
                            self.format_pair(&derived)
                        ));
                        if violations.len() >= 16 {
                            break 'outer;
                        }
                    }
                }
            }
        }

        let mut antisymmetric = true;
        for p in self.pairs.iter().filter(|p| p.source.len() == 1) {
            let (a, b) = (p.source[0], p.target);
            if a < b && self.pairs.contains(&Pair::new(vec![b], a)) {
                antisymmetric = false;
                violations.push(format!(
                    "anti-symmetry: {} ≤ {} and {} ≤ {}",
                    self.carrier[a], self.carrier[b], self.carrier[b], self.carrier[a]
                ));
            }
        }

        let desc = descendant_matrix(self.carrier.len(), self.pairs.iter());
        let mut stratified = true;
        for a in 0..self.carrier.len() {
            for b in a + 1..self.carrier.len() {
                if desc[a][b] && desc[b][a] {
                    stratified = false;
                    violations.push(format!(
                        "stratification: `{}` and `{}` are descendants of each other",
                        self.carrier[a], self.carrier[b]
                    ));
                }
            }
        }

        ValidationReport {
            transitive,
            antisymmetric,
            stratified,
            violations,
        }
    }
}

/// `m[b][a]` holds when `b` is a descendant of `a`; reflexive and
/// transitively closed.
pub(crate) fn descendant_matrix<'a>(
    n: usize,
    pairs: impl Iterator<Item = &'a Pair>,
) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    for p in pairs {
        for &b in &p.source {
            m[b][p.target] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                for j in 0..n {
                    if m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub transitive: bool,
    pub antisymmetric: bool,
    pub stratified: bool,
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.transitive && self.antisymmetric && self.stratified
    }
}

/// A finite broad poset: transitive, anti-symmetric, reflexive pairs implicit.
///
/// Equality is on the nose: same flavour, same carrier names, same pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BroadPoset {
    rel: BroadRelation,
    // Sorted source lists per target index.
    by_target: Vec<Vec<Vec<usize>>>,
}

impl BroadPoset {
    /// Validates `rel` and wraps it. Relations that are not transitively
    /// closed are rejected; use [`generate_broad_poset`](super::generate_broad_poset)
    /// to close them first.
    pub fn new(rel: BroadRelation) -> Result<Self> {
        let report = rel.validate();
        if !(report.transitive && report.antisymmetric) {
            return Err(Error::NotABroadPoset(report.violations.join("; ")));
        }
        Ok(Self::from_closed(rel))
    }

    pub(crate) fn from_closed(rel: BroadRelation) -> Self {
        let mut by_target = vec![Vec::new(); rel.len()];
        for p in &rel.pairs {
            by_target[p.target].push(p.source.clone());
        }
        BroadPoset { rel, by_target }
    }

    pub(crate) fn from_indexed(
        flavour: Flavour,
        carrier: Vec<String>,
        pairs: impl IntoIterator<Item = Pair>,
    ) -> Self {
        Self::from_closed(BroadRelation::from_indexed(flavour, carrier, pairs))
    }

    /// The single-element broad poset ⋆ whose only relation is reflexivity.
    pub fn star(flavour: Flavour, name: &str) -> Self {
        Self::from_indexed(flavour, vec![name.to_string()], [])
    }

    /// The n-corolla `leaves ≤ root`. Zero leaves gives the stump `ε ≤ root`.
    pub fn corolla(flavour: Flavour, root: &str, leaves: &[&str]) -> Result<Self> {
        let carrier = std::iter::once(root).chain(leaves.iter().copied());
        let rel = BroadRelation::new(flavour, carrier, [(leaves.to_vec(), root)])?;
        if rel.len() != leaves.len() + 1 {
            return Err(Error::NotABroadPoset(format!(
                "corolla names must be distinct: {root}, {}",
                leaves.join(", ")
            )));
        }
        Ok(Self::from_closed(rel))
    }

    pub fn as_relation(&self) -> &BroadRelation {
        &self.rel
    }

    pub fn into_relation(self) -> BroadRelation {
        self.rel
    }

    pub fn flavour(&self) -> Flavour {
        self.rel.flavour
    }

    pub fn carrier(&self) -> &[String] {
        &self.rel.carrier
    }

    pub fn len(&self) -> usize {
        self.rel.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rel.carrier.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.rel.carrier[index]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.rel.index(name)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.rel.index_of(name)
    }

    pub fn pairs(&self) -> impl Iterator<Item = &Pair> + '_ {
        self.rel.pairs.iter()
    }

    pub fn pair_count(&self) -> usize {
        self.rel.pairs.len()
    }

    pub fn named_pairs(&self) -> Vec<(BroadWord, String)> {
        self.rel.named_pairs()
    }

    pub fn word(&self, indices: &[usize]) -> BroadWord {
        self.rel.word(indices)
    }

    pub fn word_indices(&self, word: &BroadWord) -> Result<Vec<usize>> {
        let mut w = word
            .letters()
            .iter()
            .map(|l| self.index_of(l))
            .collect::<Result<Vec<_>>>()?;
        normalize(self.flavour(), &mut w);
        Ok(w)
    }

    /// Sources of the stored (non-reflexive) pairs with this target, sorted.
    pub fn sources(&self, target: usize) -> &[Vec<usize>] {
        &self.by_target[target]
    }

    /// Whether `source ≤ target`; `source` must already be normalized.
    pub fn holds(&self, source: &[usize], target: usize) -> bool {
        (source.len() == 1 && source[0] == target)
            || self.by_target[target]
                .binary_search_by(|s| s.as_slice().cmp(source))
                .is_ok()
    }

    pub fn holds_named(&self, word: &BroadWord, target: &str) -> Result<bool> {
        let w = self.word_indices(word)?;
        Ok(self.holds(&w, self.index_of(target)?))
    }

    /// No related word repeats a letter.
    pub fn is_simple(&self) -> bool {
        self.pairs().all(Pair::is_simple)
    }

    pub fn max_source_len(&self) -> usize {
        self.pairs().map(|p| p.source.len()).max().unwrap_or(0)
    }

    /// The induced order on words: `a ≤ b` when `b = b₁⋯bₙ` and `a` splits as
    /// `a₁⋯aₙ` with each `aᵢ ≤ bᵢ`.
    pub fn word_leq(&self, a: &[usize], b: &[usize]) -> bool {
        match self.flavour() {
            Flavour::Planar => self.word_leq_planar(a, b),
            Flavour::Commutative => {
                let mut a = a.to_vec();
                a.sort_unstable();
                self.word_leq_multiset(&a, b)
            }
        }
    }

    fn word_leq_planar(&self, a: &[usize], b: &[usize]) -> bool {
        let Some((&head, tail)) = b.split_first() else {
            return a.is_empty();
        };
        if a.first() == Some(&head) && self.word_leq_planar(&a[1..], tail) {
            return true;
        }
        self.sources(head)
            .iter()
            .any(|u| a.starts_with(u) && self.word_leq_planar(&a[u.len()..], tail))
    }

    fn word_leq_multiset(&self, a: &[usize], b: &[usize]) -> bool {
        let Some((&head, tail)) = b.split_first() else {
            return a.is_empty();
        };
        if let Ok(pos) = a.binary_search(&head) {
            let mut rest = a.to_vec();
            rest.remove(pos);
            if self.word_leq_multiset(&rest, tail) {
                return true;
            }
        }
        self.sources(head).iter().any(|u| {
            multiset_difference(a, u).is_some_and(|rest| self.word_leq_multiset(&rest, tail))
        })
    }

    /// The induced broad poset on a subset of the carrier.
    pub fn induced(&self, subset: &[usize]) -> BroadPoset {
        let mut keep = vec![false; self.len()];
        for &i in subset {
            keep[i] = true;
        }
        let mut remap = vec![usize::MAX; self.len()];
        let mut carrier = Vec::new();
        for i in 0..self.len() {
            if keep[i] {
                remap[i] = carrier.len();
                carrier.push(self.name(i).to_string());
            }
        }
        let pairs = self
            .pairs()
            .filter(|p| keep[p.target] && p.source.iter().all(|&l| keep[l]))
            .map(|p| {
                Pair::new(
                    p.source.iter().map(|&l| remap[l]).collect(),
                    remap[p.target],
                )
            });
        BroadPoset::from_indexed(self.flavour(), carrier, pairs)
    }

    pub fn induced_named<S: AsRef<str>>(&self, subset: &[S]) -> Result<BroadPoset> {
        let idx = subset
            .iter()
            .map(|s| self.index_of(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.induced(&idx))
    }

    /// Whether `self` sits inside `other` with the inclusion monotone:
    /// carrier contained and every pair of `self` holding in `other`.
    pub fn is_sub_poset_of(&self, other: &BroadPoset) -> bool {
        if self.flavour() != other.flavour() {
            return false;
        }
        let Some(map) = self
            .carrier()
            .iter()
            .map(|n| other.index(n))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        self.pairs().all(|p| {
            // Carriers are both sorted by name, so the index map is increasing
            // and commutative words stay sorted.
            let w: Vec<usize> = p.source.iter().map(|&l| map[l]).collect();
            other.holds(&w, map[p.target])
        })
    }

    pub fn descendant_matrix(&self) -> Vec<Vec<bool>> {
        descendant_matrix(self.len(), self.pairs())
    }

    /// Renames elements; `rename` must be injective.
    pub fn renamed(&self, rename: &BTreeMap<String, String>) -> BroadPoset {
        let new_names: Vec<String> = self
            .carrier()
            .iter()
            .map(|n| rename.get(n).cloned().unwrap_or_else(|| n.clone()))
            .collect();
        let mut sorted = new_names.clone();
        sorted.sort();
        let pos: Vec<usize> = new_names
            .iter()
            .map(|n| sorted.binary_search(n).expect("present"))
            .collect();
        let pairs = self
            .pairs()
            .map(|p| Pair::new(p.source.iter().map(|&l| pos[l]).collect(), pos[p.target]));
        BroadPoset::from_indexed(self.flavour(), sorted, pairs)
    }
}

/// `a − u` for sorted multiset `a`, if `u ⊆ a`.
pub(crate) fn multiset_difference(a: &[usize], u: &[usize]) -> Option<Vec<usize>> {
    let mut u = u.to_vec();
    u.sort_unstable();
    let mut rest = Vec::with_capacity(a.len());
    let mut j = 0;
    for &x in a {
        if j < u.len() && u[j] == x {
            j += 1;
        } else {
            rest.push(x);
        }
    }
    (j == u.len()).then_some(rest)
}

impl fmt::Display for BroadPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}", self.carrier().join(", "))?;
        let pairs: Vec<String> = self.pairs().map(|p| self.rel.format_pair(p)).collect();
        if !pairs.is_empty() {
            write!(f, " | {}", pairs.join(", "))?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma2() -> BroadPoset {
        BroadPoset::corolla(Flavour::Commutative, "r", &["l1", "l2"]).unwrap()
    }

    #[test]
    fn corolla_is_valid() {
        let g = gamma2();
        assert!(g.as_relation().validate().is_valid());
        assert_eq!(g.pair_count(), 1);
        assert!(g
            .holds_named(&BroadWord::new(Flavour::Commutative, ["l2", "l1"]), "r")
            .unwrap());
        assert!(!g
            .holds_named(&BroadWord::new(Flavour::Commutative, ["l1"]), "r")
            .unwrap());
    }

    #[test]
    fn reflexive_pairs_are_implicit() {
        let rel = BroadRelation::new(Flavour::Planar, ["a"], [(vec!["a"], "a")]).unwrap();
        assert_eq!(rel.pair_count(), 0);
    }

    #[test]
    fn unknown_identifiers_are_rejected() {
        let err = BroadRelation::new(Flavour::Planar, ["a"], [(vec!["b"], "a")]).unwrap_err();
        assert_eq!(err, Error::Identifier("b".into()));
    }

    #[test]
    fn two_cycle_is_not_antisymmetric() {
        let rel = BroadRelation::new(
            Flavour::Commutative,
            ["a", "b"],
            [(vec!["a"], "b"), (vec!["b"], "a")],
        )
        .unwrap();
        let report = rel.validate();
        assert!(!report.antisymmetric);
        assert!(report.transitive);
        assert!(report.violations.iter().any(|v| v.contains("a ≤ b")));
        assert!(BroadPoset::new(rel).is_err());
    }

    #[test]
    fn missing_consequence_breaks_transitivity() {
        let closed = BroadRelation::new(
            Flavour::Commutative,
            ["r", "a", "b"],
            [(vec!["a", "b"], "r")],
        )
        .unwrap();
        assert!(closed.validate().transitive);
        let open = BroadRelation::new(
            Flavour::Commutative,
            ["r", "a", "b"],
            [(vec!["a", "b"], "r"), (vec![], "a")],
        )
        .unwrap();
        let report = open.validate();
        assert!(!report.transitive);
        assert!(!report.violations.is_empty());
    }

    #[test]
    fn word_order_splits_into_pieces() {
        // e·f ≤ b, b·c ≤ r and the composite e·f·c ≤ r.
        let rel = BroadRelation::new(
            Flavour::Planar,
            ["r", "b", "c", "e", "f"],
            [
                (vec!["e", "f"], "b"),
                (vec!["b", "c"], "r"),
                (vec!["e", "f", "c"], "r"),
            ],
        )
        .unwrap();
        let p = BroadPoset::new(rel).unwrap();
        let ix = |n: &str| p.index(n).unwrap();
        let (b, c, e, f) = (ix("b"), ix("c"), ix("e"), ix("f"));
        assert!(p.word_leq(&[e, f, c], &[b, c]));
        assert!(!p.word_leq(&[f, e, c], &[b, c]));
        assert!(p.word_leq(&[b, c], &[b, c]));
        assert!(!p.word_leq(&[b, c], &[e, f, c]));
        assert!(p.word_leq(&[], &[]));
    }

    #[test]
    fn multiset_difference_requires_containment() {
        assert_eq!(
            multiset_difference(&[1, 2, 2, 3], &[2, 3]),
            Some(vec![1, 2])
        );
        assert_eq!(multiset_difference(&[1, 2], &[2, 2]), None);
    }
}

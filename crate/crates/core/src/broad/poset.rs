use std::collections::BTreeSet;
use std::fmt;

use super::relation::{BroadPoset, Pair};
use super::word::Flavour;
use crate::error::{Error, Result};

/// A finite poset on named elements, stored as its strict order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    elements: Vec<String>,
    // (x, y) with x < y, transitively closed.
    below: BTreeSet<(usize, usize)>,
}

impl FinitePoset {
    /// The poset generated by `relations` (pairs `x ≤ y`).
    pub fn new<E, R, S>(elements: E, relations: R) -> Result<Self>
    where
        E: IntoIterator,
        E::Item: Into<String>,
        R: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        elements.sort();
        elements.dedup();
        let n = elements.len();
        let index = |name: &str| {
            elements
                .binary_search_by(|e| e.as_str().cmp(name))
                .map_err(|_| Error::Identifier(name.to_string()))
        };
        let mut m = vec![vec![false; n]; n];
        for (x, y) in relations {
            let (x, y) = (index(x.as_ref())?, index(y.as_ref())?);
            m[x][y] = true;
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
        let mut below = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && m[i][j] {
                    if m[j][i] {
                        return Err(Error::NotABroadPoset(format!(
                            "`{}` and `{}` are mutually related",
                            elements[i], elements[j]
                        )));
                    }
                    below.insert((i, j));
                }
            }
        }
        Ok(FinitePoset { elements, below })
    }

    /// The chain `0 < 1 < … < n`, i.e. `[n]`.
    pub fn chain(n: usize) -> Self {
        let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let rels: Vec<(String, String)> = (0..n)
            .map(|i| (i.to_string(), (i + 1).to_string()))
            .collect();
        FinitePoset::new(names, rels).expect("chains are posets")
    }

    pub fn discrete<E>(elements: E) -> Self
    where
        E: IntoIterator,
        E::Item: Into<String>,
    {
        FinitePoset::new(elements, Vec::<(String, String)>::new()).expect("discrete posets")
    }

    /// Componentwise order on pairs named `(p,q)`.
    pub fn product(p: &FinitePoset, q: &FinitePoset) -> Self {
        let name = |a: &str, b: &str| format!("({a},{b})");
        let mut elements = Vec::new();
        let mut rels = Vec::new();
        for a in &p.elements {
            for b in &q.elements {
                elements.push(name(a, b));
                for a2 in &p.elements {
                    for b2 in &q.elements {
                        if p.leq(a, a2) && q.leq(b, b2) && (a != a2 || b != b2) {
                            rels.push((name(a, b), name(a2, b2)));
                        }
                    }
                }
            }
        }
        FinitePoset::new(elements, rels).expect("products of posets are posets")
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, x: &str, y: &str) -> bool {
        match (self.index(x), self.index(y)) {
            (Some(i), Some(j)) => i == j || self.below.contains(&(i, j)),
            _ => false,
        }
    }

    fn index(&self, name: &str) -> Option<usize> {
        self.elements
            .binary_search_by(|e| e.as_str().cmp(name))
            .ok()
    }

    /// Strict comparisons `x < y` by name.
    pub fn strict_pairs(&self) -> Vec<(String, String)> {
        self.below
            .iter()
            .map(|&(i, j)| (self.elements[i].clone(), self.elements[j].clone()))
            .collect()
    }
}

impl fmt::Display for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .strict_pairs()
            .into_iter()
            .map(|(x, y)| format!("{x} < {y}"))
            .collect();
        write!(f, "{{{}", self.elements.join(", "))?;
        if !rels.is_empty() {
            write!(f, " | {}", rels.join(", "))?;
        }
        f.write_str("}")
    }
}

/// A poset as a broad poset with only unary relations.
pub fn embed_poset(p: &FinitePoset, flavour: Flavour) -> BroadPoset {
    BroadPoset::from_indexed(
        flavour,
        p.elements.clone(),
        p.below.iter().map(|&(x, y)| Pair::new(vec![x], y)),
    )
}

/// The poset of unary relations of a broad poset.
pub fn underlying_poset(a: &BroadPoset) -> FinitePoset {
    FinitePoset {
        elements: a.carrier().to_vec(),
        below: a
            .pairs()
            .filter(|p| p.source.len() == 1)
            .map(|p| (p.source[0], p.target))
            .collect(),
    }
}

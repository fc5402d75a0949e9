use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::relation::{BroadPoset, Pair};
use super::word::{normalize, Flavour};
use crate::error::{Error, Result};

/// Default bound on `|B|^|A|` for brute-force hom-set enumeration.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// A monotone function between broad posets of the same flavour.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    domain: Arc<BroadPoset>,
    codomain: Arc<BroadPoset>,
    assignment: Vec<usize>,
}

impl MonotoneMap {
    /// Builds a map from a name-to-name assignment, checking totality and
    /// monotonicity.
    pub fn new(
        domain: Arc<BroadPoset>,
        codomain: Arc<BroadPoset>,
        assignment: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let indices = resolve(&domain, &codomain, assignment)?;
        Self::from_indices(domain, codomain, indices)
    }

    pub fn from_indices(
        domain: Arc<BroadPoset>,
        codomain: Arc<BroadPoset>,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        if domain.flavour() != codomain.flavour() {
            return Err(Error::FlavourMismatch(domain.flavour(), codomain.flavour()));
        }
        if assignment.len() != domain.len() || assignment.iter().any(|&y| y >= codomain.len()) {
            return Err(Error::NotTotal(format!(
                "assignment of length {}",
                assignment.len()
            )));
        }
        if let Some(p) = first_violation(&domain, &codomain, &assignment) {
            return Err(Error::NotMonotone(describe_violation(
                &domain,
                &codomain,
                &assignment,
                p,
            )));
        }
        Ok(MonotoneMap {
            domain,
            codomain,
            assignment,
        })
    }

    /// Trusted constructor for maps that are monotone by construction.
    pub(crate) fn from_indices_unchecked(
        domain: Arc<BroadPoset>,
        codomain: Arc<BroadPoset>,
        assignment: Vec<usize>,
    ) -> Self {
        debug_assert!(first_violation(&domain, &codomain, &assignment).is_none());
        MonotoneMap {
            domain,
            codomain,
            assignment,
        }
    }

    /// Builds a map from a name function; `f` must be total.
    pub fn from_fn<F>(domain: Arc<BroadPoset>, codomain: Arc<BroadPoset>, f: F) -> Result<Self>
    where
        F: Fn(&str) -> Option<String>,
    {
        let assignment: BTreeMap<String, String> = domain
            .carrier()
            .iter()
            .map(|x| {
                f(x).map(|y| (x.clone(), y))
                    .ok_or_else(|| Error::NotTotal(x.clone()))
            })
            .collect::<Result<_>>()?;
        Self::new(domain, codomain, &assignment)
    }

    pub fn identity(poset: Arc<BroadPoset>) -> Self {
        let assignment = (0..poset.len()).collect();
        MonotoneMap {
            domain: poset.clone(),
            codomain: poset,
            assignment,
        }
    }

    /// Inclusion of a sub-poset whose carrier names are a subset of the
    /// codomain's.
    pub fn inclusion(domain: Arc<BroadPoset>, codomain: Arc<BroadPoset>) -> Result<Self> {
        let assignment = domain
            .carrier()
            .iter()
            .map(|n| codomain.index_of(n))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(domain, codomain, assignment)
    }

    /// `g ∘ f`.
    pub fn compose(g: &MonotoneMap, f: &MonotoneMap) -> Result<MonotoneMap> {
        if f.codomain != g.domain {
            return Err(Error::DomainMismatch);
        }
        Ok(MonotoneMap {
            domain: f.domain.clone(),
            codomain: g.codomain.clone(),
            assignment: f.assignment.iter().map(|&y| g.assignment[y]).collect(),
        })
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &MonotoneMap) -> Result<MonotoneMap> {
        MonotoneMap::compose(next, self)
    }

    pub fn flavour(&self) -> Flavour {
        self.domain.flavour()
    }

    pub fn domain(&self) -> &Arc<BroadPoset> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<BroadPoset> {
        &self.codomain
    }

    pub fn indices(&self) -> &[usize] {
        &self.assignment
    }

    pub fn image_index(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn apply(&self, name: &str) -> Option<&str> {
        let x = self.domain.index(name)?;
        Some(self.codomain.name(self.assignment[x]))
    }

    /// Letterwise image of an index word, normalized in the codomain.
    pub fn image_word(&self, word: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = word.iter().map(|&l| self.assignment[l]).collect();
        normalize(self.flavour(), &mut out);
        out
    }

    pub fn assignment(&self) -> BTreeMap<String, String> {
        self.domain
            .carrier()
            .iter()
            .zip(&self.assignment)
            .map(|(x, &y)| (x.clone(), self.codomain.name(y).to_string()))
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        self.assignment
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.len()];
        for &y in &self.assignment {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.len() == self.codomain.len() && self.is_injective()
    }

    /// Whether this is an isomorphism: a bijection that maps the relation
    /// onto the codomain's relation.
    pub fn is_isomorphism(&self) -> bool {
        self.is_bijective() && self.domain.pair_count() == self.codomain.pair_count()
    }

    /// The same assignment against different (equal-named) endpoints.
    pub fn with_endpoints(
        &self,
        domain: Arc<BroadPoset>,
        codomain: Arc<BroadPoset>,
    ) -> Result<MonotoneMap> {
        MonotoneMap::new(domain, codomain, &self.assignment())
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .domain
            .carrier()
            .iter()
            .zip(&self.assignment)
            .map(|(x, &y)| format!("{x}=>{}", self.codomain.name(y)))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

fn resolve(
    domain: &BroadPoset,
    codomain: &BroadPoset,
    assignment: &BTreeMap<String, String>,
) -> Result<Vec<usize>> {
    if domain.flavour() != codomain.flavour() {
        return Err(Error::FlavourMismatch(domain.flavour(), codomain.flavour()));
    }
    if let Some(extra) = assignment.keys().find(|k| domain.index(k).is_none()) {
        return Err(Error::Identifier(extra.clone()));
    }
    domain
        .carrier()
        .iter()
        .map(|x| {
            let y = assignment
                .get(x)
                .ok_or_else(|| Error::NotTotal(x.clone()))?;
            codomain.index_of(y)
        })
        .collect()
}

fn first_violation<'a>(
    domain: &'a BroadPoset,
    codomain: &BroadPoset,
    assignment: &[usize],
) -> Option<&'a Pair> {
    let mut buf = Vec::new();
    domain
        .pairs()
        .find(|p| !pair_preserved(codomain, assignment, p, &mut buf))
}

fn pair_preserved(
    codomain: &BroadPoset,
    assignment: &[usize],
    p: &Pair,
    buf: &mut Vec<usize>,
) -> bool {
    buf.clear();
    buf.extend(p.source.iter().map(|&l| assignment[l]));
    normalize(codomain.flavour(), buf);
    codomain.holds(buf, assignment[p.target])
}

fn describe_violation(
    domain: &BroadPoset,
    codomain: &BroadPoset,
    assignment: &[usize],
    p: &Pair,
) -> String {
    let image: Vec<usize> = p.source.iter().map(|&l| assignment[l]).collect();
    format!(
        "{} ≤ {} maps to {} ≤ {}, which does not hold",
        domain.word(&p.source),
        domain.name(p.target),
        codomain.word(&image),
        codomain.name(assignment[p.target])
    )
}

/// Whether a name-to-name assignment is a monotone function `A → B`.
pub fn is_monotone(
    assignment: &BTreeMap<String, String>,
    a: &BroadPoset,
    b: &BroadPoset,
) -> Result<bool> {
    let indices = resolve(a, b, assignment)?;
    Ok(first_violation(a, b, &indices).is_none())
}

/// All monotone maps `A → B` in lexicographic order of assignments.
pub fn enumerate_monotone(
    a: &Arc<BroadPoset>,
    b: &Arc<BroadPoset>,
    budget: u128,
) -> Result<Vec<MonotoneMap>> {
    let mut out = Vec::new();
    for_each_monotone(a, b, budget, |assignment| {
        out.push(MonotoneMap {
            domain: a.clone(),
            codomain: b.clone(),
            assignment: assignment.to_vec(),
        });
        ControlFlow::<()>::Continue(())
    })?;
    Ok(out)
}

/// `|Hom(A, B)|`.
pub fn count_monotone(a: &BroadPoset, b: &BroadPoset, budget: u128) -> Result<u64> {
    let mut count = 0u64;
    for_each_monotone(a, b, budget, |_| {
        count += 1;
        ControlFlow::<()>::Continue(())
    })?;
    Ok(count)
}

/// Backtracking search over assignments in lexicographic order. Each domain
/// pair is checked as soon as all of its letters and its target are assigned.
pub(crate) fn for_each_monotone<B, F>(
    a: &BroadPoset,
    b: &BroadPoset,
    budget: u128,
    mut visit: F,
) -> Result<Option<B>>
where
    F: FnMut(&[usize]) -> ControlFlow<B>,
{
    if a.flavour() != b.flavour() {
        return Err(Error::FlavourMismatch(a.flavour(), b.flavour()));
    }
    let size = (b.len() as u128)
        .checked_pow(a.len() as u32)
        .unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
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
    let mut search = Search {
        b,
        checks,
        assignment: vec![0; a.len()],
        buf: Vec::new(),
    };
    Ok(match search.run(0, &mut visit) {
        ControlFlow::Break(v) => Some(v),
        ControlFlow::Continue(()) => None,
    })
}

struct Search<'a> {
    b: &'a BroadPoset,
    checks: Vec<Vec<&'a Pair>>,
    assignment: Vec<usize>,
    buf: Vec<usize>,
}

impl Search<'_> {
    fn run<B, F>(&mut self, depth: usize, visit: &mut F) -> ControlFlow<B>
    where
        F: FnMut(&[usize]) -> ControlFlow<B>,
    {
        if depth == self.assignment.len() {
            return visit(&self.assignment);
        }
        for y in 0..self.b.len() {
            self.assignment[depth] = y;
            let ok = self.checks[depth]
                .iter()
                .all(|p| pair_preserved(self.b, &self.assignment, p, &mut self.buf));
            if ok {
                self.run(depth + 1, visit)?;
            }
        }
        ControlFlow::Continue(())
    }
}

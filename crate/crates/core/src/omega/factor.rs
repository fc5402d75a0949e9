use std::collections::BTreeMap;
use std::sync::Arc;

use crate::broad::{BroadPoset, Flavour, MonotoneMap, Pair};
use crate::dendro::Tree;
use crate::error::{Error, Result};

use super::faces::{degeneracy, faces, inner_face};
use super::maps::{classify_map, MapKind};
use super::regenerate;

/// `f = φₘ ∘ ⋯ ∘ φ₁ ∘ π ∘ δₖ ∘ ⋯ ∘ δ₁`, each list in application order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub degeneracies: Vec<MonotoneMap>,
    pub iso: MonotoneMap,
    pub faces: Vec<MonotoneMap>,
}

impl Factorization {
    /// All components in application order.
    pub fn components(&self) -> impl Iterator<Item = &MonotoneMap> + '_ {
        self.degeneracies
            .iter()
            .chain(std::iter::once(&self.iso))
            .chain(&self.faces)
    }

    /// The composite of all components.
    pub fn composite(&self) -> Result<MonotoneMap> {
        let mut parts = self.components();
        let mut acc = parts.next().expect("the iso is always present").clone();
        for next in parts {
            acc = acc.then(next)?;
        }
        Ok(acc)
    }

    /// The kind of every component, in application order.
    pub fn kinds(&self) -> Result<Vec<MapKind>> {
        self.components().map(classify_map).collect()
    }
}

/// Factors an arrow between trees into degeneracies, an isomorphism and
/// faces.
///
/// The recursion follows the root of the domain:
///
/// 1. if the root does not reach the root of the codomain, restrict the
///    codomain to the subtree above the image of the root;
/// 2. if some child of the root is sent to the codomain's root, the root
///    vertex is unary and is collapsed by a degeneracy;
/// 3. if the root's children map exactly onto the codomain root's children,
///    factor each branch separately and graft the pieces back together;
/// 4. otherwise remove, as inner faces, the codomain edges that lie neither
///    at the root nor above the image of the root's children, after which
///    case 3 applies.
///
/// Whenever several faces are possible the one with the least edge name is
/// taken. The isomorphism is the lexicographically least one in the
/// commutative flavour and the unique one in the planar flavour.
pub fn factorize(f: &MonotoneMap) -> Result<Factorization> {
    Tree::new(f.domain().clone())?;
    Tree::new(f.codomain().clone())?;
    factor(f)
}

fn factor(f: &MonotoneMap) -> Result<Factorization> {
    let (a, b) = (f.domain(), f.codomain());
    let ta = Tree::new(a.clone())?;
    let tb = Tree::new(b.clone())?;
    let (ra, rb) = (ta.root(), tb.root());

    if ta.degree() == 0 {
        let target = Arc::new(BroadPoset::star(a.flavour(), b.name(f.image_index(ra))));
        let iso = MonotoneMap::from_indices(a.clone(), target.clone(), vec![0])?;
        return Ok(Factorization {
            degeneracies: Vec::new(),
            iso,
            faces: face_chain(&target, b)?,
        });
    }

    let top = f.image_index(ra);
    if top != rb {
        let sub = Arc::new(tb.subtree_at(top));
        let mut inner = factor(&restrict(f, a, &sub)?)?;
        inner.faces.extend(face_chain(&sub, b)?);
        return Ok(inner);
    }

    let up_a = ta
        .up(ra)
        .expect("a tree of positive degree has a root vertex");
    if let Some(&child) = up_a.iter().find(|&&x| f.image_index(x) == rb) {
        let sigma = degeneracy(a, a.name(child), a.name(ra))?;
        let mut inner = factor(&restrict(f, sigma.codomain(), b)?)?;
        inner.degeneracies.insert(0, sigma);
        return Ok(inner);
    }

    let image = f.image_word(up_a);
    if tb.up(rb) == Some(image.as_slice()) {
        return split(f, &ta, &tb);
    }

    let removed: Vec<usize> = (0..b.len())
        .filter(|&x| x != rb && !image.iter().any(|&l| tb.is_descendant(x, l)))
        .collect();
    let mut chain = Vec::new();
    let mut current = b.clone();
    for x in removed {
        let face = inner_face(&current, b.name(x))?;
        current = face.domain().clone();
        chain.push(face);
    }
    chain.reverse();
    let mut inner = factor(&restrict(f, a, &current)?)?;
    inner.faces.extend(chain);
    Ok(inner)
}

/// Root children map onto root children: factor each branch and graft.
fn split(f: &MonotoneMap, ta: &Tree, tb: &Tree) -> Result<Factorization> {
    let (a, b) = (f.domain(), f.codomain());
    let flavour = a.flavour();
    let (ra, rb) = (ta.root(), tb.root());

    let mut degeneracies = Vec::new();
    let mut context = a.clone();
    let mut branches = Vec::new();
    for &ai in ta.children(ra) {
        let domain = Arc::new(ta.subtree_at(ai));
        let codomain = Arc::new(tb.subtree_at(f.image_index(ai)));
        let branch = factor(&restrict(f, &domain, &codomain)?)?;
        for d in &branch.degeneracies {
            let lifted = lift(&context, d)?;
            context = lifted.codomain().clone();
            degeneracies.push(lifted);
        }
        branches.push(branch);
    }

    let mut carrier = vec![b.name(rb).to_string()];
    let root_children: Vec<String> = tb
        .children(rb)
        .iter()
        .map(|&x| b.name(x).to_string())
        .collect();
    let mut vertices = vec![(root_children, b.name(rb).to_string())];
    let mut assignment = BTreeMap::from([(a.name(ra).to_string(), b.name(rb).to_string())]);
    for branch in &branches {
        let target = branch.iso.codomain();
        carrier.extend(target.carrier().iter().cloned());
        vertices.extend(named_vertices(target)?);
        assignment.extend(branch.iso.assignment());
    }
    let iso_target = Arc::new(tree_from_vertices(flavour, carrier, vertices)?);
    let iso = MonotoneMap::new(context, iso_target.clone(), &assignment)?;

    let mut faces = Vec::new();
    let mut context = iso_target;
    for branch in &branches {
        for face in &branch.faces {
            let lifted = lift(&context, face)?;
            context = lifted.codomain().clone();
            faces.push(lifted);
        }
    }
    debug_assert_eq!(*context, **b);
    Ok(Factorization {
        degeneracies,
        iso,
        faces,
    })
}

/// The same assignment, by name, between new endpoints.
fn restrict(
    f: &MonotoneMap,
    domain: &Arc<BroadPoset>,
    codomain: &Arc<BroadPoset>,
) -> Result<MonotoneMap> {
    let assignment = domain
        .carrier()
        .iter()
        .map(|x| {
            let y = f.apply(x).ok_or_else(|| Error::Identifier(x.clone()))?;
            codomain.index_of(y)
        })
        .collect::<Result<Vec<_>>>()?;
    MonotoneMap::from_indices(domain.clone(), codomain.clone(), assignment)
}

/// Chain of maximal-subtree inclusions from `sub` up to `tree`, in
/// application order. At each step the first face (by edge name) still
/// containing `sub` is taken.
fn face_chain(sub: &Arc<BroadPoset>, tree: &Arc<BroadPoset>) -> Result<Vec<MonotoneMap>> {
    let mut chain = Vec::new();
    let mut current = tree.clone();
    while *current != **sub {
        let (_, face) = faces(&current)?
            .into_iter()
            .find(|(_, face)| sub.is_sub_poset_of(face.domain()))
            .ok_or_else(|| Error::NotMaximal(format!("{sub} is not a subtree of {current}")))?;
        current = face.domain().clone();
        chain.push(face);
    }
    chain.reverse();
    Ok(chain)
}

fn named_vertices(p: &Arc<BroadPoset>) -> Result<Vec<(Vec<String>, String)>> {
    let t = Tree::new(p.clone())?;
    Ok(t.vertices()
        .into_iter()
        .map(|(w, x)| {
            let word = w.iter().map(|&l| p.name(l).to_string()).collect();
            (word, p.name(x).to_string())
        })
        .collect())
}

fn tree_from_vertices(
    flavour: Flavour,
    mut carrier: Vec<String>,
    vertices: Vec<(Vec<String>, String)>,
) -> Result<BroadPoset> {
    let total = carrier.len();
    carrier.sort();
    carrier.dedup();
    if carrier.len() != total {
        return Err(Error::NotDendroidal(
            "grafted pieces share edge names".into(),
        ));
    }
    let index = |name: &str| {
        carrier
            .binary_search_by(|c| c.as_str().cmp(name))
            .map_err(|_| Error::Identifier(name.to_string()))
    };
    let pairs = vertices
        .iter()
        .map(|(w, x)| {
            let source = w.iter().map(|l| index(l)).collect::<Result<Vec<_>>>()?;
            Ok(Pair::new(source, index(x)?))
        })
        .collect::<Result<Vec<_>>>()?;
    regenerate(flavour, carrier, pairs)
}

/// Extends `α: T_a → Y`, where `T_a` is the subtree of `context` above `a`
/// and `α` preserves the root, to `context → context'` by replacing `T_a`
/// with `Y` and leaving everything else fixed.
fn lift(context: &Arc<BroadPoset>, alpha: &MonotoneMap) -> Result<MonotoneMap> {
    let t = Tree::new(context.clone())?;
    let branch = Tree::new(alpha.domain().clone())?;
    let target = Tree::new(alpha.codomain().clone())?;
    let a = context.index_of(branch.root_name())?;
    debug_assert_eq!(t.subtree_at(a), **alpha.domain());
    let new_root = target.root_name();

    let above: Vec<bool> = (0..context.len()).map(|x| t.is_descendant(x, a)).collect();
    let mut carrier: Vec<String> = (0..context.len())
        .filter(|&x| !above[x])
        .map(|x| context.name(x).to_string())
        .collect();
    carrier.extend(target.poset().carrier().iter().cloned());
    let mut vertices: Vec<(Vec<String>, String)> = t
        .vertices()
        .into_iter()
        .filter(|(_, x)| !above[*x])
        .map(|(w, x)| {
            let word = w
                .iter()
                .map(|&l| {
                    if l == a {
                        new_root.to_string()
                    } else {
                        context.name(l).to_string()
                    }
                })
                .collect();
            (word, context.name(x).to_string())
        })
        .collect();
    vertices.extend(named_vertices(alpha.codomain())?);
    let lifted = Arc::new(tree_from_vertices(context.flavour(), carrier, vertices)?);

    let assignment: BTreeMap<String, String> = (0..context.len())
        .map(|x| {
            let name = context.name(x);
            let image = if above[x] {
                alpha.apply(name).expect("total")
            } else {
                name
            };
            (name.to_string(), image.to_string())
        })
        .collect();
    MonotoneMap::new(context.clone(), lifted, &assignment)
}

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use dendroidal::broad::{
    enumerate_monotone, generate_broad_poset, BroadPoset, BroadRelation, Flavour, MonotoneMap,
};
use dendroidal::dendro::{self, Tree};
use dendroidal::omega::{
    classify_map, degeneracies, degeneracy, enumerate_subtrees, faces, factorize, graft_map,
    maximal_subtrees, root_face, MapKind,
};
use dendroidal::trees::{enumerate_trees, graft, parse_term, to_broad};
use dendroidal::Error;

const C: Flavour = Flavour::Commutative;
const P: Flavour = Flavour::Planar;
const BUDGET: u128 = 1_000_000_000;

fn tree(term: &str, flavour: Flavour) -> Arc<BroadPoset> {
    Arc::new(to_broad(&parse_term(term).unwrap(), flavour).unwrap())
}

fn corpus(max_edges: usize, flavour: Flavour) -> Vec<Arc<BroadPoset>> {
    enumerate_trees(max_edges, flavour)
        .unwrap()
        .iter()
        .map(|t| Arc::new(to_broad(t, flavour).unwrap()))
        .collect()
}

/// Every tree structure on every subset of `A` whose relation lies inside
/// `A`'s: a tree is generated by its vertices, so try every way of picking
/// at most one vertex of `A`-pairs per target.
fn subtree_oracle(a: &BroadPoset) -> BTreeSet<BroadPoset> {
    let n = a.len();
    let mut found = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        let inside = |x: usize| mask & (1 << x) != 0;
        let members: Vec<usize> = (0..n).filter(|&x| inside(x)).collect();
        let options: Vec<Vec<Option<&dendroidal::broad::Pair>>> = members
            .iter()
            .map(|&t| {
                let mut opts = vec![None];
                opts.extend(
                    a.pairs()
                        .filter(|p| p.target == t && p.source.iter().all(|&l| inside(l)))
                        .map(Some),
                );
                opts
            })
            .collect();
        let mut choice = vec![0usize; members.len()];
        loop {
            let chosen: Vec<(Vec<String>, String)> = options
                .iter()
                .zip(&choice)
                .filter_map(|(opts, &k)| opts[k])
                .map(|p| {
                    (
                        p.source.iter().map(|&l| a.name(l).to_string()).collect(),
                        a.name(p.target).to_string(),
                    )
                })
                .collect();
            let carrier: Vec<String> = members.iter().map(|&x| a.name(x).to_string()).collect();
            let rel = BroadRelation::new(a.flavour(), carrier, chosen).unwrap();
            if let Ok(generated) = generate_broad_poset(&rel, n) {
                let b = generated.poset;
                if generated.collapsed.is_empty()
                    && dendro::is_dendroidal(&b).is_dendroidal
                    && b.is_sub_poset_of(a)
                {
                    found.insert(b);
                }
            }
            let mut i = 0;
            while i < choice.len() {
                choice[i] += 1;
                if choice[i] < options[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
    }
    found
}

#[test]
fn subtrees_match_the_brute_force_oracle() {
    for flavour in [C, P] {
        for a in corpus(5, flavour) {
            let listed: BTreeSet<BroadPoset> =
                enumerate_subtrees(&a).unwrap().into_iter().collect();
            assert_eq!(listed, subtree_oracle(&a), "{a} ({flavour})");
        }
    }
}

#[test]
fn example_tree_subtrees() {
    let a = tree("r(b(e,f),c,d())", C);
    let maximal = maximal_subtrees(&a).unwrap();
    assert_eq!(maximal.len(), 4);
    let kinds: Vec<String> = faces(&a)
        .unwrap()
        .iter()
        .map(|(k, _)| k.to_string())
        .collect();
    assert_eq!(
        kinds,
        [
            "inner face at b",
            "outer face pruning e·f ≤ b",
            "inner face at d",
            "outer face pruning ε ≤ d"
        ]
        .map(String::from)
    );
}

#[test]
fn root_face_needs_a_single_branch_root() {
    let a = tree("r(a,b(c))", C);
    assert!(matches!(root_face(&a, "a"), Err(Error::NoRootFace(_))));
    assert_eq!(root_face(&a, "b").unwrap().domain().carrier(), ["b", "c"]);
    let g1 = tree("r(a)", C);
    let f = root_face(&g1, "a").unwrap();
    assert_eq!(f.domain().len(), 1);
    assert!(matches!(
        classify_map(&f).unwrap(),
        MapKind::RootFace { .. }
    ));
}

#[test]
fn composition_is_associative_and_unital() {
    for flavour in [C, P] {
        let small = corpus(3, flavour);
        for a in &small {
            for b in &small {
                for f in enumerate_monotone(a, b, BUDGET).unwrap() {
                    assert_eq!(f.then(&MonotoneMap::identity(b.clone())).unwrap(), f);
                    assert_eq!(MonotoneMap::identity(a.clone()).then(&f).unwrap(), f);
                }
            }
        }
        let tiny = corpus(2, flavour);
        for a in &tiny {
            for b in &tiny {
                let fs = enumerate_monotone(a, b, BUDGET).unwrap();
                for c in &tiny {
                    let gs = enumerate_monotone(b, c, BUDGET).unwrap();
                    for d in &tiny {
                        let hs = enumerate_monotone(c, d, BUDGET).unwrap();
                        for f in &fs {
                            for g in &gs {
                                for h in &hs {
                                    let left = f.then(g).unwrap().then(h).unwrap();
                                    let right = f.then(&g.then(h).unwrap()).unwrap();
                                    assert_eq!(left, right);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn planar_trees_are_rigid() {
    for a in corpus(6, P) {
        let isos: Vec<MonotoneMap> = enumerate_monotone(&a, &a, BUDGET)
            .unwrap()
            .into_iter()
            .filter(MonotoneMap::is_isomorphism)
            .collect();
        assert_eq!(isos, [MonotoneMap::identity(a.clone())], "{a}");
    }
}

fn same_word(flavour: Flavour, mut x: Vec<usize>, mut y: Vec<usize>) -> bool {
    if flavour == C {
        x.sort_unstable();
        y.sort_unstable();
    }
    x == y
}

#[test]
fn factor_components_have_their_shapes() {
    for flavour in [C, P] {
        let trees = corpus(4, flavour);
        for a in &trees {
            for b in &trees {
                if dendro::degree(a) + dendro::degree(b) > 4 {
                    continue;
                }
                for f in enumerate_monotone(a, b, BUDGET).unwrap() {
                    let fac = factorize(&f).unwrap();
                    assert_eq!(fac.composite().unwrap(), f);
                    for d in &fac.degeneracies {
                        let MapKind::Degeneracy { child, parent } = classify_map(d).unwrap() else {
                            panic!("{f}: {d} is not a degeneracy");
                        };
                        let template = degeneracy(d.domain(), &child, &parent).unwrap();
                        assert_eq!(template.indices(), d.indices());
                    }
                    let iso = &fac.iso;
                    let (ta, tb) = (
                        Tree::new(iso.domain().clone()).unwrap(),
                        Tree::new(iso.codomain().clone()).unwrap(),
                    );
                    assert_eq!(iso.image_index(ta.root()), tb.root());
                    for x in 0..ta.len() {
                        let y = iso.image_index(x);
                        match (ta.up(x), tb.up(y)) {
                            (None, None) => {}
                            (Some(u), Some(v)) => {
                                assert!(same_word(flavour, iso.image_word(u), v.to_vec()))
                            }
                            _ => panic!("{f}: iso does not preserve leaves"),
                        }
                    }
                    for face in &fac.faces {
                        assert!(face.is_injective());
                        let image: Vec<usize> = face.indices().to_vec();
                        let sub = face.codomain().induced(&image);
                        let transported = maximal_subtrees(face.codomain())
                            .unwrap()
                            .into_iter()
                            .any(|m| m.carrier() == sub.carrier());
                        assert!(
                            transported,
                            "{f}: face {face} is not onto a maximal subtree"
                        );
                        assert!(classify_map(face).unwrap().is_face());
                    }
                }
            }
        }
    }
}

#[test]
fn constant_map_factors_through_the_unit() {
    let g1 = tree("r(a)", C);
    let g2 = tree("s(p,q)", C);
    let f = MonotoneMap::new(
        g1,
        g2,
        &BTreeMap::from([
            ("a".to_string(), "s".to_string()),
            ("r".to_string(), "s".to_string()),
        ]),
    )
    .unwrap();
    let fac = factorize(&f).unwrap();
    let labels: Vec<&str> = fac.kinds().unwrap().iter().map(MapKind::label).collect();
    assert_eq!(labels, ["degeneracy", "isomorphism", "outer face"]);
    // The unique map between the one-edge trees {a} and {s}.
    assert_eq!(fac.iso.domain().carrier(), ["a"]);
    assert_eq!(fac.iso.codomain().carrier(), ["s"]);
}

#[test]
fn grafting_a_map_keeps_its_kind() {
    let hosts = [tree("x(y)", C), tree("x(y,z)", C), tree("x(y(v,w),z)", C)];
    for b in corpus(4, C) {
        let mut alphas: Vec<MonotoneMap> = faces(&b).unwrap().into_iter().map(|(_, f)| f).collect();
        alphas.extend(degeneracies(&b).unwrap().into_iter().map(|(_, d)| d));
        alphas.push(MonotoneMap::identity(b.clone()));
        for alpha in alphas {
            let kind = classify_map(&alpha).unwrap();
            for a in &hosts {
                for leaf in dendro::leaves(a) {
                    match graft_map(a, &leaf, &alpha) {
                        Ok(grafted) => {
                            let grafted_kind = classify_map(&grafted).unwrap();
                            assert_eq!(
                                grafted_kind.label(),
                                kind.label(),
                                "{a} at {leaf} with {alpha}"
                            );
                        }
                        Err(Error::GraftUndefined(_)) => {
                            assert!(matches!(kind, MapKind::RootFace { .. }), "{alpha}");
                        }
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }
}

#[test]
fn grafting_a_degeneracy_under_an_arrow() {
    let g1 = tree("x(y)", C);
    let sigma = degeneracy(&tree("r(a)", C), "a", "r").unwrap();
    let grafted = graft_map(&g1, "y", &sigma).unwrap();
    assert_eq!(grafted.domain().len(), 3);
    assert!(matches!(
        classify_map(&grafted).unwrap(),
        MapKind::Degeneracy { .. }
    ));
    let composite = graft(&g1, "y", &tree("r(a)", C)).unwrap();
    assert_eq!(**grafted.domain(), composite.poset);
}

#[test]
fn factorization_rejects_non_trees() {
    let discrete = Arc::new(
        BroadPoset::new(
            BroadRelation::new(C, ["u", "v"], Vec::<(Vec<String>, String)>::new()).unwrap(),
        )
        .unwrap(),
    );
    let id = MonotoneMap::identity(discrete);
    assert!(matches!(factorize(&id), Err(Error::NotDendroidal(_))));
}

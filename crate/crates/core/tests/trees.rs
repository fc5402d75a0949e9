use std::collections::BTreeMap;
use std::sync::Arc;

use dendroidal::broad::{embed_poset, BroadPoset, FinitePoset, Flavour};
use dendroidal::dendro::{self, Tree};
use dendroidal::iso::find_isomorphism;
use dendroidal::trees::{
    canonical_code, enumerate_trees, enumerate_trees_with_cap, graft, parse_term, print_term,
    to_broad, to_term, CanonicalCode, TreeTerm,
};
use dendroidal::Error;
use proptest::prelude::*;

const C: Flavour = Flavour::Commutative;
const P: Flavour = Flavour::Planar;

/// Every planar shape with exactly `edges` edges, built by splitting the
/// edge budget among an ordered list of branches. Names are fresh.
fn all_shapes(edges: usize, counter: &mut usize) -> Vec<TreeTerm> {
    fn fresh(counter: &mut usize) -> String {
        *counter += 1;
        format!("e{counter}")
    }
    fn forests(budget: usize, counter: &mut usize) -> Vec<Vec<TreeTerm>> {
        if budget == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in 1..=budget {
            for head in all_shapes(first, counter) {
                for tail in forests(budget - first, counter) {
                    let mut list = vec![head.clone()];
                    list.extend(tail);
                    out.push(list);
                }
            }
        }
        out
    }
    if edges == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    if edges == 1 {
        out.push(TreeTerm::leaf(fresh(counter)));
    }
    for children in forests(edges - 1, counter) {
        out.push(TreeTerm::node(fresh(counter), children));
    }
    out
}

fn relabel(term: &TreeTerm) -> TreeTerm {
    fn go(t: &TreeTerm, next: &mut usize) -> TreeTerm {
        let name = format!("n{next}");
        *next += 1;
        if t.is_leaf() {
            TreeTerm::leaf(name)
        } else {
            TreeTerm::node(name, t.children().iter().map(|c| go(c, next)).collect())
        }
    }
    go(term, &mut 0)
}

#[test]
fn enumeration_is_complete_and_irredundant() {
    for flavour in [C, P] {
        let listed: Vec<BroadPoset> = enumerate_trees(5, flavour)
            .unwrap()
            .iter()
            .map(|t| to_broad(t, flavour).unwrap())
            .collect();
        for (i, a) in listed.iter().enumerate() {
            for b in &listed[..i] {
                assert!(find_isomorphism(a, b).is_none(), "{a} listed twice");
            }
        }
        let mut classes: Vec<BroadPoset> = Vec::new();
        for edges in 1..=5 {
            for shape in all_shapes(edges, &mut 0) {
                let p = to_broad(&relabel(&shape), flavour).unwrap();
                assert!(
                    listed.iter().any(|q| find_isomorphism(&p, q).is_some()),
                    "{shape} missing ({flavour})"
                );
                if classes.iter().all(|q| find_isomorphism(&p, q).is_none()) {
                    classes.push(p);
                }
            }
        }
        assert_eq!(classes.len(), listed.len(), "{flavour}");
    }
}

#[test]
fn enumeration_counts() {
    let count = |n, f| {
        enumerate_trees(n, f)
            .unwrap()
            .iter()
            .filter(|t| t.edge_count() == n)
            .count()
    };
    let planar: Vec<usize> = (1..=5).map(|n| count(n, P)).collect();
    assert_eq!(planar, [2, 2, 6, 22, 90]);
    assert!(matches!(
        enumerate_trees(8, C),
        Err(Error::BudgetExceeded { .. })
    ));
    assert!(enumerate_trees_with_cap(8, C, 8).is_ok());
}

#[test]
fn canonical_codes_decide_isomorphism() {
    for flavour in [C, P] {
        let trees: Vec<BroadPoset> = (1..=5)
            .flat_map(|n| all_shapes(n, &mut 0))
            .map(|t| to_broad(&relabel(&t), flavour).unwrap())
            .collect();
        for a in &trees {
            for b in &trees {
                let same_code = canonical_code(a).unwrap() == canonical_code(b).unwrap();
                assert_eq!(
                    same_code,
                    find_isomorphism(a, b).is_some(),
                    "{a} vs {b} ({flavour})"
                );
            }
        }
    }
}

#[test]
fn planar_order_matters() {
    let ab = to_broad(&parse_term("r(a(),b)").unwrap(), P).unwrap();
    let ba = to_broad(&parse_term("r(b,a())").unwrap(), P).unwrap();
    assert!(find_isomorphism(&ab, &ba).is_none());
    let ab = to_broad(&parse_term("r(a(),b)").unwrap(), C).unwrap();
    let ba = to_broad(&parse_term("r(b,a())").unwrap(), C).unwrap();
    assert_eq!(ab, ba);
}

#[test]
fn example_tree_closure() {
    let a = to_broad(&parse_term("r(b(e,f),c,d())").unwrap(), C).unwrap();
    let mut pairs: Vec<String> = a
        .named_pairs()
        .into_iter()
        .map(|(w, t)| format!("{w} ≤ {t}"))
        .collect();
    pairs.sort();
    // The three vertices and every substitution among them.
    assert_eq!(
        pairs,
        [
            "b·c ≤ r",
            "b·c·d ≤ r",
            "c·d·e·f ≤ r",
            "c·e·f ≤ r",
            "e·f ≤ b",
            "ε ≤ d"
        ]
    );
    let t = Tree::from_poset(&a).unwrap();
    let subtree = |x: &str| t.subtree_at(a.index(x).unwrap());
    assert_eq!(subtree("r"), a);
    assert_eq!(canonical_code(&subtree("b")).unwrap().as_str(), "(ll)");
    assert_eq!(canonical_code(&subtree("d")).unwrap().as_str(), "()");
    assert_eq!(canonical_code(&t.root_corolla()).unwrap().as_str(), "(lll)");
}

#[test]
fn bottom_elements_and_linear_trees() {
    for flavour in [C, P] {
        for term in enumerate_trees(6, flavour).unwrap() {
            let a = to_broad(&term, flavour).unwrap();
            let t = Tree::from_poset(&a).unwrap();
            let m = a.descendant_matrix();
            let bottom = (0..a.len()).find(|&x| (0..a.len()).all(|y| m[x][y]));
            let linear = t.vertices().iter().all(|(inputs, _)| inputs.len() <= 1);
            assert_eq!(bottom.is_some(), linear, "{term}");
            let Some(bottom) = bottom else { continue };
            // A linear tree is a chain, possibly ending in a stump.
            if t.is_stump(bottom) {
                assert!(dendro::leaves(&a).is_empty(), "{term}");
            } else {
                assert_eq!(dendro::leaves(&a).len(), 1, "{term}");
                let chain = embed_poset(&FinitePoset::chain(a.len() - 1), flavour);
                assert!(find_isomorphism(&a, &chain).is_some(), "{term}");
            }
        }
    }
}

#[test]
fn grafting_corollas_composes_words() {
    let g2 = to_broad(&parse_term("r(l1,l2)").unwrap(), C).unwrap();
    let grafted = graft(&g2, "l1", &g2).unwrap();
    let p = &grafted.poset;
    assert_eq!(p.len(), 5);
    assert_eq!(dendro::degree(p), 2);
    assert!(p.pairs().any(|q| q.source.len() == 3));
    assert!(matches!(graft(&g2, "r", &g2), Err(Error::NotALeaf(_))));
}

#[test]
fn dendroidal_report_explains_failures() {
    let discrete = embed_poset(&FinitePoset::discrete(["u", "v"]), C);
    let report = dendro::is_dendroidal(&discrete);
    assert!(!report.is_dendroidal);
    assert!(!report.has_root);
    assert!(matches!(
        Tree::new(Arc::new(discrete)),
        Err(Error::NotDendroidal(_))
    ));
}

fn term_strategy() -> impl Strategy<Value = TreeTerm> {
    let leaf = Just(TreeTerm::leaf("x"));
    leaf.prop_recursive(4, 24, 4, |inner| {
        prop::collection::vec(inner, 0..4).prop_map(|children| TreeTerm::node("x", children))
    })
    .prop_map(|t| relabel(&t))
}

proptest! {
    #[test]
    fn printing_then_parsing_is_identity(term in term_strategy()) {
        prop_assert_eq!(parse_term(&print_term(&term)).unwrap(), term);
    }

    #[test]
    fn codec_round_trip_preserves_shape(term in term_strategy(), planar in any::<bool>()) {
        let flavour = if planar { P } else { C };
        let a = to_broad(&term, flavour).unwrap();
        prop_assert!(dendro::is_dendroidal(&a).is_dendroidal);
        prop_assert_eq!(dendro::degree(&a), term.vertex_count());
        let back = to_term(&a).unwrap();
        prop_assert_eq!(CanonicalCode::of_term(&back, flavour), CanonicalCode::of_term(&term, flavour));
        prop_assert_eq!(to_broad(&back, flavour).unwrap(), a);
    }

    #[test]
    fn renaming_preserves_the_code(term in term_strategy()) {
        let a = to_broad(&term, C).unwrap();
        let rename: BTreeMap<String, String> =
            a.carrier().iter().map(|n| (n.clone(), format!("z{n}"))).collect();
        prop_assert_eq!(canonical_code(&a.renamed(&rename)).unwrap(), canonical_code(&a).unwrap());
    }
}

#[test]
fn parse_errors_report_positions() {
    match parse_term("r(a,") {
        Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_term("r(a,a)"), Err(Error::DuplicateEdge(_))));
    assert!(matches!(parse_term("r(a) b"), Err(Error::Parse { .. })));
}

use std::sync::Arc;

use dendroidal::broad::{enumerate_monotone, Flavour};
use dendroidal::json::{
    factorization_from_json, factorization_to_json, map_from_json, map_to_json, poset_from_json,
    poset_to_json, relation_from_json,
};
use dendroidal::omega::factorize;
use dendroidal::trees::{enumerate_trees, to_broad, TreeTerm};
use dendroidal::Error;
use proptest::prelude::*;

fn term_strategy() -> impl Strategy<Value = TreeTerm> {
    Just(TreeTerm::leaf("x"))
        .prop_recursive(3, 16, 3, |inner| {
            prop::collection::vec(inner, 0..3).prop_map(|c| TreeTerm::node("x", c))
        })
        .prop_map(|t| {
            fn go(t: &TreeTerm, next: &mut usize) -> TreeTerm {
                let name = format!("e{next}");
                *next += 1;
                if t.is_leaf() {
                    TreeTerm::leaf(name)
                } else {
                    TreeTerm::node(name, t.children().iter().map(|c| go(c, next)).collect())
                }
            }
            go(&t, &mut 0)
        })
}

proptest! {
    #[test]
    fn posets_round_trip(term in term_strategy(), planar in any::<bool>()) {
        let flavour = if planar { Flavour::Planar } else { Flavour::Commutative };
        let a = to_broad(&term, flavour).unwrap();
        prop_assert_eq!(poset_from_json(&poset_to_json(&a)).unwrap(), a);
    }
}

#[test]
fn maps_and_factorizations_round_trip() {
    for flavour in [Flavour::Commutative, Flavour::Planar] {
        let trees: Vec<_> = enumerate_trees(3, flavour)
            .unwrap()
            .iter()
            .map(|t| Arc::new(to_broad(t, flavour).unwrap()))
            .collect();
        for a in &trees {
            for b in &trees {
                for f in enumerate_monotone(a, b, 1_000_000).unwrap() {
                    assert_eq!(map_from_json(&map_to_json(&f)).unwrap(), f);
                    let fac = factorize(&f).unwrap();
                    let text = factorization_to_json(&fac).unwrap();
                    assert_eq!(factorization_from_json(&text).unwrap(), fac);
                }
            }
        }
    }
}

#[test]
fn maps_may_name_trees_by_term() {
    let text = r#"{"domain": "r(a)", "codomain": "s(p,q)", "assignment": {"r": "s", "a": "s"}}"#;
    let f = map_from_json(text).unwrap();
    assert_eq!(f.apply("a"), Some("s"));
    let bad = r#"{"domain": "r(a)", "codomain": "s(p,q)", "assignment": {"r": "p", "a": "s"}}"#;
    assert!(matches!(map_from_json(bad), Err(Error::NotMonotone(_))));
}

#[test]
fn relations_are_read_without_validation() {
    let text = r#"{"flavour": "commutative", "carrier": ["a", "b", "r"],
        "relation": [{"source": ["a", "b"], "target": "r"}, {"source": [], "target": "a"}]}"#;
    let rel = relation_from_json(text).unwrap();
    assert!(!rel.validate().transitive);
    assert!(matches!(
        poset_from_json(text),
        Err(Error::NotABroadPoset(_))
    ));
    assert!(matches!(poset_from_json("{"), Err(Error::Parse { .. })));
}

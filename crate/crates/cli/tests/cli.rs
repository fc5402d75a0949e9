use std::process::{Command, Output};

use dendroidal::broad::Flavour;
use dendroidal::dendro::{DendroReport, Tree};
use dendroidal::json::{
    BroadPosetJson, DegeneracyJson, FaceJson, FactorizationJson, HomJson, SubtreeJson, TreeInfoJson,
};
use dendroidal::trees::{parse_term, to_broad};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn dendro(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dendro"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = dendro(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    dendro(args).status.code().unwrap()
}

/// Parses JSON output as `T` and checks that serializing it again gives the
/// same document.
fn round_trip<T: Serialize + DeserializeOwned>(args: &[&str]) -> T {
    let mut full = vec!["--output", "json"];
    full.extend_from_slice(args);
    let text = stdout(&full);
    let value: T = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
    let original: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_value(&value).unwrap(), original, "{args:?}");
    value
}

#[test]
fn check_reports_the_corolla() {
    assert_eq!(
        stdout(&["check", "r(a,b)"]),
        "dendroidal: true; degree 1; leaves a,b\n"
    );
}

#[test]
fn hom_from_a_point_lists_the_elements() {
    let text = stdout(&["hom", "x", "r(a,b)"]);
    assert!(text.ends_with("3 maps\n"), "{text}");
    let hom: HomJson = round_trip(&["hom", "x", "r(a,b)"]);
    assert_eq!(hom.count, 3);
}

#[test]
fn factor_the_constant_map() {
    let text = stdout(&["factor", "r(a)", "s(p,q)", "--map", "a=>s,r=>s"]);
    assert!(
        text.contains("1 degeneracy, 1 isomorphism, 1 face; composite verified"),
        "{text}"
    );
    let fac: FactorizationJson = round_trip(&["factor", "r(a)", "s(p,q)", "--map", "a=>s,r=>s"]);
    assert_eq!(fac.degeneracies.len(), 1);
    assert_eq!(fac.faces.len(), 1);
    let fac = fac.to_factorization().unwrap();
    assert_eq!(
        fac.composite()
            .unwrap()
            .assignment()
            .get("r")
            .map(String::as_str),
        Some("s")
    );
}

#[test]
fn json_outputs_round_trip() {
    let tree = "r(b(e,f),c,d())";
    let report: DendroReport = round_trip(&["check", tree]);
    assert!(report.is_dendroidal);
    let info: TreeInfoJson = round_trip(&["info", tree]);
    assert_eq!(info.degree, 3);
    let subtrees: Vec<SubtreeJson> = round_trip(&["subtrees", tree]);
    assert_eq!(subtrees.iter().filter(|s| s.face.is_some()).count(), 4);
    let maximal: Vec<SubtreeJson> = round_trip(&["subtrees", "--maximal", tree]);
    assert_eq!(maximal.len(), 4);
    let faces: Vec<FaceJson> = round_trip(&["faces", tree]);
    assert_eq!(faces.len(), 4);
    for face in &faces {
        assert!(face.map.to_map().unwrap().is_injective());
    }
    let degeneracies: Vec<DegeneracyJson> = round_trip(&["degeneracies", "r(a(b))"]);
    assert_eq!(degeneracies.len(), 2);
    for kind in ["tensor", "product"] {
        let p: BroadPosetJson = round_trip(&[kind, "r(a)", "s(p)"]);
        assert_eq!(p.carrier.len(), 4);
    }
    let grafted: BroadPosetJson = round_trip(&["graft", "r(l1,l2)", "--at", "l1", "r(l1,l2)"]);
    assert_eq!(grafted.to_poset().unwrap().len(), 5);
    let glued: BroadPosetJson = round_trip(&[
        "pushout", "x", "r(a,b)", "s(p)", "--left", "x=>a", "--right", "x=>s",
    ]);
    assert_eq!(glued.carrier, ["a", "b", "p", "r"]);
}

#[test]
fn output_is_deterministic() {
    let args = ["--flavour", "planar", "subtrees", "r(b(e,f),c,d())"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = [
        "--output",
        "json",
        "factor",
        "r(u,v,w)",
        "s(t(u,v),w)",
        "--map",
        "r=>s,u=>u,v=>v,w=>w",
    ];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn planar_flavour_keeps_leaf_order() {
    assert_eq!(
        stdout(&["--flavour", "planar", "hom", "r(a,b)", "r(b,a)"]),
        "a=>b,b=>a,r=>r\n1 map\n"
    );
    assert!(stdout(&["hom", "r(a,b)", "r(b,a)"]).ends_with("2 maps\n"));
}

#[test]
fn exit_codes_follow_the_failure_kind() {
    assert_eq!(code(&["check", "r(a,b"]), 2);
    assert_eq!(code(&["check", "r(a,a)"]), 2);
    assert_eq!(code(&["--output", "yaml", "check", "r"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["factor", "r(a)", "s(p,q)", "--map", "r=>p,a=>s"]), 1);
    assert_eq!(code(&["factor", "r(a)", "s(p,q)", "--map", "r=>s"]), 2);
    assert_eq!(code(&["graft", "r(a)", "--at", "r", "s(p)"]), 1);
    assert_eq!(
        code(&["hom", "r(a,b,c,d)", "r(a,b,c,d)", "--budget", "100"]),
        3
    );
    assert_eq!(
        code(&["tensor", "r(a,b)", "s(p,q)", "--max-word-len", "1"]),
        3
    );
}

#[test]
fn posets_can_come_from_files() {
    let dir = std::env::temp_dir().join(format!("dendro-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let g2 = to_broad(&parse_term("r(a,b)").unwrap(), Flavour::Commutative).unwrap();
    let tree_file = dir.join("g2.json");
    std::fs::write(
        &tree_file,
        serde_json::to_string(&BroadPosetJson::from(&g2)).unwrap(),
    )
    .unwrap();
    let path = tree_file.to_str().unwrap();
    assert_eq!(
        stdout(&["check", path]),
        "dendroidal: true; degree 1; leaves a,b\n"
    );
    assert!(stdout(&["hom", "x", path]).ends_with("3 maps\n"));

    let discrete = dir.join("discrete.json");
    std::fs::write(
        &discrete,
        r#"{"flavour": "commutative", "carrier": ["u", "v"], "relation": []}"#,
    )
    .unwrap();
    let out = dendro(&["check", discrete.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("dendroidal: false"));

    let broken = dir.join("broken.json");
    std::fs::write(
        &broken,
        r#"{"flavour": "commutative", "carrier": ["a", "b", "r"],
            "relation": [{"source": ["a", "b"], "target": "r"}, {"source": [], "target": "a"}]}"#,
    )
    .unwrap();
    let out = dendro(&["check", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.starts_with("broad poset: false; transitive false"),
        "{text}"
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn dot_output_is_a_digraph() {
    let text = stdout(&["dot", "r(b(e,f),c,d())"]);
    assert!(text.starts_with("digraph tree {\n") && text.ends_with("}\n"));
    let t = Tree::from_poset(
        &to_broad(
            &parse_term("r(b(e,f),c,d())").unwrap(),
            Flavour::Commutative,
        )
        .unwrap(),
    )
    .unwrap();
    // One arrow per vertex input plus one per vertex output.
    let arrows = t
        .vertices()
        .iter()
        .map(|(inputs, _)| inputs.len() + 1)
        .sum::<usize>();
    assert_eq!(text.matches(" -> ").count(), arrows);
}

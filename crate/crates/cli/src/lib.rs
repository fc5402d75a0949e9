//! The `dendro` command line: parse trees and broad posets, inspect their
//! structure, enumerate maps, and factor maps of trees into faces,
//! degeneracies and an isomorphism.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use dendroidal::broad::{
    enumerate_monotone, product, pushout, tensor, BroadPoset, Flavour, MonotoneMap, DEFAULT_BUDGET,
};
use dendroidal::dendro::{self, Tree};
use dendroidal::json::{
    BroadPosetJson, DegeneracyJson, FaceJson, FactorizationJson, HomJson, SubtreeJson, TreeInfoJson,
};
use dendroidal::omega::{
    classify_maximal, degeneracies, enumerate_subtrees, faces, factorize, maximal_subtrees,
};
use dendroidal::trees::{graft, parse_term, to_broad, to_term};
use dendroidal::Error;

#[derive(Debug, Parser)]
#[command(
    name = "dendro",
    version,
    about = "Broad posets, dendroidal trees and their face and degeneracy maps"
)]
pub struct Cli {
    /// Word flavour: commutative or planar.
    #[arg(long, global = true, default_value = "commutative")]
    pub flavour: Flavour,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,
    /// Longest word a closure may produce before reporting overflow
    /// [default: the size of the resulting carrier].
    #[arg(long, global = true)]
    pub max_word_len: Option<usize>,
    /// Largest number of candidate assignments an enumeration may examine.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

/// Arguments named TREE or POSET take a tree term such as `r(a,b(c,d()))`,
/// or the path of a JSON file holding a broad poset.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate the axioms and report whether the input is a tree.
    Check { tree: String },
    /// Root, leaves, stumps, inner edges, degree and vertices.
    Info { tree: String },
    /// All subtrees, with the face kind of each maximal one.
    Subtrees {
        tree: String,
        #[arg(long)]
        maximal: bool,
    },
    /// Every face map into the tree.
    Faces { tree: String },
    /// Every degeneracy map out of the tree.
    Degeneracies { tree: String },
    /// All monotone maps between two broad posets.
    Hom { domain: String, codomain: String },
    /// Factor a map of trees into degeneracies, an isomorphism and faces.
    Factor {
        domain: String,
        codomain: String,
        /// Assignment such as `a=>x,b=>y`; every domain element needs an image.
        #[arg(long)]
        map: String,
    },
    /// Graft the second tree onto a leaf of the first.
    Graft {
        tree: String,
        #[arg(long)]
        at: String,
        branch: String,
    },
    /// The Boardman-Vogt style tensor product.
    Tensor { left: String, right: String },
    /// The categorical product.
    Product { left: String, right: String },
    /// Glue A and B along maps out of C.
    Pushout {
        apex: String,
        a: String,
        b: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Graphviz rendering: edges are nodes, vertices are fan-in points.
    Dot { tree: String },
}

#[derive(Debug)]
enum Failure {
    Library(Error),
    Input(String),
    /// A well-formed request whose answer is negative, already printed.
    Negative,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 on a semantic failure, 2 on malformed input, 3 on overflow or an
/// exhausted budget.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let mut negative = String::new();
    let outcome = execute(&cli, &mut negative);
    match outcome {
        Ok(text) => {
            let _ = write!(out, "{text}");
            0
        }
        Err(Failure::Negative) => {
            let _ = write!(out, "{negative}");
            1
        }
        Err(Failure::Input(message)) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
        Err(Failure::Library(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::DuplicateEdge(_)
        | Error::Identifier(_)
        | Error::NotTotal(_) => 2,
        Error::ClosureOverflow { .. } | Error::BudgetExceeded { .. } => 3,
        _ => 1,
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

fn read_file(arg: &str) -> Option<std::result::Result<String, Failure>> {
    let path = Path::new(arg);
    path.is_file().then(|| {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {arg}: {e}")))
    })
}

fn load(arg: &str, flavour: Flavour) -> std::result::Result<BroadPoset, Failure> {
    match read_file(arg) {
        Some(text) => Ok(dendroidal::json::poset_from_json(&text?)?),
        None => Ok(to_broad(&parse_term(arg)?, flavour)?),
    }
}

fn load_arc(arg: &str, flavour: Flavour) -> std::result::Result<Arc<BroadPoset>, Failure> {
    load(arg, flavour).map(Arc::new)
}

fn load_tree(arg: &str, flavour: Flavour) -> std::result::Result<Tree, Failure> {
    Ok(Tree::new(load_arc(arg, flavour)?)?)
}

/// Parses `a=>x,b=>y`.
pub fn parse_map_literal(text: &str) -> dendroidal::Result<BTreeMap<String, String>> {
    let mut assignment = BTreeMap::new();
    let mut offset = 0;
    for item in text.split(',') {
        let position = offset + item.len() - item.trim_start().len();
        offset += item.len() + 1;
        if item.trim().is_empty() {
            if text.trim().is_empty() {
                continue;
            }
            return Err(Error::Parse {
                position,
                message: "empty assignment".into(),
            });
        }
        let Some((from, to)) = item.split_once("=>") else {
            return Err(Error::Parse {
                position,
                message: "expected `name=>name`".into(),
            });
        };
        let (from, to) = (from.trim(), to.trim());
        if from.is_empty() || to.is_empty() {
            return Err(Error::Parse {
                position,
                message: "expected `name=>name`".into(),
            });
        }
        if assignment
            .insert(from.to_string(), to.to_string())
            .is_some()
        {
            return Err(Error::Parse {
                position,
                message: format!("`{from}` is assigned twice"),
            });
        }
    }
    Ok(assignment)
}

fn count(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

fn names(t: &Tree, xs: Vec<usize>) -> String {
    if xs.is_empty() {
        return "(none)".to_string();
    }
    xs.into_iter()
        .map(|x| t.name(x).to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn describe_map(f: &MonotoneMap) -> String {
    format!("{} → {} [{f}]", f.domain(), f.codomain())
}

fn execute(cli: &Cli, negative: &mut String) -> Outcome {
    let flavour = cli.flavour;
    let as_json = cli.output == Output::Json;
    match &cli.command {
        Command::Check { tree } => check(tree, flavour, as_json, negative),
        Command::Info { tree } => {
            let t = load_tree(tree, flavour)?;
            if as_json {
                return Ok(json(&TreeInfoJson::from(&t)));
            }
            let mut text = String::new();
            let _ = writeln!(text, "root: {}", t.root_name());
            let _ = writeln!(text, "leaves: {}", names(&t, t.leaves()));
            let _ = writeln!(text, "stumps: {}", names(&t, t.stumps()));
            let _ = writeln!(text, "inner edges: {}", names(&t, t.inner_edges()));
            let _ = writeln!(text, "degree: {}", t.degree());
            let _ = writeln!(text, "vertices:");
            for (word, target) in dendro::links(t.poset()) {
                let _ = writeln!(text, "  {word} ≤ {target}");
            }
            Ok(text)
        }
        Command::Subtrees { tree, maximal } => {
            let a = load_arc(tree, flavour)?;
            let maximal_set = maximal_subtrees(&a)?;
            let listed = if *maximal {
                maximal_set.clone()
            } else {
                enumerate_subtrees(&a)?
            };
            let mut entries = Vec::new();
            for b in listed {
                let face = if maximal_set.contains(&b) {
                    Some(classify_maximal(&a, &b)?)
                } else {
                    None
                };
                entries.push(SubtreeJson {
                    subtree: (&b).into(),
                    face,
                });
            }
            if as_json {
                return Ok(json(&entries));
            }
            let mut text = String::new();
            for (entry, b) in entries
                .iter()
                .zip(entries.iter().map(|e| e.subtree.to_poset()))
            {
                let b = b?;
                match &entry.face {
                    Some(kind) => {
                        let _ = writeln!(text, "{b}  [{kind}]");
                    }
                    None => {
                        let _ = writeln!(text, "{b}");
                    }
                }
            }
            let _ = writeln!(text, "{}", count(entries.len(), "subtree", "subtrees"));
            Ok(text)
        }
        Command::Faces { tree } => {
            let a = load_arc(tree, flavour)?;
            let list = faces(&a)?;
            if as_json {
                let entries: Vec<FaceJson> = list
                    .iter()
                    .map(|(kind, f)| FaceJson {
                        kind: kind.clone(),
                        map: f.into(),
                    })
                    .collect();
                return Ok(json(&entries));
            }
            let mut text = String::new();
            for (kind, f) in &list {
                let _ = writeln!(text, "{kind}: {}", describe_map(f));
            }
            let _ = writeln!(text, "{}", count(list.len(), "face", "faces"));
            Ok(text)
        }
        Command::Degeneracies { tree } => {
            let a = load_arc(tree, flavour)?;
            let list = degeneracies(&a)?;
            if as_json {
                let entries: Vec<DegeneracyJson> = list
                    .iter()
                    .map(|((child, parent), f)| DegeneracyJson {
                        child: child.clone(),
                        parent: parent.clone(),
                        map: f.into(),
                    })
                    .collect();
                return Ok(json(&entries));
            }
            let mut text = String::new();
            for ((child, parent), f) in &list {
                let _ = writeln!(text, "collapse {child} into {parent}: {}", describe_map(f));
            }
            let _ = writeln!(text, "{}", count(list.len(), "degeneracy", "degeneracies"));
            Ok(text)
        }
        Command::Hom { domain, codomain } => {
            let a = load_arc(domain, flavour)?;
            let b = load_arc(codomain, flavour)?;
            let maps = enumerate_monotone(&a, &b, cli.budget)?;
            if as_json {
                return Ok(json(&HomJson {
                    count: maps.len(),
                    maps: maps.iter().map(MonotoneMap::assignment).collect(),
                }));
            }
            let mut text = String::new();
            for f in &maps {
                let _ = writeln!(text, "{f}");
            }
            let _ = writeln!(text, "{}", count(maps.len(), "map", "maps"));
            Ok(text)
        }
        Command::Factor {
            domain,
            codomain,
            map,
        } => {
            let a = load_arc(domain, flavour)?;
            let b = load_arc(codomain, flavour)?;
            let f = MonotoneMap::new(a, b, &parse_map_literal(map)?)?;
            let fac = factorize(&f)?;
            if fac.composite()? != f {
                return Err(Failure::Input(
                    "the factorization does not compose to the input".into(),
                ));
            }
            if as_json {
                return Ok(json(&FactorizationJson::new(&fac)?));
            }
            let mut text = String::new();
            for (kind, g) in fac.kinds()?.iter().zip(fac.components()) {
                let _ = writeln!(text, "{kind}: {}", describe_map(g));
            }
            let _ = writeln!(
                text,
                "{}, 1 isomorphism, {}; composite verified",
                count(fac.degeneracies.len(), "degeneracy", "degeneracies"),
                count(fac.faces.len(), "face", "faces")
            );
            Ok(text)
        }
        Command::Graft { tree, at, branch } => {
            let a = load(tree, flavour)?;
            let b = load(branch, flavour)?;
            let grafted = graft(&a, at, &b)?;
            if as_json {
                return Ok(json(&BroadPosetJson::from(&grafted.poset)));
            }
            let mut text = String::new();
            let _ = writeln!(text, "{}", to_term(&grafted.poset)?);
            let _ = writeln!(text, "{}", grafted.poset);
            for (old, new) in &grafted.renaming {
                let _ = writeln!(text, "renamed {old} to {new}");
            }
            Ok(text)
        }
        Command::Tensor { left, right } => {
            let (a, b) = (load(left, flavour)?, load(right, flavour)?);
            let bound = cli.max_word_len.unwrap_or(a.len() * b.len());
            let p = tensor(&a, &b, bound)?;
            if as_json {
                return Ok(poset_output(&p, true));
            }
            Ok(format!("{p}\nsimple: {}\n", p.is_simple()))
        }
        Command::Product { left, right } => {
            let p = product(&load_arc(left, flavour)?, &load_arc(right, flavour)?)?;
            Ok(poset_output(&p.poset, as_json))
        }
        Command::Pushout {
            apex,
            a,
            b,
            left,
            right,
        } => {
            let c = load_arc(apex, flavour)?;
            let f = MonotoneMap::new(c.clone(), load_arc(a, flavour)?, &parse_map_literal(left)?)?;
            let g = MonotoneMap::new(c, load_arc(b, flavour)?, &parse_map_literal(right)?)?;
            let bound = cli
                .max_word_len
                .unwrap_or(f.codomain().len() + g.codomain().len());
            let p = pushout(&f, &g, bound)?;
            Ok(poset_output(&p.poset, as_json))
        }
        Command::Dot { tree } => Ok(dot(&load_tree(tree, flavour)?)),
    }
}

fn poset_output(p: &BroadPoset, as_json: bool) -> String {
    if as_json {
        json(&BroadPosetJson::from(p))
    } else {
        format!("{p}\n")
    }
}

fn check(arg: &str, flavour: Flavour, as_json: bool, negative: &mut String) -> Outcome {
    let poset = match read_file(arg) {
        Some(text) => {
            let rel = dendroidal::json::relation_from_json(&text?)?;
            let report = rel.validate();
            if !report.is_valid() {
                *negative = if as_json {
                    json(&report)
                } else {
                    let mut text = format!(
                        "broad poset: false; transitive {}; antisymmetric {}\n",
                        report.transitive, report.antisymmetric
                    );
                    for v in &report.violations {
                        let _ = writeln!(text, "  {v}");
                    }
                    text
                };
                return Err(Failure::Negative);
            }
            BroadPoset::new(rel)?
        }
        None => to_broad(&parse_term(arg)?, flavour)?,
    };
    let report = dendro::is_dendroidal(&poset);
    let text = if as_json {
        json(&report)
    } else if report.is_dendroidal {
        format!(
            "dendroidal: true; degree {}; leaves {}\n",
            dendro::degree(&poset),
            dendro::leaves(&poset).join(",")
        )
    } else {
        format!("dendroidal: false; {}\n", report.violations.join("; "))
    };
    if report.is_dendroidal {
        Ok(text)
    } else {
        *negative = text;
        Err(Failure::Negative)
    }
}

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Edges become labelled nodes; each vertex is a point that its input edges
/// feed into and that feeds its output edge. Stump vertices are squares.
pub fn dot(t: &Tree) -> String {
    let mut text = String::from("digraph tree {\n  rankdir=BT;\n");
    if t.poset().flavour() == Flavour::Planar {
        text.push_str("  ordering=in;\n");
    }
    text.push_str("  node [shape=plaintext];\n");
    for x in 0..t.len() {
        let _ = writeln!(text, "  e{x} [label={}];", quote(t.name(x)));
    }
    for x in 0..t.len() {
        let Some(inputs) = t.up(x) else { continue };
        if inputs.is_empty() {
            let _ = writeln!(
                text,
                "  v{x} [shape=square, style=filled, label=\"\", width=0.12, height=0.12];"
            );
        } else {
            let _ = writeln!(text, "  v{x} [shape=point];");
        }
        for &y in inputs {
            let _ = writeln!(text, "  e{y} -> v{x} [arrowhead=none];");
        }
        let _ = writeln!(text, "  v{x} -> e{x} [arrowhead=none];");
    }
    text.push_str("}\n");
    text
}

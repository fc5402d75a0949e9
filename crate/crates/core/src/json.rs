//! JSON forms of broad posets, monotone maps and factorizations.
//!
//! A broad poset is written as
//! `{"flavour": "commutative", "carrier": [...], "relation": [{"source": [...], "target": ...}]}`
//! with reflexive pairs omitted; reflexive pairs are accepted and dropped on
//! reading. A map is `{"domain": ..., "codomain": ..., "assignment": {...}}`
//! where each endpoint is a broad poset object or a tree term string.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::broad::{BroadPoset, BroadRelation, Flavour, MonotoneMap};
use crate::dendro::Tree;
use crate::error::{Error, Result};
use crate::omega::{FaceKind, Factorization, MapKind};
use crate::trees::{parse_term, to_broad};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub source: Vec<String>,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BroadPosetJson {
    pub flavour: Flavour,
    pub carrier: Vec<String>,
    pub relation: Vec<PairJson>,
}

impl From<&BroadPoset> for BroadPosetJson {
    fn from(p: &BroadPoset) -> Self {
        BroadPosetJson {
            flavour: p.flavour(),
            carrier: p.carrier().to_vec(),
            relation: p
                .named_pairs()
                .into_iter()
                .map(|(w, t)| PairJson {
                    source: w.letters().to_vec(),
                    target: t,
                })
                .collect(),
        }
    }
}

impl BroadPosetJson {
    /// The relation as written, without checking the broad poset axioms.
    pub fn to_relation(&self) -> Result<BroadRelation> {
        BroadRelation::new(
            self.flavour,
            self.carrier.iter().cloned(),
            self.relation
                .iter()
                .map(|p| (p.source.iter().map(String::as_str), p.target.as_str())),
        )
    }

    pub fn to_poset(&self) -> Result<BroadPoset> {
        BroadPoset::new(self.to_relation()?)
    }
}

/// An endpoint of a map: a broad poset or a tree term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PosetRef {
    Poset(BroadPosetJson),
    Term(String),
}

impl PosetRef {
    pub fn resolve(&self, flavour: Flavour) -> Result<BroadPoset> {
        match self {
            PosetRef::Poset(p) => p.to_poset(),
            PosetRef::Term(t) => to_broad(&parse_term(t)?, flavour),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub domain: PosetRef,
    pub codomain: PosetRef,
    pub assignment: BTreeMap<String, String>,
    /// Flavour for term endpoints; defaults to commutative.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flavour: Option<Flavour>,
}

impl From<&MonotoneMap> for MapJson {
    fn from(f: &MonotoneMap) -> Self {
        MapJson {
            domain: PosetRef::Poset(f.domain().as_ref().into()),
            codomain: PosetRef::Poset(f.codomain().as_ref().into()),
            assignment: f.assignment(),
            flavour: None,
        }
    }
}

impl MapJson {
    pub fn to_map(&self) -> Result<MonotoneMap> {
        let flavour = self.flavour.unwrap_or(Flavour::Commutative);
        let domain = Arc::new(self.domain.resolve(flavour)?);
        let codomain = Arc::new(self.codomain.resolve(flavour)?);
        MonotoneMap::new(domain, codomain, &self.assignment)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationJson {
    pub degeneracies: Vec<MapJson>,
    pub iso: MapJson,
    pub faces: Vec<MapJson>,
    pub kinds: Vec<MapKind>,
}

impl FactorizationJson {
    pub fn new(fac: &Factorization) -> Result<Self> {
        Ok(FactorizationJson {
            degeneracies: fac.degeneracies.iter().map(MapJson::from).collect(),
            iso: (&fac.iso).into(),
            faces: fac.faces.iter().map(MapJson::from).collect(),
            kinds: fac.kinds()?,
        })
    }

    pub fn to_factorization(&self) -> Result<Factorization> {
        Ok(Factorization {
            degeneracies: self
                .degeneracies
                .iter()
                .map(MapJson::to_map)
                .collect::<Result<_>>()?,
            iso: self.iso.to_map()?,
            faces: self
                .faces
                .iter()
                .map(MapJson::to_map)
                .collect::<Result<_>>()?,
        })
    }
}

/// Structural summary of a tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeInfoJson {
    pub root: String,
    pub leaves: Vec<String>,
    pub stumps: Vec<String>,
    pub inner_edges: Vec<String>,
    pub degree: usize,
    pub links: Vec<PairJson>,
}

impl From<&Tree> for TreeInfoJson {
    fn from(t: &Tree) -> Self {
        let names = |xs: Vec<usize>| xs.into_iter().map(|x| t.name(x).to_string()).collect();
        TreeInfoJson {
            root: t.root_name().to_string(),
            leaves: names(t.leaves()),
            stumps: names(t.stumps()),
            inner_edges: names(t.inner_edges()),
            degree: t.degree(),
            links: t
                .vertices()
                .into_iter()
                .map(|(inputs, output)| PairJson {
                    source: inputs.iter().map(|&x| t.name(x).to_string()).collect(),
                    target: t.name(output).to_string(),
                })
                .collect(),
        }
    }
}

/// A subtree, with its face kind when it is maximal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubtreeJson {
    pub subtree: BroadPosetJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face: Option<FaceKind>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub kind: FaceKind,
    pub map: MapJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyJson {
    pub child: String,
    pub parent: String,
    pub map: MapJson,
}

/// A hom-set listing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomJson {
    pub count: usize,
    pub maps: Vec<BTreeMap<String, String>>,
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        position: e.column(),
        message: format!("invalid JSON at line {}: {e}", e.line()),
    }
}

pub fn poset_to_json(p: &BroadPoset) -> String {
    serde_json::to_string_pretty(&BroadPosetJson::from(p)).expect("serializable")
}

pub fn poset_from_json(text: &str) -> Result<BroadPoset> {
    serde_json::from_str::<BroadPosetJson>(text)
        .map_err(parse_error)?
        .to_poset()
}

/// Reads relation data without requiring the broad poset axioms.
pub fn relation_from_json(text: &str) -> Result<BroadRelation> {
    serde_json::from_str::<BroadPosetJson>(text)
        .map_err(parse_error)?
        .to_relation()
}

pub fn map_to_json(f: &MonotoneMap) -> String {
    serde_json::to_string_pretty(&MapJson::from(f)).expect("serializable")
}

pub fn map_from_json(text: &str) -> Result<MonotoneMap> {
    serde_json::from_str::<MapJson>(text)
        .map_err(parse_error)?
        .to_map()
}

pub fn factorization_to_json(fac: &Factorization) -> Result<String> {
    Ok(serde_json::to_string_pretty(&FactorizationJson::new(fac)?).expect("serializable"))
}

pub fn factorization_from_json(text: &str) -> Result<Factorization> {
    serde_json::from_str::<FactorizationJson>(text)
        .map_err(parse_error)?
        .to_factorization()
}

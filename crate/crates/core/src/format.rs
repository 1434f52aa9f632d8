//! JSON file formats for collections, tables, graphs, traces and search results.
//!
//! Colours of input graphs are decimal strings so that arbitrarily large
//! values survive a round trip exactly.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::collection::{construct, Collection, Family, Subset};
use crate::compiler::AlgorithmTable;
use crate::search::SearchResult;
use crate::simulator::{ChainTrace, ColouredGraph, Topology};
use crate::{Error, Result};

const CONSTRUCT_RULE: &str = "construct";

#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct CollectionDoc {
    pub c: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub families: Option<Vec<Vec<Vec<u32>>>>,
}

impl CollectionDoc {
    pub fn from_collection(a: &Collection) -> Result<Self> {
        if a.is_constructed() {
            return Ok(CollectionDoc {
                c: a.c(),
                k: None,
                rule: Some(CONSTRUCT_RULE.into()),
                families: None,
            });
        }
        let families = a.families()?;
        Ok(CollectionDoc {
            c: a.c(),
            k: Some(families.len() as u64),
            rule: None,
            families: Some(
                families
                    .iter()
                    .map(|f| f.subsets().iter().map(|s| s.colours()).collect())
                    .collect(),
            ),
        })
    }

    pub fn into_collection(self) -> Result<Collection> {
        match (self.rule, self.families) {
            (Some(rule), None) if rule == CONSTRUCT_RULE => construct(self.c),
            (Some(rule), None) => Err(Error::Malformed(format!("unknown rule {rule:?}"))),
            (None, Some(families)) => {
                if let Some(k) = self.k.filter(|&k| k != families.len() as u64) {
                    return Err(Error::Malformed(format!(
                        "k = {k} but {} families are listed",
                        families.len()
                    )));
                }
                let families = families
                    .iter()
                    .enumerate()
                    .map(|(i, subsets)| {
                        let subsets = subsets
                            .iter()
                            .enumerate()
                            .map(|(j, colours)| {
                                Subset::from_colours(self.c, colours).map_err(|e| {
                                    Error::Malformed(format!("families[{i}][{j}]: {e}"))
                                })
                            })
                            .collect::<Result<Vec<_>>>()?;
                        Family::new(subsets)
                            .map_err(|e| Error::Malformed(format!("families[{i}]: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Collection::explicit(self.c, families)
            }
            _ => Err(Error::Malformed(
                "a collection needs exactly one of \"rule\" or \"families\"".into(),
            )),
        }
    }
}

pub fn collection_to_json(a: &Collection) -> Result<String> {
    to_json(&CollectionDoc::from_collection(a)?)
}

pub fn collection_from_json(text: &str) -> Result<Collection> {
    from_json::<CollectionDoc>(text)?.into_collection()
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct TableDoc {
    pub k: u32,
    pub c: u32,
    /// `[x, y, z, colour]` records in `(x, y, z)` order.
    pub entries: Vec<[u32; 4]>,
}

pub fn table_to_json(t: &AlgorithmTable) -> Result<String> {
    to_json(&TableDoc {
        k: t.k(),
        c: t.c(),
        entries: t.entries().map(|((x, y, z), v)| [x, y, z, v]).collect(),
    })
}

pub fn table_from_json(text: &str) -> Result<AlgorithmTable> {
    let doc: TableDoc = from_json(text)?;
    AlgorithmTable::from_entries(
        doc.k,
        doc.c,
        doc.entries.into_iter().map(|[x, y, z, v]| ((x, y, z), v)),
    )
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub topology: String,
    pub k: String,
    pub colours: Vec<String>,
    #[serde(default)]
    pub oriented: bool,
}

fn parse_big(field: &str, s: &str) -> Result<BigUint> {
    BigUint::parse_bytes(s.as_bytes(), 10)
        .ok_or_else(|| Error::Malformed(format!("{field}: {s:?} is not a decimal integer")))
}

pub fn graph_to_json(g: &ColouredGraph) -> Result<String> {
    to_json(&GraphDoc {
        topology: g.topology.to_string(),
        k: g.k.to_str_radix(10),
        colours: g.colours.iter().map(|c| c.to_str_radix(10)).collect(),
        oriented: g.oriented,
    })
}

pub fn graph_from_json(text: &str) -> Result<ColouredGraph> {
    let doc: GraphDoc = from_json(text)?;
    let topology: Topology = doc.topology.parse()?;
    let k = parse_big("k", &doc.k)?;
    let colours = doc
        .colours
        .iter()
        .enumerate()
        .map(|(i, s)| parse_big(&format!("colours[{i}]"), s))
        .collect::<Result<Vec<_>>>()?;
    Ok(ColouredGraph::new(topology, colours, k)?.oriented(doc.oriented))
}

#[derive(Serialize, Deserialize, Debug)]
pub struct RoundDoc {
    pub stage: String,
    pub k_in: String,
    pub k_out: String,
    pub digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snapshot: Option<Vec<String>>,
}

pub fn trace_to_json(trace: &ChainTrace) -> Result<String> {
    let rounds: Vec<RoundDoc> = trace
        .rounds
        .iter()
        .map(|r| RoundDoc {
            stage: r.stage.clone(),
            k_in: r.k_in.to_str_radix(10),
            k_out: r.k_out.to_str_radix(10),
            digest: r.digest.clone(),
            snapshot: r
                .snapshot
                .as_ref()
                .map(|s| s.iter().map(|c| c.to_str_radix(10)).collect()),
        })
        .collect();
    to_json(&rounds)
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct SearchDoc {
    pub c: u32,
    pub best_size: usize,
    pub exhaustive: bool,
    pub nodes: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<CollectionDoc>,
}

pub fn search_to_json(r: &SearchResult) -> Result<String> {
    to_json(&SearchDoc {
        c: r.c,
        best_size: r.best_size,
        exhaustive: r.exhaustive,
        nodes: r.nodes,
        witness: r
            .witness
            .as_ref()
            .map(CollectionDoc::from_collection)
            .transpose()?,
    })
}

pub fn search_from_json(text: &str) -> Result<SearchResult> {
    let doc: SearchDoc = from_json(text)?;
    let witness = doc.witness.map(CollectionDoc::into_collection).transpose()?;
    if let Some(w) = &witness {
        if w.size() != BigUint::from(doc.best_size) {
            return Err(Error::Malformed(format!(
                "best_size {} does not match the witness size {}",
                doc.best_size,
                w.size()
            )));
        }
    }
    Ok(SearchResult {
        c: doc.c,
        best_size: doc.best_size,
        witness,
        exhaustive: doc.exhaustive,
        nodes: doc.nodes,
    })
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Malformed(e.to_string()))
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
}

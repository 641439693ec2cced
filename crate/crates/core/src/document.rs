//! Graph JSON ingest/emit and DOT export.
//!
//! The wire format is `{"vertices":[p1,...],"edges":[[pi,pj],...]}` with an
//! optional free-form `metadata` object.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{LabeledGraph, PrimeLabel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<u64>,
    pub edges: Vec<[u64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<BTreeMap<String, serde_json::Value>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    /// Reject labels that are not prime.
    pub prime_check: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self { prime_check: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    /// The edge appeared more than once and was kept as a single edge.
    DuplicateEdge(u64, u64),
}

impl std::fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseWarning::DuplicateEdge(a, b) => {
                write!(f, "duplicate edge {a}-{b} collapsed to a single edge")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: LabeledGraph,
    pub metadata: Option<BTreeMap<String, serde_json::Value>>,
    pub warnings: Vec<ParseWarning>,
}

pub fn parse_graph(text: &str, options: ParseOptions) -> Result<ParsedGraph, GraphError> {
    let doc: GraphDocument =
        serde_json::from_str(text).map_err(|e| GraphError::MalformedInput(e.to_string()))?;
    graph_from_document(doc, options)
}

pub fn graph_from_document(
    doc: GraphDocument,
    options: ParseOptions,
) -> Result<ParsedGraph, GraphError> {
    let make = |v: u64| {
        if options.prime_check {
            PrimeLabel::new(v)
        } else {
            PrimeLabel::unchecked(v)
        }
    };
    let labels = doc
        .vertices
        .iter()
        .map(|&v| make(v))
        .collect::<Result<Vec<_>, _>>()?;
    let declared: BTreeSet<u64> = doc.vertices.iter().copied().collect();

    let mut seen = BTreeSet::new();
    let mut warnings = Vec::new();
    let mut edges = Vec::with_capacity(doc.edges.len());
    for [a, b] in doc.edges {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        for end in [a, b] {
            if !declared.contains(&end) {
                return Err(GraphError::UnknownEndpoint(end));
            }
        }
        let key = (a.min(b), a.max(b));
        if !seen.insert(key) {
            warnings.push(ParseWarning::DuplicateEdge(key.0, key.1));
            continue;
        }
        edges.push((make(a)?, make(b)?));
    }
    let graph = LabeledGraph::new(labels, edges)?;
    Ok(ParsedGraph { graph, metadata: doc.metadata, warnings })
}

pub fn to_document(g: &LabeledGraph) -> GraphDocument {
    GraphDocument {
        vertices: g.labels().iter().map(|l| l.value()).collect(),
        edges: g.edges().map(|(a, b)| [a.value(), b.value()]).collect(),
        metadata: None,
    }
}

/// Compact Graph JSON (no whitespace, sorted vertices and edges).
pub fn to_json(g: &LabeledGraph) -> String {
    serde_json::to_string(&to_document(g)).expect("graph documents always serialize")
}

/// Undirected DOT with every vertex declared, then one line per edge.
pub fn to_dot(g: &LabeledGraph) -> String {
    let mut out = String::from("graph {\n");
    for l in g.labels() {
        let _ = writeln!(out, "  {l};");
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "  {a} -- {b};");
    }
    out.push_str("}\n");
    out
}

//! Necessary conditions for a graph to be the character degree graph of a
//! finite solvable group.
//!
//! Passing every check here does not make a graph realizable; the checks only
//! rule graphs out.

mod lewis;

pub use lewis::{
    all_lewis_partitions, block_by_partition, cut_vertex_by_partition, lewis_partition,
    ClauseEvidence, LewisPartition,
};

use std::fmt;

use serde::Serialize;

use crate::algos::{component_masks, diameter, Distance};
use crate::blocks::block_decomposition;
use crate::canon::are_isomorphic;
use crate::graph::{bits, full_mask, Edge, LabeledGraph, PrimeLabel};

/// Returns an independent triple (three pairwise non-adjacent vertices), if
/// any; the graph satisfies the three-prime condition iff there is none.
pub fn independent_triple(g: &LabeledGraph) -> Option<[PrimeLabel; 3]> {
    let n = g.n();
    let mask = g.vertex_mask();
    for i in 0..n {
        let non_i = !g.neighbors(i) & mask & !full_mask(i + 1);
        for j in bits(non_i) {
            let common = non_i & !g.neighbors(j) & !full_mask(j + 1);
            if common != 0 {
                let k = common.trailing_zeros() as usize;
                return Some([g.label(i), g.label(j), g.label(k)]);
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PalfyResult {
    pub holds: bool,
    pub witness: Option<[PrimeLabel; 3]>,
}

/// Every three vertices span at least one edge.
pub fn palfy_condition(g: &LabeledGraph) -> PalfyResult {
    let witness = independent_triple(g);
    PalfyResult { holds: witness.is_none(), witness }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionName {
    Palfy,
    ComponentCount,
    TwoComponentsBothComplete,
    DiameterBound,
    CutVertexBound,
    CutEdgeBound,
    NotP4,
}

impl ConditionName {
    pub const ALL: [ConditionName; 7] = [
        ConditionName::Palfy,
        ConditionName::ComponentCount,
        ConditionName::TwoComponentsBothComplete,
        ConditionName::DiameterBound,
        ConditionName::CutVertexBound,
        ConditionName::CutEdgeBound,
        ConditionName::NotP4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConditionName::Palfy => "palfy",
            ConditionName::ComponentCount => "component_count",
            ConditionName::TwoComponentsBothComplete => "two_components_both_complete",
            ConditionName::DiameterBound => "diameter_bound",
            ConditionName::CutVertexBound => "cut_vertex_bound",
            ConditionName::CutEdgeBound => "cut_edge_bound",
            ConditionName::NotP4 => "not_p4",
        }
    }

    pub fn citation(self) -> &'static str {
        match self {
            ConditionName::Palfy => "Palfy: any three vertices span an edge",
            ConditionName::ComponentCount => "Palfy: at most two connected components",
            ConditionName::TwoComponentsBothComplete => {
                "Palfy: a disconnected graph is two complete components"
            }
            ConditionName::DiameterBound => "connected graphs have diameter at most 3",
            ConditionName::CutVertexBound => "Lewis: at most one cut vertex",
            ConditionName::CutEdgeBound => "connected graphs have at most two cut edges",
            ConditionName::NotP4 => "Zhang: the path on four vertices is excluded",
        }
    }
}

impl fmt::Display for ConditionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    IndependentTriple { vertices: [PrimeLabel; 3] },
    Components { count: usize, components: Vec<Vec<PrimeLabel>> },
    MissingEdge { component: Vec<PrimeLabel>, missing: Edge },
    Diameter { diameter: Distance },
    CutVertices { cut_vertices: Vec<PrimeLabel> },
    Bridges { bridges: Vec<Edge> },
    IsomorphicToP4,
    NotApplicable { reason: &'static str },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionVerdict {
    pub name: ConditionName,
    pub pass: bool,
    pub citation: &'static str,
    /// Failure evidence, or the reason the condition does not apply.
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CdgReport {
    pub conditions: Vec<ConditionVerdict>,
    pub overall: bool,
}

impl CdgReport {
    pub fn get(&self, name: ConditionName) -> &ConditionVerdict {
        self.conditions
            .iter()
            .find(|c| c.name == name)
            .expect("every condition is reported")
    }

    pub fn passes(&self, name: ConditionName) -> bool {
        self.get(name).pass
    }

    pub fn failures(&self) -> Vec<ConditionName> {
        self.conditions.iter().filter(|c| !c.pass).map(|c| c.name).collect()
    }
}

fn verdict(name: ConditionName, pass: bool, witness: Option<Witness>) -> ConditionVerdict {
    ConditionVerdict { name, pass, citation: name.citation(), witness }
}

fn not_applicable(name: ConditionName, reason: &'static str) -> ConditionVerdict {
    verdict(name, true, Some(Witness::NotApplicable { reason }))
}

/// Runs every necessary condition in a fixed order and reports all failures.
pub fn necessary_pipeline(g: &LabeledGraph) -> CdgReport {
    use ConditionName::*;
    let mut out = Vec::with_capacity(ConditionName::ALL.len());

    let triple = independent_triple(g);
    out.push(verdict(
        Palfy,
        triple.is_none(),
        triple.map(|vertices| Witness::IndependentTriple { vertices }),
    ));

    let comps = component_masks(g);
    out.push(if comps.len() <= 2 {
        verdict(ComponentCount, true, None)
    } else {
        verdict(
            ComponentCount,
            false,
            Some(Witness::Components {
                count: comps.len(),
                components: comps.iter().map(|&m| g.labels_of_mask(m)).collect(),
            }),
        )
    });

    out.push(if comps.len() == 2 {
        let missing = comps.iter().find_map(|&m| {
            bits(m).find_map(|i| {
                let gap = m & !g.neighbors(i) & !(1u64 << i);
                (gap != 0).then(|| (m, i, gap.trailing_zeros() as usize))
            })
        });
        match missing {
            None => verdict(TwoComponentsBothComplete, true, None),
            Some((m, i, j)) => verdict(
                TwoComponentsBothComplete,
                false,
                Some(Witness::MissingEdge {
                    component: g.labels_of_mask(m),
                    missing: (g.label(i), g.label(j)),
                }),
            ),
        }
    } else {
        not_applicable(TwoComponentsBothComplete, "graph does not have exactly two components")
    });

    out.push(if comps.len() == 1 {
        let d = diameter(g);
        let pass = d <= Distance::Finite(3);
        verdict(DiameterBound, pass, (!pass).then_some(Witness::Diameter { diameter: d }))
    } else {
        not_applicable(DiameterBound, "graph is not connected")
    });

    let blocks = block_decomposition(g);
    let pass = blocks.cut_vertices.len() <= 1;
    out.push(verdict(
        CutVertexBound,
        pass,
        (!pass).then(|| Witness::CutVertices { cut_vertices: blocks.cut_vertices.clone() }),
    ));
    let pass = blocks.bridges.len() <= 2;
    out.push(verdict(
        CutEdgeBound,
        pass,
        (!pass).then(|| Witness::Bridges { bridges: blocks.bridges.clone() }),
    ));

    let is_p4 = g.n() == 4 && are_isomorphic(g, &path_on(g.labels())).unwrap_or(false);
    out.push(verdict(NotP4, !is_p4, is_p4.then_some(Witness::IsomorphicToP4)));

    let overall = out.iter().all(|c| c.pass);
    CdgReport { conditions: out, overall }
}

fn path_on(labels: &[PrimeLabel]) -> LabeledGraph {
    LabeledGraph::new(labels.to_vec(), labels.windows(2).map(|w| (w[0], w[1])))
        .expect("labels come from a valid graph")
}

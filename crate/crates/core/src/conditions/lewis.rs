//! The four-part vertex partition of a diameter-three graph.
//!
//! From a base vertex `r` of eccentricity 3: rho4 is everything at distance
//! 3, rho3 everything at distance 2, rho2 the neighbours of `r` with a
//! neighbour in rho3, and rho1 is `r` with its remaining neighbours.

use serde::Serialize;

use crate::algos::{bfs_distances, component_masks, diameter, eccentricity, Distance};
use crate::blocks::block_masks;
use crate::error::{PartitionClause, PartitionError};
use crate::graph::{bits, LabeledGraph, PrimeLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseEvidence {
    pub clause: PartitionClause,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LewisPartition {
    pub base: PrimeLabel,
    /// A vertex at distance 3 from `base`.
    pub antipode: PrimeLabel,
    pub rho1: Vec<PrimeLabel>,
    pub rho2: Vec<PrimeLabel>,
    pub rho3: Vec<PrimeLabel>,
    pub rho4: Vec<PrimeLabel>,
    /// Every structural clause, each verified against the graph.
    pub evidence: Vec<ClauseEvidence>,
}

/// The four parts as index bitmasks of one graph.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PartMasks {
    pub rho1: u64,
    pub rho2: u64,
    pub rho3: u64,
    pub rho4: u64,
}

impl LewisPartition {
    pub(crate) fn masks(&self, g: &LabeledGraph) -> PartMasks {
        let m = |part: &[PrimeLabel]| g.mask_of(part).expect("partition belongs to this graph");
        PartMasks {
            rho1: m(&self.rho1),
            rho2: m(&self.rho2),
            rho3: m(&self.rho3),
            rho4: m(&self.rho4),
        }
    }
}

fn require_diameter_three(g: &LabeledGraph) -> Result<(), PartitionError> {
    match diameter(g) {
        Distance::Finite(3) => Ok(()),
        d => Err(PartitionError::NotDiameterThree(d.to_string())),
    }
}

/// Partition from `base`, or from the smallest-labelled vertex of
/// eccentricity 3 when `base` is `None`.
pub fn lewis_partition(
    g: &LabeledGraph,
    base: Option<PrimeLabel>,
) -> Result<LewisPartition, PartitionError> {
    require_diameter_three(g)?;
    let r = match base {
        Some(label) => {
            let r = g.index_of(label).ok_or(PartitionError::UnknownVertex(label))?;
            let ecc = eccentricity(g, r);
            if ecc != Distance::Finite(3) {
                return Err(PartitionError::BadBaseVertex { label, eccentricity: ecc.to_string() });
            }
            r
        }
        None => (0..g.n())
            .find(|&i| eccentricity(g, i) == Distance::Finite(3))
            .expect("a diameter-3 graph has a vertex of eccentricity 3"),
    };
    partition_from(g, r, None)
}

/// One partition per diametral pair `(r, s)`, ordered by `r` then `s`.
/// Pairs whose partition violates the structure are reported as errors in
/// place.
pub fn all_lewis_partitions(
    g: &LabeledGraph,
) -> Result<Vec<Result<LewisPartition, PartitionError>>, PartitionError> {
    require_diameter_three(g)?;
    let mut out = Vec::new();
    for r in 0..g.n() {
        let dist = bfs_distances(g, r);
        for s in (0..g.n()).filter(|&s| dist[s] == Distance::Finite(3)) {
            out.push(partition_from(g, r, Some(s)));
        }
    }
    Ok(out)
}

fn partition_from(
    g: &LabeledGraph,
    r: usize,
    antipode: Option<usize>,
) -> Result<LewisPartition, PartitionError> {
    let dist = bfs_distances(g, r);
    let at = |d: usize| {
        (0..g.n())
            .filter(|&v| dist[v] == Distance::Finite(d))
            .fold(0u64, |m, v| m | 1 << v)
    };
    let rho4 = at(3);
    let rho3 = at(2);
    let near = at(1);
    let rho2 = bits(near)
        .filter(|&v| g.neighbors(v) & rho3 != 0)
        .fold(0u64, |m, v| m | 1 << v);
    let rho1 = (1u64 << r) | (near & !rho2);
    let parts = PartMasks { rho1, rho2, rho3, rho4 };

    let mut evidence = Vec::with_capacity(PartitionClause::ALL.len());
    for clause in PartitionClause::ALL {
        if let Some(witness) = violation(g, &parts, clause) {
            return Err(PartitionError::StructureViolation {
                clause,
                witness: witness.into_iter().map(|i| g.label(i)).collect(),
            });
        }
        evidence.push(ClauseEvidence { clause, holds: true });
    }

    let s = antipode.unwrap_or_else(|| rho4.trailing_zeros() as usize);
    Ok(LewisPartition {
        base: g.label(r),
        antipode: g.label(s),
        rho1: g.labels_of_mask(rho1),
        rho2: g.labels_of_mask(rho2),
        rho3: g.labels_of_mask(rho3),
        rho4: g.labels_of_mask(rho4),
        evidence,
    })
}

/// Vertex indices witnessing that `clause` fails, or `None` if it holds.
pub(crate) fn violation(g: &LabeledGraph, p: &PartMasks, clause: PartitionClause) -> Option<Vec<usize>> {
    let non_adjacent_pair = |set: u64| {
        bits(set).find_map(|i| {
            let gap = set & !g.neighbors(i) & !(1u64 << i);
            (gap != 0).then(|| vec![i, gap.trailing_zeros() as usize])
        })
    };
    let edge_between = |a: u64, b: u64| {
        bits(a).find_map(|i| {
            let hit = g.neighbors(i) & b;
            (hit != 0).then(|| vec![i, hit.trailing_zeros() as usize])
        })
    };
    let without_neighbour_in = |a: u64, b: u64| bits(a).find(|&i| g.neighbors(i) & b == 0).map(|i| vec![i]);
    match clause {
        PartitionClause::LeftComplete => non_adjacent_pair(p.rho1 | p.rho2),
        PartitionClause::RightComplete => non_adjacent_pair(p.rho3 | p.rho4),
        PartitionClause::LeftEndIsolated => edge_between(p.rho1, p.rho3 | p.rho4),
        PartitionClause::RightEndIsolated => edge_between(p.rho4, p.rho1 | p.rho2),
        PartitionClause::LeftMiddleReachesRight => without_neighbour_in(p.rho2, p.rho3),
        PartitionClause::RightMiddleReachesLeft => without_neighbour_in(p.rho3, p.rho2),
    }
}

/// Block criterion from the partition: both middle parts have two or more
/// vertices.
pub fn block_by_partition(p: &LewisPartition) -> bool {
    p.rho2.len() >= 2 && p.rho3.len() >= 2
}

/// The cut vertex the partition predicts (the sole rho2 vertex when
/// `|rho2| = 1`, otherwise none), checked against the block decomposition.
pub fn cut_vertex_by_partition(
    p: &LewisPartition,
    g: &LabeledGraph,
) -> Result<Option<PrimeLabel>, PartitionError> {
    let predicted = match p.rho2.as_slice() {
        [only] => Some(*only),
        _ => None,
    };
    let (_, cut) = block_masks(g);
    let actual = g.labels_of_mask(cut);
    let consistent = match predicted {
        Some(v) => actual == [v],
        None => actual.is_empty(),
    };
    debug_assert_eq!(component_masks(g).len(), 1);
    if consistent {
        Ok(predicted)
    } else {
        Err(PartitionError::InconsistentWitness { predicted, actual })
    }
}

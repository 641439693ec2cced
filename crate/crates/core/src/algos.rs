//! Connectivity, distances, degrees and the even-degree Euler test.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::graph::{bits, LabeledGraph, PrimeLabel};

/// A shortest-path length, or infinity between different components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Bitmask of the component containing `start`, restricted to `allowed`.
pub(crate) fn reach(adj: &[u64], start: usize, allowed: u64) -> u64 {
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in bits(frontier) {
            next |= adj[v];
        }
        frontier = next & allowed & !seen;
        seen |= frontier;
    }
    seen
}

/// Component bitmasks ordered by their lowest vertex index.
pub fn component_masks(g: &LabeledGraph) -> Vec<u64> {
    let mut left = g.vertex_mask();
    let mut out = Vec::new();
    while left != 0 {
        let c = reach(g.adjacency(), left.trailing_zeros() as usize, left);
        out.push(c);
        left &= !c;
    }
    out
}

/// Connected components as label lists, sorted by smallest label.
pub fn connected_components(g: &LabeledGraph) -> Vec<Vec<PrimeLabel>> {
    component_masks(g).into_iter().map(|m| g.labels_of_mask(m)).collect()
}

pub fn is_connected(g: &LabeledGraph) -> bool {
    g.n() > 0 && component_masks(g).len() == 1
}

/// BFS distances from the vertex at `source` (by index).
pub fn bfs_distances(g: &LabeledGraph, source: usize) -> Vec<Distance> {
    let mut dist = vec![Distance::Infinite; g.n()];
    dist[source] = Distance::Finite(0);
    let mut seen = 1u64 << source;
    let mut frontier = seen;
    let mut level = 0;
    while frontier != 0 {
        level += 1;
        let mut next = 0;
        for v in bits(frontier) {
            next |= g.neighbors(v);
        }
        frontier = next & !seen;
        seen |= frontier;
        for v in bits(frontier) {
            dist[v] = Distance::Finite(level);
        }
    }
    dist
}

/// All-pairs shortest-path distances, indexed by vertex index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceTable {
    labels: Vec<PrimeLabel>,
    rows: Vec<Vec<Distance>>,
}

impl DistanceTable {
    pub fn new(g: &LabeledGraph) -> Self {
        Self {
            labels: g.labels().to_vec(),
            rows: (0..g.n()).map(|s| bfs_distances(g, s)).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Distance {
        self.rows[i][j]
    }

    pub fn between(&self, a: PrimeLabel, b: PrimeLabel) -> Option<Distance> {
        let i = self.labels.binary_search(&a).ok()?;
        let j = self.labels.binary_search(&b).ok()?;
        Some(self.rows[i][j])
    }

    pub fn eccentricity(&self, i: usize) -> Distance {
        self.rows[i].iter().copied().max().unwrap_or(Distance::Finite(0))
    }

    pub fn max(&self) -> Distance {
        self.rows
            .iter()
            .flat_map(|r| r.iter().copied())
            .max()
            .unwrap_or(Distance::Finite(0))
    }
}

pub fn eccentricity(g: &LabeledGraph, index: usize) -> Distance {
    bfs_distances(g, index)
        .into_iter()
        .max()
        .unwrap_or(Distance::Finite(0))
}

/// Largest pairwise distance; infinite for disconnected graphs. The graphs
/// on zero or one vertex have diameter 0.
pub fn diameter(g: &LabeledGraph) -> Distance {
    (0..g.n())
        .map(|s| eccentricity(g, s))
        .max()
        .unwrap_or(Distance::Finite(0))
}

/// Degrees sorted in descending order.
pub fn degree_sequence(g: &LabeledGraph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.n()).map(|i| g.degree(i)).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

pub fn is_k_regular(g: &LabeledGraph, k: usize) -> bool {
    (0..g.n()).all(|i| g.degree(i) == k)
}

/// The common degree when the graph is regular.
pub fn regular_degree(g: &LabeledGraph) -> Option<usize> {
    let k = if g.n() == 0 { 0 } else { g.degree(0) };
    is_k_regular(g, k).then_some(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EulerReason {
    /// Connected with every degree even.
    AllEven,
    NoVertices,
    Disconnected { components: usize },
    /// First vertex, by label, whose degree is odd.
    OddDegree { vertex: PrimeLabel, degree: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EulerTest {
    pub eulerian: bool,
    pub reason: EulerReason,
}

/// Closed-trail test: connected and every vertex of even degree.
pub fn is_eulerian_direct(g: &LabeledGraph) -> EulerTest {
    let fail = |reason| EulerTest { eulerian: false, reason };
    if g.n() == 0 {
        return fail(EulerReason::NoVertices);
    }
    let components = component_masks(g).len();
    if components != 1 {
        return fail(EulerReason::Disconnected { components });
    }
    if let Some(i) = (0..g.n()).find(|&i| g.degree(i) % 2 == 1) {
        return fail(EulerReason::OddDegree { vertex: g.label(i), degree: g.degree(i) });
    }
    EulerTest { eulerian: true, reason: EulerReason::AllEven }
}

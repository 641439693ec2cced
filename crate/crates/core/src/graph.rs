//! Simple undirected graphs on prime-labelled vertices.
//!
//! A [`LabeledGraph`] stores its vertices sorted ascending by label and its
//! adjacency as one `u64` neighbour bitset per vertex index, so graphs are
//! limited to [`MAX_VERTICES`] vertices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Largest vertex count a [`LabeledGraph`] can hold.
pub const MAX_VERTICES: usize = 64;

/// Trial-division primality test.
pub fn is_prime(value: u64) -> bool {
    if value < 2 {
        return false;
    }
    if value < 4 {
        return true;
    }
    if value.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= value {
        if value.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Returns the first `count` primes in ascending order.
pub fn first_primes(count: usize) -> Vec<u64> {
    (2u64..).filter(|&p| is_prime(p)).take(count).collect()
}

/// A vertex label.
///
/// Labels built with [`PrimeLabel::new`] are prime. [`PrimeLabel::unchecked`]
/// admits any positive integer for pure graph work where primality is
/// irrelevant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PrimeLabel(u64);

impl PrimeLabel {
    pub fn new(value: u64) -> Result<Self, GraphError> {
        if is_prime(value) {
            Ok(Self(value))
        } else {
            Err(GraphError::NonPrimeLabel(value))
        }
    }

    /// Builds a label without the primality check. Zero is still rejected.
    pub fn unchecked(value: u64) -> Result<Self, GraphError> {
        if value == 0 {
            Err(GraphError::NonPositiveLabel)
        } else {
            Ok(Self(value))
        }
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_prime(self) -> bool {
        is_prime(self.0)
    }
}

impl fmt::Display for PrimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Unordered edge, stored with the smaller label first.
pub type Edge = (PrimeLabel, PrimeLabel);

/// Immutable simple graph with sorted labels and bitset adjacency.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    labels: Vec<PrimeLabel>,
    adj: Vec<u64>,
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().map(|(a, b)| (a.0, b.0)).collect();
        f.debug_struct("LabeledGraph")
            .field("vertices", &self.labels.iter().map(|l| l.0).collect::<Vec<_>>())
            .field("edges", &edges)
            .finish()
    }
}

impl LabeledGraph {
    /// Builds a graph from labels and label pairs.
    ///
    /// Duplicate edges (in either orientation) collapse silently; callers that
    /// need to report them use the document parser.
    pub fn new(
        labels: impl IntoIterator<Item = PrimeLabel>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, GraphError> {
        let mut labels: Vec<PrimeLabel> = labels.into_iter().collect();
        labels.sort_unstable();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0].0));
        }
        if labels.len() > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(labels.len()));
        }
        let mut adj = vec![0u64; labels.len()];
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a.0));
            }
            let i = labels
                .binary_search(&a)
                .map_err(|_| GraphError::UnknownEndpoint(a.0))?;
            let j = labels
                .binary_search(&b)
                .map_err(|_| GraphError::UnknownEndpoint(b.0))?;
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        Ok(Self { labels, adj })
    }

    /// Builds a graph from sorted distinct labels and a symmetric loop-free
    /// bitset adjacency. Panics if those invariants do not hold.
    pub fn from_adjacency(labels: Vec<PrimeLabel>, adj: Vec<u64>) -> Self {
        assert_eq!(labels.len(), adj.len(), "one adjacency row per label");
        assert!(labels.len() <= MAX_VERTICES);
        assert!(labels.windows(2).all(|w| w[0] < w[1]), "labels must be sorted and distinct");
        let mask = full_mask(labels.len());
        for (i, &row) in adj.iter().enumerate() {
            assert_eq!(row & !mask, 0, "adjacency bit out of range");
            assert_eq!(row >> i & 1, 0, "self-loop at index {i}");
            for j in bits(row) {
                assert!(adj[j] >> i & 1 == 1, "adjacency is not symmetric");
            }
        }
        Self { labels, adj }
    }

    pub fn empty(labels: impl IntoIterator<Item = PrimeLabel>) -> Result<Self, GraphError> {
        Self::new(labels, std::iter::empty())
    }

    pub fn complete(labels: impl IntoIterator<Item = PrimeLabel>) -> Result<Self, GraphError> {
        let g = Self::empty(labels)?;
        let mask = full_mask(g.n());
        let adj = (0..g.n()).map(|i| mask & !(1 << i)).collect();
        Ok(Self { labels: g.labels, adj })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[PrimeLabel] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> PrimeLabel {
        self.labels[index]
    }

    /// Bitset adjacency rows, one per vertex index.
    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn index_of(&self, label: PrimeLabel) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn contains(&self, label: PrimeLabel) -> bool {
        self.index_of(label).is_some()
    }

    /// Neighbour bitset of the vertex at `index`.
    pub fn neighbors(&self, index: usize) -> u64 {
        self.adj[index]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i] >> j & 1 == 1
    }

    /// Adjacency by label; `false` when either label is absent.
    pub fn has_edge(&self, a: PrimeLabel, b: PrimeLabel) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.adjacent(i, j),
            _ => false,
        }
    }

    pub fn degree(&self, index: usize) -> usize {
        self.adj[index].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Bitset with one bit per vertex index.
    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n())
    }

    /// Edges in lexicographic order of (smaller label, larger label).
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n()).flat_map(move |i| {
            bits(self.adj[i] & !full_mask(i + 1)).map(move |j| (self.labels[i], self.labels[j]))
        })
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.edge_count() == n * n.saturating_sub(1) / 2
    }

    /// Same vertex set; an edge is present iff it is absent here.
    pub fn complement(&self) -> Self {
        let mask = self.vertex_mask();
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(i, &row)| !row & mask & !(1 << i))
            .collect();
        Self { labels: self.labels.clone(), adj }
    }

    /// Subgraph induced by `subset` (duplicates in `subset` are ignored).
    pub fn induced_subgraph(&self, subset: &[PrimeLabel]) -> Result<Self, GraphError> {
        let mut mask = 0u64;
        for &l in subset {
            let i = self.index_of(l).ok_or(GraphError::UnknownVertex(l.0))?;
            mask |= 1 << i;
        }
        Ok(self.induced_by_mask(mask))
    }

    /// Subgraph induced by the vertex indices set in `mask`.
    pub fn induced_by_mask(&self, mask: u64) -> Self {
        let keep: Vec<usize> = bits(mask & self.vertex_mask()).collect();
        let labels = keep.iter().map(|&i| self.labels[i]).collect();
        let adj = keep
            .iter()
            .map(|&i| {
                keep.iter()
                    .enumerate()
                    .filter(|&(_, &j)| self.adjacent(i, j))
                    .fold(0u64, |row, (k, _)| row | 1 << k)
            })
            .collect();
        Self { labels, adj }
    }

    /// Copy of the graph with the vertex at `index` deleted.
    pub fn without_vertex(&self, index: usize) -> Self {
        self.induced_by_mask(self.vertex_mask() & !(1 << index))
    }

    /// Copy of the graph with one edge deleted (by index pair).
    pub fn without_edge(&self, i: usize, j: usize) -> Self {
        let mut adj = self.adj.clone();
        adj[i] &= !(1 << j);
        adj[j] &= !(1 << i);
        Self { labels: self.labels.clone(), adj }
    }

    /// Relabels vertices through `map`; the result is re-sorted.
    pub fn relabel(&self, map: impl Fn(PrimeLabel) -> PrimeLabel) -> Result<Self, GraphError> {
        Self::new(
            self.labels.iter().map(|&l| map(l)),
            self.edges().map(|(a, b)| (map(a), map(b))),
        )
    }

    pub fn labels_of_mask(&self, mask: u64) -> Vec<PrimeLabel> {
        bits(mask).map(|i| self.labels[i]).collect()
    }

    pub fn mask_of(&self, labels: &[PrimeLabel]) -> Result<u64, GraphError> {
        labels.iter().try_fold(0u64, |m, &l| {
            self.index_of(l)
                .map(|i| m | 1 << i)
                .ok_or(GraphError::UnknownVertex(l.0))
        })
    }
}

/// Mask with the lowest `n` bits set.
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bit positions of `mask`, lowest first.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

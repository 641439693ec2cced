//! Blocks, cut vertices and bridges.

use serde::Serialize;

use crate::graph::{bits, Edge, LabeledGraph, PrimeLabel};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Vertex sets of the blocks, each sorted, listed in lexicographic order.
    /// An isolated vertex forms a block on its own.
    pub blocks: Vec<Vec<PrimeLabel>>,
    pub cut_vertices: Vec<PrimeLabel>,
    pub bridges: Vec<Edge>,
}

impl BlockDecomposition {
    /// True when the whole graph is a single block (connected, no cut vertex).
    pub fn is_single_block(&self) -> bool {
        self.blocks.len() == 1
    }
}

struct Dfs<'a> {
    adj: &'a [u64],
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    edges: Vec<(usize, usize)>,
    blocks: Vec<u64>,
    cut: u64,
}

const UNSEEN: usize = usize::MAX;

impl Dfs<'_> {
    fn visit(&mut self, u: usize, parent: Option<usize>) {
        self.disc[u] = self.time;
        self.low[u] = self.time;
        self.time += 1;
        let mut children = 0;
        for v in bits(self.adj[u]) {
            if self.disc[v] == UNSEEN {
                children += 1;
                self.edges.push((u, v));
                self.visit(v, Some(u));
                self.low[u] = self.low[u].min(self.low[v]);
                if self.low[v] >= self.disc[u] {
                    if parent.is_some() {
                        self.cut |= 1 << u;
                    }
                    let mut block = 0u64;
                    while let Some((a, b)) = self.edges.pop() {
                        block |= 1 << a | 1 << b;
                        if (a, b) == (u, v) {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if Some(v) != parent && self.disc[v] < self.disc[u] {
                self.edges.push((u, v));
                self.low[u] = self.low[u].min(self.disc[v]);
            }
        }
        if parent.is_none() {
            if children >= 2 {
                self.cut |= 1 << u;
            }
            if children == 0 {
                self.blocks.push(1 << u);
            }
        }
    }
}

/// Block masks and the cut-vertex mask, by vertex index.
pub(crate) fn block_masks(g: &LabeledGraph) -> (Vec<u64>, u64) {
    let mut dfs = Dfs {
        adj: g.adjacency(),
        disc: vec![UNSEEN; g.n()],
        low: vec![0; g.n()],
        time: 0,
        edges: Vec::new(),
        blocks: Vec::new(),
        cut: 0,
    };
    for root in 0..g.n() {
        if dfs.disc[root] == UNSEEN {
            dfs.visit(root, None);
        }
    }
    (dfs.blocks, dfs.cut)
}

pub fn block_decomposition(g: &LabeledGraph) -> BlockDecomposition {
    let (masks, cut) = block_masks(g);
    let mut blocks: Vec<Vec<PrimeLabel>> = masks.iter().map(|&m| g.labels_of_mask(m)).collect();
    blocks.sort();
    let mut bridges: Vec<Edge> = blocks
        .iter()
        .filter(|b| b.len() == 2)
        .map(|b| (b[0], b[1]))
        .collect();
    bridges.sort();
    BlockDecomposition { blocks, cut_vertices: g.labels_of_mask(cut), bridges }
}

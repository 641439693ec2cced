//! Canonical forms for small graphs.
//!
//! Colour refinement to an equitable ordered partition, then backtracking
//! over individualisations of the first non-singleton cell. Every discrete
//! leaf orders the vertices; the canonical code is the largest upper-triangle
//! adjacency string over all leaves. Refinement only depends on colours and
//! neighbour counts, so the leaf set, and with it the code, is invariant
//! under relabelling.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::GraphError;
use crate::graph::{LabeledGraph, PrimeLabel};

/// Default vertex bound for [`canonical_form`].
pub const DEFAULT_BOUND: usize = 12;
/// Hard limit imposed by the 128-bit code.
pub const MAX_BOUND: usize = 16;

/// Isomorphism-invariant code of an unlabelled graph.
///
/// Ordering is by vertex count, then code, which is also the order of the
/// hex strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: u8,
    code: u128,
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Upper-triangle adjacency bits, pair (0,1) most significant.
    pub fn code(&self) -> u128 {
        self.code
    }

    /// Vertex count byte followed by the code, big-endian, in the fewest
    /// whole bytes that hold `n(n-1)/2` bits.
    pub fn to_bytes(&self) -> Vec<u8> {
        let width = pair_count(self.n()).div_ceil(8);
        let mut out = vec![self.n];
        out.extend_from_slice(&self.code.to_be_bytes()[16 - width..]);
        out
    }

    /// Rebuilds the canonical representative, vertex `i` getting `labels[i]`.
    pub fn to_graph(&self, labels: &[PrimeLabel]) -> Result<LabeledGraph, GraphError> {
        let n = self.n();
        assert_eq!(labels.len(), n, "one label per vertex");
        let mut adj = vec![0u64; n];
        let mut bit = pair_count(n);
        for i in 0..n {
            for j in i + 1..n {
                bit -= 1;
                if self.code >> bit & 1 == 1 {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
        }
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        let edges: Vec<_> = edges
            .filter(|&(i, j)| adj[i] >> j & 1 == 1)
            .map(|(i, j)| (labels[i], labels[j]))
            .collect();
        LabeledGraph::new(labels.iter().copied(), edges)
    }

    pub fn from_parts(n: usize, code: u128) -> Option<Self> {
        if n > MAX_BOUND || (pair_count(n) < 128 && code >> pair_count(n) != 0) {
            return None;
        }
        Some(Self { n: n as u8, code })
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = pair_count(self.n()).div_ceil(4).max(1);
        write!(f, "{:02x}:{:0width$x}", self.n, self.code)
    }
}

impl FromStr for CanonicalForm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, code) = s.split_once(':').ok_or_else(|| format!("bad canonical form {s:?}"))?;
        let n = usize::from_str_radix(n, 16).map_err(|e| e.to_string())?;
        let code = u128::from_str_radix(code, 16).map_err(|e| e.to_string())?;
        Self::from_parts(n, code).ok_or_else(|| format!("bad canonical form {s:?}"))
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CanonicalForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn canonical_form(g: &LabeledGraph) -> Result<CanonicalForm, GraphError> {
    canonical_form_bounded(g, DEFAULT_BOUND)
}

/// Like [`canonical_form`] with a caller-chosen bound (at most [`MAX_BOUND`]).
pub fn canonical_form_bounded(g: &LabeledGraph, bound: usize) -> Result<CanonicalForm, GraphError> {
    let bound = bound.min(MAX_BOUND);
    if g.n() > bound {
        return Err(GraphError::TooLarge { n: g.n(), bound });
    }
    Ok(CanonicalForm { n: g.n() as u8, code: canonical_code(g.adjacency()) })
}

pub fn are_isomorphic(a: &LabeledGraph, b: &LabeledGraph) -> Result<bool, GraphError> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    if crate::algos::degree_sequence(a) != crate::algos::degree_sequence(b) {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

type Rows = [u16; MAX_BOUND];
type Colours = [u8; MAX_BOUND];

/// Canonical code of the graph given by bitset rows (at most 16 of them).
pub(crate) fn canonical_code(adj: &[u64]) -> u128 {
    let n = adj.len();
    assert!(n <= MAX_BOUND);
    if n < 2 {
        return 0;
    }
    let mut rows: Rows = [0; MAX_BOUND];
    for (r, &a) in rows.iter_mut().zip(adj) {
        *r = a as u16;
    }
    let mut search = Search {
        n,
        rows,
        path: Vec::with_capacity(n),
        automorphisms: Vec::new(),
        first: None,
        best: None,
    };
    let mut colours: Colours = [0; MAX_BOUND];
    let cells = refine(&rows, n, &mut colours, 1);
    search.descend(colours, cells);
    search.best.expect("search reaches at least one leaf").0
}

type Order = [u8; MAX_BOUND];

/// Individualisation search with orbit pruning.
///
/// Two leaves with equal codes differ by an automorphism. Before entering a
/// child, its orbit under the automorphisms found so far that fix the
/// current path pointwise is compared with the children already explored;
/// an equivalent child roots an isomorphic subtree and is skipped.
struct Search {
    n: usize,
    rows: Rows,
    path: Vec<u8>,
    automorphisms: Vec<Order>,
    first: Option<(u128, Order)>,
    best: Option<(u128, Order)>,
}

impl Search {
    fn descend(&mut self, colours: Colours, cells: usize) {
        let n = self.n;
        if cells == n {
            self.leaf(&colours);
            return;
        }
        let mut sizes = [0u8; MAX_BOUND];
        for &c in &colours[..n] {
            sizes[c as usize] += 1;
        }
        let target = (0..cells).find(|&c| sizes[c] > 1).expect("non-discrete partition") as u8;
        let mut explored = 0u16;
        for v in 0..n {
            if colours[v] != target || self.orbit(v) & explored != 0 {
                continue;
            }
            explored |= 1 << v;
            let mut child = colours;
            for (u, c) in child[..n].iter_mut().enumerate() {
                if *c > target || (*c == target && u != v) {
                    *c += 1;
                }
            }
            let k = refine(&self.rows, n, &mut child, cells + 1);
            self.path.push(v as u8);
            self.descend(child, k);
            self.path.pop();
        }
    }

    fn leaf(&mut self, colours: &Colours) {
        let mut order: Order = [0; MAX_BOUND];
        for v in 0..self.n {
            order[colours[v] as usize] = v as u8;
        }
        let code = leaf_code(&self.rows, self.n, &order);
        let Some((first_code, first_order)) = self.first else {
            self.first = Some((code, order));
            self.best = Some((code, order));
            return;
        };
        let (best_code, best_order) = self.best.expect("set with first");
        if code == first_code {
            self.record(&first_order, &order);
        } else if code == best_code {
            self.record(&best_order, &order);
        } else if code > best_code {
            self.best = Some((code, order));
        }
    }

    /// Stores the automorphism sending `from[i]` to `to[i]`.
    fn record(&mut self, from: &Order, to: &Order) {
        let mut perm: Order = [0; MAX_BOUND];
        for i in 0..self.n {
            perm[from[i] as usize] = to[i];
        }
        self.automorphisms.push(perm);
    }

    /// Orbit of `v` under the found automorphisms that fix the path.
    fn orbit(&self, v: usize) -> u16 {
        let gens: Vec<&Order> = self
            .automorphisms
            .iter()
            .filter(|p| self.path.iter().all(|&x| p[x as usize] == x))
            .collect();
        let mut orbit = 1u16 << v;
        let mut frontier = orbit;
        while frontier != 0 {
            let mut next = 0u16;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                for p in &gens {
                    next |= 1 << p[u];
                }
            }
            frontier = next & !orbit;
            orbit |= next;
        }
        orbit
    }
}

/// Refines `colours` (ranks `0..cells`) to the coarsest equitable
/// refinement, keeping the cell order. Returns the new number of cells.
fn refine(rows: &Rows, n: usize, colours: &mut Colours, mut cells: usize) -> usize {
    loop {
        let mut members = [0u16; MAX_BOUND];
        for v in 0..n {
            members[colours[v] as usize] |= 1 << v;
        }
        let mut sig = [0u128; MAX_BOUND];
        for v in 0..n {
            let mut s = (colours[v] as u128) << 64;
            for (c, &m) in members[..cells].iter().enumerate() {
                s |= ((rows[v] & m).count_ones() as u128) << (4 * (15 - c));
            }
            sig[v] = s;
        }
        let mut distinct = sig;
        let distinct = &mut distinct[..n];
        distinct.sort_unstable();
        let mut k = 0;
        for i in 0..n {
            if i == 0 || distinct[i] != distinct[k - 1] {
                distinct[k] = distinct[i];
                k += 1;
            }
        }
        if k == cells {
            return cells;
        }
        for v in 0..n {
            colours[v] = distinct[..k].binary_search(&sig[v]).unwrap() as u8;
        }
        cells = k;
    }
}

fn leaf_code(rows: &Rows, n: usize, order: &Order) -> u128 {
    let mut code = 0u128;
    for i in 0..n {
        let row = rows[order[i] as usize];
        for &vj in &order[i + 1..n] {
            code = code << 1 | (row >> vj & 1) as u128;
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::first_primes;

    fn labels_from(start: usize, n: usize) -> Vec<PrimeLabel> {
        first_primes(start + n)[start..]
            .iter()
            .map(|&p| PrimeLabel::new(p).unwrap())
            .collect()
    }

    fn cycle(labels: &[PrimeLabel]) -> LabeledGraph {
        let n = labels.len();
        LabeledGraph::new(labels.to_vec(), (0..n).map(|i| (labels[i], labels[(i + 1) % n]))).unwrap()
    }

    #[test]
    fn relabelling_invariance() {
        let a = cycle(&labels_from(0, 4));
        let b = cycle(&labels_from(4, 4));
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn path_is_self_complementary() {
        let p4 = fixtures::figure1();
        assert!(are_isomorphic(&p4, &p4.complement()).unwrap());
    }

    #[test]
    fn k4_is_not_c4() {
        let l = labels_from(0, 4);
        let k4 = LabeledGraph::complete(l.clone()).unwrap();
        assert!(!are_isomorphic(&k4, &cycle(&l)).unwrap());
    }

    #[test]
    fn bound_is_enforced() {
        let g = LabeledGraph::empty(labels_from(0, 13)).unwrap();
        assert_eq!(canonical_form(&g), Err(GraphError::TooLarge { n: 13, bound: 12 }));
        assert!(canonical_form_bounded(&g, 13).is_ok());
    }

    #[test]
    fn round_trips_through_text_and_graph() {
        let g = fixtures::figure2();
        let f = canonical_form(&g).unwrap();
        assert_eq!(f.to_string().parse::<CanonicalForm>().unwrap(), f);
        let rebuilt = f.to_graph(g.labels()).unwrap();
        assert!(are_isomorphic(&g, &rebuilt).unwrap());
        assert_eq!(canonical_form(&rebuilt).unwrap(), f);
        assert_eq!(f.to_bytes().len(), 1 + 2);
    }
}

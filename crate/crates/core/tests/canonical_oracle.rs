//! Canonical forms against a brute-force invariant: the largest adjacency
//! code over all vertex orderings.

use std::collections::{BTreeMap, BTreeSet};

use cdg_core::canon::{are_isomorphic, canonical_form, canonical_form_bounded, CanonicalForm};
use cdg_core::graph::first_primes;
use cdg_core::{GraphError, LabeledGraph, PrimeLabel};

fn labels(n: usize) -> Vec<PrimeLabel> {
    first_primes(n).into_iter().map(|p| PrimeLabel::new(p).unwrap()).collect()
}

fn graph_from_mask(n: usize, mask: u64) -> LabeledGraph {
    let l = labels(n);
    let mut edges = Vec::new();
    let mut slot = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> slot & 1 == 1 {
                edges.push((l[i], l[j]));
            }
            slot += 1;
        }
    }
    LabeledGraph::new(l, edges).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn brute_code(g: &LabeledGraph, perms: &[Vec<usize>]) -> u64 {
    let n = g.n();
    perms
        .iter()
        .map(|order| {
            let mut code = 0u64;
            for i in 0..n {
                for j in i + 1..n {
                    code = code << 1 | g.adjacent(order[i], order[j]) as u64;
                }
            }
            code
        })
        .max()
        .unwrap_or(0)
}

#[test]
fn canonical_forms_agree_with_brute_force_up_to_six() {
    for n in 1..=6 {
        let perms = permutations(n);
        let mut by_canon: BTreeMap<CanonicalForm, u64> = BTreeMap::new();
        let mut brute_codes = BTreeSet::new();
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            let g = graph_from_mask(n, mask);
            let c = canonical_form(&g).unwrap();
            let b = brute_code(&g, &perms);
            brute_codes.insert(b);
            let seen = *by_canon.entry(c).or_insert(b);
            assert_eq!(seen, b, "n = {n}: canonical form {c} covers two classes");
        }
        assert_eq!(by_canon.len(), brute_codes.len(), "n = {n}: a class has two canonical forms");
    }
}

#[test]
fn canonical_form_round_trips_through_its_graph() {
    for mask in [0u64, 1, 0b101101, 0x7fff, 0x1234] {
        let g = graph_from_mask(6, mask);
        let c = canonical_form(&g).unwrap();
        let back = c.to_graph(&labels(6)).unwrap();
        assert!(are_isomorphic(&g, &back).unwrap());
        assert_eq!(canonical_form(&back).unwrap(), c);
        assert_eq!(c.to_string().parse::<CanonicalForm>().unwrap(), c);
    }
}

#[test]
fn bound_is_enforced() {
    let g = LabeledGraph::empty(labels(13)).unwrap();
    assert_eq!(canonical_form(&g), Err(GraphError::TooLarge { n: 13, bound: 12 }));
    assert!(canonical_form_bounded(&g, 16).is_ok());
    let big = LabeledGraph::empty(labels(17)).unwrap();
    assert_eq!(canonical_form_bounded(&big, 40), Err(GraphError::TooLarge { n: 17, bound: 16 }));
}

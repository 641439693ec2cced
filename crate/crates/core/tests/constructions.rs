use std::time::Instant;

use cdg_core::algos::{diameter, is_connected, is_eulerian_direct, regular_degree, Distance};
use cdg_core::blocks::block_decomposition;
use cdg_core::canon::{are_isomorphic, canonical_form};
use cdg_core::constructors::{
    direct_product, eulerian_catalog, lower_bound, regular_family, PrimePool, Stream,
};
use cdg_core::{fixtures, necessary_pipeline, LabeledGraph};

/// Complement of a perfect matching pairing consecutive labels.
fn cocktail_party(g: &LabeledGraph) -> LabeledGraph {
    let l = g.labels();
    let matching = LabeledGraph::new(l.to_vec(), l.chunks(2).map(|c| (c[0], c[1]))).unwrap();
    matching.complement()
}

#[test]
fn regular_family_is_the_cocktail_party_graph() {
    let start = Instant::now();
    for n in (4..=20).step_by(2) {
        let g = regular_family(n, &mut PrimePool::new()).unwrap().graph;
        assert_eq!(g.n(), n);
        assert_eq!(regular_degree(&g), Some(n - 2));
        assert!(is_connected(&g) && !g.is_complete());
        // A 1-regular complement is a perfect matching, and all perfect
        // matchings on n vertices are isomorphic.
        assert_eq!(regular_degree(&g.complement()), Some(1), "n = {n}");
        if n <= 12 {
            assert!(are_isomorphic(&g, &cocktail_party(&g)).unwrap(), "n = {n}");
        }
    }
    assert!(regular_family(6, &mut PrimePool::new()).is_ok_and(|r| {
        are_isomorphic(&r.graph, &fixtures::figure3a()).unwrap()
    }));
    assert!(are_isomorphic(&regular_family(8, &mut PrimePool::new()).unwrap().graph, &fixtures::figure3c()).unwrap());
    assert!(start.elapsed().as_secs_f64() < 1.0);
}

#[test]
fn product_identities() {
    let f4 = direct_product(&fixtures::figure5a(), &fixtures::figure5b()).unwrap();
    assert_eq!(canonical_form(&f4).unwrap(), canonical_form(&fixtures::figure4()).unwrap());
    let f3c = direct_product(&fixtures::figure3a(), &fixtures::figure3b()).unwrap();
    assert_eq!(canonical_form(&f3c).unwrap(), canonical_form(&fixtures::figure3c()).unwrap());
}

#[test]
fn catalog_sizes() {
    let start = Instant::now();
    let exact = [(6, 1), (8, 2), (10, 3), (12, 5)];
    for (n, size) in exact {
        let c = eulerian_catalog(n).unwrap();
        assert_eq!(c.members.len(), size, "n = {n}");
        assert_eq!(c.report.lower_bound, size);
        assert_eq!(c.report.canonical_forms_distinct, Some(true));
    }
    for n in (14..=24).step_by(2) {
        let c = eulerian_catalog(n).unwrap();
        assert!(c.members.len() >= lower_bound(n).unwrap(), "n = {n}");
        assert!(c.report.degree_sequences_distinct);
        assert_eq!(c.report.canonical_forms_distinct, None);
    }
    assert!(start.elapsed().as_secs_f64() < 5.0, "{:?}", start.elapsed());
}

#[test]
fn catalog_members_checked_independently() {
    // Re-derive each property from scratch instead of trusting the report.
    for n in [10, 12, 18] {
        let c = eulerian_catalog(n).unwrap();
        for m in &c.members {
            let g = &m.built.graph;
            assert_eq!(g.n(), n);
            assert!(regular_degree(g).is_none());
            assert!(block_decomposition(g).is_single_block());
            assert_eq!(diameter(g), Distance::Finite(2));
            assert!((0..n).all(|i| g.degree(i) % 2 == 0) && is_connected(g));
            assert!(is_eulerian_direct(g).eulerian);
            assert!(necessary_pipeline(g).overall);
            assert_eq!(&m.built.recipe.replay().unwrap(), g);
        }
        let power = c.members.iter().filter(|m| m.stream == Stream::BasePower).count();
        assert_eq!(power, (n % 6 == 0) as usize);
    }
}

#[test]
fn member_order_at_ten() {
    // Lifted members first, ordered by their smallest degree, then the
    // fresh member.
    let c = eulerian_catalog(10).unwrap();
    let smallest: Vec<usize> = c
        .members
        .iter()
        .map(|m| (0..10).map(|i| m.built.graph.degree(i)).min().unwrap())
        .collect();
    assert_eq!(smallest, vec![4, 6, 2]);
}

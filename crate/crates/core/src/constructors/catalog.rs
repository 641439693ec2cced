//! Pairwise non-isomorphic, non-regular Eulerian graphs that pass every
//! necessary condition, for each even order from 6 upward.
//!
//! Three streams feed order `n`: every member of order `n - 2` lifted by
//! [`operation_d`]; one fresh member built from an isolated prime beside a
//! clique; and, when 6 divides `n`, the join of `n / 6` copies of the
//! six-vertex base graph.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{
    construct_product, construct_two_component, operation_d, ConstructionRecipe, Constructed,
    PrimePool, RecipeKind,
};
use crate::algos::{degree_sequence, diameter, is_eulerian_direct, regular_degree, Distance};
use crate::blocks::block_decomposition;
use crate::canon::{canonical_form, canonical_form_bounded, CanonicalForm, DEFAULT_BOUND, MAX_BOUND};
use crate::conditions::necessary_pipeline;
use crate::error::ConstructError;
use crate::fixtures;
use crate::graph::LabeledGraph;

/// Guaranteed catalog size at order `n`.
pub fn lower_bound(n: usize) -> Result<usize, ConstructError> {
    check_n(n)?;
    Ok((n - 4) / 2 + n / 6 - 1)
}

fn check_n(n: usize) -> Result<(), ConstructError> {
    if n < 6 || n % 2 == 1 {
        return Err(ConstructError::BadN(n, "expected an even number at least 6"));
    }
    if n > crate::graph::MAX_VERTICES {
        return Err(ConstructError::BadN(n, "more vertices than the graph type holds"));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stream {
    /// The six-vertex seed.
    Base,
    Lifted,
    Fresh,
    BasePower,
}

impl fmt::Display for Stream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stream::Base => "base",
            Stream::Lifted => "lifted",
            Stream::Fresh => "fresh",
            Stream::BasePower => "base-power",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogMember {
    pub index: usize,
    pub stream: Stream,
    #[serde(flatten)]
    pub built: Constructed,
}

#[derive(Clone, Debug, Serialize)]
pub struct MemberCheck {
    pub index: usize,
    pub stream: Stream,
    pub degree_sequence: Vec<usize>,
    pub regular: bool,
    pub single_block: bool,
    pub diameter: Distance,
    pub eulerian: bool,
    pub passes_conditions: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical_form: Option<CanonicalForm>,
}

impl MemberCheck {
    fn failure(&self) -> Option<&'static str> {
        if self.regular {
            Some("regular")
        } else if !self.single_block {
            Some("not a single block")
        } else if self.diameter != Distance::Finite(2) {
            Some("diameter is not 2")
        } else if !self.eulerian {
            Some("not Eulerian")
        } else if !self.passes_conditions {
            Some("fails a necessary condition")
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub n: usize,
    pub size: usize,
    pub lower_bound: usize,
    pub members: Vec<MemberCheck>,
    pub degree_sequences_distinct: bool,
    /// Present when canonical forms were computed for every member.
    pub canonical_forms_distinct: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Catalog {
    pub n: usize,
    pub members: Vec<CatalogMember>,
    pub report: CatalogReport,
}

fn base_graph() -> Constructed {
    Constructed::base("figure4", fixtures::figure4())
}

fn base_copy(pool: &mut PrimePool) -> Result<Constructed, ConstructError> {
    let g = fixtures::figure4();
    let fresh = pool.take(g.n())?;
    let old = g.labels().to_vec();
    let moved = g.relabel(|l| fresh[old.binary_search(&l).expect("own label")])?;
    Ok(Constructed::base("figure4", moved))
}

fn fresh_member(n: usize) -> Result<Constructed, ConstructError> {
    let mut pool = PrimePool::new();
    let p = pool.next_odd_prime()?;
    let qs = pool.take(n - 3)?;
    let seed = construct_two_component(p, &qs)?;
    operation_d(&seed, &mut PrimePool::new())
}

fn base_power(k: usize) -> Result<Constructed, ConstructError> {
    let mut pool = PrimePool::new();
    let mut acc = base_copy(&mut pool)?;
    for _ in 1..k {
        let next = base_copy(&mut pool)?;
        acc = construct_product(&acc, &next)?;
    }
    Ok(acc)
}

fn levels(n: usize) -> Result<Vec<(Constructed, Stream)>, ConstructError> {
    let mut current = vec![(base_graph(), Stream::Base)];
    let mut order = 6;
    while order < n {
        order += 2;
        let mut lifted = current
            .iter()
            .map(|(m, _)| Ok((operation_d(m, &mut PrimePool::new())?, Stream::Lifted)))
            .collect::<Result<Vec<_>, ConstructError>>()?;
        lifted.sort_by_cached_key(|(m, _)| {
            let mut d = degree_sequence(&m.graph);
            d.reverse();
            d
        });
        if order % 6 == 0 {
            lifted.push((base_power(order / 6)?, Stream::BasePower));
        }
        lifted.push((fresh_member(order)?, Stream::Fresh));
        current = lifted;
    }
    Ok(current)
}

fn check_member(index: usize, stream: Stream, g: &LabeledGraph, canonical: bool) -> MemberCheck {
    MemberCheck {
        index,
        stream,
        degree_sequence: degree_sequence(g),
        regular: regular_degree(g).is_some(),
        single_block: block_decomposition(g).is_single_block(),
        diameter: diameter(g),
        eulerian: is_eulerian_direct(g).eulerian,
        passes_conditions: necessary_pipeline(g).overall,
        canonical_form: canonical.then(|| canonical_form(g).expect("within default bound")),
    }
}

/// Builds and verifies the catalog at order `n`.
///
/// Members are distinguished by degree sequence; canonical forms are also
/// recorded when `n` is within the default canonical-form bound. Any member
/// failing a required property is an error, never a silent omission.
pub fn eulerian_catalog(n: usize) -> Result<Catalog, ConstructError> {
    check_n(n)?;
    let bound = lower_bound(n)?;
    let built = levels(n)?;
    let canonical = n <= DEFAULT_BOUND;
    let checks: Vec<MemberCheck> = built
        .par_iter()
        .enumerate()
        .map(|(i, (m, stream))| check_member(i, *stream, &m.graph, canonical))
        .collect();

    for c in &checks {
        if let Some(what) = c.failure() {
            return Err(ConstructError::InternalCheckFailed(format!(
                "member {} ({}) at n = {n}: {what}",
                c.index, c.stream
            )));
        }
    }

    let distinct_degrees =
        checks.iter().map(|c| &c.degree_sequence).collect::<BTreeSet<_>>().len() == checks.len();
    let canonical_forms_distinct = canonical.then(|| {
        checks.iter().filter_map(|c| c.canonical_form).collect::<BTreeSet<_>>().len() == checks.len()
    });
    if canonical_forms_distinct == Some(false) {
        return Err(ConstructError::InternalCheckFailed(format!(
            "two members at n = {n} are isomorphic"
        )));
    }
    if !distinct_degrees && !canonical {
        certify_by_canonical_form(n, &built)?;
    }
    if checks.len() < bound {
        return Err(ConstructError::InternalCheckFailed(format!(
            "{} members at n = {n}, below the bound {bound}",
            checks.len()
        )));
    }

    let members = built
        .into_iter()
        .enumerate()
        .map(|(index, (m, stream))| {
            let recipe = ConstructionRecipe::new(
                RecipeKind::CatalogMember,
                json!({ "n": n, "index": index, "stream": stream.to_string() }),
                vec![m.recipe],
            );
            CatalogMember { index, stream, built: Constructed { graph: m.graph, recipe } }
        })
        .collect();
    Ok(Catalog {
        n,
        members,
        report: CatalogReport {
            n,
            size: checks.len(),
            lower_bound: bound,
            members: checks,
            degree_sequences_distinct: distinct_degrees,
            canonical_forms_distinct,
        },
    })
}

fn certify_by_canonical_form(n: usize, built: &[(Constructed, Stream)]) -> Result<(), ConstructError> {
    if n > MAX_BOUND {
        return Err(ConstructError::InternalCheckFailed(format!(
            "members at n = {n} share a degree sequence and are too large to compare"
        )));
    }
    let forms: BTreeSet<CanonicalForm> = built
        .par_iter()
        .map(|(m, _)| canonical_form_bounded(&m.graph, MAX_BOUND))
        .collect::<Result<_, _>>()?;
    if forms.len() != built.len() {
        return Err(ConstructError::InternalCheckFailed(format!(
            "two members at n = {n} are isomorphic"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_values() {
        let got: Vec<_> = (6..=24).step_by(2).map(|n| lower_bound(n).unwrap()).collect();
        assert_eq!(got, vec![1, 2, 3, 5, 6, 7, 9, 10, 11, 13]);
        assert!(lower_bound(7).is_err());
        assert!(lower_bound(4).is_err());
    }

    #[test]
    fn sizes_and_streams() {
        let c = eulerian_catalog(12).unwrap();
        let streams: Vec<_> = c.members.iter().map(|m| m.stream).collect();
        assert_eq!(
            streams,
            vec![Stream::Lifted, Stream::Lifted, Stream::Lifted, Stream::BasePower, Stream::Fresh]
        );
        assert_eq!(c.report.canonical_forms_distinct, Some(true));
        assert!(c.report.degree_sequences_distinct);
        let six = eulerian_catalog(6).unwrap();
        assert_eq!(six.members.len(), 1);
        assert_eq!(six.members[0].stream, Stream::Base);
    }

    #[test]
    fn recipes_replay() {
        for m in eulerian_catalog(10).unwrap().members {
            assert_eq!(m.built.recipe.replay().unwrap(), m.built.graph);
        }
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(matches!(eulerian_catalog(9), Err(ConstructError::BadN(9, _))));
        assert!(matches!(eulerian_catalog(66), Err(ConstructError::BadN(66, _))));
    }
}

//! Graph constructions with replayable provenance.
//!
//! Every constructor returns a [`Constructed`]: the graph together with the
//! [`ConstructionRecipe`] tree that rebuilds it.

mod catalog;

pub use catalog::{eulerian_catalog, lower_bound, Catalog, CatalogMember, CatalogReport, MemberCheck, Stream};

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::ConstructError;
use crate::graph::{is_prime, LabeledGraph, PrimeLabel};

/// Issues fresh primes in ascending order, never reissuing a used one.
#[derive(Clone, Debug, Default)]
pub struct PrimePool {
    used: BTreeSet<u64>,
    limit: Option<u64>,
}

impl PrimePool {
    pub fn new() -> Self {
        Self::default()
    }

    /// Pool that never issues a prime above `limit`.
    pub fn with_limit(limit: u64) -> Self {
        Self { used: BTreeSet::new(), limit: Some(limit) }
    }

    pub fn excluding(labels: impl IntoIterator<Item = PrimeLabel>) -> Self {
        let mut pool = Self::new();
        pool.reserve(labels);
        pool
    }

    /// Marks labels as unavailable.
    pub fn reserve(&mut self, labels: impl IntoIterator<Item = PrimeLabel>) {
        self.used.extend(labels.into_iter().map(|l| l.value()));
    }

    pub fn is_used(&self, p: u64) -> bool {
        self.used.contains(&p)
    }

    fn issue(&mut self, start: u64, step: u64) -> Result<PrimeLabel, ConstructError> {
        let mut p = start;
        loop {
            if let Some(limit) = self.limit {
                if p > limit {
                    return Err(ConstructError::PoolExhausted(limit));
                }
            }
            if is_prime(p) && !self.used.contains(&p) {
                self.used.insert(p);
                return Ok(PrimeLabel::new(p).expect("checked prime"));
            }
            p += step;
        }
    }

    /// Smallest unused prime.
    pub fn next_prime(&mut self) -> Result<PrimeLabel, ConstructError> {
        if !self.used.contains(&2) && self.limit.is_none_or(|l| l >= 2) {
            self.used.insert(2);
            return Ok(PrimeLabel::new(2).expect("2 is prime"));
        }
        self.issue(3, 2)
    }

    /// Smallest unused odd prime.
    pub fn next_odd_prime(&mut self) -> Result<PrimeLabel, ConstructError> {
        self.issue(3, 2)
    }

    pub fn take(&mut self, count: usize) -> Result<Vec<PrimeLabel>, ConstructError> {
        (0..count).map(|_| self.next_prime()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecipeKind {
    BaseFigure,
    TwoComponent,
    DirectProduct,
    OperationD,
    RegularFamily,
    CatalogMember,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionRecipe {
    pub kind: RecipeKind,
    pub parameters: BTreeMap<String, Value>,
    pub children: Vec<ConstructionRecipe>,
}

impl ConstructionRecipe {
    fn new(kind: RecipeKind, parameters: Value, children: Vec<ConstructionRecipe>) -> Self {
        let parameters = match parameters {
            Value::Object(map) => map.into_iter().collect(),
            _ => BTreeMap::new(),
        };
        Self { kind, parameters, children }
    }

    /// A literal graph; `name` records where it came from.
    pub fn base(name: &str, g: &LabeledGraph) -> Self {
        let doc = crate::document::to_document(g);
        Self::new(
            RecipeKind::BaseFigure,
            json!({ "figure": name, "vertices": doc.vertices, "edges": doc.edges }),
            Vec::new(),
        )
    }

    fn param<T: serde::de::DeserializeOwned>(&self, key: &str) -> Result<T, ConstructError> {
        let v = self
            .parameters
            .get(key)
            .ok_or_else(|| ConstructError::BadRecipe(format!("{:?} lacks parameter {key:?}", self.kind)))?;
        serde_json::from_value(v.clone()).map_err(|e| ConstructError::BadRecipe(format!("{key}: {e}")))
    }

    fn child(&self, i: usize) -> Result<&ConstructionRecipe, ConstructError> {
        self.children
            .get(i)
            .ok_or_else(|| ConstructError::BadRecipe(format!("{:?} lacks child {i}", self.kind)))
    }

    /// Rebuilds the graph this recipe describes.
    pub fn replay(&self) -> Result<LabeledGraph, ConstructError> {
        let label = |v: u64| PrimeLabel::unchecked(v).map_err(ConstructError::from);
        match self.kind {
            RecipeKind::BaseFigure => {
                let vertices: Vec<u64> = self.param("vertices")?;
                let edges: Vec<[u64; 2]> = self.param("edges")?;
                let labels = vertices.into_iter().map(label).collect::<Result<Vec<_>, _>>()?;
                let edges = edges
                    .into_iter()
                    .map(|[a, b]| Ok((label(a)?, label(b)?)))
                    .collect::<Result<Vec<_>, ConstructError>>()?;
                Ok(LabeledGraph::new(labels, edges)?)
            }
            RecipeKind::TwoComponent => {
                let p = PrimeLabel::new(self.param("p")?)?;
                let qs: Vec<u64> = self.param("qs")?;
                let qs = qs.into_iter().map(PrimeLabel::new).collect::<Result<Vec<_>, _>>()?;
                two_component_graph(p, &qs)
            }
            RecipeKind::DirectProduct => direct_product(&self.child(0)?.replay()?, &self.child(1)?.replay()?),
            RecipeKind::OperationD => {
                let p = PrimeLabel::new(self.param("p")?)?;
                let q = PrimeLabel::new(self.param("q")?)?;
                direct_product(&self.child(0)?.replay()?, &two_component_graph(p, &[q])?)
            }
            RecipeKind::RegularFamily | RecipeKind::CatalogMember => self.child(0)?.replay(),
        }
    }
}

/// A graph with the recipe that builds it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Constructed {
    #[serde(serialize_with = "serialize_graph")]
    pub graph: LabeledGraph,
    pub recipe: ConstructionRecipe,
}

fn serialize_graph<S: serde::Serializer>(g: &LabeledGraph, s: S) -> Result<S::Ok, S::Error> {
    crate::document::to_document(g).serialize(s)
}

impl Constructed {
    pub fn base(name: &str, graph: LabeledGraph) -> Self {
        let recipe = ConstructionRecipe::base(name, &graph);
        Self { graph, recipe }
    }
}

/// Join of two graphs on disjoint label sets: both edge sets plus every
/// pair with one end in each operand.
pub fn direct_product(a: &LabeledGraph, b: &LabeledGraph) -> Result<LabeledGraph, ConstructError> {
    if let Some(&shared) = a.labels().iter().find(|l| b.contains(**l)) {
        return Err(ConstructError::LabelCollision(shared));
    }
    let mut edges: Vec<_> = a.edges().chain(b.edges()).collect();
    for &x in a.labels() {
        for &y in b.labels() {
            edges.push((x, y));
        }
    }
    Ok(LabeledGraph::new(a.labels().iter().chain(b.labels()).copied(), edges)?)
}

/// Isolated vertex `p` next to a complete graph on `qs`.
pub fn two_component_graph(p: PrimeLabel, qs: &[PrimeLabel]) -> Result<LabeledGraph, ConstructError> {
    if p.value() == 2 {
        return Err(ConstructError::EvenP(p));
    }
    if qs.is_empty() {
        return Err(ConstructError::EmptyComponent);
    }
    let mut seen = BTreeSet::from([p]);
    for &q in qs {
        if !seen.insert(q) {
            return Err(ConstructError::Collision(q));
        }
    }
    let clique = LabeledGraph::complete(qs.iter().copied())?;
    Ok(LabeledGraph::new(seen, clique.edges())?)
}

pub fn construct_two_component(p: PrimeLabel, qs: &[PrimeLabel]) -> Result<Constructed, ConstructError> {
    let graph = two_component_graph(p, qs)?;
    let mut sorted: Vec<u64> = qs.iter().map(|q| q.value()).collect();
    sorted.sort_unstable();
    let recipe = ConstructionRecipe::new(
        RecipeKind::TwoComponent,
        json!({ "p": p.value(), "qs": sorted }),
        Vec::new(),
    );
    Ok(Constructed { graph, recipe })
}

pub fn construct_product(a: &Constructed, b: &Constructed) -> Result<Constructed, ConstructError> {
    let graph = direct_product(&a.graph, &b.graph)?;
    let recipe = ConstructionRecipe::new(
        RecipeKind::DirectProduct,
        json!({}),
        vec![a.recipe.clone(), b.recipe.clone()],
    );
    Ok(Constructed { graph, recipe })
}

/// Joins two fresh non-adjacent primes (the first odd) to every vertex.
///
/// The graph's labels are reserved in `pool` before drawing.
pub fn operation_d(base: &Constructed, pool: &mut PrimePool) -> Result<Constructed, ConstructError> {
    pool.reserve(base.graph.labels().iter().copied());
    let p = pool.next_odd_prime()?;
    let q = pool.next_prime()?;
    let graph = direct_product(&base.graph, &two_component_graph(p, &[q])?)?;
    let recipe = ConstructionRecipe::new(
        RecipeKind::OperationD,
        json!({ "p": p.value(), "q": q.value() }),
        vec![base.recipe.clone()],
    );
    Ok(Constructed { graph, recipe })
}

/// The (n-2)-regular graph on `n` vertices: the 4-cycle, lifted by
/// repeated [`operation_d`].
pub fn regular_family(n: usize, pool: &mut PrimePool) -> Result<Constructed, ConstructError> {
    if n < 4 || n % 2 == 1 {
        return Err(ConstructError::BadN(n, "expected an even number at least 4"));
    }
    let l = pool.take(4)?;
    let square = LabeledGraph::new(l.clone(), (0..4).map(|i| (l[i], l[(i + 1) % 4])))?;
    let mut current = Constructed::base("square", square);
    while current.graph.n() < n {
        current = operation_d(&current, pool)?;
    }
    let recipe = ConstructionRecipe::new(
        RecipeKind::RegularFamily,
        json!({ "n": n }),
        vec![current.recipe],
    );
    Ok(Constructed { graph: current.graph, recipe })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algos::{degree_sequence, is_connected, is_k_regular};
    use crate::canon::are_isomorphic;
    use crate::fixtures;

    fn l(v: u64) -> PrimeLabel {
        PrimeLabel::new(v).unwrap()
    }

    #[test]
    fn pool_issues_smallest_unused() {
        let mut pool = PrimePool::excluding([l(3), l(5)]);
        assert_eq!(pool.next_odd_prime().unwrap(), l(7));
        assert_eq!(pool.next_prime().unwrap(), l(2));
        assert_eq!(pool.next_prime().unwrap(), l(11));
        let mut tiny = PrimePool::with_limit(5);
        assert_eq!(tiny.take(3).unwrap(), vec![l(2), l(3), l(5)]);
        assert_eq!(tiny.next_prime(), Err(ConstructError::PoolExhausted(5)));
    }

    #[test]
    fn figure5_pair_gives_figure4() {
        let g = direct_product(&fixtures::figure5a(), &fixtures::figure5b()).unwrap();
        assert!(are_isomorphic(&g, &fixtures::figure4()).unwrap());
    }

    #[test]
    fn octahedron_times_two_points_is_figure3c() {
        let g = direct_product(&fixtures::figure3a(), &fixtures::figure3b()).unwrap();
        assert!(is_k_regular(&g, 6));
        assert_eq!(g.n(), 8);
        assert!(are_isomorphic(&g, &fixtures::figure3c()).unwrap());
    }

    #[test]
    fn product_of_two_points() {
        let a = LabeledGraph::empty([l(2)]).unwrap();
        let b = LabeledGraph::empty([l(3)]).unwrap();
        let g = direct_product(&a, &b).unwrap();
        assert!(g.is_complete());
        assert_eq!(g.n(), 2);
        assert_eq!(direct_product(&a, &a), Err(ConstructError::LabelCollision(l(2))));
    }

    #[test]
    fn two_component_examples() {
        let g = two_component_graph(l(3), &[l(2)]).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 0);
        let g = two_component_graph(l(7), &[l(2), l(3), l(5), l(11), l(13)]).unwrap();
        let comps = crate::algos::connected_components(&g);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[1], vec![l(7)]);
        assert!(g.induced_subgraph(&comps[0]).unwrap().is_complete());
        assert_eq!(two_component_graph(l(2), &[l(3)]), Err(ConstructError::EvenP(l(2))));
        assert_eq!(two_component_graph(l(3), &[l(3)]), Err(ConstructError::Collision(l(3))));
        assert_eq!(two_component_graph(l(3), &[]), Err(ConstructError::EmptyComponent));
    }

    #[test]
    fn operation_d_examples() {
        let mut pool = PrimePool::new();
        let f4 = Constructed::base("figure4", fixtures::figure4());
        let lifted = operation_d(&f4, &mut pool).unwrap();
        assert_eq!(degree_sequence(&lifted.graph), vec![6, 6, 6, 6, 6, 6, 6, 4]);
        assert_eq!(lifted.recipe.parameters["p"], 17);
        assert_eq!(lifted.recipe.parameters["q"], 19);
        assert_eq!(lifted.recipe.replay().unwrap(), lifted.graph);

        let mut pool = PrimePool::new();
        let k1k5 = construct_two_component(l(3), &[l(2), l(5), l(7), l(11), l(13)]).unwrap();
        let lifted = operation_d(&k1k5, &mut pool).unwrap();
        assert_eq!(degree_sequence(&lifted.graph), vec![6, 6, 6, 6, 6, 6, 6, 2]);

        let mut pool = PrimePool::new();
        let k1 = Constructed::base("point", LabeledGraph::empty([l(2)]).unwrap());
        let path = operation_d(&k1, &mut pool).unwrap();
        assert_eq!(degree_sequence(&path.graph), vec![2, 1, 1]);
        assert!(path.graph.has_edge(l(2), l(3)) && path.graph.has_edge(l(2), l(5)));
        assert!(!path.graph.has_edge(l(3), l(5)));
    }

    #[test]
    fn operation_d_reports_exhaustion() {
        let mut pool = PrimePool::with_limit(7);
        let k1 = Constructed::base("point", LabeledGraph::empty([l(2)]).unwrap());
        let once = operation_d(&k1, &mut pool).unwrap();
        assert_eq!(operation_d(&once, &mut pool), Err(ConstructError::PoolExhausted(7)));
    }

    #[test]
    fn regular_family_small_cases() {
        let c4 = regular_family(4, &mut PrimePool::new()).unwrap().graph;
        assert!(is_k_regular(&c4, 2) && is_connected(&c4) && c4.edge_count() == 4);
        let six = regular_family(6, &mut PrimePool::new()).unwrap();
        assert!(are_isomorphic(&six.graph, &fixtures::figure3a()).unwrap());
        assert_eq!(six.recipe.replay().unwrap(), six.graph);
        let eight = regular_family(8, &mut PrimePool::new()).unwrap().graph;
        assert!(are_isomorphic(&eight, &fixtures::figure3c()).unwrap());
        for bad in [2, 5, 7] {
            assert!(matches!(regular_family(bad, &mut PrimePool::new()), Err(ConstructError::BadN(..))));
        }
    }

    #[test]
    fn recipe_json_round_trip() {
        let six = regular_family(6, &mut PrimePool::new()).unwrap();
        let text = serde_json::to_string(&six.recipe).unwrap();
        let back: ConstructionRecipe = serde_json::from_str(&text).unwrap();
        assert_eq!(back, six.recipe);
        assert!(text.starts_with(r#"{"kind":"regular-family","parameters":{"n":6},"children":[{"kind":"operation-d""#));
    }
}

//! Analysis, construction and enumeration of candidate character degree
//! graphs of finite solvable groups.
//!
//! Graphs are simple and undirected with prime vertex labels. The crate
//! checks the known necessary conditions for such a graph to arise from a
//! solvable group, classifies Eulerian graphs through their block and
//! diameter structure, builds the standard constructive families (joins,
//! the two-fresh-primes extension, the (n-2)-regular family, the Eulerian
//! catalog) and enumerates all small graphs up to isomorphism as a
//! brute-force oracle.

pub mod algos;
pub mod blocks;
pub mod canon;
pub mod conditions;
pub mod constructors;
pub mod document;
pub mod enumerate;
pub mod error;
pub mod eulerian;
pub mod fixtures;
pub mod graph;
pub mod sweep;

pub use algos::{
    connected_components, degree_sequence, diameter, is_eulerian_direct, is_k_regular, Distance,
    DistanceTable, EulerTest,
};
pub use blocks::{block_decomposition, BlockDecomposition};
pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use conditions::{lewis_partition, necessary_pipeline, palfy_condition, CdgReport, LewisPartition};
pub use constructors::{
    direct_product, eulerian_catalog, lower_bound, operation_d, regular_family, two_component_graph,
    Constructed, ConstructionRecipe, PrimePool,
};
pub use document::{parse_graph, to_dot, to_json, GraphDocument, ParseOptions};
pub use enumerate::{enumerate, CatalogEntry, EnumerateOptions, Enumeration, FilterSpec};
pub use error::{ConstructError, EnumerateError, GraphError, PartitionError};
pub use eulerian::{crosscheck, EulerianVerdict, ParityMode, Route};
pub use graph::{LabeledGraph, PrimeLabel};
pub use sweep::{sweep_validate, SweepReport};

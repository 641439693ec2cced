use thiserror::Error;

use crate::graph::PrimeLabel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("malformed graph document: {0}")]
    MalformedInput(String),
    #[error("vertex label {0} is not prime")]
    NonPrimeLabel(u64),
    #[error("vertex labels must be positive")]
    NonPositiveLabel,
    #[error("self-loop at vertex {0}")]
    SelfLoop(u64),
    #[error("vertex {0} is declared more than once")]
    DuplicateVertex(u64),
    #[error("edge endpoint {0} is not a declared vertex")]
    UnknownEndpoint(u64),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(u64),
    #[error("{0} vertices exceed the supported maximum of 64")]
    TooManyVertices(usize),
    #[error("graph has {n} vertices; canonical forms are limited to {bound}")]
    TooLarge { n: usize, bound: usize },
}

/// Which structural clause of a diameter-three partition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartitionClause {
    /// rho1 and rho2 together induce a complete subgraph.
    LeftComplete,
    /// rho3 and rho4 together induce a complete subgraph.
    RightComplete,
    /// no rho1 vertex is adjacent to rho3 or rho4.
    LeftEndIsolated,
    /// no rho4 vertex is adjacent to rho1 or rho2.
    RightEndIsolated,
    /// every rho2 vertex has a rho3 neighbour.
    LeftMiddleReachesRight,
    /// every rho3 vertex has a rho2 neighbour.
    RightMiddleReachesLeft,
}

impl PartitionClause {
    pub const ALL: [PartitionClause; 6] = [
        PartitionClause::LeftComplete,
        PartitionClause::RightComplete,
        PartitionClause::LeftEndIsolated,
        PartitionClause::RightEndIsolated,
        PartitionClause::LeftMiddleReachesRight,
        PartitionClause::RightMiddleReachesLeft,
    ];

    pub fn description(self) -> &'static str {
        match self {
            PartitionClause::LeftComplete => "rho1 u rho2 induces a complete subgraph",
            PartitionClause::RightComplete => "rho3 u rho4 induces a complete subgraph",
            PartitionClause::LeftEndIsolated => "no rho1 vertex is adjacent to rho3 u rho4",
            PartitionClause::RightEndIsolated => "no rho4 vertex is adjacent to rho1 u rho2",
            PartitionClause::LeftMiddleReachesRight => "every rho2 vertex has a neighbour in rho3",
            PartitionClause::RightMiddleReachesLeft => "every rho3 vertex has a neighbour in rho2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("graph diameter is {0}, not 3")]
    NotDiameterThree(String),
    #[error("base vertex {label} has eccentricity {eccentricity}, not 3")]
    BadBaseVertex { label: PrimeLabel, eccentricity: String },
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(PrimeLabel),
    #[error("partition structure violated: {} (witness {witness:?})", clause.description())]
    StructureViolation {
        clause: PartitionClause,
        witness: Vec<PrimeLabel>,
    },
    #[error("partition predicts cut vertex {predicted:?} but the graph has {actual:?}")]
    InconsistentWitness {
        predicted: Option<PrimeLabel>,
        actual: Vec<PrimeLabel>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("vertex label {0} occurs in both operands")]
    LabelCollision(PrimeLabel),
    #[error("the isolated prime must be odd, got {0}")]
    EvenP(PrimeLabel),
    #[error("prime {0} is used twice")]
    Collision(PrimeLabel),
    #[error("the complete component needs at least one prime")]
    EmptyComponent,
    #[error("prime pool exhausted below its limit {0}")]
    PoolExhausted(u64),
    #[error("invalid vertex count {0}: {1}")]
    BadN(usize, &'static str),
    #[error("constructed graph failed a required property: {0}")]
    InternalCheckFailed(String),
    #[error("recipe cannot be replayed: {0}")]
    BadRecipe(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("vertex count {0} is outside 1..=8")]
    BadN(usize),
    #[error("n = 8 enumeration requires the explicit large-run opt-in")]
    LargeRunNotEnabled,
    #[error("unknown filter predicate {0:?}")]
    UnknownFilter(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
}

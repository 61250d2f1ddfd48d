//! Exchange-graph enumeration, path counting, root systems and the
//! probability tables used to size the key space.

mod a3;
mod bijection;
mod graph;
mod paths;
mod probability;
mod roots;

use thiserror::Error;

use crate::cluster::ClusterError;
use crate::symbolic::SymbolicError;

pub use a3::{a3_list_matrix, verify_seed_list_a3, SeedListMatch, SeedListReport, A3_C2_PRIME, A3_SEED_LIST};
pub use bijection::{check_denominator_bijection, BijectionReport, MAX_BIJECTION_RANK};
pub use graph::{
    enumerate_exchange_graph, fingerprint_point, EnumerateOptions, ExchangeGraph, GraphVertex,
    FINGERPRINT_PRIME, FINGERPRINT_SEED,
};
pub use paths::{
    adjacency_matrix, adjacency_power, dfs_paths, path_count, walk_counts_from, PathSearch, DEFAULT_DFS_MAX_LEN,
    DEFAULT_DFS_MAX_PATHS,
};
pub use probability::{
    closed_form_probability, key_recovery_probability, published_value, report_csv, report_text, ClosedForm,
    ProbabilityRow, PublishedValue, CSV_HEADER, FLAG_CLOSED_FORM_MISMATCH, FLAG_NOT_A_PROBABILITY,
};
pub use roots::{generate_root_system, AxiomReport, RootSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("not of finite type: {0}")]
    NotFiniteType(String),
    #[error("exchange graph exceeds the budget of {budget} vertices")]
    BudgetExceeded { budget: usize },
    #[error("two distinct cluster variables share a fingerprint")]
    FingerprintCollision,
    #[error("fingerprint point makes a cluster value vanish")]
    DegenerateFingerprint,
    #[error("operation needs a graph enumerated with symbolic tracking")]
    SymbolicRequired,
    #[error("vertex {vertex} out of range (graph has {count})")]
    InvalidVertex { vertex: usize, count: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("seed list mismatch: {}", .0.notes.join("; "))]
    Mismatch(Box<SeedListReport>),
    #[error("counterexample: {0}")]
    Counterexample(String),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

//! Weighted dual graphs of curve configurations on surfaces: intersection
//! forms, log discrepancies, the `*(eps)` condition, Lanner and elliptic
//! diagram searches, and DCC coefficient sets. All arithmetic is exact.

pub mod arith;
pub mod canonical;
pub mod corpus;
pub mod dcc;
pub mod diagram;
pub mod discrepancy;
pub mod error;
pub mod graph;
pub mod graph_file;
pub mod star;

pub use arith::{format_rational, parse_rational, Rational, Signature, SymMatrix};
pub use canonical::{canonical_form, CanonicalForm};
pub use dcc::CoefficientSet;
pub use diagram::{classify_graph, EnumerationResult, GraphClass, GraphKind, SearchConfig};
pub use discrepancy::{
    classify_singularity, is_log_terminal_graph, log_discrepancies, SingularityClass, SingularityReport,
    ThresholdReading,
};
pub use error::{Error, Result};
pub use graph::{Vertex, WeightedGraph};
pub use graph_file::{parse_graph, serialize_graph};
pub use star::{check_star, StarCertificate};

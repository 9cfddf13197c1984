//! Berge-factors of tough hypergraphs: exact toughness, incidence graphs,
//! the parity-factor criterion, a matching-based (2,k)-factor solver, and
//! the experiments that exercise them.

pub mod bits;
pub mod budget;
pub mod error;
pub mod factor;
pub mod format;
pub mod harness;
pub mod hypergraph;
pub mod incidence;
pub mod matching;
pub mod parity;

pub use budget::Budget;
pub use error::{Error, Result};
pub use factor::{find_2k_factor, lift_to_berge, verify_2k_factor};
pub use hypergraph::{
    BergeFactorCertificate, BergePair, CertificateViolation, Hypergraph, Rational, ToughnessValue,
};
pub use incidence::{hypergraph_of, incidence_graph, BipartiteGraph, FactorSubgraph};
pub use matching::{is_perfect, max_matching, GeneralGraph, Matching};
pub use parity::{
    check_barrier_structure, decide_by_criterion, delta, find_biased_barrier, Barrier,
    ComponentClass, Decision, DegreeSpec,
};

//! Generators and the verification experiments.

pub mod generate;
pub mod theorem;
pub mod tightness;

pub use generate::{gen_random_hypergraph, Census, EdgeSizeLaw, GenParams};
pub use theorem::{
    check_instance, gate_holds, theorem_instances, verify_theorem, InstanceOutcome, TheoremConfig,
    TheoremMode, TheoremReport, Violation, ViolationKind,
};
pub use tightness::{
    tightness_candidates, tightness_search, TightnessBest, TightnessConfig, TightnessResult,
};

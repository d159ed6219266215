//! Fiber products, semidirect products and the embedding-problem identities.

pub mod identities;
pub mod iso;
pub mod product;

pub use identities::{
    central_double_quotients, solution_class_counts, verify_pullback_identity, DoubleQuotient, DoubleQuotientReport,
    PullbackReport, SolutionClasses,
};
pub use iso::{fingerprint, is_isomorphic, is_isomorphic_with_cap, is_isomorphism, Fingerprint, DEFAULT_ISO_CAP};
pub use product::{fiber_product, semidirect, trivial_action, ExtensionData, FiberProduct};

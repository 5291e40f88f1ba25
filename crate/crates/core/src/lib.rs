//! Decidable machinery around lower-modular semigroup varieties: word
//! problems for concrete varieties, finite models, bounded equational
//! deduction, Sapir-style identity systems, congruences of the G-sets of
//! words `W_λ`, and special elements of finite lattices.

pub mod criteria;
pub mod deduction;
pub mod error;
pub mod gset;
pub mod identity;
pub mod instance;
pub mod lattice;
pub mod models;
pub mod partitions;
pub mod replay;
pub mod sapir;
pub mod words;

pub use criteria::{holds, holds_in_join, join_contains_p_scan, CheckResult, Reason, ScanOutcome, VarietyId};
pub use deduction::{consistency_scan, derive, refute, replay_case2_chain, replay_trace, Bounds, DeductionResult, RewriteStep};
pub use error::{Error, Result};
pub use identity::{parse_identities, Identity, IdentitySystem};
pub use instance::contains_instance;
pub use models::{Assignment, BuiltinModel, FiniteSemigroup, Satisfaction};
pub use sapir::{sapir_system, sapir_with_verbal, SapirSystem};
pub use words::{is_balanced, Letter, LetterPermutation, LetterProfile, Substitution, Word};
pub use gset::{
    build_wlambda, check_modular_instance, enumerate_congruences, EnumerationBudget, Equivalence, GCongruence, GSet,
    ModularInstance, PartitionLambda,
};
pub use replay::{normalize_for_replay, proof_replay, ProofReplayReport};
pub use lattice::{catalog, ElementClassification, ElementProperty, FiniteLattice};

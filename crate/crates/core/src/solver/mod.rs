//! Null candidates, constraint extraction and exact admissibility analysis.

pub mod candidate;
pub mod classify;
pub mod constraints;
pub mod report;
pub mod solve;

pub use candidate::{build_null_candidate, build_wznw_candidate, NullCandidate, Normalization};
pub use classify::{analyse_representative, audit, classify_model, wznw_classify, AuditReport, Classification, SystemResult, WznwResult};
pub use constraints::{closed_form_constraints, derive_constraints, ConstraintRow, ConstraintSystem, RaisingSet, RowSource};
pub use solve::{solve_constraints, AdmissibilityResult, Status};

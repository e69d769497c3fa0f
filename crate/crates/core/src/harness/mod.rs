//! Seeded random cases and the suite runner.

mod case;
mod suite;

pub use case::{evaluate, generate_case, CaseFamily, CaseSpec, FamilyKind, PreparedCase};
pub use suite::{
    mix64, run_suite, trial_seed, CheckRow, FailureRecord, SuiteConfig, SuiteReport,
    TheoremSummary,
};

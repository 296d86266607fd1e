//! Exhaustive checks of the structural recognizers: agreement with the
//! enumerated classes, closure under mutation, the subtype transition table
//! and the two mutation implementations.

pub mod checks;
pub mod minimize;
pub mod report;
pub mod rules;

pub use checks::{
    closure_check, mutation_implementation_check, observed_outcomes, oracle_cross_check, path_from_seed,
    transition_check, worked_example,
};
pub use report::{CheckOutcome, Counterexample, VerificationReport};
pub use rules::{reachable, standard_rules, Context, Site, Source, Target, TransitionRule};

use quiverlab_core::{Family, QuiverError};

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("registry has no entry for {family} on {n} vertices")]
    MissingEntry { family: Family, n: usize },
    #[error("rule configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

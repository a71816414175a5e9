//! Generators, oracles, fixtures and theorem verification.

pub mod fixtures;
pub mod gen;
pub mod oracle;
pub mod search;
pub mod verify;

pub use gen::{gen_choice_function, gen_preference_structure, ChoiceMode, GenFlags};
pub use oracle::{oracle_h_formula_enum, oracle_mu_sharp, HOracle};
pub use search::{search_representation, SearchOutcome};
pub use verify::{verify_theorem, verify_theorem_on, Direction, Theorem, VerificationReport, VerifyConfig};

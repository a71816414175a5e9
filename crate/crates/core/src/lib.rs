//! Preferential consequence relations over classical, three-valued and
//! four-valued propositional semantics.

pub mod assumptions;
pub mod choice;
pub mod cli;
pub mod conditions;
pub mod consequence;
pub mod error;
pub mod formula;
pub mod harness;
pub mod modeltheory;
pub mod semantics;
pub mod valset;

pub use error::{Error, Result};
pub use formula::Formula;
pub use modeltheory::{Fingerprint, FpId, Frame, ValuationSet};
pub use semantics::{Kind, SemanticStructure, TruthValue};

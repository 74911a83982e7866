//! Nonstandard Dialectica and uniform Diller-Nahm translations for arithmetic
//! in all finite types with sequences and a standardness predicate, a Hilbert
//! proof kernel with realiser extraction, and a brute-force grid oracle.

pub mod bundle;
pub mod cli;
pub mod error;
pub mod formula;
pub mod gen;
pub mod kernel;
pub mod machine;
pub mod oracle;
pub mod reduce;
pub mod report;
pub mod syntax;
pub mod term;
pub mod translate;
pub mod types;

pub use formula::Formula;
pub use term::{Const, Term};
pub use types::FiniteType;

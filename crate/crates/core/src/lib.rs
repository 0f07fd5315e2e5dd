//! Grounded arithmetic: terms, a fuelled evaluator, a trusted proof kernel,
//! Gödel coding with reflective quantifiers, and a truth-preservation harness.

pub mod corpus;
pub mod defs;
pub mod eval;
pub mod harness;
pub mod kernel;
pub mod nat;
pub mod reflection;
pub mod syntax;
pub mod term;

pub use defs::{Body, DefinitionList, NativeFn, NativeOutcome};
pub use eval::{eval, eval_within, satisfies, Assignment, EvalOutcome, StuckReason};
pub use nat::Nat;
pub use syntax::{load_definitions, parse, print};
pub use term::{numeral, numeral_value, Path, Term};

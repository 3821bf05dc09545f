//! Finite-model workbench for pseudo equality algebras.
//!
//! A pseudo equality algebra is a structure `(X; ∼, ⌣∼, ∧, 1)` whose meet reduct is a
//! semilattice with top and whose two equivalence operations satisfy the axioms F1–F7.
//! This crate represents finite models as operation tables and provides:
//!
//! - axiom checkers for pseudo equality algebras (both the current and the original
//!   commutative-collapsing axiom systems), pseudo BCK-meet-semilattices and pseudo hoops;
//! - the derived implications `→`, `⇝` and their property catalogue;
//! - the term translations between pseudo equality algebras and pseudo
//!   BCK-meet-semilattices, with round-trip and invariance tests;
//! - deductive systems, congruences, quotients and the variety-level term identities;
//! - exhaustive enumeration of small models up to isomorphism and counterexample search;
//! - a plain-text model format and the `peqa` command-line tool.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod bck;
pub mod builtin;
pub mod cli;
pub mod congruence;
pub mod deduction;
pub mod derived;
pub mod error;
pub mod format;
pub mod hoop;
pub mod report;
pub mod search;
pub mod table;

mod laws;

pub use algebra::FiniteAlgebra;
pub use bck::BckAlgebra;
pub use congruence::EquivRelation;
pub use deduction::{DeductiveSystem, DsFilter, SubsetMask};
pub use derived::DerivedTables;
pub use error::{Error, Result};
pub use hoop::PseudoHoop;
pub use report::{AxiomReport, CheckMode, Failure};
pub use table::Table;

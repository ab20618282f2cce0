//! Difference-based mutation analysis.
//!
//! Programs are compared through *test differentiators*: binary judgements of
//! whether two programs behave differently on a test. Collecting those bits
//! over an ordered test vector yields d-vectors, which double as positions in
//! a program space anchored at an origin program. On top of that the crate
//! provides:
//!
//! * [`diffcore`]: behavior matrices, differentiator policies, d-vectors and
//!   mutation adequacy.
//! * [`progspace`]: program spaces and positions.
//! * [`lattice`]: the deviance relation and the position deviance lattice
//!   (a directed hypercube).
//! * [`subsumption`]: kill matrices, dynamic mutant subsumption, DMSGs and
//!   minimal mutant sets.
//! * [`mbfl`]: mutation-based fault localization (mutant-as-fix and
//!   mutant-as-fault scoring).
//! * [`mutlang`]: a tiny imperative language with a parser, mutation
//!   operators and an interpreter that produces behavior matrices.
//! * [`cli`]: the `mutspace` command-line pipeline.

pub mod bits;
pub mod cli;
pub mod diffcore;
pub mod error;
pub mod examples;
pub mod lattice;
pub mod mbfl;
pub mod mutlang;
pub mod progspace;
pub mod subsumption;

pub use bits::BitVector;
pub use diffcore::{
    BehaviorMatrix, BehaviorToken, Differentiator, Policy, ProgramId, Role, Status, TestId,
    TestVector,
};
pub use error::{Error, Result};

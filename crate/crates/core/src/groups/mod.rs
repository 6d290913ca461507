//! Finite abelian groups with their duals, finite groups by multiplication
//! table, actions by automorphisms, and root-of-unity scalars.

mod abelian;
mod action;
mod finite;
mod root;
mod subgroup;

pub use abelian::{AbElement, AbelianGroup, DualCharacter};
pub use action::{verify_action, Action, ActionViolation, ExpMatrix};
pub use finite::{AxiomCheck, FiniteGroup};
pub use root::RootExp;
pub use subgroup::Subgroup;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invariant factors {0:?} must each be ≥ 2 and form a divisibility chain")]
    InvalidFactors(Vec<u64>),
    #[error("exponent vector has length {found}, group has rank {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("character and element belong to different groups")]
    Mismatched,
    #[error("ambient root order {ambient} is not a multiple of exp(A) = {exponent}")]
    AmbientOrder { ambient: u64, exponent: u64 },
    #[error("multiplication table is empty")]
    EmptyTable,
    #[error("table row {row} has length {len}, expected {order}")]
    TableShape { row: usize, len: usize, order: usize },
    #[error("table row {row} contains out-of-range entry {entry}")]
    TableEntry { row: usize, entry: usize },
    #[error("element 0 is not a two-sided identity (fails at {0})")]
    Identity(usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("invalid action: {0}")]
    Action(#[from] ActionViolation),
    #[error("generator images do not reach every element of Q")]
    GeneratorsDoNotGenerate,
}

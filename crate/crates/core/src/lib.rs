//! Weighted zero-sum invariants of finite abelian groups.
//!
//! Groups are given by invariant factors; elements are addressed by a
//! mixed-radix index with the last factor varying fastest. The reach engine
//! computes all weighted subsequence sums of a sequence per length, and the
//! search layer builds exact invariant values and universal checks on top.

pub mod arith;
pub mod bounds;
pub mod brute;
pub mod constructions;
pub mod error;
pub mod group;
pub mod harness;
pub mod parse;
pub mod reach;
pub mod search;
pub mod sequence;
pub mod setsys;

pub use error::{Error, Result};
pub use group::{Element, Group};
pub use reach::{WeightSet, ZeroSumPredicate};
pub use search::{InvariantKind, InvariantResult, SearchBudget, Status};
pub use sequence::Sequence;

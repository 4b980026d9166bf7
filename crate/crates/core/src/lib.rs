//! Exact enumeration and counting of nonisomorphic leaf-induced subtrees of
//! rooted topological trees.
//!
//! A leaf-induced subtree is obtained from a nonempty set of leaves by keeping
//! the paths from those leaves up to their most recent common ancestor and then
//! contracting every vertex left with a single child. Two such subtrees are
//! counted once when they are isomorphic as unlabeled rooted trees.
//!
//! The crate is organized bottom-up:
//!
//! - [`tree`]: the [`RootedTree`] value, canonical codes and the named tree families.
//! - [`induction`]: the induction operator and the `2^n - 1` subset brute force.
//! - [`enumeration`]: the memoized branch-multiset enumerator used for real work.
//! - [`formulas`]: exact counts for stars, caterpillars and complete d-ary trees.
//! - [`asymptotics`]: growth constants of polynomial recurrences at arbitrary precision.
//! - [`extremal`]: exhaustive corpora of topological trees and the minimum-count check.

pub mod asymptotics;
pub mod enumeration;
pub mod error;
pub mod extremal;
pub mod family;
pub mod formulas;
pub mod induction;
pub mod tree;

pub use enumeration::{count, induced_set, Enumerator, InducedSet};
pub use error::{Error, Result};
pub use formulas::BigCount;
pub use induction::{brute_force_set, induce, LeafSubset};
pub use tree::{CanonicalCode, LeafPath, RootedTree};

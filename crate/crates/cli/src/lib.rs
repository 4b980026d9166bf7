//! Newick I/O, JSON reports and command implementations behind the
//! `leafsub` binary.

pub mod commands;
pub mod newick;
pub mod report;

pub use newick::{parse_newick, parse_newick_many, to_newick, NewickError};
pub use report::{Check, Report};

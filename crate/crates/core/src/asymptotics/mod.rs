//! Growth constants of the complete-tree counts and related numerics.
//!
//! Everything here works on [`BigReal`] balls, so each reported value carries
//! a rigorous error radius. Working precision is always the requested
//! precision plus [`GUARD_BITS`].

pub mod bounds;
pub mod floor;
pub mod kappa;
pub mod real;
pub mod recurrence;

/// Extra bits carried beyond every requested precision.
pub const GUARD_BITS: u32 = 32;

pub use bounds::{
    monotone_certificate, prop7_bound_check, MonotoneCertificate, Prop7Report, Prop7Row,
};
pub use floor::{find_h, floor_formula, FloorEvaluation, HRow, HSearch};
pub use kappa::{
    bits_for_digits, growth_constant, k_partial_sum, kappa, kappa_bits, kappa_decimal, KappaResult,
};
pub use real::{round_sig, BigReal};
pub use recurrence::{cdh_recurrence, iterated_log, lemma1_log_identity, PolyRecurrence};

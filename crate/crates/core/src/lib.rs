//! Finite sequences versus finite-block partitions, executed at finite scale.
//!
//! * [`counting`]: arrangement and Bell numbers with brute-force enumerators.
//! * [`encodings`]: injections from sequences into partitions with decoders,
//!   plus the iteration and ordering procedures that chain injections.
//! * [`diagonal`]: the diagonal family over decidable subsets of the naturals.
//! * [`fraenkel`]: supports, orbits and equivariance certificates for a
//!   finite shadow of the basic Fraenkel model.
//! * [`text`], [`suites`], [`cli`]: textual formats, exhaustive property
//!   suites and the command-line front end.

pub mod cli;
pub mod counting;
pub mod diagonal;
pub mod encodings;
pub mod fraenkel;
pub mod suites;
pub mod text;

pub use counting::{Carrier, FinSeq, Label, SetPartition};

pub(crate) fn serialize_biguint<S: serde::Serializer>(
    n: &num_bigint::BigUint,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

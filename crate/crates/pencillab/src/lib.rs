//! pencillab analyzes pencils of two rational quadrics with exact
//! arithmetic: hyperbolic reduction with respect to linear subspaces on the
//! base locus, real signature walks and their run-length invariants with
//! height and frequency, enumeration of real isotopy classes with
//! rationality verdict tables, and brute-force finite-field oracles for the
//! counting statements the rest of the library relies on.
//!
//! Everything is computed over the rationals (or small prime fields); there
//! is no floating point anywhere.
//!
//! Entry points:
//! - [`pencil::QuadricPencil`] and [`pencil::hyperbolic_reduce`]
//! - [`krasnov::krasnov_of_pencil`] for the signature-walk pipeline
//! - [`verdict::table_for_n`] for isotopy classification tables
//! - [`fforacle`] for finite-field censuses
//! - the `pencillab` binary for the command-line interface
//!
//! The `examples/` directory has one runnable program per capability.

// index-based loops are the clearer idiom in the elimination-heavy code
#![allow(clippy::needless_range_loop)]

pub mod battery;
pub mod exact;
pub mod fforacle;
pub mod krasnov;
pub mod pencil;
pub mod report;
pub mod verdict;

use thiserror::Error as ThisError;

/// Library-wide error type. The CLI maps each variant family to a distinct
/// exit code.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("zero form where a nonzero form is required")]
    ZeroForm,
    #[error("form is not squarefree")]
    NotSquarefree,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("malformed pencil: det(s*Q0 + t*Q1) vanishes identically")]
    MalformedPencil,
    #[error("singular pencil: repeated degeneration witnessed by {witness}")]
    SingularPencil { witness: String },
    #[error("subspace basis is rank deficient")]
    RankDeficientBasis,
    #[error("subspace does not lie on the base locus")]
    PlaneNotOnPencil,
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("malformed invariant: {0}")]
    MalformedInvariant(String),
    #[error("bad reduction modulo {prime}: {reason}")]
    BadReduction { prime: u64, reason: String },
    #[error("enumeration ceiling exceeded: estimated {estimate} visits > ceiling {ceiling}")]
    CeilingExceeded { estimate: u128, ceiling: u128 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

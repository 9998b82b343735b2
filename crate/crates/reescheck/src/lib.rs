//! Exact commutative-algebra toolkit for ideals of binary forms.
//!
//! Everything here works in the polynomial ring `k[x, y]` over an exact
//! field: the rationals or a prime field `GF(p)`. Ideals are handled
//! degree by degree through exact linear algebra, so every answer is a
//! theorem about the specific input, not a floating-point estimate.
//!
//! The modules build on each other:
//!
//! * [`scalars`]: field arithmetic and dense exact linear algebra
//!   (rank, kernels, solving, determinants, canonical subspaces),
//! * [`forms`]: binary forms as dense coefficient vectors,
//! * [`graded`]: degree-by-degree ideal queries: Hilbert functions,
//!   ideal products and powers, colon ideals, colengths, minimal
//!   generators, syzygies,
//! * [`genrank`]: block matrices of generic quadrics and maximal-rank
//!   certificates for them,
//! * [`rrtest`]: tests for whether the Ratliff-Rush closure of an
//!   `(x, y)`-primary ideal strictly exceeds the ideal,
//! * [`depth`]: minimal reductions, colength ladders, Hilbert-Samuel
//!   coefficients and the depth verdict for the Rees algebra,
//! * [`report`] and [`cli`]: JSON run reports and the command-line
//!   front end.

pub mod cli;
pub mod depth;
pub mod forms;
pub mod genrank;
pub mod graded;
pub mod report;
pub mod rrtest;
pub mod scalars;

/// Crate-wide error type. Mathematical failures (a check that comes out
/// false) are not errors; errors mean the question itself was malformed
/// or a stated precondition does not hold.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported for this construction")]
    CharacteristicTwo,
    #[error("degree {degree} is out of range: {reason}")]
    UnsupportedDegree { degree: usize, reason: String },
    #[error("random coefficients require a finite field")]
    NeedsFiniteField,
    #[error("ideal is not (x,y)-primary within degree bound {0}")]
    NotMPrimary(usize),
    #[error("genericity guard still failing after {0} samples")]
    ResampleCap(usize),
    #[error("no minimal reduction found after {0} attempts")]
    ReductionCap(usize),
    #[error("inhomogeneous entries: {0}")]
    Inhomogeneous(String),
    #[error("Hilbert-Samuel fit produced non-integer coefficients")]
    NonIntegralFit,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("report verification failed: {0}")]
    VerifyFailed(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

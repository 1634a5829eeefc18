//! Eigenvector component magnitudes of real symmetric matrices computed from
//! eigenvalues alone.
//!
//! For a real symmetric `A` with ascending eigenvalues `λ_0 ≤ … ≤ λ_{n-1}` and the
//! principal minor `M_j` (row and column `j` removed),
//!
//! ```text
//! |v_{i,j}|² = ∏_k (λ_i(A) − λ_k(M_j)) / ∏_{k≠i} (λ_i(A) − λ_k(A))
//! ```
//!
//! so a single component needs two eigenvalue-only solves instead of a full
//! eigendecomposition. [`identity::Engine`] evaluates the ratio with batched,
//! interlacing-paired products; [`eigensolve`] provides the eigenvalue solver and
//! an independent Jacobi oracle; [`bench`] times the variants against a full
//! decomposition.

pub mod bench;
pub mod eigensolve;
pub mod error;
pub mod identity;
pub mod io;
pub mod matrix;
pub mod verify;

pub use eigensolve::{EigenDecomposition, EigenvalueSolver, Spectrum};
pub use error::{Error, Result};
pub use identity::{Engine, IdentityConfig, MagnitudeResult};

pub use matrix::SymmetricMatrix;

//! Exact computations with finite-dimensional coalgebras and Hopf algebras
//! presented by structure constants.
//!
//! All arithmetic happens over cyclotomic fields `Q(ζ_n)` with arbitrary
//! precision rationals. The crate covers coradicals and the coradical
//! filtration, coalgebra projections onto the coradical and the spaces `P_n`
//! they define, antipodes, the classification of 2×2 matrix-like coalgebras,
//! and a rule engine that eliminates coradical shapes for Hopf algebras of a
//! given dimension.

pub mod bounds;
pub mod cli;
pub mod coalgebra;
pub mod error;
pub mod exactmath;
pub mod hopf;
pub mod io;
pub mod matrixlike;
pub mod zoo;

pub use error::{Error, Result};
pub use exactmath::{Scalar, Subspace};

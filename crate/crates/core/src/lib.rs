//! Diagonally harmonic polynomials for the complex reflection groups G(m,p,n).
//!
//! The crate computes, exactly, the spaces of polynomials in `r` sets of `n`
//! variables that are annihilated by every constant-term-free diagonal
//! invariant of a group `W = G(m,p,n)` acting as differential operator. From
//! these it derives multigraded Hilbert series, S_n Frobenius characteristics
//! and their expansions in Schur functions of the grading variables, whose
//! coefficients do not depend on `r`.
//!
//! Module map:
//! - [`exact`]: rationals, cyclotomic numbers, exact linear algebra
//! - [`symfunc`]: partitions, symmetric function bases, plethysm, characters
//! - [`groups`]: G(m,p,n), its elements, degrees and invariant generators
//! - [`poly`]: polynomials in an r×n matrix of variables
//! - [`harmonics`]: harmonic components, Hilbert and Frobenius series
//! - [`universal`]: r-independent expansions and closed-form families

pub mod error;
pub mod exact;
pub mod groups;
pub mod harmonics;
pub mod poly;
pub mod symfunc;
pub mod univariate;
pub mod universal;

pub use error::{Error, Result};

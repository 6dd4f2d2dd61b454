//! Exact real-algebraic computation for symmetric polynomial systems.
//!
//! This crate answers real-algebraic questions about polynomial systems that
//! are invariant under permuting their variables (or blocks of variables),
//! entirely in exact rational arithmetic:
//!
//! * [`poly`] — sparse multivariate polynomials over arbitrary-precision
//!   rationals, with a parser and a canonical printer;
//! * [`combi`] — compositions, partitions, orbit types, and the sorting
//!   combinatorics that index symmetry strata;
//! * [`symfun`] — symmetric-function bases (elementary, power-sum, complete
//!   homogeneous, monomial), invariant-basis rewriting, and block-symmetric
//!   substitutions;
//! * [`realroot`] — signed subresultant sequences, real-root counting, Thom
//!   encodings, and sign determination at real algebraic numbers;
//! * [`zerodim`] — zero-dimensional parametrizations of finite solution sets,
//!   their validation, and an exact Gröbner-basis solver that produces them;
//! * [`decide`] — orbit compression and the decision procedure for whether a
//!   parametrized set of compressed orbits contains a real point;
//! * [`emptiness`] — the critical-point method for real emptiness of
//!   symmetric systems and the degree-principle nonnegativity check;
//! * [`sos`] — Gram-matrix sums-of-squares certificates, exact PSD
//!   verification, and sparse SDPA output.
//!
//! All randomized routines take an explicit random-number generator, so a
//! fixed seed reproduces every result bit for bit.

pub mod combi;
pub mod decide;
pub mod emptiness;
mod linalg;
pub mod poly;
pub mod realroot;
pub mod sos;
pub mod symfun;
pub mod zerodim;

pub use linalg::{is_positive_semidefinite, Mat};

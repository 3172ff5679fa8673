//! Symbolic-numeric toolkit for planar Hamiltonians transversal to
//! infinity: explicit Picard-Fuchs systems for Abelian integrals,
//! zero-counting bounds for linear ODEs, and the numerical oracles
//! (oval integration, analytic continuation, argument-principle counting)
//! that cross-validate every algebraic derivation.
//!
//! Module map:
//! - [`coeff`], [`bipoly`], [`kform`], [`parse`]: exact polynomial and
//!   differential-form arithmetic with the degree/norm conventions all
//!   bounds are stated in.
//! - [`hamiltonian`]: transversality, division of 2-forms by dH, critical
//!   values.
//! - [`picard_fuchs`]: the redundant hypergeometric system (tE-A)X' = BX,
//!   Fuchsian conversion and geometry metrics.
//! - [`perturbation`]: first/second variations of the displacement map.
//! - [`reduction`], [`chains`]: system-to-scalar reduction and the
//!   chain-length / generalized-exponential recursions.
//! - [`bounds`]: disconjugacy, index and triangle zero bounds plus the
//!   argument-principle counter.
//! - [`analytic`]: oval tracing, Abelian integrals, complex-path transport,
//!   monodromy and scalar annulus factorization.
//! - [`report`]: structured text records shared by the CLI and tests.

pub mod analytic;
pub mod bipoly;
pub mod bounds;
pub mod chains;
pub mod coeff;
pub mod degree;
pub mod error;
pub(crate) mod exec;
pub mod hamiltonian;
pub mod kform;
pub mod linalg;
pub mod multipoly;
pub mod parse;
pub mod perturbation;
pub mod picard_fuchs;
pub mod reduction;
pub mod report;
pub mod roots;
pub mod unipoly;

pub use coeff::Coefficient;
pub use degree::Degree;
pub use error::{Error, ErrorCategory, Result};

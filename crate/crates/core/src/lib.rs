//! Exact generalized skew-spectral characterization of small oriented
//! graphs.
//!
//! Given an oriented graph `D`, the library computes its skew-walk matrix
//! `W(D)`, decides membership in the family `F_n` (graphs whose reduced walk
//! determinant is odd and square-free), bounds the number of non-isomorphic
//! generalized cospectral mates by `2^k - 1`, applies the weak
//! determination criterion, and recovers the rational orthogonal matrices
//! linking cospectral pairs. Everything is exact: integers are
//! arbitrary-precision and spectra are compared through integer
//! characteristic polynomials.
//!
//! The [`census`] module runs all of this over every oriented graph of a
//! given order and audits the results.

pub mod census;
pub mod characterization;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod graph;
pub mod linalg;
pub mod reference;
pub mod spectral;

pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::{OrientedGraph, Permutation};
pub use spectral::{QCertificate, SpectralFingerprint};

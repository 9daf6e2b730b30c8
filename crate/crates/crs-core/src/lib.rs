//! List decoding of complex Reed-Solomon (CRS) codes for compressed-sensing
//! sparse recovery.
//!
//! A CRS code evaluates degree-bounded polynomials at the n-th roots of unity;
//! its parity-check matrix doubles as a sensing matrix for sparse vectors. This
//! crate provides the full recovery pipeline:
//!
//! - [`code`]: code construction, compression (syndrome) and expansion maps
//! - [`classical`]: Berlekamp-Massey + Gorenstein-Zierler unique decoding with
//!   numerical thresholds, and soft information from the error locator
//! - [`interp`]: Guruswami-Sudan parameter selection and SVD interpolation,
//!   with erasure support
//! - [`rootfind`]: stabilized Roth-Ruckenstein y-root extraction plus Newton
//!   refinement of the candidates
//! - [`gmd`]: generalized-minimum-distance decoding driving repeated
//!   error/erasure GS trials to a unique answer
//! - [`experiment`]: Monte Carlo harness with CSV records and boxplot stats

pub mod bivariate;
pub mod classical;
pub mod code;
pub mod error;
pub mod experiment;
pub mod gmd;
pub mod interp;
mod numerics;
pub mod rootfind;
pub mod tolerances;

pub use bivariate::BivariatePoly;
pub use classical::{ErrorLocator, SoftInfo};
pub use code::{
    CodeParams, MessagePoly, NoiseConfig, ParityCheck, ReceivedVector, SparseError, Syndrome,
};
pub use error::{Error, Result};
pub use experiment::{BoxplotStats, DecodeStatus, ExperimentConfig, Scheme, TrialRecord};
pub use gmd::{DecodePath, Decoded, GmdConfig, ScoredList};
pub use interp::{ErasureSet, GsParams};
pub use rootfind::{Candidate, CandidateSet, NewtonState};
pub use tolerances::Tolerances;

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;

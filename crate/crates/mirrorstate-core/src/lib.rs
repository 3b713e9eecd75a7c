//! Conditional quantum state of a feedback-cooled suspended mirror.
//!
//! The mirror hangs from a flexible beam and has two coupled low-frequency
//! modes (pendulum and rotation). Given the homodyne record of the cavity
//! output, the optimal causal (Wiener) estimators of the mode variables are
//! built by spectral factorization, and the residual covariances follow from
//! residue sums. Everything here is `no_std` + `alloc`.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod covariance;
pub mod dd;
pub mod dynamics;
pub mod linsolve;
pub mod onemode;
pub mod params;
pub mod poly;
pub mod quadrature;
pub mod residue;
pub mod roots;
pub mod spectra;
pub mod steady;
pub mod wiener;

pub use dd::{Cdd, Dd};
pub use params::{DerivedConstants, NoiseEval, PhysicalParams};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("{0} out of range")]
    OutOfRange(&'static str),
    #[error("invalid input: {0}")]
    Invalid(&'static str),
    #[error("degenerate: {0}")]
    Degenerate(&'static str),
    #[error("no convergence: {0}")]
    NoConvergence(&'static str),
    #[error("singular linear system")]
    Singular,
    #[error("formulation: {0}")]
    Formulation(&'static str),
    #[error("factorization residual {0:e} above tolerance")]
    Factorization(f64),
    #[error("beam mode resonance: det C vanishes")]
    BeamResonance,
    #[error("pole classification ambiguous; pass an explicit selector")]
    AmbiguousPoles,
    #[error("composite covariance is not positive semidefinite")]
    NotPsd,
}

pub type Result<T> = core::result::Result<T, Error>;

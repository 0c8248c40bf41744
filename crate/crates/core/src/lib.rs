//! Numerical laboratory for harmonic analysis on `SL(n,R)/SO(n)`.
//!
//! The crate evaluates the explicitly computable objects behind Weyl-law
//! eigenvalue asymptotics on congruence quotients: the Plancherel density
//! and its comparison products, Harish-Chandra spherical functions by
//! quadrature over `SO(n)`, compactly supported test functions and their
//! Fourier-Laplace transforms, the full `SL(2)` Selberg trace formula for
//! principal congruence groups, and the Morse-function estimates entering
//! the geometric side.

pub mod fit;
pub mod form;
pub mod morse;
pub mod par;
pub mod plancherel;
pub mod report;
pub mod rootsys;
pub mod sl2;
pub mod special;
pub mod spherical;
pub mod testfn;
pub mod weyl;

mod quad;

pub use form::QuadForm;
pub use rootsys::{CartanVector, LeviSubgroup, SpectralPoint, WeylElement};

/// Errors surfaced by the numeric evaluators.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("rank {0} exceeds the combinatorial guard ({1})")]
    RankTooLarge(usize, usize),
    #[error("{0}")]
    Domain(String),
    #[error("quadrature failed to converge: {0}")]
    QuadratureNonConvergence(String),
    #[error("level must be at least 3, got {0}")]
    LevelTooSmall(u64),
    #[error("test-function support {support} exceeds length-spectrum validity radius {validity}")]
    SupportExceedsValidity { support: f64, validity: f64 },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

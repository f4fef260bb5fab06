//! Numerical laboratory for random Laplacian-type matrices.
//!
//! The crate samples sparse-regime Laplacian-type random matrices (centered
//! row sums, a deterministic trivial eigenpair), solves the deformed free
//! convolution equations that describe their limiting spectra, and measures
//! how closely finite samples follow the limit: local laws for the Stieltjes
//! transform, eigenvalue rigidity, eigenvector delocalization, level
//! repulsion, and gap statistics compared against the Gaussian orthogonal
//! ensemble.
//!
//! Organization:
//! - [`ensemble`]: sampling, rescaling, the trivial-direction projection, and
//!   Gaussian comparison decompositions.
//! - [`freeconv`]: fixed-point solvers for the limiting Stieltjes transforms,
//!   density tabulation, and classical eigenvalue locations.
//! - [`spectra`]: eigendecomposition, resolvents, and exact resolvent
//!   identity checks.
//! - [`locallaw`]: spectral domains, error controls, and Monte Carlo local
//!   law / rigidity / delocalization reports.
//! - [`graphs`]: colored-graph bookkeeping for resolvent expansion sums.
//! - [`dynamics`]: matrix Ornstein-Uhlenbeck flow, its projected form, and
//!   level repulsion diagnostics.
//! - [`universality`]: gap statistics against the GOE reference.
//! - [`cli` support]: [`report`], [`stats`], and [`io`] carry shared
//!   reporting, statistics, and serialization utilities.

pub mod ensemble;
pub mod error;
pub mod linalg;
pub mod quad;
pub mod rng;

mod eig;

pub use error::{Error, Result};
pub use linalg::{CMatrix, Complex64, SymmetricMatrix};
pub use quad::GaussHermite;

//! Simulator and verification toolkit for the asynchronous averaging process
//! on two-community graphs.
//!
//! The crate is organised around the experiment pipeline:
//!
//! - [`graph`]: construction of clustered regular graphs and stochastic block
//!   model samples, plus structural invariant checking.
//! - [`spectral`]: dense normalized-Laplacian spectra, the expected-update
//!   matrix, and the partition-indicator decomposition machinery.
//! - [`dynamics`]: the pairwise averaging process itself, its activation
//!   schedule bookkeeping, and observable extraction.
//! - [`protocols`]: the two labeling protocols (sign freezing and jump
//!   detection) and majority boosting.
//! - [`oracle`]: exact and analytic reference computations the simulations
//!   are verified against.
//! - [`metrics`]: reconstruction and labeling quality scores, schedule
//!   statistics.
//! - [`trials`]: deterministic Monte Carlo batching, parallel when the
//!   `parallel` feature (default) is enabled.
//! - [`suite`]: the built-in verification suite run by `avgsim verify`.

pub mod dynamics;
pub mod graph;
pub mod metrics;
pub mod oracle;
pub mod protocols;
pub mod report;
pub mod rng;
pub mod spectral;
pub mod suite;
pub mod trials;

pub use dynamics::{ActivationSchedule, Decomposition, RunConfig, RunTrace};
pub use graph::{ClusteredGraph, GraphError, GraphKind, SbmParams, VerificationReport};
pub use spectral::{GraphSpectrum, SpectralError};

//! Scale mixtures of multivariate elliptically contoured stable laws.
//!
//! The crate samples, evaluates, and statistically verifies the family of
//! laws U^{1/α} ∘ S(α,Σ,0) — elliptically contoured stable vectors rescaled
//! by an independent nonnegative mixer — together with the univariate
//! machinery they are built from (one-sided and symmetric stable, gamma and
//! generalized gamma, Weibull, Mittag-Leffler and generalized Mittag-Leffler,
//! the mixed-exponential mixer, stable ratios) and the multivariate special
//! cases (normal, Laplace, Linnik, generalized Linnik).
//!
//! Four submodule groups:
//! * [`univariate`] / [`multivariate`] / [`mixer`] — exact-convention
//!   samplers, pure functions of an explicit [`rng::RngStream`];
//! * [`analytics`] — closed-form CFs, Laplace–Stieltjes transforms, densities,
//!   the Mittag-Leffler function, analytic moments, empirical estimators;
//! * [`verify`] — KS / energy-distance / CF-distance testing and the registry
//!   of distributional identities, each executable as a pass/fail test;
//! * [`limit`] — scalar-normalized random-sum convergence experiments with
//!   their index-condition diagnostics and necessity probes.

pub mod analytics;
pub mod batch;
pub mod error;
pub mod limit;
pub mod mixer;
pub mod multivariate;
pub mod rng;
pub mod spd;
pub mod spec;
pub mod univariate;
pub mod verify;

pub use batch::{BatchMeta, SampleBatch};
pub use error::{Error, Result};
pub use mixer::MixerSpec;
pub use multivariate::{MultivariateSpec, Route};
pub use rng::RngStream;
pub use spd::{make_spd, SpdMatrix};
pub use spec::DistributionSpec;
pub use univariate::UnivariateSpec;

/// Crate version recorded in CLI output metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

//! Monte Carlo and numerical laboratory for the spectral measure of
//! Brownian motion on the unitary group U(N).
//!
//! The crate is organized bottom-up:
//!
//! - [`rng`]: reproducible counter-based random streams, one per replica.
//! - [`lie`]: standard Gaussians on u(N) and su(N) for `<A, B>_N = N Re tr(A B*)`.
//! - [`unitary`], [`simulate`]: the SDE `dU = U dW - U dt / 2` on U(N), directly and
//!   as a circle x SU(N) product.
//! - [`spectral`]: eigenangles, empirical and pooled spectral measures, trace moments,
//!   geodesic distance to the identity.
//! - [`transport`]: exact Wasserstein-1 distances on the circle.
//! - [`free`]: the large-N limit `nu_t` from its closed-form moments.
//! - [`harness`]: experiments that confront simulations with the convergence bounds,
//!   persisted as CSV plus a JSON sidecar.
//! - [`cli`]: the `ubmlab` command line.

// Domain checks are written as `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod free;
pub mod harness;
pub mod lie;
pub mod rng;
pub mod simulate;
pub mod spectral;
pub mod transport;
pub mod unitary;

pub use error::{Error, Result};

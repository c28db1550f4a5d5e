//! Entropies and divergences of finite-dimensional quantum channels.
//!
//! A quantum channel is a completely positive trace-preserving map between
//! operators on finite-dimensional Hilbert spaces. This crate computes the
//! entropy, Rényi entropy, and min-entropy of such channels, the channel
//! divergences they are built from, and the closed-form values available for
//! covariant and bosonic Gaussian channels, so that every optimized quantity
//! can be cross-checked against an independent route.
//!
//! The layers, bottom up:
//!
//! * [`linalg`] — dense complex matrix kernel: Hermitian eigendecomposition,
//!   matrix functions, tensor algebra, partial trace, Schatten norms.
//! * [`entropy`] — state-level entropies and divergences (von Neumann,
//!   relative, sandwiched/Petz Rényi, max-relative, conditional).
//! * [`channel`] / [`superchannel`] — Kraus, Choi, and Stinespring
//!   representations, standard channel constructors, superchannels.
//! * [`opt`] — mirror ascent over density matrices with Frank–Wolfe gap
//!   certificates for concave objectives.
//! * [`engine`] — the channel entropy functions H(N), H_α(N), H_min(N),
//!   the extended min-entropy, and the completely bounded 1→α norm.
//! * [`divergence`] — generalized / Choi / adversarial channel divergences
//!   and the Choi entropy-function suite.
//! * [`bosonic`] — scalar formulas for thermal, amplifier, and
//!   additive-noise Gaussian channel entropies.
//! * [`chanspec`] — the channel-specification JSON consumed by the CLI.
//! * [`acceptance`] — the self-check suite behind `chent check`.
//!
//! All randomized computations are deterministic functions of an explicit
//! seed; nothing draws entropy from the environment.

pub mod acceptance;
pub mod bosonic;
pub mod channel;
pub mod chanspec;
pub mod divergence;
pub mod engine;
pub mod entropy;
pub mod linalg;
pub mod opt;
pub mod policy;
pub mod rng;
pub mod superchannel;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: bad dimensions, non-Hermitian matrices, broken
    /// trace preservation, out-of-range parameters.
    #[error("validation error: {0}")]
    Validation(String),
    /// Structurally valid input outside a function's mathematical domain
    /// (e.g. α = 1 for a Rényi divergence).
    #[error("domain error: {0}")]
    Domain(String),
    /// A computation produced NaN or failed to converge.
    #[error("numerical error: {0}")]
    Numerical(String),
    /// Channel-spec JSON could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

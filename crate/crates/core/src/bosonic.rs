//! Closed-form entropies of single-mode bosonic Gaussian channels.
//!
//! Everything here is scalar arithmetic: the thermal, amplifier, and
//! additive-noise families admit closed forms for the energy-constrained
//! entropy (photon-number constraint N_S on the input) and its N_S → ∞
//! limit, the unconstrained entropy. No Fock-space truncation or operator
//! machinery is involved.
//!
//! The Gibbs observable is fixed to the photon number operator n̂; the
//! general observable/power-constraint pair (G, P) of the wider framework
//! is out of scope here and only n̂/N_S is computable.

use crate::{Error, Result};

const LN_2: f64 = std::f64::consts::LN_2;

/// Bosonic channel family and parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BosonicChannel {
    /// Thermalizing channel with transmissivity η ∈ (0,1) and environment
    /// mean photon number N_B ≥ 0.
    Thermal { eta: f64, n_b: f64 },
    /// Amplifier channel with gain G > 1 and environment photon number
    /// N_B ≥ 0.
    Amplifier { gain: f64, n_b: f64 },
    /// Additive-noise channel with noise variance ξ ≥ 0.
    AdditiveNoise { xi: f64 },
}

impl BosonicChannel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            BosonicChannel::Thermal { eta, n_b } => {
                if !(0.0 < eta && eta < 1.0) {
                    return Err(Error::Validation(format!(
                        "thermal channel needs η ∈ (0,1), got {eta}"
                    )));
                }
                if n_b < 0.0 {
                    return Err(Error::Validation(format!(
                        "thermal channel needs N_B ≥ 0, got {n_b}"
                    )));
                }
            }
            BosonicChannel::Amplifier { gain, n_b } => {
                if gain <= 1.0 {
                    return Err(Error::Validation(format!(
                        "amplifier channel needs G > 1, got {gain}"
                    )));
                }
                if n_b < 0.0 {
                    return Err(Error::Validation(format!(
                        "amplifier channel needs N_B ≥ 0, got {n_b}"
                    )));
                }
            }
            BosonicChannel::AdditiveNoise { xi } => {
                if xi < 0.0 {
                    return Err(Error::Validation(format!(
                        "additive-noise channel needs ξ ≥ 0, got {xi}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Entropy of a bosonic thermal state with mean photon number x:
/// g₂(x) = (x+1) log₂(x+1) − x log₂ x, with g₂(0) = 0.
///
/// Evaluated as (x·ln(1+1/x) + ln(1+x))/ln 2, which is exact and free of
/// the large-x cancellation in the textbook form; for x → ∞ it approaches
/// log₂ x + 1/ln 2.
pub fn g2(x: f64) -> Result<f64> {
    if x < 0.0 || x.is_nan() {
        return Err(Error::Domain(format!(
            "g₂ needs a nonnegative argument, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok((x * (1.0 / x).ln_1p() + x.ln_1p()) / LN_2)
}

/// Energy-constrained entropy H(channel, n̂, N_S) with input photon-number
/// bound N_S ≥ 0.
pub fn constrained_entropy(channel: BosonicChannel, n_s: f64) -> Result<f64> {
    channel.validate()?;
    if n_s < 0.0 || n_s.is_nan() {
        return Err(Error::Validation(format!("N_S must be ≥ 0, got {n_s}")));
    }
    match channel {
        BosonicChannel::Thermal { eta, n_b } => {
            // D₁² expanded so the leading N_S² coefficient is (1−η)²
            // exactly, avoiding the difference-of-big-squares form.
            let c = (1.0 - eta) * n_b + 1.0;
            let d1 = ((1.0 - eta) * (1.0 - eta) * n_s * n_s
                + 2.0 * ((eta + 1.0) * c - 2.0 * eta) * n_s
                + c * c)
                .sqrt();
            let shift = (1.0 - eta) * (n_s - n_b);
            // Both photon numbers are ≥ 0 up to rounding; clamp the noise.
            Ok(
                g2(((d1 + shift - 1.0) / 2.0).max(0.0))? + g2(((d1 - shift - 1.0) / 2.0).max(0.0))?
                    - g2(n_s)?,
            )
        }
        BosonicChannel::Amplifier { gain, n_b } => {
            let c = (gain - 1.0) * (n_b + 1.0) + 1.0;
            let d2 = ((gain - 1.0) * (gain - 1.0) * n_s * n_s
                + 2.0 * ((gain + 1.0) * c - 2.0 * gain) * n_s
                + c * c)
                .sqrt();
            let shift = (gain - 1.0) * (n_s + n_b + 1.0);
            Ok(
                g2(((d2 + shift - 1.0) / 2.0).max(0.0))? + g2(((d2 - shift - 1.0) / 2.0).max(0.0))?
                    - g2(n_s)?,
            )
        }
        BosonicChannel::AdditiveNoise { xi } => {
            let d3 = ((xi + 1.0) * (xi + 1.0) + 4.0 * xi * n_s).sqrt();
            Ok(
                g2(((d3 - (xi + 1.0)) / 2.0).max(0.0))? + g2(((d3 + xi - 1.0) / 2.0).max(0.0))?
                    - g2(n_s)?,
            )
        }
    }
}

/// Unconstrained entropy, the N_S → ∞ limit of [`constrained_entropy`]:
/// log₂(1−η) + g₂(N_B), log₂(G−1) + g₂(N_B), or log₂ ξ + 1/ln 2.
/// The additive-noise family at ξ = 0 diverges to −∞, reported as
/// `f64::NEG_INFINITY`.
pub fn unconstrained_entropy(channel: BosonicChannel) -> Result<f64> {
    channel.validate()?;
    match channel {
        BosonicChannel::Thermal { eta, n_b } => Ok((1.0 - eta).log2() + g2(n_b)?),
        BosonicChannel::Amplifier { gain, n_b } => Ok((gain - 1.0).log2() + g2(n_b)?),
        BosonicChannel::AdditiveNoise { xi } => {
            if xi == 0.0 {
                return Ok(f64::NEG_INFINITY);
            }
            Ok(xi.log2() + 1.0 / LN_2)
        }
    }
}

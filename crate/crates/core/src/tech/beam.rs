//! Minimum-noise beamforming under a unit-gain constraint (maximal ratio
//! combining).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::{inner, norm_sqr};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BeamScenario {
    /// Channel vector `h̄`, one entry per receive antenna.
    pub channel: Vec<Complex64>,
    /// Per-antenna noise variance `θ²`.
    pub noise_variance: f64,
    /// Transmit power `ρ`, normalized to the noise.
    pub transmit_power: f64,
}

impl Default for BeamScenario {
    fn default() -> Self {
        BeamScenario {
            channel: vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.5, 0.5),
                Complex64::new(-0.3, 0.8),
                Complex64::new(0.2, -0.1),
            ],
            noise_variance: 1.0,
            transmit_power: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Beamformer {
    pub weights: Vec<Complex64>,
    /// Lagrange multiplier `ζ = 2 / ‖h̄‖²`.
    pub multiplier: f64,
    /// `ρ·‖h̄‖²`.
    pub snr: f64,
}

/// `w̄* = h̄ / ‖h̄‖²`, the minimum-noise weights with `w̄ᴴh̄ = 1`.
pub fn optimal_beamformer(s: &BeamScenario) -> Result<Beamformer> {
    let energy = norm_sqr(&s.channel);
    if !(energy > 0.0) {
        return Err(Error::domain("beamforming channel vector is zero"));
    }
    let multiplier = 2.0 / energy;
    Ok(Beamformer {
        weights: s.channel.iter().map(|h| h * (multiplier / 2.0)).collect(),
        multiplier,
        snr: s.transmit_power * energy,
    })
}

/// Output noise power `θ²·‖w̄‖²` of a combiner.
pub fn noise_power(weights: &[Complex64], noise_variance: f64) -> f64 {
    noise_variance * norm_sqr(weights)
}

/// `|w̄ᴴh̄ − 1|`.
pub fn constraint_residual(weights: &[Complex64], channel: &[Complex64]) -> f64 {
    (inner(weights, channel) - Complex64::new(1.0, 0.0)).norm()
}

/// Output SNR `E[m²] / (θ²·‖w̄‖²)` of a unit-gain combiner fed with symbol power `symbol_power`.
pub fn combiner_snr(weights: &[Complex64], noise_variance: f64, symbol_power: f64) -> f64 {
    symbol_power / noise_power(weights, noise_variance)
}

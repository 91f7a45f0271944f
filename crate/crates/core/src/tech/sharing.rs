//! Spectrum sensing and two-phase cooperative spectrum sharing with a
//! malicious primary transmitter.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::secrecy::{capacity, SecrecyMetrics};
use crate::units::q_function;

/// Energy-detector sensing parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SensingParams {
    /// Detection threshold `th`.
    pub threshold: f64,
    /// Received SNR `P` at the secondary transmitter.
    pub snr: f64,
    /// Sensing time `μ`, seconds.
    pub sensing_time: f64,
    /// Sampling frequency `f_N`, Hz.
    pub sampling_frequency: f64,
    pub noise_variance: f64,
}

impl SensingParams {
    /// Sample count `N = μ·f_N`.
    pub fn sample_count(&self) -> f64 {
        self.sensing_time * self.sampling_frequency
    }
}

/// Two-phase sharing: the secondary transmitter relays a fraction `χ` of its
/// power for the primary signal and keeps `1 − χ` for its own.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SharingScenario {
    pub total_power: f64,
    pub noise_power: f64,
    /// Cooperation fraction `χ`.
    pub chi: f64,
    /// `|h_sr′|²`, secondary transmitter to secondary receiver.
    pub gain_secondary_receiver: f64,
    /// `|h_pt′|²`, secondary transmitter to the (malicious) primary transmitter.
    pub gain_primary_transmitter: f64,
    pub sensing: SensingParams,
    pub threshold: f64,
}

impl SharingScenario {
    /// Transmit SNR `P = o / n`.
    pub fn snr(&self) -> f64 {
        self.total_power / self.noise_power
    }
}

/// `(P(A_1), P(A_0))`: detection and false-alarm probabilities.
pub fn sensing_probabilities(p: &SensingParams) -> Result<(f64, f64)> {
    let n = p.sample_count();
    if !(n > 0.0) {
        return Err(Error::domain(format!("sensing time × sampling frequency must be > 0, got {n}")));
    }
    if !(p.noise_variance > 0.0) {
        return Err(Error::domain("noise variance must be > 0"));
    }
    if !(p.snr >= 0.0) {
        return Err(Error::domain("sensing SNR must be >= 0"));
    }
    let ratio = p.threshold / p.noise_variance;
    let detect = q_function((ratio - p.snr - 1.0) * (n / (2.0 * p.snr + 1.0)).sqrt());
    let false_alarm = q_function((ratio - 1.0) * n.sqrt());
    Ok((detect, false_alarm))
}

/// Detailed outcome of [`sharing_secrecy`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharingOutcome {
    /// SNR `P_sr` at the secondary receiver for its own signal.
    pub snr_secondary: f64,
    /// SNR `P_pt` at the primary transmitter for the same signal.
    pub snr_primary: f64,
    pub rate_secondary: f64,
    pub rate_primary: f64,
    pub metrics: SecrecyMetrics,
}

/// Secrecy of the secondary signal against the primary transmitter. Rates
/// carry the ½ factor of the two transmission phases.
pub fn sharing_secrecy(s: &SharingScenario) -> Result<SharingOutcome> {
    if !(0.0..=1.0).contains(&s.chi) {
        return Err(Error::domain(format!("cooperation fraction must lie in [0, 1], got {}", s.chi)));
    }
    if !(s.noise_power > 0.0) {
        return Err(Error::domain("noise power must be > 0"));
    }
    if [s.total_power, s.gain_secondary_receiver, s.gain_primary_transmitter].iter().any(|v| !(*v >= 0.0)) {
        return Err(Error::domain("powers and gains must be non-negative"));
    }
    let own = (1.0 - s.chi) * s.snr();
    let snr_secondary = own * s.gain_secondary_receiver;
    let snr_primary = own * s.gain_primary_transmitter;
    let rate_secondary = 0.5 * capacity(snr_secondary);
    let rate_primary = 0.5 * capacity(snr_primary);
    Ok(SharingOutcome {
        snr_secondary,
        snr_primary,
        rate_secondary,
        rate_primary,
        metrics: SecrecyMetrics::from_parts(snr_secondary, snr_primary, rate_secondary, rate_primary, s.threshold),
    })
}

impl Default for SharingScenario {
    fn default() -> Self {
        SharingScenario {
            total_power: 10.0,
            noise_power: 1.0,
            chi: 0.3,
            gain_secondary_receiver: 1.2,
            gain_primary_transmitter: 0.4,
            sensing: SensingParams::default(),
            threshold: 0.1,
        }
    }
}

impl Default for SensingParams {
    fn default() -> Self {
        SensingParams {
            threshold: 1.2,
            snr: 0.5,
            sensing_time: 1e-3,
            sampling_frequency: 1e5,
            noise_variance: 1.0,
        }
    }
}

//! Massive MIMO link with mutual coupling, RF front ends and co-channel
//! interference.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::secrecy::{sinr, SecrecyMetrics, SinrInputs};

/// Base station to user link, plus an intruder observing the same transmission.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MimoScenario {
    pub bs_antennas: u32,
    pub ue_antennas: u32,
    /// RF front-end response at the transmitter.
    pub front_end_tx: Complex64,
    /// RF front-end response at the receiver.
    pub front_end_rx: Complex64,
    /// Magnitude `|h̄|` of the mutual-coupling component.
    pub coupling_magnitude: f64,
    /// Phase `α` of the coupling component, in cycles (`exp(j2πα)`).
    pub coupling_phase: f64,
    /// Multipath component `h̃`.
    pub multipath: Complex64,
    pub transmit_power: f64,
    pub noise_power: f64,
    /// Interference amplitudes `I_k` seen by the user.
    pub interference: Vec<Complex64>,
    /// Mutual-coupling power `O_mc`.
    pub coupling_power: f64,
    /// `|H_{i,in}|²` towards the intruder.
    pub eve_channel_gain: f64,
    /// Noise at the intruder; defaults to the user's noise power.
    pub eve_noise_power: Option<f64>,
    /// Interference power `i_p′` near the intruder; defaults to the user's `i_p`.
    pub eve_interference_power: Option<f64>,
    pub threshold: f64,
}

/// Components of the total power budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerBudget {
    pub transmit: f64,
    pub noise: f64,
    pub interference: f64,
    pub coupling: f64,
    /// `O_F = |a|²·|b|²`.
    pub front_end: f64,
    pub total: f64,
}

/// Secrecy figures of the MIMO link together with its power budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MimoOutcome {
    pub metrics: SecrecyMetrics,
    pub budget: PowerBudget,
    /// `|H_{i,j}|²` of the user link.
    pub channel_gain: f64,
}

impl MimoScenario {
    /// Propagation coefficient `h = |h̄|·exp(j2πα) + h̃`.
    pub fn propagation(&self) -> Complex64 {
        Complex64::from_polar(self.coupling_magnitude, 2.0 * std::f64::consts::PI * self.coupling_phase) + self.multipath
    }

    /// Effective channel `H = a·h·b`.
    pub fn channel(&self) -> Complex64 {
        self.front_end_tx * self.propagation() * self.front_end_rx
    }

    /// `i_p = Σ |I_k|²`.
    pub fn interference_power(&self) -> f64 {
        self.interference.iter().map(|i| i.norm_sqr()).sum()
    }

    pub fn power_budget(&self) -> PowerBudget {
        let front_end = self.front_end_tx.norm_sqr() * self.front_end_rx.norm_sqr();
        let interference = self.interference_power();
        PowerBudget {
            transmit: self.transmit_power,
            noise: self.noise_power,
            interference,
            coupling: self.coupling_power,
            front_end,
            total: self.transmit_power + self.noise_power + interference + self.coupling_power + front_end,
        }
    }

    fn validate(&self) -> Result<()> {
        let powers = [
            self.transmit_power,
            self.noise_power,
            self.coupling_power,
            self.eve_channel_gain,
            self.eve_noise_power.unwrap_or(0.0),
            self.eve_interference_power.unwrap_or(0.0),
        ];
        if powers.iter().any(|p| !(*p >= 0.0)) {
            return Err(Error::domain("MIMO powers must be non-negative"));
        }
        if self.noise_power == 0.0 || self.eve_noise_power == Some(0.0) {
            return Err(Error::domain("MIMO noise power must be > 0"));
        }
        Ok(())
    }
}

/// Secrecy rate of the user link against the intruder link.
pub fn mimo_secrecy(s: &MimoScenario) -> Result<MimoOutcome> {
    s.validate()?;
    let gain = s.channel().norm_sqr();
    let i_p = s.interference_power();
    let main = sinr(&SinrInputs::new(s.transmit_power * gain, s.noise_power, i_p, s.coupling_power))?;
    let eve = sinr(&SinrInputs::new(
        s.transmit_power * s.eve_channel_gain,
        s.eve_noise_power.unwrap_or(s.noise_power),
        s.eve_interference_power.unwrap_or(i_p),
        s.coupling_power,
    ))?;
    Ok(MimoOutcome {
        metrics: SecrecyMetrics::from_sinrs(main.value(), eve.value(), s.threshold),
        budget: s.power_budget(),
        channel_gain: gain,
    })
}

impl Default for MimoScenario {
    fn default() -> Self {
        MimoScenario {
            bs_antennas: 64,
            ue_antennas: 2,
            front_end_tx: Complex64::new(1.0, 0.0),
            front_end_rx: Complex64::new(1.0, 0.0),
            coupling_magnitude: 0.3,
            coupling_phase: 0.1,
            multipath: Complex64::new(1.0, 0.2),
            transmit_power: 10.0,
            noise_power: 1.0,
            interference: vec![Complex64::new(1.0, 1.0), Complex64::new(0.0, 1.0)],
            coupling_power: 0.5,
            eve_channel_gain: 0.4,
            eve_noise_power: None,
            eve_interference_power: None,
            threshold: 0.5,
        }
    }
}

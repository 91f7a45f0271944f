//! Multiuser IoT downlink: secrecy outage of one scheduled node against an
//! eavesdropper, both disturbed by interfering nodes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::secrecy::{secrecy_outage_probability, SinrSampler, SopEstimate, SopInputs};
use crate::simkit::FadingDescriptor;
use crate::units::{RandomStream, StreamRng};

/// Receiver `d` with `I_d` interferers:
/// `Q = α_m|h_{m,d}|² / (Σ α_{i_d}|h_{i_d,d}|² + 1)` with `α_{i_d} = η·α_m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IotReceiver {
    pub alpha: f64,
    pub eta: f64,
    pub interferers: u32,
    pub signal: FadingDescriptor,
    pub interference: FadingDescriptor,
}

impl SinrSampler for IotReceiver {
    fn sample_sinr(&self, rng: &mut StreamRng) -> f64 {
        let wanted = self.alpha * self.signal.sample_power(rng);
        let alpha_i = self.eta * self.alpha;
        let interference: f64 = (0..self.interferers).map(|_| alpha_i * self.interference.sample_power(rng)).sum();
        wanted / (interference + 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IotScenario {
    /// Antennas `A` at the access point.
    pub antennas: u32,
    /// Scheduled users `B`.
    pub users: u32,
    /// User pool size `n`.
    pub pool: u32,
    /// Normalized power `α_m` of the intended node's signal.
    pub alpha: f64,
    /// Interference fraction `η`.
    pub eta: f64,
    /// `I_p`, interferers at the intended node.
    pub interferers_user: u32,
    /// `I_e`, interferers at the eavesdropper.
    pub interferers_eve: u32,
    pub fading_user: FadingDescriptor,
    pub fading_eve: FadingDescriptor,
    pub fading_interference: FadingDescriptor,
    /// Target secrecy rate `C_r`.
    pub target_rate: f64,
    /// `ρ_th`.
    pub bound_threshold: f64,
}

impl Default for IotScenario {
    fn default() -> Self {
        IotScenario {
            antennas: 4,
            users: 2,
            pool: 8,
            alpha: 10.0,
            eta: 0.1,
            interferers_user: 2,
            interferers_eve: 2,
            fading_user: FadingDescriptor::rayleigh(1.0),
            fading_eve: FadingDescriptor::rayleigh(1.0),
            fading_interference: FadingDescriptor::rayleigh(1.0),
            target_rate: 0.5,
            bound_threshold: 1.0,
        }
    }
}

impl IotScenario {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.eta) {
            return Err(Error::domain(format!("interference fraction must lie in [0, 1], got {}", self.eta)));
        }
        if !(self.alpha >= 0.0) {
            return Err(Error::domain("normalized power must be >= 0"));
        }
        if self.users > self.pool {
            return Err(Error::domain("scheduled users exceed the user pool"));
        }
        self.fading_user.validate()?;
        self.fading_eve.validate()?;
        self.fading_interference.validate()
    }

    pub fn user(&self) -> IotReceiver {
        self.receiver(self.interferers_user, self.fading_user)
    }

    pub fn eavesdropper(&self) -> IotReceiver {
        self.receiver(self.interferers_eve, self.fading_eve)
    }

    fn receiver(&self, interferers: u32, signal: FadingDescriptor) -> IotReceiver {
        IotReceiver {
            alpha: self.alpha,
            eta: self.eta,
            interferers,
            signal,
            interference: self.fading_interference,
        }
    }
}

/// Monte-Carlo secrecy outage probability `Pr[C_s < C_r]`.
pub fn iot_sop(s: &IotScenario, stream: RandomStream, trials: u64) -> Result<SopEstimate> {
    s.validate()?;
    let inputs = SopInputs {
        target_rate: s.target_rate,
        main: s.user(),
        eve: s.eavesdropper(),
        bound_threshold: s.bound_threshold,
    };
    secrecy_outage_probability(&inputs, stream, trials)
}

//! Relay-assisted D2D underlaying a cellular channel, with an eavesdropper `M`.
//!
//! Link powers are `|h|²` values bound to named links. In phase two the relay
//! `D_r` forwards a fraction `l` of what it received from `D_1` and spends
//! `1 − l` of its power on its own symbols.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::secrecy::{capacity, secrecy_rate, SecrecyMetrics};

/// `|h|²` of every link that enters the phase-two SINRs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct D2dLinks {
    /// Cellular user to BS.
    pub c_bs: f64,
    /// `D_1` to BS.
    pub d1_bs: f64,
    /// Relay to BS.
    pub relay_bs: f64,
    /// Cellular user to `D_2`.
    pub c_d2: f64,
    /// `D_1` to relay.
    pub d1_relay: f64,
    /// Relay to `D_2`.
    pub relay_d2: f64,
    /// Cellular user to `M`.
    pub c_eve: f64,
    /// Relay to `M`.
    pub relay_eve: f64,
}

/// Normalized per-channel gains (`|h|²/σ²`) used by the rate expressions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct D2dGains {
    /// Legitimate D2D link on channel `c`.
    pub main: f64,
    /// Cross gain from the cellular transmitter into the legitimate receiver.
    pub main_cross: f64,
    /// D2D transmitter to `M`.
    pub eve: f64,
    /// Cross gain from the cellular transmitter into `M`.
    pub eve_cross: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct D2dScenario {
    /// Cellular transmit power `o_c`.
    pub cellular_power: f64,
    /// Source device power `o_1`.
    pub source_power: f64,
    /// Relay power `o_{D_r}`.
    pub relay_power: f64,
    /// D2D transmit power on channel `c`, `o_c^x`.
    pub d2d_power: f64,
    /// Cooperation level `l`.
    pub cooperation: f64,
    pub noise_power: f64,
    pub links: D2dLinks,
    pub gains: D2dGains,
    /// Channels reused by D2D pairs.
    pub reused_channels: u32,
    pub total_channels: u32,
    pub threshold: f64,
}

/// Phase-two SINRs and the per-channel rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct D2dOutcome {
    pub sinr_bs: f64,
    pub sinr_d2: f64,
    pub sinr_eve: f64,
    /// `D_c`, rate of the legitimate D2D link on channel `c`.
    pub rate: f64,
    /// Rate leaked to `M` on channel `c`.
    pub rate_eve: f64,
    /// `D_{c,M}`; equals `metrics.secrecy_rate`.
    pub metrics: SecrecyMetrics,
}

fn ratio(num: f64, den: f64) -> Result<f64> {
    if !(den > 0.0) {
        return Err(Error::domain("D2D SINR denominator must be > 0"));
    }
    Ok(num / den)
}

impl D2dScenario {
    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.cooperation) {
            return Err(Error::domain(format!("cooperation level must lie in [0, 1], got {}", self.cooperation)));
        }
        let l = &self.links;
        let g = &self.gains;
        let all = [
            self.cellular_power,
            self.source_power,
            self.relay_power,
            self.d2d_power,
            self.noise_power,
            l.c_bs,
            l.d1_bs,
            l.relay_bs,
            l.c_d2,
            l.d1_relay,
            l.relay_d2,
            l.c_eve,
            l.relay_eve,
            g.main,
            g.main_cross,
            g.eve,
            g.eve_cross,
        ];
        if all.iter().any(|v| !(*v >= 0.0)) {
            return Err(Error::domain("D2D powers and gains must be >= 0"));
        }
        if self.total_channels > 0 && self.reused_channels >= self.total_channels {
            return Err(Error::domain("reused channel count must be below the channel count"));
        }
        Ok(())
    }

    /// `N_BS`, grouped as
    /// `o_c|h_c^BS|² / (o_Dr|h_2^BS|² + (l·(o_1|h_1^BS|² + o_c|h_c^BS|² + σ²) + (1 − l)) + σ²)`.
    pub fn sinr_bs(&self) -> Result<f64> {
        let (l, s2, k) = (self.cooperation, self.noise_power, &self.links);
        let den = self.relay_power * k.relay_bs
            + (l * (self.source_power * k.d1_bs + self.cellular_power * k.c_bs + s2) + (1.0 - l))
            + s2;
        ratio(self.cellular_power * k.c_bs, den)
    }

    /// `N_2 = o_Dr|h_c^2|²·(l·o_1|h_1^Dr|² + (1 − l)) / (o_c|h_c^2|² + l·o_Dr|h_1^2|²·(σ² + o_c|h_c^2|²) + σ²)`.
    pub fn sinr_d2(&self) -> Result<f64> {
        let k = &self.links;
        self.relayed_sinr(k.c_d2, k.relay_d2)
    }

    /// `N_M`, the same form with the eavesdropper's links.
    pub fn sinr_eve(&self) -> Result<f64> {
        let k = &self.links;
        self.relayed_sinr(k.c_eve, k.relay_eve)
    }

    fn relayed_sinr(&self, cellular: f64, relay: f64) -> Result<f64> {
        let (l, s2) = (self.cooperation, self.noise_power);
        let num = self.relay_power * cellular * (l * self.source_power * self.links.d1_relay + (1.0 - l));
        let den = self.cellular_power * cellular + l * self.relay_power * relay * (s2 + self.cellular_power * cellular) + s2;
        ratio(num, den)
    }

    /// `log2(1 + o_c^x·g / (1 + o_c·g_cross))`.
    pub fn channel_rate(&self, gain: f64, cross: f64) -> f64 {
        capacity(self.d2d_power * gain / (1.0 + self.cellular_power * cross))
    }
}

pub fn d2d_secrecy(s: &D2dScenario) -> Result<D2dOutcome> {
    s.validate()?;
    let sinr_bs = s.sinr_bs()?;
    let sinr_d2 = s.sinr_d2()?;
    let sinr_eve = s.sinr_eve()?;
    let rate = s.channel_rate(s.gains.main, s.gains.main_cross);
    let rate_eve = s.channel_rate(s.gains.eve, s.gains.eve_cross);
    let metrics = SecrecyMetrics::from_parts(sinr_d2, sinr_eve, rate, rate_eve, s.threshold);
    debug_assert_eq!(metrics.secrecy_rate, secrecy_rate(rate, rate_eve));
    Ok(D2dOutcome { sinr_bs, sinr_d2, sinr_eve, rate, rate_eve, metrics })
}

impl Default for D2dScenario {
    fn default() -> Self {
        D2dScenario {
            cellular_power: 1.0,
            source_power: 0.5,
            relay_power: 0.5,
            d2d_power: 0.5,
            cooperation: 0.5,
            noise_power: 0.1,
            links: D2dLinks::default(),
            gains: D2dGains::default(),
            reused_channels: 1,
            total_channels: 4,
            threshold: 0.5,
        }
    }
}

impl Default for D2dLinks {
    fn default() -> Self {
        D2dLinks {
            c_bs: 1.0,
            d1_bs: 0.2,
            relay_bs: 0.3,
            c_d2: 0.8,
            d1_relay: 1.5,
            relay_d2: 1.2,
            c_eve: 0.3,
            relay_eve: 0.4,
        }
    }
}

impl Default for D2dGains {
    fn default() -> Self {
        D2dGains { main: 8.0, main_cross: 0.5, eve: 2.0, eve_cross: 0.5 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn no_leakage_keeps_the_full_rate() {
        let s = D2dScenario {
            gains: D2dGains { eve: 0.0, ..D2dScenario::default().gains },
            ..D2dScenario::default()
        };
        let out = d2d_secrecy(&s).unwrap();
        assert_eq!(out.rate_eve, 0.0);
        assert_eq!(out.metrics.secrecy_rate, out.rate);
    }

    #[test]
    fn symmetric_gains_give_zero() {
        let s = D2dScenario {
            gains: D2dGains { main: 3.0, main_cross: 0.7, eve: 3.0, eve_cross: 0.7 },
            ..D2dScenario::default()
        };
        assert_eq!(d2d_secrecy(&s).unwrap().metrics.secrecy_rate, 0.0);
    }

    #[test]
    fn no_cooperation_reduces_relay_sinr() {
        let s = D2dScenario { cooperation: 0.0, ..D2dScenario::default() };
        let k = s.links;
        let expected = s.relay_power * k.c_d2 / (s.cellular_power * k.c_d2 + s.noise_power);
        assert_relative_eq!(s.sinr_d2().unwrap(), expected, max_relative = 1e-14);
    }

    #[test]
    fn zero_denominator_rejected() {
        let mut s = D2dScenario { noise_power: 0.0, cooperation: 1.0, ..D2dScenario::default() };
        s.links.c_d2 = 0.0;
        assert!(d2d_secrecy(&s).is_err());
        assert!(d2d_secrecy(&D2dScenario { cooperation: 1.2, ..D2dScenario::default() }).is_err());
    }

    proptest! {
        // term-by-term recompute with all products expanded
        #[test]
        fn matches_expanded_recompute(
            oc in 0.01f64..5.0, o1 in 0.01f64..5.0, odr in 0.01f64..5.0, l in 0.0f64..=1.0, s2 in 0.01f64..2.0,
            h in proptest::array::uniform8(0.0f64..3.0),
        ) {
            let s = D2dScenario {
                cellular_power: oc, source_power: o1, relay_power: odr, cooperation: l, noise_power: s2,
                links: D2dLinks { c_bs: h[0], d1_bs: h[1], relay_bs: h[2], c_d2: h[3], d1_relay: h[4], relay_d2: h[5], c_eve: h[6], relay_eve: h[7] },
                ..D2dScenario::default()
            };
            let n_bs = oc * h[0] / (odr * h[2] + l * o1 * h[1] + l * oc * h[0] + l * s2 + 1.0 - l + s2);
            let n_2 = (l * odr * h[3] * o1 * h[4] + odr * h[3] - l * odr * h[3])
                / (oc * h[3] + l * odr * h[5] * s2 + l * odr * h[5] * oc * h[3] + s2);
            let n_m = (l * odr * h[6] * o1 * h[4] + odr * h[6] - l * odr * h[6])
                / (oc * h[6] + l * odr * h[7] * s2 + l * odr * h[7] * oc * h[6] + s2);
            let out = d2d_secrecy(&s).unwrap();
            prop_assert!((out.sinr_bs - n_bs).abs() <= 1e-12 * n_bs.abs().max(1.0));
            prop_assert!((out.sinr_d2 - n_2).abs() <= 1e-12 * n_2.abs().max(1.0));
            prop_assert!((out.sinr_eve - n_m).abs() <= 1e-12 * n_m.abs().max(1.0));
            prop_assert!(out.metrics.secrecy_rate >= 0.0);
        }
    }
}

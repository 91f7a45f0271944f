//! Ultra-dense network secrecy over Poisson fields of base stations and
//! eavesdroppers.
//!
//! The typical user sits at the origin and is served by its nearest base
//! station. The most damaging eavesdropper is the one nearest to the serving
//! station. Other active stations interfere at their actual distances. Rates
//! are in nats.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simkit::{
    nearest_distance, nearest_point, run_trials, sample_ppp_with, FadingDescriptor, McAccumulator, McEstimate, Point,
    PointField, Window,
};
use crate::units::RandomStream;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct UdnField {
    /// `Ψ_bs`, stations per m².
    pub bs_density: f64,
    /// `Ψ_ms`, users per m².
    pub user_density: f64,
    /// `Ψ_ev`, eavesdroppers per m².
    pub eve_density: f64,
    pub transmit_power: f64,
    /// `γ`.
    pub path_loss_exponent: f64,
    pub noise_power: f64,
    /// Law of `h_s` on every station-to-user link.
    pub fading_main: FadingDescriptor,
    /// Law of `h_ev` on every station-to-eavesdropper link.
    pub fading_eve: FadingDescriptor,
    /// Probability that a non-serving station is active and interferes.
    pub activity: f64,
    /// Include co-channel interference from other stations.
    pub interference: bool,
    pub window: Window,
}

impl Default for UdnField {
    fn default() -> Self {
        UdnField {
            bs_density: 1e-4,
            user_density: 1e-3,
            eve_density: 1e-4,
            transmit_power: 1.0,
            path_loss_exponent: 4.0,
            noise_power: 1e-12,
            fading_main: FadingDescriptor::rician(10.0, 1.0),
            fading_eve: FadingDescriptor::rician(10.0, 1.0),
            activity: 1.0,
            interference: true,
            window: Window::centered(2000.0, 2000.0),
        }
    }
}

impl UdnField {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("bs_density", self.bs_density),
            ("user_density", self.user_density),
            ("eve_density", self.eve_density),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::domain(format!("{name} must be >= 0, got {v}")));
            }
        }
        if self.eve_density > 0.0 && self.eve_density >= self.user_density {
            return Err(Error::domain("eavesdropper density must stay below the user density"));
        }
        if !(self.transmit_power >= 0.0) || !(self.noise_power > 0.0) {
            return Err(Error::domain("transmit power must be >= 0 and noise power > 0"));
        }
        if !(self.path_loss_exponent > 0.0) {
            return Err(Error::domain("path-loss exponent must be > 0"));
        }
        if !(0.0..=1.0).contains(&self.activity) {
            return Err(Error::domain(format!("activity probability must lie in [0, 1], got {}", self.activity)));
        }
        if !(self.window.area() > 0.0) {
            return Err(Error::domain("observation window must have positive area"));
        }
        self.fading_main.validate()?;
        self.fading_eve.validate()
    }
}

/// One realization of the field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UdnTrial {
    /// Distance `a` from the user to its serving station.
    pub serving_distance: f64,
    /// Distance `b` from the serving station to the nearest eavesdropper.
    pub eve_distance: Option<f64>,
    /// `S_m`, nats.
    pub rate_main: f64,
    /// `S_ev`, nats; zero without eavesdroppers.
    pub rate_eve: f64,
}

/// Averages over the trials that had at least one station.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UdnEstimate {
    /// `S̄_m`.
    pub rate_main: McEstimate,
    /// `S̄_ev`.
    pub rate_eve: McEstimate,
    /// Per-trial `S_m − S_ev`, unclamped.
    pub difference: McEstimate,
    /// `S̄_r = max(S̄_m − S̄_ev, 0)`.
    pub average_secrecy: f64,
    /// Trials dropped because the station field was empty.
    pub empty_trials: u64,
}

fn link_rate(f: &UdnField, gain: f64, distance: f64, interference: f64) -> f64 {
    let signal = f.transmit_power * gain * distance.powf(-f.path_loss_exponent);
    (1.0 + signal / (f.noise_power + interference)).ln()
}

fn interference_at(
    f: &UdnField,
    stations: &PointField,
    at: Point,
    fading: &FadingDescriptor,
    rng: &mut crate::units::StreamRng,
) -> f64 {
    if !f.interference {
        return 0.0;
    }
    stations
        .points
        .iter()
        .map(|p| f.transmit_power * fading.sample_power(rng) * p.distance(&at).powf(-f.path_loss_exponent))
        .sum()
}

/// Draws one realization; `None` when no station falls in the window.
pub fn udn_trial(f: &UdnField, stream: RandomStream) -> Result<Option<UdnTrial>> {
    let mut rng = stream.rng();
    let stations = sample_ppp_with(f.bs_density, f.window, &mut rng)?;
    let eves = sample_ppp_with(f.eve_density, f.window, &mut rng)?;
    let Some((serving, a)) = nearest_point(&stations, Point::ORIGIN) else {
        return Ok(None);
    };
    let mut active = stations.thin(f.activity, &mut rng);
    active.points.retain(|p| *p != stations.points[serving]);
    let serving_at = stations.points[serving];

    let h_s = f.fading_main.sample_power(&mut rng);
    let f_s = interference_at(f, &active, Point::ORIGIN, &f.fading_main, &mut rng);
    let rate_main = link_rate(f, h_s, a, f_s);

    let (eve_distance, rate_eve) = match nearest_point(&eves, serving_at) {
        None => (None, 0.0),
        Some((idx, b)) => {
            let h_ev = f.fading_eve.sample_power(&mut rng);
            let f_ev = interference_at(f, &active, eves.points[idx], &f.fading_eve, &mut rng);
            (Some(b), link_rate(f, h_ev, b, f_ev))
        }
    };
    Ok(Some(UdnTrial { serving_distance: a, eve_distance, rate_main, rate_eve }))
}

/// Monte-Carlo `(S̄_m, S̄_ev, S̄_r)`.
pub fn udn_average_secrecy(f: &UdnField, stream: RandomStream, trials: u64) -> Result<UdnEstimate> {
    f.validate()?;
    if trials == 0 {
        return Err(Error::domain("trials must be >= 1"));
    }
    let draws = run_trials(stream, 0, trials, |s| udn_trial(f, s));
    let mut main = McAccumulator::default();
    let mut eve = McAccumulator::default();
    let mut diff = McAccumulator::default();
    let mut empty = 0u64;
    for d in draws {
        match d? {
            Some(t) => {
                main.push(t.rate_main);
                eve.push(t.rate_eve);
                diff.push(t.rate_main - t.rate_eve);
            }
            None => empty += 1,
        }
    }
    if main.count == 0 {
        return Err(Error::Estimation(format!("station field was empty in all {trials} trials")));
    }
    let (rate_main, rate_eve, difference) = (main.estimate()?, eve.estimate()?, diff.estimate()?);
    Ok(UdnEstimate {
        average_secrecy: (rate_main.mean - rate_eve.mean).max(0.0),
        rate_main,
        rate_eve,
        difference,
        empty_trials: empty,
    })
}

/// Distances from a fixed point to the nearest point of an eavesdropper field,
/// one per trial; trials with an empty field are skipped.
pub fn nearest_eve_distances(f: &UdnField, stream: RandomStream, trials: u64) -> Result<Vec<f64>> {
    f.validate()?;
    let draws = run_trials(stream, 0, trials, |s| {
        let mut rng = s.rng();
        sample_ppp_with(f.eve_density, f.window, &mut rng).map(|field| nearest_distance(&field, Point::ORIGIN))
    });
    let mut out = Vec::with_capacity(draws.len());
    for d in draws {
        if let Some(b) = d? {
            out.push(b);
        }
    }
    Ok(out)
}

/// CDF `1 − exp(−πΨb²)` of the nearest-point distance in a planar Poisson field.
pub fn nearest_distance_cdf(density: f64, b: f64) -> f64 {
    if b <= 0.0 {
        0.0
    } else {
        1.0 - (-std::f64::consts::PI * density * b * b).exp()
    }
}

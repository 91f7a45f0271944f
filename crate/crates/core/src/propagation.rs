//! Free-space and log-distance path loss with log-normal shadowing.

use std::f64::consts::{LN_10, PI};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::{Decibel, DecibelMilliwatt, RandomStream, SPEED_OF_LIGHT};

/// `Δ = 10 / ln 10`, the dB-per-neper conversion of the shadowing law.
pub const SHADOW_DELTA: f64 = 10.0 / LN_10;

/// Environment classes with their admissible path-loss exponent range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioClass {
    UrbanMacrocells,
    BuildingSameFloor,
    UrbanMicrocells,
    BuildingMultipleFloors,
    Home,
    Store,
    Factory,
}

/// Exponent ranges per environment class, `(class, ψ_min, ψ_max)`.
pub const EXPONENT_PRESETS: [(ScenarioClass, f64, f64); 7] = [
    (ScenarioClass::UrbanMacrocells, 3.7, 6.5),
    (ScenarioClass::BuildingSameFloor, 1.6, 3.5),
    (ScenarioClass::UrbanMicrocells, 2.7, 3.5),
    (ScenarioClass::BuildingMultipleFloors, 2.0, 6.0),
    (ScenarioClass::Home, 3.0, 3.0),
    (ScenarioClass::Store, 1.8, 2.2),
    (ScenarioClass::Factory, 1.6, 3.3),
];

/// Version tag of [`EXPONENT_PRESETS`].
pub const EXPONENT_PRESETS_VERSION: u32 = 1;

impl ScenarioClass {
    pub const ALL: [ScenarioClass; 7] = [
        ScenarioClass::UrbanMacrocells,
        ScenarioClass::BuildingSameFloor,
        ScenarioClass::UrbanMicrocells,
        ScenarioClass::BuildingMultipleFloors,
        ScenarioClass::Home,
        ScenarioClass::Store,
        ScenarioClass::Factory,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioClass::UrbanMacrocells => "urban_macrocells",
            ScenarioClass::BuildingSameFloor => "building_same_floor",
            ScenarioClass::UrbanMicrocells => "urban_microcells",
            ScenarioClass::BuildingMultipleFloors => "building_multiple_floors",
            ScenarioClass::Home => "home",
            ScenarioClass::Store => "store",
            ScenarioClass::Factory => "factory",
        }
    }

    /// `(ψ_min, ψ_max)` for this class.
    pub fn exponent_range(self) -> (f64, f64) {
        let (_, lo, hi) = EXPONENT_PRESETS.iter().find(|(c, _, _)| *c == self).copied().unwrap();
        (lo, hi)
    }

    pub fn check_exponent(self, psi: f64) -> Result<()> {
        let (lo, hi) = self.exponent_range();
        if psi < lo - 1e-12 || psi > hi + 1e-12 {
            return Err(Error::Range(format!(
                "path_loss_exponent {psi} outside the {} preset range [{lo}, {hi}]",
                self.name()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for ScenarioClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScenarioClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown scenario class `{s}`")))
    }
}

/// Writes the exponent presets as `scenario,psi_min,psi_max`.
pub fn write_exponent_presets<W: Write>(out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(["scenario", "psi_min", "psi_max"]).map_err(io)?;
    for (class, lo, hi) in EXPONENT_PRESETS {
        w.write_record([class.name().to_string(), lo.to_string(), hi.to_string()]).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// How the log-distance intercept `q` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Intercept {
    /// `q = 20·log10(λ/r0)`.
    WavelengthRatio,
    /// `q = 10·log10(A_t·λ² / (4π·r0)²)`, the free-space gain at `r0`.
    FreeSpace,
    /// A fixed `q` in dB.
    Explicit(f64),
}

/// Link-budget parameters of one propagation path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropagationParams {
    /// Product of the transmit and receive antenna field patterns, linear.
    pub antenna_gain_product: f64,
    pub frequency_hz: f64,
    pub reference_distance_m: f64,
    pub path_loss_exponent: f64,
    pub intercept: Intercept,
    pub shadow_mean_db: f64,
    pub shadow_std_db: f64,
    pub class: Option<ScenarioClass>,
}

impl PropagationParams {
    /// Unit antenna gain, `q = 20·log10(λ/r0)`, no shadowing.
    pub fn new(frequency_hz: f64, reference_distance_m: f64, path_loss_exponent: f64) -> Self {
        PropagationParams {
            antenna_gain_product: 1.0,
            frequency_hz,
            reference_distance_m,
            path_loss_exponent,
            intercept: Intercept::WavelengthRatio,
            shadow_mean_db: 0.0,
            shadow_std_db: 0.0,
            class: None,
        }
    }

    pub fn with_shadowing(mut self, mean_db: f64, std_db: f64) -> Self {
        self.shadow_mean_db = mean_db;
        self.shadow_std_db = std_db;
        self
    }

    pub fn with_intercept(mut self, intercept: Intercept) -> Self {
        self.intercept = intercept;
        self
    }

    pub fn with_class(mut self, class: ScenarioClass) -> Self {
        self.class = Some(class);
        self
    }

    pub fn wavelength_m(&self) -> f64 {
        SPEED_OF_LIGHT / self.frequency_hz
    }

    /// The intercept `q` in dB.
    pub fn q_db(&self) -> f64 {
        let lambda = self.wavelength_m();
        let r0 = self.reference_distance_m;
        match self.intercept {
            Intercept::WavelengthRatio => wavelength_ratio_db(lambda, r0),
            Intercept::FreeSpace => {
                10.0 * (self.antenna_gain_product * lambda * lambda / (4.0 * PI * r0).powi(2)).log10()
            }
            Intercept::Explicit(q) => q,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.frequency_hz > 0.0) {
            return Err(Error::domain("frequency must be > 0"));
        }
        if !(self.reference_distance_m > 0.0) {
            return Err(Error::domain("reference distance must be > 0"));
        }
        if !(self.path_loss_exponent > 0.0) {
            return Err(Error::domain("path-loss exponent must be > 0"));
        }
        if !(self.antenna_gain_product > 0.0) {
            return Err(Error::domain("antenna gain product must be > 0"));
        }
        if !(self.shadow_std_db >= 0.0) {
            return Err(Error::domain("shadowing std must be >= 0"));
        }
        if let Some(class) = self.class {
            class.check_exponent(self.path_loss_exponent)?;
        }
        Ok(())
    }
}

/// `20·log10(λ/r0)`.
pub fn wavelength_ratio_db(wavelength_m: f64, reference_distance_m: f64) -> f64 {
    20.0 * (wavelength_m / reference_distance_m).log10()
}

/// Free-space loss `−10·log10(A_t·λ² / (4π·d)²)`. Its negation is the path gain.
pub fn free_space_path_loss(params: &PropagationParams, distance_m: f64) -> Result<Decibel> {
    if !(distance_m > 0.0) {
        return Err(Error::domain(format!("distance must be > 0, got {distance_m}")));
    }
    let lambda = params.wavelength_m();
    let ratio = params.antenna_gain_product * lambda * lambda / (4.0 * PI * distance_m).powi(2);
    Ok(Decibel(-10.0 * ratio.log10()))
}

/// `P_r = P_t + q − 10·ψ·log10(d/r0)`, valid for `d ≥ r0`.
pub fn log_distance_received_power(
    pt: DecibelMilliwatt,
    params: &PropagationParams,
    distance_m: f64,
) -> Result<DecibelMilliwatt> {
    params.validate()?;
    if !(distance_m >= params.reference_distance_m) {
        return Err(Error::domain(format!(
            "distance {distance_m} m is inside the reference distance {} m",
            params.reference_distance_m
        )));
    }
    let loss = 10.0 * params.path_loss_exponent * (distance_m / params.reference_distance_m).log10();
    Ok(DecibelMilliwatt(pt.0 + params.q_db() - loss))
}

/// One shadowing realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShadowSample {
    pub phi_db: f64,
    pub stream: RandomStream,
}

impl ShadowSample {
    /// A fixed shadowing loss.
    pub fn fixed(phi_db: f64) -> Self {
        ShadowSample {
            phi_db,
            stream: RandomStream::new(0, 0),
        }
    }
}

/// Gaussian shadowing loss in dB, `N(μ, σ²)`.
pub fn draw_shadowing(params: &PropagationParams, stream: RandomStream) -> Result<ShadowSample> {
    let mut rng = stream.rng();
    Ok(ShadowSample {
        phi_db: sample_shadow_db(params, &mut rng)?,
        stream,
    })
}

/// Draws a shadowing loss from an existing generator.
pub fn sample_shadow_db<R: rand::Rng + ?Sized>(params: &PropagationParams, rng: &mut R) -> Result<f64> {
    if !(params.shadow_std_db >= 0.0) {
        return Err(Error::domain("shadowing std must be >= 0"));
    }
    if params.shadow_std_db == 0.0 {
        return Ok(params.shadow_mean_db);
    }
    let normal = Normal::new(params.shadow_mean_db, params.shadow_std_db).map_err(|e| Error::domain(e.to_string()))?;
    Ok(normal.sample(rng))
}

/// `ln E[φ] = μ/Δ + σ²/(2Δ²)`, the natural log of the linear-domain shadowing mean.
pub fn shadow_linear_mean_ln(params: &PropagationParams) -> f64 {
    params.shadow_mean_db / SHADOW_DELTA + params.shadow_std_db.powi(2) / (2.0 * SHADOW_DELTA * SHADOW_DELTA)
}

/// `10·log10 E[φ] = Δ·ln E[φ] = μ + σ²/(2Δ)`, the linear-domain shadowing mean in dB.
pub fn shadow_linear_mean_db(params: &PropagationParams) -> f64 {
    SHADOW_DELTA * shadow_linear_mean_ln(params)
}

/// Log-distance received power less the shadowing loss.
pub fn received_power_shadowed(
    pt: DecibelMilliwatt,
    params: &PropagationParams,
    distance_m: f64,
    shadow: &ShadowSample,
) -> Result<DecibelMilliwatt> {
    let clear = log_distance_received_power(pt, params, distance_m)?;
    Ok(DecibelMilliwatt(clear.0 - shadow.phi_db))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn free_space_zero_at_lambda_over_4pi() {
        let p = PropagationParams::new(2.4e9, 1.0, 2.0);
        let d = p.wavelength_m() / (4.0 * PI);
        assert_abs_diff_eq!(free_space_path_loss(&p, d).unwrap().0, 0.0, epsilon = 1e-12);
        assert!(free_space_path_loss(&p, 0.0).is_err());
        assert!(free_space_path_loss(&p, -3.0).is_err());
    }

    #[test]
    fn free_space_slope_and_value() {
        let p = PropagationParams::new(2.4e9, 1.0, 2.0);
        let a = free_space_path_loss(&p, 100.0).unwrap().0;
        let b = free_space_path_loss(&p, 200.0).unwrap().0;
        assert_abs_diff_eq!(b - a, 20.0 * 2f64.log10(), epsilon = 1e-9);
        // 20·log10(4π·100·2.4e9 / c)
        assert_abs_diff_eq!(a, 80.05, epsilon = 0.01);
    }

    #[test]
    fn wavelength_consistent_with_frequency() {
        let p = PropagationParams::new(28e9, 1.0, 2.0);
        assert!((p.wavelength_m() * p.frequency_hz / SPEED_OF_LIGHT - 1.0).abs() < 1e-9);
    }

    #[test]
    fn log_distance_examples() {
        let p = PropagationParams::new(3.5e9, 10.0, 2.0);
        let pt = DecibelMilliwatt(30.0);
        let at_r0 = log_distance_received_power(pt, &p, 10.0).unwrap().0;
        assert_abs_diff_eq!(at_r0, 30.0 + p.q_db(), epsilon = 1e-12);
        let decade = log_distance_received_power(pt, &p, 100.0).unwrap().0;
        assert_abs_diff_eq!(at_r0 - decade, 20.0, epsilon = 1e-12);

        let macro_cell = PropagationParams::new(3.5e9, 1.0, 3.7).with_class(ScenarioClass::UrbanMacrocells);
        let a = log_distance_received_power(pt, &macro_cell, 1.0).unwrap().0;
        let b = log_distance_received_power(pt, &macro_cell, 100.0).unwrap().0;
        assert_abs_diff_eq!(a - b, 74.0, epsilon = 1e-9);

        assert!(log_distance_received_power(pt, &p, 9.99).is_err());
    }

    #[test]
    fn wavelength_ratio_intercept() {
        let p = PropagationParams::new(28e9, 2.0, 3.0);
        let lambda = SPEED_OF_LIGHT / 28e9;
        assert!((p.q_db() - 20.0 * (lambda / 2.0).log10()).abs() < 1e-12);
    }

    #[test]
    fn free_space_intercept_reproduces_fspl() {
        let p = PropagationParams::new(5.8e9, 1.0, 2.0).with_intercept(Intercept::FreeSpace);
        for r in [1.0, 3.0, 47.0, 1000.0] {
            let pr = log_distance_received_power(DecibelMilliwatt(0.0), &p, r).unwrap().0;
            let fspl = free_space_path_loss(&p, r).unwrap().0;
            assert!((pr + fspl).abs() < 1e-9);
        }
    }

    #[test]
    fn exponent_presets() {
        assert_eq!(ScenarioClass::Home.exponent_range(), (3.0, 3.0));
        assert!(ScenarioClass::Home.check_exponent(3.0).is_ok());
        assert!(matches!(ScenarioClass::Home.check_exponent(9.9), Err(Error::Range(_))));
        let p = PropagationParams::new(1e9, 1.0, 1.5).with_class(ScenarioClass::Store);
        assert!(p.validate().is_err());
        assert_eq!("factory".parse::<ScenarioClass>().unwrap(), ScenarioClass::Factory);
        assert!("swamp".parse::<ScenarioClass>().is_err());

        let mut buf = Vec::new();
        write_exponent_presets(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("scenario,psi_min,psi_max\n"));
        assert!(text.contains("urban_macrocells,3.7,6.5\n"));
        assert_eq!(text.lines().count(), 8);
    }

    #[test]
    fn degenerate_shadowing() {
        let p = PropagationParams::new(1e9, 1.0, 2.0).with_shadowing(4.5, 0.0);
        for i in 0..5 {
            assert_eq!(draw_shadowing(&p, RandomStream::new(1, i)).unwrap().phi_db, 4.5);
        }
    }

    #[test]
    fn shadowing_sample_std() {
        let p = PropagationParams::new(1e9, 1.0, 2.0).with_shadowing(0.0, 8.0);
        let mut rng = RandomStream::new(99, 0).rng();
        let xs: Vec<f64> = (0..100_000).map(|_| sample_shadow_db(&p, &mut rng).unwrap()).collect();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
        assert_abs_diff_eq!(var.sqrt(), 8.0, epsilon = 0.1);
        assert_abs_diff_eq!(shadow_linear_mean_ln(&p), 64.0 / (2.0 * SHADOW_DELTA * SHADOW_DELTA), epsilon = 1e-12);
        assert_abs_diff_eq!(shadow_linear_mean_ln(&p), 1.697, epsilon = 1e-3);
        assert_abs_diff_eq!(shadow_linear_mean_db(&p), 64.0 / (2.0 * SHADOW_DELTA), epsilon = 1e-12);
    }

    #[test]
    fn linear_mean_matches_lognormal_moment() {
        let p = PropagationParams::new(1e9, 1.0, 2.0).with_shadowing(3.0, 6.0);
        let mut rng = RandomStream::new(5, 0).rng();
        let n = 200_000;
        let lin: Vec<f64> = (0..n).map(|_| 10f64.powf(sample_shadow_db(&p, &mut rng).unwrap() / 10.0)).collect();
        let mean = lin.iter().sum::<f64>() / n as f64;
        let sd = (lin.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
        let se = sd / (n as f64).sqrt();
        let expected = 10f64.powf(shadow_linear_mean_db(&p) / 10.0);
        assert!((mean - expected).abs() <= 3.0 * se, "{mean} vs {expected} ± {se}");
        assert_abs_diff_eq!(expected.ln(), shadow_linear_mean_ln(&p), epsilon = 1e-12);
    }

    #[test]
    fn shadowed_power_is_additive() {
        let p = PropagationParams::new(28e9, 1.0, 3.0);
        let pt = DecibelMilliwatt(20.0);
        let clear = log_distance_received_power(pt, &p, 50.0).unwrap().0;
        let none = received_power_shadowed(pt, &p, 50.0, &ShadowSample::fixed(0.0)).unwrap().0;
        let five = received_power_shadowed(pt, &p, 50.0, &ShadowSample::fixed(5.0)).unwrap().0;
        assert_eq!(none, clear);
        assert_abs_diff_eq!(clear - five, 5.0, epsilon = 1e-12);
    }

    proptest! {
        #[test]
        fn received_power_decreases_with_distance(r in 1.0f64..1e4, dr in 1e-3f64..1e3, psi in 1.0f64..7.0) {
            let p = PropagationParams::new(2e9, 1.0, psi);
            let pt = DecibelMilliwatt(10.0);
            let s = ShadowSample::fixed(3.0);
            let near = received_power_shadowed(pt, &p, r, &s).unwrap().0;
            let far = received_power_shadowed(pt, &p, r + dr, &s).unwrap().0;
            prop_assert!(far < near);
        }
    }
}

//! Attacker-staged rain and dust attenuation.
//!
//! Rain follows the power law `N_R = θ·R^ε` with frequency-dependent
//! coefficients, mixed across polarizations by path elevation and tilt. Both
//! rain and dust attenuate additively in dB over a path split into scattering,
//! absorption, refraction and polarization depths.
//!
//! The power law is commonly quoted as valid over 1–6 GHz, 28–32 GHz and up to
//! 64 GHz. Those bands are not enforced; any frequency covered by the loaded
//! coefficient table is accepted.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::propagation::{received_power_shadowed, PropagationParams, ShadowSample};
use crate::units::{Decibel, DecibelMilliwatt};

/// Coefficient table shipped with the crate (1–100 GHz in 1 GHz steps).
pub const DEFAULT_COEFFICIENTS_CSV: &str = include_str!("../data/rain_coefficients.csv");

/// Power-law coefficients at one frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RainCoefficients {
    pub freq_ghz: f64,
    pub theta_h: f64,
    pub theta_v: f64,
    pub eps_h: f64,
    pub eps_v: f64,
}

/// One Gaussian bump `δ·exp(−((log10 f − ζ)/ϑ)²)` of a curve fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianTerm {
    pub amplitude: f64,
    pub center: f64,
    pub width: f64,
}

/// `Σ δ_i·exp(−((log10 f − ζ_i)/ϑ_i)²) + a·log10 f + b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveFit {
    pub terms: Vec<GaussianTerm>,
    pub slope: f64,
    pub offset: f64,
}

impl CurveFit {
    fn from_rows(rows: &[[f64; 3]], slope: f64, offset: f64) -> Self {
        CurveFit {
            terms: rows
                .iter()
                .map(|&[amplitude, center, width]| GaussianTerm { amplitude, center, width })
                .collect(),
            slope,
            offset,
        }
    }

    pub fn evaluate(&self, freq_ghz: f64) -> f64 {
        let x = freq_ghz.log10();
        let bumps: f64 = self
            .terms
            .iter()
            .map(|t| t.amplitude * (-((x - t.center) / t.width).powi(2)).exp())
            .sum();
        bumps + self.slope * x + self.offset
    }
}

/// Curve fits for the four coefficients. The `theta_*` fits yield `log10 θ`,
/// the `eps_*` fits yield `ε` directly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RainCurveFits {
    pub theta_h: CurveFit,
    pub theta_v: CurveFit,
    pub eps_h: CurveFit,
    pub eps_v: CurveFit,
}

impl RainCurveFits {
    /// The widely used recommendation-style constants (four terms for θ,
    /// five for ε). The shipped coefficient table was tabulated from these.
    pub fn standard() -> Self {
        RainCurveFits {
            theta_h: CurveFit::from_rows(
                &[
                    [-5.33980, -0.10008, 1.13098],
                    [-0.35351, 1.26970, 0.45400],
                    [-0.23789, 0.86036, 0.15354],
                    [-0.94158, 0.64552, 0.16817],
                ],
                -0.18961,
                0.71147,
            ),
            theta_v: CurveFit::from_rows(
                &[
                    [-3.80595, 0.56934, 0.81061],
                    [-3.44965, -0.22911, 0.51059],
                    [-0.39902, 0.73042, 0.11899],
                    [0.50167, 1.07319, 0.27195],
                ],
                -0.16398,
                0.63297,
            ),
            eps_h: CurveFit::from_rows(
                &[
                    [-0.14318, 1.82442, -0.55187],
                    [0.29591, 0.77564, 0.19822],
                    [0.32177, 0.63773, 0.13164],
                    [-5.37610, -0.96230, 1.47828],
                    [16.1721, -3.29980, 3.43990],
                ],
                0.67849,
                -1.95537,
            ),
            eps_v: CurveFit::from_rows(
                &[
                    [-0.07771, 2.33840, -0.76284],
                    [0.56727, 0.95545, 0.54039],
                    [-0.20238, 1.14520, 0.26809],
                    [-48.2991, 0.791669, 0.116226],
                    [48.5833, 0.791459, 0.116479],
                ],
                -0.053739,
                0.83433,
            ),
        }
    }

    pub fn coefficients(&self, freq_ghz: f64) -> RainCoefficients {
        RainCoefficients {
            freq_ghz,
            theta_h: 10f64.powf(self.theta_h.evaluate(freq_ghz)),
            theta_v: 10f64.powf(self.theta_v.evaluate(freq_ghz)),
            eps_h: self.eps_h.evaluate(freq_ghz),
            eps_v: self.eps_v.evaluate(freq_ghz),
        }
    }

    /// Tabulates the fits at the given ascending frequencies.
    pub fn tabulate(&self, freqs_ghz: &[f64]) -> Result<RainCoefficientTable> {
        RainCoefficientTable::new(freqs_ghz.iter().map(|&f| self.coefficients(f)).collect())
    }
}

/// Power-law coefficients tabulated over frequency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RainCoefficientTable {
    rows: Vec<RainCoefficients>,
}

impl Default for RainCoefficientTable {
    fn default() -> Self {
        RainCoefficientTable::from_csv_str(DEFAULT_COEFFICIENTS_CSV, "built-in").expect("built-in coefficient table")
    }
}

impl RainCoefficientTable {
    pub fn new(rows: Vec<RainCoefficients>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::Config("coefficient table needs at least two rows".into()));
        }
        for pair in rows.windows(2) {
            if !(pair[1].freq_ghz > pair[0].freq_ghz) {
                return Err(Error::Config(format!(
                    "coefficient table frequencies must be strictly increasing ({} then {})",
                    pair[0].freq_ghz, pair[1].freq_ghz
                )));
            }
        }
        if let Some(r) = rows.iter().find(|r| !(r.theta_h > 0.0 && r.theta_v > 0.0 && r.freq_ghz > 0.0)) {
            return Err(Error::Config(format!("non-positive coefficient at {} GHz", r.freq_ghz)));
        }
        Ok(RainCoefficientTable { rows })
    }

    pub fn rows(&self) -> &[RainCoefficients] {
        &self.rows
    }

    pub fn coverage(&self) -> (f64, f64) {
        (self.rows[0].freq_ghz, self.rows[self.rows.len() - 1].freq_ghz)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::from_csv_str(&text, &path.display().to_string())
    }

    pub fn from_reader<R: Read>(mut reader: R, source_name: &str) -> Result<Self> {
        let mut text = String::new();
        reader.read_to_string(&mut text)?;
        Self::from_csv_str(&text, source_name)
    }

    /// Parses `freq_ghz,theta_h,theta_v,eps_h,eps_v` rows. Errors carry the
    /// 1-based line number.
    pub fn from_csv_str(text: &str, source_name: &str) -> Result<Self> {
        let parse_err = |line: u64, message: String| Error::Parse {
            source_name: source_name.to_string(),
            line,
            message,
        };
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let header = reader.headers().map_err(|e| parse_err(1, e.to_string()))?.clone();
        let expected = ["freq_ghz", "theta_h", "theta_v", "eps_h", "eps_v"];
        if header.iter().ne(expected) {
            return Err(parse_err(1, format!("expected header `{}`", expected.join(","))));
        }
        let mut rows = Vec::new();
        let mut prev: Option<f64> = None;
        for record in reader.records() {
            let record = record.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line());
                parse_err(line, e.to_string())
            })?;
            let line = record.position().map_or(0, |p| p.line());
            let mut vals = [0.0; 5];
            for (slot, (field, name)) in vals.iter_mut().zip(record.iter().zip(expected)) {
                *slot = field
                    .parse::<f64>()
                    .map_err(|_| parse_err(line, format!("`{field}` is not a number in column {name}")))?;
            }
            let [freq_ghz, theta_h, theta_v, eps_h, eps_v] = vals;
            if let Some(p) = prev {
                if !(freq_ghz > p) {
                    return Err(parse_err(line, format!("frequency {freq_ghz} is not above {p}")));
                }
            }
            if !(theta_h > 0.0 && theta_v > 0.0) {
                return Err(parse_err(line, "theta values must be > 0".into()));
            }
            prev = Some(freq_ghz);
            rows.push(RainCoefficients { freq_ghz, theta_h, theta_v, eps_h, eps_v });
        }
        Self::new(rows).map_err(|e| parse_err(0, e.to_string()))
    }

    /// Coefficients at `freq_ghz`, interpolating `log10 θ` and `ε` linearly in
    /// `log10 f` between rows.
    pub fn lookup(&self, freq_ghz: f64) -> Result<RainCoefficients> {
        let (lo, hi) = self.coverage();
        if !(freq_ghz >= lo && freq_ghz <= hi) {
            return Err(Error::Range(format!(
                "frequency {freq_ghz} GHz outside coefficient table coverage [{lo}, {hi}] GHz"
            )));
        }
        let idx = self.rows.partition_point(|r| r.freq_ghz <= freq_ghz);
        if self.rows[idx - 1].freq_ghz == freq_ghz {
            return Ok(self.rows[idx - 1]);
        }
        let (a, b) = (&self.rows[idx - 1], &self.rows[idx]);
        let t = (freq_ghz.log10() - a.freq_ghz.log10()) / (b.freq_ghz.log10() - a.freq_ghz.log10());
        let lerp = |x: f64, y: f64| x + t * (y - x);
        let log_lerp = |x: f64, y: f64| 10f64.powf(lerp(x.log10(), y.log10()));
        Ok(RainCoefficients {
            freq_ghz,
            theta_h: log_lerp(a.theta_h, b.theta_h),
            theta_v: log_lerp(a.theta_v, b.theta_v),
            eps_h: lerp(a.eps_h, b.eps_h),
            eps_v: lerp(a.eps_v, b.eps_v),
        })
    }
}

/// `(θ_H + θ_V + (θ_H − θ_V)·cos²α·cos2β) / 2`.
pub fn mix_polarization_theta(theta_h: f64, theta_v: f64, elevation_deg: f64, tilt_deg: f64) -> f64 {
    let geom = polarization_geometry(elevation_deg, tilt_deg);
    (theta_h + theta_v + (theta_h - theta_v) * geom) / 2.0
}

/// θ-weighted exponent mix:
/// `(θ_H·ε_H + θ_V·ε_V + (θ_H·ε_H − θ_V·ε_V)·cos²α·cos2β) / (2θ)`.
pub fn mix_polarization_eps(
    theta_h: f64,
    theta_v: f64,
    eps_h: f64,
    eps_v: f64,
    elevation_deg: f64,
    tilt_deg: f64,
) -> f64 {
    let geom = polarization_geometry(elevation_deg, tilt_deg);
    let theta = mix_polarization_theta(theta_h, theta_v, elevation_deg, tilt_deg);
    let (wh, wv) = (theta_h * eps_h, theta_v * eps_v);
    (wh + wv + (wh - wv) * geom) / (2.0 * theta)
}

fn polarization_geometry(elevation_deg: f64, tilt_deg: f64) -> f64 {
    elevation_deg.to_radians().cos().powi(2) * (2.0 * tilt_deg.to_radians()).cos()
}

/// Path depths through a rain cell, km.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RainDepths {
    pub scattering: f64,
    pub absorption: f64,
    pub refraction: f64,
    pub polarization: f64,
}

impl RainDepths {
    pub fn total(&self) -> f64 {
        self.scattering + self.absorption + self.refraction + self.polarization
    }
}

/// Artificial-rain state along a link.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RainCondition {
    /// Rain rate `R`, mm/h.
    pub rate_mm_h: f64,
    /// Path elevation `α`, degrees.
    pub elevation_deg: f64,
    /// Polarization tilt `β` relative to horizontal, degrees.
    pub tilt_deg: f64,
    pub depths: RainDepths,
}

impl RainCondition {
    pub fn validate(&self) -> Result<()> {
        if !(self.rate_mm_h >= 0.0) {
            return Err(Error::domain(format!("rain rate must be >= 0, got {}", self.rate_mm_h)));
        }
        check_depths(&[
            self.depths.scattering,
            self.depths.absorption,
            self.depths.refraction,
            self.depths.polarization,
        ])
    }
}

fn check_depths(depths: &[f64]) -> Result<()> {
    if depths.iter().any(|d| !(*d >= 0.0)) {
        return Err(Error::domain("attenuation depths must be >= 0"));
    }
    Ok(())
}

/// Path depths through a dust cloud, km.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DustDepths {
    pub scattering: f64,
    pub absorption: f64,
    pub cross_polarization: f64,
}

/// Artificial-dust state along a link.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DustCondition {
    /// Specific attenuation `V`, dB/km.
    pub attenuation_db_per_km: f64,
    pub depths: DustDepths,
}

impl DustCondition {
    pub fn validate(&self) -> Result<()> {
        if !(self.attenuation_db_per_km >= 0.0) {
            return Err(Error::domain("dust attenuation constant must be >= 0"));
        }
        check_depths(&[self.depths.scattering, self.depths.absorption, self.depths.cross_polarization])
    }
}

/// Specific rain attenuation `θ·R^ε` in dB/km with polarization-mixed coefficients.
pub fn rain_specific_attenuation(table: &RainCoefficientTable, freq_ghz: f64, cond: &RainCondition) -> Result<f64> {
    cond.validate()?;
    let c = table.lookup(freq_ghz)?;
    if cond.rate_mm_h == 0.0 {
        return Ok(0.0);
    }
    let theta = mix_polarization_theta(c.theta_h, c.theta_v, cond.elevation_deg, cond.tilt_deg);
    let eps = mix_polarization_eps(c.theta_h, c.theta_v, c.eps_h, c.eps_v, cond.elevation_deg, cond.tilt_deg);
    Ok(power_law(theta, eps, cond.rate_mm_h))
}

/// `θ·R^ε`.
pub fn power_law(theta: f64, eps: f64, rate_mm_h: f64) -> f64 {
    if rate_mm_h == 0.0 {
        0.0
    } else {
        theta * rate_mm_h.powf(eps)
    }
}

/// `N_R·(d_SC + d_AB + d_REF + d_POL)` in dB.
pub fn rain_total_attenuation(cond: &RainCondition, specific_db_per_km: f64) -> Result<Decibel> {
    if !(specific_db_per_km >= 0.0) {
        return Err(Error::domain("specific attenuation must be >= 0"));
    }
    let d = &cond.depths;
    Ok(Decibel(
        specific_db_per_km * d.scattering
            + specific_db_per_km * d.absorption
            + specific_db_per_km * d.refraction
            + specific_db_per_km * d.polarization,
    ))
}

/// `V·(D_SC + D_AB + D_CP)` in dB.
pub fn dust_total_attenuation(cond: &DustCondition) -> Decibel {
    let v = cond.attenuation_db_per_km;
    let d = &cond.depths;
    Decibel(v * d.scattering + v * d.absorption + v * d.cross_polarization)
}

/// Weather staged along a link.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Weather {
    Clear,
    Rain(RainCondition),
    Dust(DustCondition),
}

impl Weather {
    /// Total attenuation of this weather at `freq_ghz`.
    pub fn attenuation(&self, table: &RainCoefficientTable, freq_ghz: f64) -> Result<Decibel> {
        match self {
            Weather::Clear => Ok(Decibel(0.0)),
            Weather::Rain(cond) => {
                let n_r = rain_specific_attenuation(table, freq_ghz, cond)?;
                rain_total_attenuation(cond, n_r)
            }
            Weather::Dust(cond) => {
                cond.validate()?;
                Ok(dust_total_attenuation(cond))
            }
        }
    }
}

/// Shadowed log-distance received power less the weather attenuation.
pub fn received_power_with_weather(
    pt: DecibelMilliwatt,
    params: &PropagationParams,
    distance_m: f64,
    shadow: &ShadowSample,
    weather: Decibel,
) -> Result<DecibelMilliwatt> {
    if !(weather.0 >= 0.0) {
        return Err(Error::domain(format!("weather attenuation must be >= 0 dB, got {}", weather.0)));
    }
    let base = received_power_shadowed(pt, params, distance_m, shadow)?;
    Ok(DecibelMilliwatt(base.0 - weather.0))
}

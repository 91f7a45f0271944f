//! Scenario files: loading, validation, execution across a parameter sweep,
//! and CSV output.
//!
//! A scenario is a TOML document. `model` picks the technology model; the
//! optional blocks `[propagation]`, `[weather]`, `[attack]`, `[monte_carlo]`
//! and `[sweep]` add a link budget, staged weather, an attack evaluation, the
//! Monte-Carlo budget and a one-parameter sweep. Each model has a block of the
//! same name whose missing keys take default values.
//!
//! ```toml
//! model = "d2d"
//!
//! [d2d]
//! cooperation = 0.3
//!
//! [attack]
//! kind = "hd_fd"
//! p_dl = 0.7
//!
//! [sweep]
//! parameter = "attack.p_dl"
//! values = [0.1, 0.5, 0.9]
//! ```

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::attack::{ar_ad_favorability, miss_rates, rrc_hd_simulation, rrc_trace, write_trace, AttackParams};
use crate::error::{Error, Result};
use crate::propagation::{draw_shadowing, Intercept, PropagationParams, ScenarioClass, ShadowSample};
use crate::secrecy::SecrecyMetrics;
use crate::tech::beam::noise_power;
use crate::tech::{
    d2d_secrecy, iot_sop, mimo_secrecy, optimal_beamformer, sensing_probabilities, sharing_secrecy,
    udn_average_secrecy, BeamScenario, D2dScenario, IotScenario, MimoScenario, SharingScenario, UdnField,
};
use crate::units::{Decibel, DecibelMilliwatt, RandomStream};
use crate::weather::{DustCondition, DustDepths, RainCoefficientTable, RainCondition, RainDepths, Weather};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Mimo,
    Sharing,
    Beam,
    D2d,
    Udn,
    Iot,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ModelKind::Mimo => "mimo",
            ModelKind::Sharing => "sharing",
            ModelKind::Beam => "beam",
            ModelKind::D2d => "d2d",
            ModelKind::Udn => "udn",
            ModelKind::Iot => "iot",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MonteCarloConfig {
    pub seed: u64,
    pub trials: u64,
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        MonteCarloConfig { seed: 0, trials: 10_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InterceptKind {
    WavelengthRatio,
    FreeSpace,
}

/// Log-distance link budget towards the user and the eavesdropper.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PropagationConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario_class: Option<ScenarioClass>,
    pub path_loss_exponent: f64,
    pub frequency_ghz: f64,
    pub reference_distance_m: f64,
    pub intercept: InterceptKind,
    pub antenna_gain_product: f64,
    pub shadow_mean_db: f64,
    pub shadow_std_db: f64,
    pub transmit_power_dbm: f64,
    pub noise_dbm: f64,
    pub distance_m: f64,
    pub eve_distance_m: f64,
}

impl Default for PropagationConfig {
    fn default() -> Self {
        PropagationConfig {
            scenario_class: None,
            path_loss_exponent: 2.0,
            frequency_ghz: 28.0,
            reference_distance_m: 1.0,
            intercept: InterceptKind::FreeSpace,
            antenna_gain_product: 1.0,
            shadow_mean_db: 0.0,
            shadow_std_db: 0.0,
            transmit_power_dbm: 30.0,
            noise_dbm: -90.0,
            distance_m: 100.0,
            eve_distance_m: 150.0,
        }
    }
}

impl PropagationConfig {
    pub fn params(&self) -> PropagationParams {
        let intercept = match self.intercept {
            InterceptKind::WavelengthRatio => Intercept::WavelengthRatio,
            InterceptKind::FreeSpace => Intercept::FreeSpace,
        };
        PropagationParams {
            antenna_gain_product: self.antenna_gain_product,
            frequency_hz: self.frequency_ghz * 1e9,
            reference_distance_m: self.reference_distance_m,
            path_loss_exponent: self.path_loss_exponent,
            intercept,
            shadow_mean_db: self.shadow_mean_db,
            shadow_std_db: self.shadow_std_db,
            class: self.scenario_class,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeatherKind {
    #[default]
    None,
    Rain,
    Dust,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WeatherConfig {
    pub kind: WeatherKind,
    pub rate_mm_h: f64,
    pub elevation_deg: f64,
    pub tilt_deg: f64,
    /// Rain path depths, km.
    pub rain_depths: RainDepths,
    pub attenuation_db_per_km: f64,
    /// Dust path depths, km.
    pub dust_depths: DustDepths,
    /// Attenuate the eavesdropper's link as well as the user's.
    pub apply_to_eavesdropper: bool,
}

impl Default for WeatherConfig {
    fn default() -> Self {
        WeatherConfig {
            kind: WeatherKind::None,
            rate_mm_h: 0.0,
            elevation_deg: 0.0,
            tilt_deg: 45.0,
            rain_depths: RainDepths { scattering: 0.5, absorption: 0.5, refraction: 0.0, polarization: 0.0 },
            attenuation_db_per_km: 0.0,
            dust_depths: DustDepths { scattering: 0.5, absorption: 0.5, cross_polarization: 0.0 },
            apply_to_eavesdropper: false,
        }
    }
}

impl WeatherConfig {
    pub fn weather(&self) -> Weather {
        match self.kind {
            WeatherKind::None => Weather::Clear,
            WeatherKind::Rain => Weather::Rain(RainCondition {
                rate_mm_h: self.rate_mm_h,
                elevation_deg: self.elevation_deg,
                tilt_deg: self.tilt_deg,
                depths: self.rain_depths,
            }),
            WeatherKind::Dust => Weather::Dust(DustCondition {
                attenuation_db_per_km: self.attenuation_db_per_km,
                depths: self.dust_depths,
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttackKind {
    #[default]
    None,
    HdFd,
    ArAd,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AttackConfig {
    pub kind: AttackKind,
    pub p_dl: f64,
    pub p_ul: f64,
    pub intervals: u32,
    pub successes: u32,
    /// Run the RRC simulation alongside the closed forms.
    pub simulate: bool,
    /// Where to write a TTI trace of the first `trace_trials` simulated trials.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<PathBuf>,
    pub trace_trials: u64,
    /// Secrecy-capacity threshold `C_T` of the weather attack.
    pub c_threshold: f64,
}

impl Default for AttackConfig {
    fn default() -> Self {
        AttackConfig {
            kind: AttackKind::None,
            p_dl: 0.7,
            p_ul: 0.7,
            intervals: 5,
            successes: 2,
            simulate: true,
            trace: None,
            trace_trials: 10,
            c_threshold: 1.0,
        }
    }
}

impl AttackConfig {
    pub fn params(&self) -> AttackParams {
        AttackParams::new(self.p_dl, self.p_ul, self.intervals, self.successes)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Dotted key path, e.g. `weather.rate_mm_h`.
    pub parameter: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub model: ModelKind,
    /// Rain coefficient table replacing the built-in one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rain_coefficients: Option<PathBuf>,
    #[serde(default)]
    pub monte_carlo: MonteCarloConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub propagation: Option<PropagationConfig>,
    #[serde(default)]
    pub weather: WeatherConfig,
    #[serde(default)]
    pub attack: AttackConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub mimo: MimoScenario,
    #[serde(default)]
    pub sharing: SharingScenario,
    #[serde(default)]
    pub beam: BeamScenario,
    #[serde(default)]
    pub d2d: D2dScenario,
    #[serde(default)]
    pub udn: UdnField,
    #[serde(default)]
    pub iot: IotScenario,
}

impl ScenarioConfig {
    pub fn new(model: ModelKind) -> Self {
        ScenarioConfig {
            model,
            rain_coefficients: None,
            monte_carlo: MonteCarloConfig::default(),
            propagation: None,
            weather: WeatherConfig::default(),
            attack: AttackConfig::default(),
            sweep: None,
            mimo: MimoScenario::default(),
            sharing: SharingScenario::default(),
            beam: BeamScenario::default(),
            d2d: D2dScenario::default(),
            udn: UdnField::default(),
            iot: IotScenario::default(),
        }
    }

    /// Checks module-level constraints; errors name the offending key.
    pub fn validate(&self) -> Result<()> {
        let at = |key: &str, e: Error| Error::Config(format!("{key}: {}", message(&e)));
        if let Some(p) = &self.propagation {
            p.params().validate().map_err(|e| at("propagation.path_loss_exponent", e))?;
            if !(p.distance_m >= p.reference_distance_m) {
                return Err(Error::Config("propagation.distance_m: must be >= reference_distance_m".into()));
            }
            if !(p.eve_distance_m >= p.reference_distance_m) {
                return Err(Error::Config("propagation.eve_distance_m: must be >= reference_distance_m".into()));
            }
        }
        match self.weather.weather() {
            Weather::Clear => {}
            Weather::Rain(r) => r.validate().map_err(|e| at("weather.rate_mm_h", e))?,
            Weather::Dust(d) => d.validate().map_err(|e| at("weather.attenuation_db_per_km", e))?,
        }
        if self.weather.kind != WeatherKind::None && self.propagation.is_none() {
            return Err(Error::Config("weather: staged weather needs a [propagation] block for its frequency".into()));
        }
        match self.attack.kind {
            AttackKind::None => {}
            AttackKind::HdFd => self.attack.params().validate().map_err(|e| at("attack", e))?,
            AttackKind::ArAd => {
                if !(self.attack.c_threshold >= 0.0) {
                    return Err(Error::Config("attack.c_threshold: must be >= 0".into()));
                }
                if self.propagation.is_none() && !matches!(self.model, ModelKind::Mimo | ModelKind::Sharing | ModelKind::D2d) {
                    return Err(Error::Config(format!(
                        "attack: ar_ad needs a [propagation] block or a deterministic model, not {}",
                        self.model
                    )));
                }
            }
        }
        if self.monte_carlo.trials == 0 {
            return Err(Error::Config("monte_carlo.trials: must be >= 1".into()));
        }
        match self.model {
            ModelKind::Udn => self.udn.validate().map_err(|e| at("udn", e))?,
            ModelKind::Iot => self.iot.validate().map_err(|e| at("iot", e))?,
            ModelKind::Sharing if !(0.0..=1.0).contains(&self.sharing.chi) => {
                return Err(Error::Config("sharing.chi: must lie in [0, 1]".into()));
            }
            ModelKind::D2d if !(0.0..=1.0).contains(&self.d2d.cooperation) => {
                return Err(Error::Config("d2d.cooperation: must lie in [0, 1]".into()));
            }
            _ => {}
        }
        Ok(())
    }
}

fn message(e: &Error) -> String {
    match e {
        Error::Domain(m) | Error::Range(m) | Error::Config(m) | Error::Estimation(m) => m.clone(),
        other => other.to_string(),
    }
}

/// Line of `key` inside the table `[block]`, or of the block header.
fn locate(text: &str, dotted: &str) -> Option<usize> {
    let (block, key) = match dotted.split_once('.') {
        Some((b, k)) => (Some(b), k.split('.').next().unwrap_or(k)),
        None => (None, dotted),
    };
    let mut in_block = block.is_none();
    let mut header = None;
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.starts_with('[') {
            let name = t.trim_matches(|c| c == '[' || c == ']').trim();
            in_block = Some(name) == block || block.is_some_and(|b| name.starts_with(&format!("{b}.")));
            if in_block && header.is_none() {
                header = Some(i + 1);
            }
            continue;
        }
        if in_block {
            if let Some((k, _)) = t.split_once('=') {
                if k.trim() == key {
                    return Some(i + 1);
                }
            }
        }
    }
    header
}

fn first_key(message: &str) -> Option<&str> {
    message.split_once(':').map(|(k, _)| k).filter(|k| !k.contains(' '))
}

/// Parses and validates scenario text. `source_name` labels diagnostics.
pub fn parse_scenario(text: &str, source_name: &str) -> Result<ScenarioConfig> {
    let cfg: ScenarioConfig = toml::from_str(text).map_err(|e| {
        let line = e.span().map(|s| text[..s.start].matches('\n').count() as u64 + 1).unwrap_or(0);
        Error::Parse { source_name: source_name.into(), line, message: e.message().trim().to_owned() }
    })?;
    let with_line = |e: Error| {
        let msg = message(&e);
        let line = first_key(&msg).and_then(|k| locate(text, k)).unwrap_or(0) as u64;
        Error::Parse { source_name: source_name.into(), line, message: msg }
    };
    cfg.validate().map_err(with_line)?;
    if let Some(sweep) = &cfg.sweep {
        if sweep.values.is_empty() {
            return Err(with_line(Error::Config("sweep.values: must not be empty".into())));
        }
        apply_sweep(&cfg, &sweep.parameter, sweep.values[0])
            .map_err(|e| with_line(Error::Config(format!("sweep.parameter: {}", message(&e)))))?;
    }
    Ok(cfg)
}

/// Loads a scenario file. A relative `rain_coefficients` path is resolved
/// against the file's directory.
pub fn load_scenario(path: impl AsRef<Path>) -> Result<ScenarioConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let mut cfg = parse_scenario(&text, &path.display().to_string())?;
    if let Some(table) = cfg.rain_coefficients.as_mut() {
        if table.is_relative() {
            if let Some(dir) = path.parent() {
                *table = dir.join(&*table);
            }
        }
    }
    Ok(cfg)
}

/// A copy of `cfg` with the dotted key `parameter` set to `value`.
pub fn apply_sweep(cfg: &ScenarioConfig, parameter: &str, value: f64) -> Result<ScenarioConfig> {
    let mut root = toml::Value::try_from(cfg).map_err(|e| Error::Config(e.to_string()))?;
    let mut slot = &mut root;
    for part in parameter.split('.') {
        slot = slot
            .get_mut(part)
            .ok_or_else(|| Error::Config(format!("unknown parameter path `{parameter}`")))?;
    }
    *slot = match slot {
        toml::Value::Float(_) => toml::Value::Float(value),
        toml::Value::Integer(_) if value.fract() == 0.0 => toml::Value::Integer(value as i64),
        toml::Value::Integer(_) => {
            return Err(Error::Config(format!("`{parameter}` takes whole numbers, got {value}")));
        }
        _ => return Err(Error::Config(format!("`{parameter}` is not a numeric parameter"))),
    };
    let swept: ScenarioConfig = root.try_into().map_err(|e: toml::de::Error| Error::Config(e.message().to_owned()))?;
    swept.validate()?;
    Ok(swept)
}

/// Plot-ready numeric table.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl ResultTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    fn push(&mut self, row: Vec<(String, f64)>) -> Result<()> {
        if self.header.is_empty() && self.rows.is_empty() {
            self.header = row.iter().map(|(k, _)| k.clone()).collect();
        } else if row.len() != self.header.len() || row.iter().zip(&self.header).any(|((k, _), h)| k != h) {
            return Err(Error::Estimation("sweep points produced different columns".into()));
        }
        self.rows.push(row.into_iter().map(|(_, v)| v).collect());
        Ok(())
    }
}

/// Writes `table` as CSV. Numbers use the shortest representation that
/// parses back to the same value.
pub fn emit_results<W: Write>(table: &ResultTable, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(&table.header).map_err(csv_err)?;
    let mut buf = Vec::new();
    for row in &table.rows {
        buf.clear();
        buf.extend(row.iter().map(|v| v.to_string()));
        w.write_record(&buf).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

struct Row(Vec<(String, f64)>);

impl Row {
    fn put(&mut self, name: &str, v: f64) {
        self.0.push((name.to_owned(), v));
    }

    fn flag(&mut self, name: &str, v: bool) {
        self.put(name, if v { 1.0 } else { 0.0 });
    }

    fn estimate(&mut self, name: &str, e: crate::simkit::McEstimate) {
        self.put(name, e.mean);
        self.put(&format!("{name}_stderr"), e.stderr);
    }

    fn metrics(&mut self, m: &SecrecyMetrics) {
        self.put("sinr_main", m.sinr_main);
        self.put("sinr_eve", m.sinr_eve);
        self.put("capacity_main", m.capacity_main);
        self.put("capacity_eve", m.capacity_eve);
        self.put("secrecy_rate", m.secrecy_rate);
        self.flag("secure", m.secure);
    }
}

/// Runs the model, link budget and attack of one configuration.
fn run_point(cfg: &ScenarioConfig, table: &RainCoefficientTable, row: &mut Row) -> Result<()> {
    let stream = RandomStream::new(cfg.monte_carlo.seed, 0);
    let trials = cfg.monte_carlo.trials;
    let mut model_metrics = None;
    match cfg.model {
        ModelKind::Mimo => {
            let out = mimo_secrecy(&cfg.mimo)?;
            row.metrics(&out.metrics);
            row.put("power_total", out.budget.total);
            model_metrics = Some(out.metrics);
        }
        ModelKind::Sharing => {
            let (pd, pf) = sensing_probabilities(&cfg.sharing.sensing)?;
            row.put("p_detect", pd);
            row.put("p_false_alarm", pf);
            let out = sharing_secrecy(&cfg.sharing)?;
            row.metrics(&out.metrics);
            model_metrics = Some(out.metrics);
        }
        ModelKind::Beam => {
            let b = optimal_beamformer(&cfg.beam)?;
            row.put("snr", b.snr);
            row.put("noise_power", noise_power(&b.weights, cfg.beam.noise_variance));
            row.put("multiplier", b.multiplier);
        }
        ModelKind::D2d => {
            let out = d2d_secrecy(&cfg.d2d)?;
            row.put("sinr_bs", out.sinr_bs);
            row.metrics(&out.metrics);
            model_metrics = Some(out.metrics);
        }
        ModelKind::Udn => {
            let est = udn_average_secrecy(&cfg.udn, stream.fork(0), trials)?;
            row.estimate("rate_main", est.rate_main);
            row.estimate("rate_eve", est.rate_eve);
            row.put("average_secrecy", est.average_secrecy);
            row.put("average_secrecy_stderr", est.difference.stderr);
            row.put("empty_trials", est.empty_trials as f64);
        }
        ModelKind::Iot => {
            let est = iot_sop(&cfg.iot, stream.fork(0), trials)?;
            row.estimate("sop", est.outage);
            row.estimate("main_stronger", est.main_stronger);
        }
    }

    let mut link_baseline = None;
    let mut weather_db = Decibel(0.0);
    if let Some(p) = &cfg.propagation {
        let params = p.params();
        weather_db = cfg.weather.weather().attenuation(table, p.frequency_ghz)?;
        let shadow = if p.shadow_std_db > 0.0 {
            draw_shadowing(&params, stream.fork(1))?
        } else {
            ShadowSample::fixed(p.shadow_mean_db)
        };
        let pt = DecibelMilliwatt(p.transmit_power_dbm);
        let eve_weather = if cfg.weather.apply_to_eavesdropper { weather_db } else { Decibel(0.0) };
        let main_clear = crate::weather::received_power_with_weather(pt, &params, p.distance_m, &shadow, Decibel(0.0))?;
        let eve_clear = crate::weather::received_power_with_weather(pt, &params, p.eve_distance_m, &shadow, Decibel(0.0))?;
        let snr = |dbm: f64| 10f64.powf((dbm - p.noise_dbm) / 10.0);
        let baseline = SecrecyMetrics::from_sinrs(snr(main_clear.0), snr(eve_clear.0), 0.0);
        let main = main_clear.0 - weather_db.0;
        let eve = eve_clear.0 - eve_weather.0;
        let attacked = SecrecyMetrics::from_sinrs(snr(main), snr(eve), 0.0);
        row.put("weather_db", weather_db.0);
        row.put("rx_power_dbm", main);
        row.put("rx_power_eve_dbm", eve);
        row.put("link_secrecy_rate", attacked.secrecy_rate);
        link_baseline = Some(baseline);
    }

    match cfg.attack.kind {
        AttackKind::None => {}
        AttackKind::HdFd => {
            let params = cfg.attack.params();
            let out = miss_rates(&params)?;
            row.put("p_total", out.p_total);
            row.put("miss_rate_fd", out.miss_rate_fd);
            row.put("miss_rate_hd", out.miss_rate_hd);
            row.flag("hd_advantage", out.hd_advantage);
            row.flag("miss_rate_out_of_range", out.miss_rate_out_of_range);
            if cfg.attack.simulate && params.intervals > 0 {
                let sim = rrc_hd_simulation(&params, stream.fork(2), trials)?;
                row.estimate("sim_intercept_rate", sim.intercept_rate);
            }
        }
        AttackKind::ArAd => {
            let baseline = link_baseline
                .or(model_metrics)
                .ok_or_else(|| Error::Config("ar_ad has no link to attack".into()))?;
            let out = ar_ad_favorability(&baseline, weather_db, cfg.attack.c_threshold, cfg.weather.apply_to_eavesdropper)?;
            row.put("capacity_user", out.capacity_user);
            row.put("capacity_eve", out.capacity_eve);
            row.put("secrecy_capacity", out.secrecy_capacity);
            row.flag("favorable", out.favorable);
        }
    }
    Ok(())
}

fn coefficient_table(cfg: &ScenarioConfig) -> Result<RainCoefficientTable> {
    match &cfg.rain_coefficients {
        Some(path) => RainCoefficientTable::load(path),
        None => Ok(RainCoefficientTable::default()),
    }
}

/// Executes the scenario once, or once per sweep value in sweep order.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ResultTable> {
    let table = coefficient_table(cfg)?;
    let mut out = ResultTable::default();
    match &cfg.sweep {
        None => {
            let mut row = Row(Vec::new());
            run_point(cfg, &table, &mut row)?;
            out.push(row.0)?;
        }
        Some(sweep) => {
            for &v in &sweep.values {
                let annotate = |e: Error| match e {
                    Error::Io(io) => Error::Io(io),
                    other => Error::Estimation(format!("at {} = {v}: {}", sweep.parameter, message(&other))),
                };
                let point = apply_sweep(cfg, &sweep.parameter, v).map_err(annotate)?;
                let mut row = Row(vec![(sweep.parameter.clone(), v)]);
                run_point(&point, &table, &mut row).map_err(annotate)?;
                out.push(row.0)?;
            }
        }
    }
    if let (AttackKind::HdFd, Some(path)) = (cfg.attack.kind, &cfg.attack.trace) {
        let rows = rrc_trace(&cfg.attack.params(), RandomStream::new(cfg.monte_carlo.seed, 3), cfg.attack.trace_trials)?;
        write_trace(&rows, std::fs::File::create(path)?)?;
    }
    Ok(out)
}

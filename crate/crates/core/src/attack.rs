//! Half-duplex interception of the RRC connection setup, its closed-form
//! success and miss-rate probabilities, a discrete-event simulation of the
//! exchange, and the artificial rain/dust favorability test.

use std::io::Write;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::secrecy::{capacity, SecrecyMetrics};
use crate::simkit::{run_trials, McAccumulator, McEstimate};
use crate::units::{db_to_lin, Decibel, RandomStream, StreamRng};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AttackParams {
    /// Probability that a DL setup reaches the UE.
    pub p_dl: f64,
    /// Probability that a UL request reaches the gNB.
    pub p_ul: f64,
    /// Number of intervals `n`.
    pub intervals: u32,
    /// Success count `u`.
    pub successes: u32,
}

impl AttackParams {
    pub fn new(p_dl: f64, p_ul: f64, intervals: u32, successes: u32) -> Self {
        AttackParams { p_dl, p_ul, intervals, successes }
    }

    pub fn q_dl(&self) -> f64 {
        1.0 - self.p_dl
    }

    pub fn q_ul(&self) -> f64 {
        1.0 - self.p_ul
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("p_dl", self.p_dl), ("p_ul", self.p_ul)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::domain(format!("{name} must lie in [0, 1], got {p}")));
            }
        }
        if self.successes > self.intervals {
            return Err(Error::domain(format!(
                "success count {} exceeds interval count {}",
                self.successes, self.intervals
            )));
        }
        Ok(())
    }
}

/// Binomial coefficient as a float; exact for the sizes used here.
pub fn choose(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// `C(n,u)·p^u·(1 − p)^{n−u}`.
pub fn binomial_pmf(n: u32, u: u32, p: f64) -> f64 {
    choose(n, u) * p.powi(u as i32) * (1.0 - p).powi((n - u) as i32)
}

/// `u` successful DL receptions at the UE in `n` intervals.
pub fn dl_success_prob(p: &AttackParams) -> Result<f64> {
    p.validate()?;
    Ok(binomial_pmf(p.intervals, p.successes, p.p_dl))
}

/// `u` DL setups captured by the intruder: `C(n,u)·q_DL^u·p_DL^{n−u}`.
pub fn hd_attack_prob(p: &AttackParams) -> Result<f64> {
    p.validate()?;
    Ok(binomial_pmf(p.intervals, p.successes, p.q_dl()))
}

/// `(P_UL, P_ULev)`: UL successes at the gNB and UL captures by the intruder.
pub fn ul_probs(p: &AttackParams) -> Result<(f64, f64)> {
    p.validate()?;
    Ok((
        binomial_pmf(p.intervals, p.successes, p.p_ul),
        binomial_pmf(p.intervals, p.successes, p.q_ul()),
    ))
}

/// `P_total = P_UL + P_DL`, taking the two events as disjoint. The sum is
/// not clipped and can exceed 1.
pub fn total_prob(p: &AttackParams) -> Result<f64> {
    Ok(ul_probs(p)?.0 + dl_success_prob(p)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AttackOutcome {
    pub p_total: f64,
    pub miss_rate_fd: f64,
    pub miss_rate_hd: f64,
    /// `miss_rate_fd > miss_rate_hd`.
    pub hd_advantage: bool,
    /// `P_total` exceeds 1.
    pub total_exceeds_one: bool,
    /// Either miss-rate lies outside `[0, 1]`.
    pub miss_rate_out_of_range: bool,
}

/// Full- and half-duplex miss-rates, normalized by `P_total`.
pub fn miss_rates(p: &AttackParams) -> Result<AttackOutcome> {
    let p_total = total_prob(p)?;
    if p_total == 0.0 {
        return Err(Error::domain("miss-rate undefined: total success probability is zero"));
    }
    let (_, p_ul_ev) = ul_probs(p)?;
    let p_dl_ev = hd_attack_prob(p)?;
    let miss_rate_fd = ((1.0 - p_ul_ev) + (1.0 - p_dl_ev)) / p_total;
    let miss_rate_hd = (1.0 - p_dl_ev) / p_total;
    let unit = 0.0..=1.0;
    Ok(AttackOutcome {
        p_total,
        miss_rate_fd,
        miss_rate_hd,
        hd_advantage: miss_rate_fd > miss_rate_hd,
        total_exceeds_one: p_total > 1.0,
        miss_rate_out_of_range: !unit.contains(&miss_rate_fd) || !unit.contains(&miss_rate_hd),
    })
}

/// One RRC message on the air. Field contents are opaque.
#[derive(Debug, Clone, PartialEq)]
pub struct RrcMessage {
    pub auth_stamp: u64,
    pub identity: String,
    pub indication_bits: u32,
    pub payload: Vec<u8>,
    /// Random sequence the intruder appends on capture.
    pub artifact_a: Option<Vec<u8>>,
    /// Random sequence the intruder appends to a forged setup.
    pub artifact_r: Option<Vec<u8>>,
    pub channel: Complex64,
    pub power: f64,
    pub noise: Complex64,
}

impl RrcMessage {
    fn draw(rng: &mut StreamRng, identity: &str, tti: u64) -> Self {
        RrcMessage {
            auth_stamp: rng.random(),
            identity: identity.to_owned(),
            indication_bits: rng.random(),
            payload: tti.to_le_bytes().to_vec(),
            artifact_a: None,
            artifact_r: None,
            channel: Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)) * std::f64::consts::FRAC_1_SQRT_2,
            power: 1.0,
            noise: Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)) * 0.01,
        }
    }

    /// The intruder's copy of a captured setup, carrying artifact `a`.
    fn capture(&self, rng: &mut StreamRng) -> Self {
        RrcMessage { artifact_a: Some(rng.random::<[u8; 8]>().to_vec()), ..self.clone() }
    }

    /// A forged setup built from a captured one, adding artifact `r`.
    fn forge(&self, rng: &mut StreamRng) -> Self {
        RrcMessage { artifact_r: Some(rng.random::<[u8; 8]>().to_vec()), ..self.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Actor {
    Ue,
    Gnb,
    Intruder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RrcEvent {
    SetupRequest,
    Setup,
    ForgedSetup,
    ConnectionFailure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RrcOutcome {
    Delivered,
    Captured,
    Replayed,
    Idle,
}

/// One TTI of a simulated exchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub trial: u64,
    pub tti: u64,
    pub actor: Actor,
    pub event: RrcEvent,
    pub outcome: RrcOutcome,
}

pub const TRACE_HEADER: [&str; 5] = ["trial", "tti", "actor", "event", "outcome"];

/// Runs the `n` intervals of one trial and returns the number of DL setups the
/// intruder captured. Each interval spends one TTI on the UL request, one on
/// the DL setup and one on either the forged setup or the connection failure.
fn rrc_trial(p: &AttackParams, trial: u64, stream: RandomStream, mut trace: Option<&mut Vec<TraceRow>>) -> u32 {
    let mut rng = stream.rng();
    let mut tti = 0u64;
    let mut captured = 0u32;
    let mut log = |tti: u64, actor, event, outcome| {
        if let Some(t) = trace.as_deref_mut() {
            t.push(TraceRow { trial, tti, actor, event, outcome });
        }
    };
    for _ in 0..p.intervals {
        let request = RrcMessage::draw(&mut rng, "ue-1", tti);
        log(tti, Actor::Ue, RrcEvent::SetupRequest, RrcOutcome::Delivered);
        tti += 1;

        let setup = RrcMessage::draw(&mut rng, &request.identity, tti);
        let delivered = rng.random::<f64>() < p.p_dl;
        if delivered {
            log(tti, Actor::Gnb, RrcEvent::Setup, RrcOutcome::Delivered);
            tti += 1;
            log(tti, Actor::Intruder, RrcEvent::ConnectionFailure, RrcOutcome::Idle);
        } else {
            let held = setup.capture(&mut rng);
            log(tti, Actor::Gnb, RrcEvent::Setup, RrcOutcome::Captured);
            tti += 1;
            let forged = held.forge(&mut rng);
            debug_assert!(forged.artifact_a.is_some() && forged.artifact_r.is_some());
            log(tti, Actor::Intruder, RrcEvent::ForgedSetup, RrcOutcome::Replayed);
            captured += 1;
        }
        tti += 1;
    }
    captured
}

/// Result of [`rrc_hd_simulation`].
#[derive(Debug, Clone, PartialEq)]
pub struct RrcSimulation {
    /// Per-trial fraction of intervals whose DL setup was intercepted.
    pub intercept_rate: McEstimate,
    /// `histogram[u]`: trials with exactly `u` interceptions.
    pub histogram: Vec<u64>,
}

pub fn rrc_hd_simulation(p: &AttackParams, stream: RandomStream, trials: u64) -> Result<RrcSimulation> {
    p.validate()?;
    if trials == 0 {
        return Err(Error::domain("trials must be >= 1"));
    }
    if p.intervals == 0 {
        return Err(Error::domain("interval count must be >= 1"));
    }
    let counts = run_trials(stream, 0, trials, |s| rrc_trial(p, 0, s, None));
    let mut histogram = vec![0u64; p.intervals as usize + 1];
    let mut acc = McAccumulator::default();
    let n = f64::from(p.intervals);
    for c in counts {
        histogram[c as usize] += 1;
        acc.push(f64::from(c) / n);
    }
    Ok(RrcSimulation { intercept_rate: acc.estimate()?, histogram })
}

/// TTI-level trace of the first `trials` trials, in trial order.
pub fn rrc_trace(p: &AttackParams, stream: RandomStream, trials: u64) -> Result<Vec<TraceRow>> {
    p.validate()?;
    let per_trial = run_trials(stream, 0, trials, |s| {
        let mut rows = Vec::new();
        rrc_trial(p, 0, s, Some(&mut rows));
        rows
    });
    Ok(per_trial
        .into_iter()
        .enumerate()
        .flat_map(|(i, rows)| rows.into_iter().map(move |r| TraceRow { trial: i as u64, ..r }))
        .collect())
}

/// Writes a trace as CSV with the header `trial,tti,actor,event,outcome`.
pub fn write_trace<W: Write>(rows: &[TraceRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(TRACE_HEADER).map_err(csv_err)?;
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Capacities after staging weather along the link(s).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArAdOutcome {
    pub capacity_user: f64,
    pub capacity_eve: f64,
    /// `(C_s)_i = max(C_u − C_ev, 0)`.
    pub secrecy_capacity: f64,
    /// `(C_s)_i < C_T`.
    pub favorable: bool,
}

/// Folds `weather` into the user's (and optionally the eavesdropper's)
/// received power and tests whether secrecy capacity drops below `c_threshold`.
pub fn ar_ad_favorability(
    baseline: &SecrecyMetrics,
    weather: Decibel,
    c_threshold: f64,
    applies_to_eve: bool,
) -> Result<ArAdOutcome> {
    if !(weather.0 >= 0.0) {
        return Err(Error::domain(format!("weather attenuation must be >= 0 dB, got {}", weather.0)));
    }
    let loss = db_to_lin(Decibel(-weather.0)).value();
    let capacity_user = capacity(baseline.sinr_main * loss);
    let capacity_eve = capacity(if applies_to_eve { baseline.sinr_eve * loss } else { baseline.sinr_eve });
    let secrecy_capacity = (capacity_user - capacity_eve).max(0.0);
    Ok(ArAdOutcome {
        capacity_user,
        capacity_eve,
        secrecy_capacity,
        favorable: secrecy_capacity < c_threshold,
    })
}

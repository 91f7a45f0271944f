//! Technology-independent secrecy arithmetic: SINR, Shannon capacity, clamped
//! secrecy rate, threshold checks and secrecy outage probability.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simkit::{integrate, integrate_to_infinity, run_trials, FadingDescriptor, McAccumulator, McEstimate};
use crate::units::{LinearRatio, RandomStream, StreamRng};

/// Power terms entering an SINR, all in watts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SinrInputs {
    pub signal: f64,
    pub noise: f64,
    pub interference: f64,
    /// Mutual-coupling power of the antenna array.
    pub coupling: f64,
}

impl SinrInputs {
    pub fn new(signal: f64, noise: f64, interference: f64, coupling: f64) -> Self {
        SinrInputs { signal, noise, interference, coupling }
    }
}

/// `signal / (noise + interference + coupling)`.
pub fn sinr(inputs: &SinrInputs) -> Result<LinearRatio> {
    let SinrInputs { signal, noise, interference, coupling } = *inputs;
    if [signal, noise, interference, coupling].iter().any(|v| !(*v >= 0.0)) {
        return Err(Error::domain("SINR power terms must be non-negative"));
    }
    let denom = noise + interference + coupling;
    if denom <= 0.0 {
        return Err(Error::domain("SINR denominator is zero"));
    }
    LinearRatio::new(signal / denom)
}

/// Shannon capacity `log2(1 + sinr)` in bits/s/Hz.
pub fn capacity(sinr: f64) -> f64 {
    (1.0 + sinr).log2()
}

/// `max(c_main − c_eve, 0)`.
pub fn secrecy_rate(c_main: f64, c_eve: f64) -> f64 {
    (c_main - c_eve).max(0.0)
}

/// Secrecy figures of one link pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecrecyMetrics {
    pub sinr_main: f64,
    pub sinr_eve: f64,
    pub capacity_main: f64,
    pub capacity_eve: f64,
    pub secrecy_rate: f64,
    pub threshold: f64,
    pub secure: bool,
}

impl SecrecyMetrics {
    /// Metrics with Shannon capacities of the two SINRs.
    pub fn from_sinrs(sinr_main: f64, sinr_eve: f64, threshold: f64) -> Self {
        Self::from_parts(sinr_main, sinr_eve, capacity(sinr_main), capacity(sinr_eve), threshold)
    }

    /// Metrics from capacities computed elsewhere (e.g. with a time-sharing factor).
    pub fn from_parts(sinr_main: f64, sinr_eve: f64, capacity_main: f64, capacity_eve: f64, threshold: f64) -> Self {
        let sr = secrecy_rate(capacity_main, capacity_eve);
        let mut m = SecrecyMetrics {
            sinr_main,
            sinr_eve,
            capacity_main,
            capacity_eve,
            secrecy_rate: sr,
            threshold,
            secure: false,
        };
        m.secure = secrecy_check(&m);
        m
    }
}

/// `true` iff the secrecy rate strictly exceeds the threshold. A `false`
/// result means an eavesdropper can effectively intrude.
pub fn secrecy_check(metrics: &SecrecyMetrics) -> bool {
    metrics.secrecy_rate > metrics.threshold
}

/// A source of instantaneous SINR realizations.
pub trait SinrSampler: Sync {
    fn sample_sinr(&self, rng: &mut StreamRng) -> f64;
}

/// The SINR is the power gain `|h|²` of the descriptor.
impl SinrSampler for FadingDescriptor {
    fn sample_sinr(&self, rng: &mut StreamRng) -> f64 {
        self.sample_power(rng)
    }
}

/// Inputs of a secrecy outage evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SopInputs<M, E> {
    /// Target secrecy rate `C_r`, bits/s/Hz.
    pub target_rate: f64,
    pub main: M,
    pub eve: E,
    /// Bound point `ρ_th` used to split the quadrature domain.
    pub bound_threshold: f64,
}

/// Monte-Carlo secrecy outage estimate with the pieces of its conditional
/// decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SopEstimate {
    /// `Pr[C_s < C_r]`.
    pub outage: McEstimate,
    /// `Pr[ρ_p > ρ_e]`.
    pub main_stronger: McEstimate,
    /// `Pr[C_s < C_r | ρ_p > ρ_e]`, or 0 when the main link never wins.
    pub outage_given_main_stronger: f64,
    /// `Pr[ρ_p < ρ_e]`.
    pub eve_stronger: McEstimate,
}

impl SopEstimate {
    /// `Pr(out | ρ_p > ρ_e)·Pr(ρ_p > ρ_e) + Pr(ρ_p < ρ_e)`.
    pub fn decomposed(&self) -> f64 {
        self.outage_given_main_stronger * self.main_stronger.mean + self.eve_stronger.mean
    }
}

fn outage_event(c_s: f64, target_rate: f64) -> bool {
    c_s < target_rate
}

/// Monte-Carlo estimate of `Pr[C_s < C_r]` over independent SINR draws.
pub fn secrecy_outage_probability<M, E>(
    inputs: &SopInputs<M, E>,
    stream: RandomStream,
    trials: u64,
) -> Result<SopEstimate>
where
    M: SinrSampler,
    E: SinrSampler,
{
    if trials == 0 {
        return Err(Error::domain("trials must be >= 1"));
    }
    if !(inputs.target_rate >= 0.0) {
        return Err(Error::domain("target secrecy rate must be >= 0"));
    }
    let draws = run_trials(stream, 0, trials, |s| {
        let mut rng = s.rng();
        let rho_p = inputs.main.sample_sinr(&mut rng);
        let rho_e = inputs.eve.sample_sinr(&mut rng);
        let c_s = secrecy_rate(capacity(rho_p), capacity(rho_e));
        (outage_event(c_s, inputs.target_rate), rho_p > rho_e, rho_p < rho_e)
    });
    let mut outage = McAccumulator::default();
    let mut main = McAccumulator::default();
    let mut eve = McAccumulator::default();
    let mut joint = 0u64;
    for (out, m, e) in draws {
        outage.push(out as u8 as f64);
        main.push(m as u8 as f64);
        eve.push(e as u8 as f64);
        joint += (out && m) as u64;
    }
    let main_count = main.sum;
    Ok(SopEstimate {
        outage: outage.estimate()?,
        main_stronger: main.estimate()?,
        outage_given_main_stronger: if main_count > 0.0 { joint as f64 / main_count } else { 0.0 },
        eve_stronger: eve.estimate()?,
    })
}

/// `Pr[ρ < x]` for the SINR law of a descriptor.
fn sinr_cdf(law: &FadingDescriptor, x: f64) -> Result<f64> {
    match *law {
        FadingDescriptor::Rayleigh { mean_power } => Ok(if x <= 0.0 {
            0.0
        } else if mean_power == 0.0 {
            1.0
        } else {
            1.0 - (-x / mean_power).exp()
        }),
        FadingDescriptor::Deterministic { value } => Ok(if value * value < x { 1.0 } else { 0.0 }),
        FadingDescriptor::Rician { .. } => Err(Error::Config(
            "quadrature outage evaluator supports rayleigh and deterministic SINR laws only".into(),
        )),
    }
}

/// Secrecy outage by quadrature: `∫ F_ρp(2^{C_r}(1+R) − 1)·f_ρe(R) dR`, reading
/// the integrand's leading factor as the CDF of the main-link SINR.
///
/// The integral is split at the bound point `T = 2^{−C_r}(1+ρ_th) − 1`, the
/// eavesdropper SINR at which `ω_R = 2^{C_r}(1+R) − 1` reaches `ρ_th`; when
/// `T < 0` a single piece covers `[0, ∞)`.
pub fn sop_quadrature(inputs: &SopInputs<FadingDescriptor, FadingDescriptor>) -> Result<f64> {
    let cr = inputs.target_rate;
    if !(cr >= 0.0) {
        return Err(Error::domain("target secrecy rate must be >= 0"));
    }
    inputs.main.validate()?;
    inputs.eve.validate()?;
    sinr_cdf(&inputs.main, 1.0)?;
    if cr == 0.0 {
        return Ok(0.0);
    }
    let scale = 2f64.powf(cr);
    let omega = |r: f64| scale * (1.0 + r) - 1.0;
    match inputs.eve {
        FadingDescriptor::Deterministic { value } => sinr_cdf(&inputs.main, omega(value * value)),
        FadingDescriptor::Rayleigh { mean_power } => {
            if mean_power == 0.0 {
                return sinr_cdf(&inputs.main, omega(0.0));
            }
            let integrand = |r: f64| {
                sinr_cdf(&inputs.main, omega(r)).unwrap_or(0.0) * (-r / mean_power).exp() / mean_power
            };
            let t = (1.0 + inputs.bound_threshold) / scale - 1.0;
            let tol = 1e-10;
            Ok(if t >= 0.0 {
                integrate(integrand, 0.0, t, tol) + integrate_to_infinity(integrand, t, tol)
            } else {
                integrate_to_infinity(integrand, 0.0, tol)
            })
        }
        FadingDescriptor::Rician { .. } => Err(Error::Config(
            "quadrature outage evaluator supports rayleigh and deterministic SINR laws only".into(),
        )),
    }
}

//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use nrsec::attack::{
    ar_ad_favorability, dl_success_prob, hd_attack_prob, miss_rates, rrc_hd_simulation, ul_probs, AttackParams,
};
use nrsec::propagation::{
    free_space_path_loss, log_distance_received_power, sample_shadow_db, shadow_linear_mean_ln, Intercept,
    PropagationParams, ScenarioClass, SHADOW_DELTA, EXPONENT_PRESETS,
};
use nrsec::scenario::{emit_results, parse_scenario, run_scenario};
use nrsec::secrecy::{secrecy_outage_probability, sop_quadrature, SecrecyMetrics, SopInputs};
use nrsec::simkit::{ks_test, FadingDescriptor, McAccumulator, Window};
use nrsec::tech::beam::{constraint_residual, noise_power, optimal_beamformer, BeamScenario};
use nrsec::tech::udn::{nearest_distance_cdf, nearest_eve_distances, udn_average_secrecy, UdnField};
use nrsec::units::{inner, DecibelMilliwatt, RandomStream};
use nrsec::weather::{RainCoefficientTable, RainCondition, RainDepths, Weather};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within_time(start: Instant, limit: Duration) -> std::result::Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:.2?}, limit {limit:?}"))
}

/// Probability that exactly `u` of `n` Bernoulli(`p`) trials succeed, by
/// summing over every outcome sequence.
fn enumerate(n: u32, u: u32, p: f64) -> f64 {
    let mut total = 0.0;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() != u {
            continue;
        }
        let mut prob = 1.0;
        for i in 0..n {
            prob *= if mask >> i & 1 == 1 { p } else { 1.0 - p };
        }
        total += prob;
    }
    total
}

fn binomial_exactness() -> Check {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut cases = 0;
    for n in 0..=12u32 {
        for u in 0..=n {
            for &(p_dl, p_ul) in &[(0.3, 0.4), (0.7, 0.15), (0.5, 0.5), (0.05, 0.95), (1.0, 0.0)] {
                let a = AttackParams::new(p_dl, p_ul, n, u);
                let (ul, ul_ev) = ul_probs(&a).map_err(|e| e.to_string())?;
                let pairs = [
                    (dl_success_prob(&a).map_err(|e| e.to_string())?, enumerate(n, u, p_dl)),
                    (hd_attack_prob(&a).map_err(|e| e.to_string())?, enumerate(n, u, 1.0 - p_dl)),
                    (ul, enumerate(n, u, p_ul)),
                    (ul_ev, enumerate(n, u, 1.0 - p_ul)),
                ];
                for (got, want) in pairs {
                    worst = worst.max((got - want).abs());
                    cases += 1;
                }
            }
        }
    }
    ensure(worst <= 1e-12, format!("max error {worst:e}"))?;
    within_time(start, Duration::from_secs(5))?;
    Ok(format!("{cases} cases, max error {worst:.1e}"))
}

fn hd_advantage() -> Check {
    let start = Instant::now();
    let grid: Vec<f64> = (1..=19).map(|i| f64::from(i) * 0.05).collect();
    let mut points = 0;
    let mut violations = 0;
    for &p_dl in &grid {
        for &p_ul in &grid {
            for n in 2..=10u32 {
                for u in 0..=n {
                    let out = miss_rates(&AttackParams::new(p_dl, p_ul, n, u)).map_err(|e| e.to_string())?;
                    points += 1;
                    if out.miss_rate_fd < out.miss_rate_hd {
                        violations += 1;
                    }
                }
            }
        }
    }
    ensure(violations == 0, format!("{violations} violations"))?;
    within_time(start, Duration::from_secs(10))?;
    Ok(format!("{points} grid points, 0 violations"))
}

fn rrc_simulation() -> Check {
    let start = Instant::now();
    let trials = 100_000u64;
    let mut rates = Vec::new();
    let mut bins = 0;
    for n in 2..=8u32 {
        let p = AttackParams::new(0.7, 0.5, n, 0);
        let sim = rrc_hd_simulation(&p, RandomStream::new(2024, u64::from(n)), trials).map_err(|e| e.to_string())?;
        let rate = sim.intercept_rate;
        ensure(rate.within(0.3, 3.0), format!("n = {n}: intercept rate {} ± {} vs 0.3", rate.mean, rate.stderr))?;
        for (u, &count) in sim.histogram.iter().enumerate() {
            let pu = hd_attack_prob(&AttackParams { successes: u as u32, ..p }).map_err(|e| e.to_string())?;
            let expected = trials as f64 * pu;
            let sigma = (trials as f64 * pu * (1.0 - pu)).sqrt();
            ensure(
                (count as f64 - expected).abs() <= 3.0 * sigma,
                format!("n = {n}, u = {u}: {count} vs {expected:.1} ± {sigma:.1}"),
            )?;
            bins += 1;
        }
        rates.push(format!("{:.4}", rate.mean));
    }
    within_time(start, Duration::from_secs(30))?;
    Ok(format!("intercept rate by n = 2..8 [{}], {bins} (n, u) bins match", rates.join(", ")))
}

fn shadowing_mean() -> Check {
    let start = Instant::now();
    let params = PropagationParams::new(28e9, 1.0, 2.0).with_shadowing(0.0, 8.0);
    let mut rng = RandomStream::new(96, 0).rng();
    let acc: McAccumulator = (0..1_000_000)
        .map(|_| 10f64.powf(sample_shadow_db(&params, &mut rng).unwrap() / 10.0))
        .collect();
    let est = acc.estimate().map_err(|e| e.to_string())?;
    // the log of the linear mean is σ²/(2Δ²); propagate the stderr through ln
    let log_mean = est.mean.ln();
    let log_se = est.stderr / est.mean;
    let expected = 64.0 / (2.0 * SHADOW_DELTA * SHADOW_DELTA);
    ensure((expected - 1.697).abs() < 1e-3, "closed form drifted")?;
    ensure((shadow_linear_mean_ln(&params) - expected).abs() < 1e-12, "library closed form disagrees")?;
    ensure(
        (log_mean - expected).abs() <= 3.0 * log_se,
        format!("ln of linear mean {log_mean:.4} ± {log_se:.4} vs {expected:.4}"),
    )?;
    within_time(start, Duration::from_secs(10))?;
    Ok(format!("ln E[phi] = {log_mean:.4} ± {log_se:.4}, closed form {expected:.4} (= {:.3} dB)", SHADOW_DELTA * expected))
}

fn free_space_slope() -> Check {
    let params = PropagationParams::new(28e9, 1.0, 2.0).with_intercept(Intercept::FreeSpace);
    let expected = 20.0 * 2f64.log10();
    let mut worst = 0.0f64;
    for &d in &[1.0, 3.7, 10.0, 125.0, 4000.0] {
        let near = free_space_path_loss(&params, d).map_err(|e| e.to_string())?.0;
        let far = free_space_path_loss(&params, 2.0 * d).map_err(|e| e.to_string())?.0;
        worst = worst.max((far - near - expected).abs());
        let pt = DecibelMilliwatt(0.0);
        let pr_near = log_distance_received_power(pt, &params, d).map_err(|e| e.to_string())?.0;
        let pr_far = log_distance_received_power(pt, &params, 2.0 * d).map_err(|e| e.to_string())?.0;
        worst = worst.max((pr_near - pr_far - expected).abs());
        worst = worst.max((-pr_near - near).abs());
    }
    ensure(worst <= 1e-9, format!("slope error {worst:e}"))?;
    for (class, lo, hi) in EXPONENT_PRESETS {
        ensure(class.check_exponent(lo).is_ok() && class.check_exponent(hi).is_ok(), format!("{class} bounds rejected"))?;
        ensure(class.check_exponent(hi + 0.1).is_err(), format!("{class} accepted {}", hi + 0.1))?;
    }
    ensure(ScenarioClass::Home.check_exponent(9.9).is_err(), "home accepted 9.9")?;
    let text = "model = \"mimo\"\n[propagation]\nscenario_class = \"home\"\npath_loss_exponent = 9.9\n";
    let err = parse_scenario(text, "home.toml").err().ok_or("scenario with psi 9.9 under home was accepted")?;
    ensure(err.to_string().contains("home"), format!("diagnostic does not cite the preset: {err}"))?;
    Ok(format!("slope error {worst:.1e} dB; presets enforced ({err})"))
}

fn sop_cross_validation() -> Check {
    let start = Instant::now();
    let mut report = Vec::new();
    for (i, &cr) in [0.25, 1.0, 2.0].iter().enumerate() {
        let inputs = SopInputs {
            target_rate: cr,
            main: FadingDescriptor::rayleigh(10.0),
            eve: FadingDescriptor::constant_power(2.0),
            bound_threshold: 5.0,
        };
        let mc = secrecy_outage_probability(&inputs, RandomStream::new(78, i as u64), 200_000)
            .map_err(|e| e.to_string())?
            .outage;
        let q = sop_quadrature(&inputs).map_err(|e| e.to_string())?;
        ensure(mc.within(q, 3.0), format!("C_r = {cr}: MC {} ± {} vs quadrature {q}", mc.mean, mc.stderr))?;
        report.push(format!("C_r={cr}: {:.4}/{q:.4}", mc.mean));
    }
    within_time(start, Duration::from_secs(60))?;
    Ok(report.join(", "))
}

fn beamformer_optimality() -> Check {
    let mut rng = RandomStream::new(48, 0).rng();
    let mut gauss = || Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    let h: Vec<Complex64> = (0..6).map(|_| gauss()).collect();
    let rho = 2.5;
    let theta2 = 0.7;
    let s = BeamScenario { channel: h.clone(), noise_variance: theta2, transmit_power: rho };
    let b = optimal_beamformer(&s).map_err(|e| e.to_string())?;
    let residual = constraint_residual(&b.weights, &h);
    ensure(residual < 1e-9, format!("constraint residual {residual:e}"))?;
    let energy: f64 = h.iter().map(|x| x.norm_sqr()).sum();
    ensure(((b.snr - rho * energy) / (rho * energy)).abs() < 1e-9, "SNR differs from rho·|h|²")?;
    let best = noise_power(&b.weights, theta2);
    let mut scale_rng = RandomStream::new(48, 1).rng();
    let mut beaten = 0;
    let mut min_seen = f64::INFINITY;
    for _ in 0..10_000 {
        // perturbations from 1e-4 to 1 around the optimum
        let scale = 10f64.powf(-4.0 * scale_rng.random::<f64>());
        let z: Vec<Complex64> = (0..h.len()).map(|_| gauss() * scale).collect();
        let proj = inner(&h, &z) / energy;
        // w = w* + (z − h·⟨h,z⟩/‖h‖²) keeps ⟨w,h⟩ = 1
        let w: Vec<Complex64> = b.weights.iter().zip(&z).zip(&h).map(|((w0, zi), hi)| w0 + zi - hi * proj).collect();
        if (inner(&w, &h) - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
            return Err("random vector left the constraint set".into());
        }
        let np = noise_power(&w, theta2);
        min_seen = min_seen.min(np);
        if np < best {
            beaten += 1;
        }
    }
    ensure(beaten == 0, format!("{beaten} random vectors beat the optimum"))?;
    Ok(format!("optimum noise {best:.6}, best random {min_seen:.6}, residual {residual:.1e}"))
}

fn udn_geometry() -> Check {
    let window = Window::centered(2000.0, 2000.0);
    let psi = 1e-4;
    let f = UdnField { eve_density: psi, user_density: 1e-3, window, ..UdnField::default() };
    let d = nearest_eve_distances(&f, RandomStream::new(68, 0), 100_000).map_err(|e| e.to_string())?;
    ensure(d.len() == 100_000, "empty eavesdropper fields")?;
    let ks = ks_test(&d, |b| nearest_distance_cdf(psi, b));
    ensure(ks.passes(0.01), format!("KS p = {:.4}", ks.p_value))?;

    let none = udn_average_secrecy(&UdnField { eve_density: 0.0, window, ..f }, RandomStream::new(68, 1), 2000)
        .map_err(|e| e.to_string())?;
    ensure(none.rate_eve.mean == 0.0, format!("S_ev = {} without eavesdroppers", none.rate_eve.mean))?;

    let densities = [1e-5, 3e-5, 1e-4, 3e-4, 6e-4];
    let mut prev: Option<(f64, f64)> = None;
    let mut means = Vec::new();
    for &psi_ev in &densities {
        let field = UdnField { eve_density: psi_ev, user_density: 1e-3, window, ..UdnField::default() };
        let est = udn_average_secrecy(&field, RandomStream::new(68, 2), 4000).map_err(|e| e.to_string())?;
        let (m, se) = (est.rate_eve.mean, est.rate_eve.stderr);
        if let Some((pm, pse)) = prev {
            let sigma = (se * se + pse * pse).sqrt();
            ensure(m >= pm - 3.0 * sigma, format!("S_ev fell from {pm} to {m} at density {psi_ev}"))?;
        }
        prev = Some((m, se));
        means.push(format!("{m:.3}"));
    }
    Ok(format!("KS p = {:.3}; S_ev over density sweep [{}]", ks.p_value, means.join(", ")))
}

fn weather_monotonicity() -> Check {
    let start = Instant::now();
    let table = RainCoefficientTable::default();
    let baseline = SecrecyMetrics::from_sinrs(400.0, 20.0, 0.0);
    let c_t = 3.0;
    let mut prev_cs = f64::INFINITY;
    let mut triggered = false;
    let mut first = None;
    for step in 0..=50 {
        let rate = f64::from(step);
        let rain = Weather::Rain(RainCondition {
            rate_mm_h: rate,
            elevation_deg: 10.0,
            tilt_deg: 45.0,
            depths: RainDepths { scattering: 0.4, absorption: 0.4, refraction: 0.1, polarization: 0.1 },
        });
        let att = rain.attenuation(&table, 28.0).map_err(|e| e.to_string())?;
        let out = ar_ad_favorability(&baseline, att, c_t, false).map_err(|e| e.to_string())?;
        ensure(out.secrecy_capacity <= prev_cs, format!("secrecy capacity rose at {rate} mm/h"))?;
        ensure(!triggered || out.favorable, format!("favorability cleared at {rate} mm/h"))?;
        if out.favorable && !triggered {
            first = Some(rate);
        }
        triggered |= out.favorable;
        prev_cs = out.secrecy_capacity;
    }
    ensure(triggered, "sweep never became favorable")?;

    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/ar_ad_rain_sweep.toml"))
        .map_err(|e| e.to_string())?;
    let cfg = parse_scenario(&text, "ar_ad_rain_sweep.toml").map_err(|e| e.to_string())?;
    let table = run_scenario(&cfg).map_err(|e| e.to_string())?;
    for col in ["rx_power_dbm", "secrecy_capacity", "link_secrecy_rate"] {
        let v = table.column(col).ok_or(format!("missing column {col}"))?;
        ensure(v.windows(2).all(|w| w[1] <= w[0]), format!("{col} not non-increasing"))?;
    }
    within_time(start, Duration::from_secs(10))?;
    Ok(format!("favorable from {} mm/h onwards; scenario sweep monotone", first.unwrap_or(f64::NAN)))
}

fn csv_bytes(scenario: &str, name: &str) -> std::result::Result<Vec<u8>, String> {
    let text = std::fs::read_to_string(format!("{}/scenarios/{scenario}", env!("CARGO_MANIFEST_DIR")))
        .map_err(|e| e.to_string())?;
    let cfg = parse_scenario(&text, name).map_err(|e| e.to_string())?;
    let table = run_scenario(&cfg).map_err(|e| e.to_string())?;
    let mut buf = Vec::new();
    emit_results(&table, &mut buf).map_err(|e| e.to_string())?;
    Ok(buf)
}

fn determinism() -> Check {
    let p = AttackParams::new(0.7, 0.5, 6, 0);
    let a = rrc_hd_simulation(&p, RandomStream::new(5, 0), 20_000).map_err(|e| e.to_string())?;
    let b = rrc_hd_simulation(&p, RandomStream::new(5, 0), 20_000).map_err(|e| e.to_string())?;
    ensure(format!("{a:?}") == format!("{b:?}"), "RRC simulation differs between runs")?;

    let inputs = SopInputs {
        target_rate: 1.0,
        main: FadingDescriptor::rayleigh(10.0),
        eve: FadingDescriptor::rayleigh(1.0),
        bound_threshold: 1.0,
    };
    let a = secrecy_outage_probability(&inputs, RandomStream::new(6, 0), 50_000).map_err(|e| e.to_string())?;
    let b = secrecy_outage_probability(&inputs, RandomStream::new(6, 0), 50_000).map_err(|e| e.to_string())?;
    ensure(format!("{a:?}") == format!("{b:?}"), "outage estimate differs between runs")?;

    let mut checked = 0;
    for s in ["hd_fd_sweep.toml", "udn_density.toml", "iot_outage.toml"] {
        let first = csv_bytes(s, s)?;
        let second = csv_bytes(s, s)?;
        ensure(first == second, format!("{s}: tables differ between runs"))?;
        checked += 1;
    }
    Ok(format!("2 estimators and {checked} scenario tables byte-identical"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("binomial exactness", binomial_exactness),
        ("HD advantage", hd_advantage),
        ("RRC simulation vs closed form", rrc_simulation),
        ("shadowing mean", shadowing_mean),
        ("free-space slope and presets", free_space_slope),
        ("SOP cross-validation", sop_cross_validation),
        ("beamformer optimality", beamformer_optimality),
        ("UDN geometry", udn_geometry),
        ("weather monotonicity", weather_monotonicity),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({:.2?}): {detail}", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({:.2?}): {why}", i + 1, start.elapsed());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

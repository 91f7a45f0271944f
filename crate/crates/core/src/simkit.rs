//! Fading draws, planar Poisson point processes and the Monte-Carlo runner
//! shared by every stochastic model.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::RandomStream;

/// Small-scale fading law of a complex channel gain `h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FadingDescriptor {
    /// Circularly symmetric Gaussian `h`, so `|h|²` is exponential.
    Rayleigh { mean_power: f64 },
    /// Fixed line-of-sight phasor plus a scattered Rayleigh part; `k` is the
    /// LOS-to-scattered power ratio and the total mean power is `mean_power`.
    Rician { k: f64, mean_power: f64 },
    /// No fading: `h` is the real constant `value`.
    Deterministic { value: f64 },
}

impl FadingDescriptor {
    pub fn rayleigh(mean_power: f64) -> Self {
        FadingDescriptor::Rayleigh { mean_power }
    }

    pub fn rician(k: f64, mean_power: f64) -> Self {
        FadingDescriptor::Rician { k, mean_power }
    }

    pub fn deterministic(value: f64) -> Self {
        FadingDescriptor::Deterministic { value }
    }

    /// A non-fading gain whose power `|h|²` equals `power`.
    pub fn constant_power(power: f64) -> Self {
        FadingDescriptor::Deterministic { value: power.sqrt() }
    }

    /// Expected `|h|²`.
    pub fn mean_power(&self) -> f64 {
        match *self {
            FadingDescriptor::Rayleigh { mean_power } | FadingDescriptor::Rician { mean_power, .. } => mean_power,
            FadingDescriptor::Deterministic { value } => value * value,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FadingDescriptor::Rayleigh { mean_power } if !(mean_power >= 0.0) => {
                Err(Error::domain(format!("Rayleigh mean power must be >= 0, got {mean_power}")))
            }
            FadingDescriptor::Rician { k, .. } if !(k >= 0.0) => {
                Err(Error::domain(format!("Rician K factor must be >= 0, got {k}")))
            }
            FadingDescriptor::Rician { mean_power, .. } if !(mean_power >= 0.0) => {
                Err(Error::domain(format!("Rician mean power must be >= 0, got {mean_power}")))
            }
            FadingDescriptor::Deterministic { value } if !value.is_finite() => {
                Err(Error::domain("deterministic gain must be finite"))
            }
            _ => Ok(()),
        }
    }

    /// Draws one complex gain from `rng`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Complex64 {
        match *self {
            FadingDescriptor::Rayleigh { mean_power } => complex_gaussian(rng, mean_power),
            FadingDescriptor::Rician { k, mean_power } => {
                let los = (k / (k + 1.0) * mean_power).sqrt();
                Complex64::new(los, 0.0) + complex_gaussian(rng, mean_power / (k + 1.0))
            }
            FadingDescriptor::Deterministic { value } => Complex64::new(value, 0.0),
        }
    }

    /// Draws one power gain `|h|²`.
    pub fn sample_power<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.sample(rng).norm_sqr()
    }
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let s = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(s * re, s * im)
}

/// Draws a fading gain from the start of `stream`.
pub fn draw_fading(d: &FadingDescriptor, stream: RandomStream) -> Result<Complex64> {
    d.validate()?;
    Ok(d.sample(&mut stream.rng()))
}

/// A planar point.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Axis-aligned rectangle in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Window {
    /// A `width × height` rectangle centered on the origin.
    pub fn centered(width: f64, height: f64) -> Self {
        Window {
            x_min: -width / 2.0,
            x_max: width / 2.0,
            y_min: -height / 2.0,
            y_max: height / 2.0,
        }
    }

    pub fn area(&self) -> f64 {
        (self.x_max - self.x_min) * (self.y_max - self.y_min)
    }
}

/// A realization of a point process on a window.
#[derive(Debug, Clone, PartialEq)]
pub struct PointField {
    pub window: Window,
    pub points: Vec<Point>,
}

impl PointField {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Keeps each point independently with probability `p`.
    pub fn thin<R: Rng + ?Sized>(&self, p: f64, rng: &mut R) -> PointField {
        PointField {
            window: self.window,
            points: self.points.iter().copied().filter(|_| rng.random::<f64>() < p).collect(),
        }
    }
}

/// Homogeneous Poisson point process of `density` points/m² on `window`.
pub fn sample_ppp(density: f64, window: Window, stream: RandomStream) -> Result<PointField> {
    sample_ppp_with(density, window, &mut stream.rng())
}

pub fn sample_ppp_with<R: Rng + ?Sized>(density: f64, window: Window, rng: &mut R) -> Result<PointField> {
    if !(density >= 0.0) {
        return Err(Error::domain(format!("PPP density must be >= 0, got {density}")));
    }
    let area = window.area();
    if !(area > 0.0) {
        return Err(Error::domain("PPP window must have positive area"));
    }
    let mean = density * area;
    let count = if mean == 0.0 {
        0
    } else {
        let poisson = Poisson::new(mean).map_err(|e| Error::domain(e.to_string()))?;
        poisson.sample(rng) as usize
    };
    let points = (0..count)
        .map(|_| {
            Point::new(
                rng.random_range(window.x_min..window.x_max),
                rng.random_range(window.y_min..window.y_max),
            )
        })
        .collect();
    Ok(PointField { window, points })
}

/// Distance from `origin` to the closest point, `None` for an empty field.
pub fn nearest_distance(field: &PointField, origin: Point) -> Option<f64> {
    nearest_point(field, origin).map(|(_, d)| d)
}

/// Index and distance of the closest point to `origin`.
pub fn nearest_point(field: &PointField, origin: Point) -> Option<(usize, f64)> {
    field
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| (i, p.distance(&origin)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
}

/// Mean of a Monte-Carlo run with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: u64,
}

impl McEstimate {
    /// Whether `value` lies within `k` standard errors of the mean.
    pub fn within(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.stderr
    }
}

/// Running sums for a Monte-Carlo mean; merging is associative.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct McAccumulator {
    pub count: u64,
    pub sum: f64,
    pub sum_sq: f64,
}

impl McAccumulator {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        self.sum += x;
        self.sum_sq += x * x;
    }

    pub fn merge(&mut self, other: &McAccumulator) {
        self.count += other.count;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
    }

    pub fn estimate(&self) -> Result<McEstimate> {
        if self.count == 0 {
            return Err(Error::Estimation("no trials accumulated".into()));
        }
        let n = self.count as f64;
        let mean = self.sum / n;
        let var = if self.count > 1 {
            ((self.sum_sq - n * mean * mean) / (n - 1.0)).max(0.0)
        } else {
            0.0
        };
        Ok(McEstimate {
            mean,
            stderr: (var / n).sqrt(),
            trials: self.count,
        })
    }
}

impl FromIterator<f64> for McAccumulator {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = McAccumulator::default();
        for x in iter {
            acc.push(x);
        }
        acc
    }
}

/// Runs `trial` for indices `first..first + count`, each on its own fork of
/// `base`, and returns the results in index order. Execution is parallel;
/// output order and values do not depend on scheduling.
pub fn run_trials<T, F>(base: RandomStream, first: u64, count: u64, trial: F) -> Vec<T>
where
    T: Send,
    F: Fn(RandomStream) -> T + Sync,
{
    (first..first + count).into_par_iter().map(|i| trial(base.fork(i))).collect()
}

/// Monte-Carlo mean of a scalar per-trial estimator.
pub fn mc_run<F>(trial: F, trials: u64, base: RandomStream) -> Result<McEstimate>
where
    F: Fn(RandomStream) -> f64 + Sync,
{
    if trials == 0 {
        return Err(Error::domain("trials must be >= 1"));
    }
    run_trials(base, 0, trials, trial).into_iter().collect::<McAccumulator>().estimate()
}

/// Outcome of a one-sample Kolmogorov–Smirnov test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsOutcome {
    pub statistic: f64,
    pub p_value: f64,
}

impl KsOutcome {
    pub fn passes(&self, alpha: f64) -> bool {
        self.p_value > alpha
    }
}

/// One-sample KS test of `samples` against the continuous CDF `cdf`.
pub fn ks_test<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> KsOutcome {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let statistic = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max);
    KsOutcome {
        statistic,
        p_value: kolmogorov_survival((n.sqrt() + 0.12 + 0.11 / n.sqrt()) * statistic),
    }
}

/// Two-sample KS test.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> KsOutcome {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let ne = (na * nb / (na + nb)).sqrt();
    KsOutcome {
        statistic: d,
        p_value: kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d),
    }
}

/// `P(K > x)` for the Kolmogorov distribution.
fn kolmogorov_survival(x: f64) -> f64 {
    if x < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let k = k as f64;
        let term = (-2.0 * k * k * x * x).exp();
        sum += if k as u64 % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Adaptive Simpson integration of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Integral of `f` over `[a, ∞)` via the substitution `x = a + t/(1-t)`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, tol: f64) -> f64 {
    integrate(
        |t| {
            if t >= 1.0 {
                return 0.0;
            }
            let s = 1.0 - t;
            let v = f(a + t / s) / (s * s);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        },
        0.0,
        1.0,
        tol,
    )
}

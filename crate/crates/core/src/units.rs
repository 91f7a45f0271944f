//! Unit conventions, the Gaussian tail function and deterministic random streams.
//!
//! Powers travel through the crate in linear watts; decibel types only show up
//! at the edges where a formula is naturally written in the log domain.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// A power ratio expressed in decibels.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
pub struct Decibel(pub f64);

/// An absolute power level referenced to one milliwatt.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
pub struct DecibelMilliwatt(pub f64);

/// A dimensionless, non-negative power ratio.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
pub struct LinearRatio(f64);

/// A non-negative power in watts.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
pub struct Watts(f64);

impl LinearRatio {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value < 0.0 {
            return Err(Error::domain(format!("linear ratio must be >= 0, got {value}")));
        }
        Ok(LinearRatio(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Watts {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value < 0.0 {
            return Err(Error::domain(format!("power must be >= 0 W, got {value}")));
        }
        Ok(Watts(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Decibel {
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn to_linear(self) -> LinearRatio {
        db_to_lin(self)
    }
}

impl DecibelMilliwatt {
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn to_watts(self) -> Watts {
        dbm_to_watt(self)
    }
}

/// `10·log10(x)`; rejects non-positive ratios.
pub fn lin_to_db(x: LinearRatio) -> Result<Decibel> {
    if x.0 <= 0.0 {
        return Err(Error::domain(format!("cannot express {} in dB", x.0)));
    }
    Ok(Decibel(10.0 * x.0.log10()))
}

pub fn db_to_lin(x: Decibel) -> LinearRatio {
    LinearRatio(10f64.powf(x.0 / 10.0))
}

pub fn dbm_to_watt(x: DecibelMilliwatt) -> Watts {
    Watts(10f64.powf((x.0 - 30.0) / 10.0))
}

pub fn watt_to_dbm(x: Watts) -> Result<DecibelMilliwatt> {
    if x.0 <= 0.0 {
        return Err(Error::domain(format!("cannot express {} W in dBm", x.0)));
    }
    Ok(DecibelMilliwatt(10.0 * x.0.log10() + 30.0))
}

/// Gaussian tail probability `Q(x) = ½·erfc(x/√2)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// Squared Euclidean norm of a complex vector.
pub fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Hermitian inner product `aᴴ·b`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Generator type behind every [`RandomStream`].
pub type StreamRng = ChaCha12Rng;

/// A reproducible source of randomness identified by `(seed, stream_index)`.
///
/// Every stochastic routine takes one of these instead of a live generator,
/// so a trial can be replayed in isolation and trials can be farmed out to
/// threads in any order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RandomStream {
    pub seed: u64,
    pub stream_index: u64,
}

impl RandomStream {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        RandomStream { seed, stream_index }
    }

    /// A generator positioned at the start of this stream.
    pub fn rng(&self) -> StreamRng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_index);
        rng
    }

    /// Child stream `index` of this stream. Children of distinct parents, and
    /// distinct children of one parent, never share a generator state.
    pub fn fork(&self, index: u64) -> RandomStream {
        RandomStream {
            seed: splitmix64(self.seed ^ splitmix64(self.stream_index.wrapping_add(0x5851_f42d_4c95_7f2d))),
            stream_index: index,
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

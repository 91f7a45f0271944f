//! Physical-layer secrecy metrics for 5G link scenarios, with models of
//! attacker-staged weather and half-duplex RRC interception.

// `!(x >= 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod attack;
pub mod error;
pub mod propagation;
pub mod scenario;
pub mod secrecy;
pub mod simkit;
pub mod tech;
pub mod units;
pub mod weather;

pub use error::{Error, Result};
pub use secrecy::{capacity, secrecy_check, secrecy_rate, sinr, SecrecyMetrics, SinrInputs};
pub use units::{Decibel, DecibelMilliwatt, LinearRatio, RandomStream, Watts};

//! Technology-specific secrecy scenarios.

pub mod beam;
pub mod d2d;
pub mod iot;
pub mod mimo;
pub mod sharing;
pub mod udn;

pub use beam::{optimal_beamformer, BeamScenario, Beamformer};
pub use d2d::{d2d_secrecy, D2dOutcome, D2dScenario};
pub use iot::{iot_sop, IotScenario};
pub use mimo::{mimo_secrecy, MimoOutcome, MimoScenario};
pub use sharing::{sensing_probabilities, sharing_secrecy, SharingOutcome, SharingScenario};
pub use udn::{udn_average_secrecy, UdnEstimate, UdnField};

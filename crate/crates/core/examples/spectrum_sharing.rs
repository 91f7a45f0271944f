//! Cooperative spectrum sharing against a malicious primary transmitter.

use nrsec::tech::{sensing_probabilities, sharing_secrecy, SharingScenario};

fn main() -> nrsec::Result<()> {
    let base = SharingScenario::default();
    let (p_d, p_fa) = sensing_probabilities(&base.sensing)?;
    println!("detection {p_d:.4}, false alarm {p_fa:.4}");

    println!("chi,rate_secondary,rate_primary,secrecy_rate,secure");
    for chi in [0.0, 0.2, 0.4, 0.6, 0.8] {
        let out = sharing_secrecy(&SharingScenario { chi, ..base })?;
        println!(
            "{chi},{:.4},{:.4},{:.4},{}",
            out.rate_secondary, out.rate_primary, out.metrics.secrecy_rate, out.metrics.secure
        );
    }
    Ok(())
}

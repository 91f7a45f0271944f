//! Relay-assisted D2D pair sharing a cellular channel, with an eavesdropper.

use nrsec::tech::{d2d_secrecy, D2dScenario};

fn main() -> nrsec::Result<()> {
    println!("cooperation,sinr_bs,sinr_d2,sinr_eve");
    for l in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let out = d2d_secrecy(&D2dScenario { cooperation: l, ..D2dScenario::default() })?;
        println!("{l},{:.4},{:.4},{:.4}", out.sinr_bs, out.sinr_d2, out.sinr_eve);
    }

    let out = d2d_secrecy(&D2dScenario::default())?;
    println!("channel rate {:.4}, leaked {:.4}, secrecy {:.4}", out.rate, out.rate_eve, out.metrics.secrecy_rate);
    Ok(())
}

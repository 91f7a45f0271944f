//! MIMO link with transceiver coupling: secrecy rate as coupling power grows.

use nrsec::tech::{mimo_secrecy, MimoScenario};

fn main() -> nrsec::Result<()> {
    println!("coupling_power,sinr_main,sinr_eve,secrecy_rate,power_total");
    for coupling in [0.0, 0.1, 0.5, 1.0, 2.0] {
        let s = MimoScenario { coupling_power: coupling, ..MimoScenario::default() };
        let out = mimo_secrecy(&s)?;
        let m = out.metrics;
        println!("{coupling},{:.4},{:.4},{:.4},{:.3}", m.sinr_main, m.sinr_eve, m.secrecy_rate, out.budget.total);
    }
    Ok(())
}

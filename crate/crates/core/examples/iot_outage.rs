//! Secrecy outage of a scheduled IoT node with interfering neighbours.

use nrsec::tech::{iot_sop, IotScenario};
use nrsec::RandomStream;

fn main() -> nrsec::Result<()> {
    println!("eta,sop,stderr");
    for eta in [0.0, 0.05, 0.1, 0.2, 0.5] {
        let s = IotScenario { eta, ..IotScenario::default() };
        let est = iot_sop(&s, RandomStream::new(4, 0), 100_000)?;
        println!("{eta},{:.4},{:.4}", est.outage.mean, est.outage.stderr);
    }
    Ok(())
}

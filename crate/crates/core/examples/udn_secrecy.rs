//! Average secrecy rate in an ultra-dense network as eavesdroppers thicken.

use nrsec::tech::{udn_average_secrecy, UdnField};
use nrsec::RandomStream;

fn main() -> nrsec::Result<()> {
    println!("eve_density,rate_main,rate_eve,average_secrecy");
    for psi in [0.0, 1e-5, 5e-5, 1e-4, 5e-4] {
        let f = UdnField { eve_density: psi, ..UdnField::default() };
        let est = udn_average_secrecy(&f, RandomStream::new(21, 0), 2000)?;
        println!("{psi},{:.4},{:.4},{:.4}", est.rate_main.mean, est.rate_eve.mean, est.average_secrecy);
    }
    Ok(())
}

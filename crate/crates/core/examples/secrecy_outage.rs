//! Secrecy outage probability by Monte Carlo and by quadrature.

use nrsec::secrecy::{secrecy_outage_probability, sop_quadrature, SopInputs};
use nrsec::simkit::FadingDescriptor;
use nrsec::RandomStream;

fn main() -> nrsec::Result<()> {
    println!("target_rate,monte_carlo,stderr,quadrature,decomposed");
    for cr in [0.25, 0.5, 1.0, 2.0, 3.0] {
        let inputs = SopInputs {
            target_rate: cr,
            main: FadingDescriptor::rayleigh(20.0),
            eve: FadingDescriptor::rayleigh(2.0),
            bound_threshold: 5.0,
        };
        let mc = secrecy_outage_probability(&inputs, RandomStream::new(8, 0), 200_000)?;
        let q = sop_quadrature(&inputs)?;
        println!("{cr},{:.4},{:.4},{q:.4},{:.4}", mc.outage.mean, mc.outage.stderr, mc.decomposed());
    }
    Ok(())
}

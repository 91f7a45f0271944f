//! Minimum-noise beamformer under a unit-gain constraint.

use nrsec::tech::beam::{combiner_snr, constraint_residual, noise_power, optimal_beamformer, BeamScenario};

fn main() -> nrsec::Result<()> {
    let s = BeamScenario::default();
    let b = optimal_beamformer(&s)?;
    for (i, w) in b.weights.iter().enumerate() {
        println!("w[{i}] = {:.4}{:+.4}j", w.re, w.im);
    }
    println!("multiplier {:.4}", b.multiplier);
    println!("noise power {:.4}", noise_power(&b.weights, s.noise_variance));
    println!("constraint residual {:.1e}", constraint_residual(&b.weights, &s.channel));
    println!("snr {:.4} (combiner {:.4})", b.snr, combiner_snr(&b.weights, s.noise_variance, s.transmit_power));
    Ok(())
}

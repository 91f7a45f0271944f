//! Log-distance link budget at 28 GHz with and without log-normal shadowing.

use nrsec::propagation::{
    draw_shadowing, log_distance_received_power, received_power_shadowed, shadow_linear_mean_db, Intercept,
    PropagationParams, ScenarioClass,
};
use nrsec::{DecibelMilliwatt, RandomStream};

fn main() -> nrsec::Result<()> {
    let params = PropagationParams::new(28e9, 1.0, 3.0)
        .with_class(ScenarioClass::UrbanMicrocells)
        .with_intercept(Intercept::FreeSpace)
        .with_shadowing(0.0, 8.0);
    params.validate()?;
    let pt = DecibelMilliwatt(30.0);

    println!("distance_m,clear_dbm,shadowed_dbm");
    for (i, d) in [10.0, 25.0, 50.0, 100.0, 200.0].into_iter().enumerate() {
        let clear = log_distance_received_power(pt, &params, d)?;
        let shadow = draw_shadowing(&params, RandomStream::new(1, i as u64))?;
        let shadowed = received_power_shadowed(pt, &params, d, &shadow)?;
        println!("{d},{:.2},{:.2}", clear.0, shadowed.0);
    }
    println!("mean linear shadowing loss: {:.3} dB", shadow_linear_mean_db(&params));
    Ok(())
}

//! Rain and dust attenuation on a 28 GHz link.

use nrsec::propagation::{PropagationParams, ShadowSample};
use nrsec::weather::{
    received_power_with_weather, DustCondition, DustDepths, RainCoefficientTable, RainCondition, RainDepths, Weather,
};
use nrsec::DecibelMilliwatt;

fn main() -> nrsec::Result<()> {
    let table = RainCoefficientTable::default();
    let params = PropagationParams::new(28e9, 1.0, 2.0);
    let depths = RainDepths { scattering: 0.5, absorption: 0.5, refraction: 0.1, polarization: 0.1 };

    println!("rate_mm_h,attenuation_db,rx_dbm");
    for rate in [0.0, 5.0, 12.5, 25.0, 50.0, 100.0] {
        let rain = Weather::Rain(RainCondition { rate_mm_h: rate, elevation_deg: 5.0, tilt_deg: 45.0, depths });
        let att = rain.attenuation(&table, 28.0)?;
        let rx = received_power_with_weather(DecibelMilliwatt(30.0), &params, 100.0, &ShadowSample::fixed(0.0), att)?;
        println!("{rate},{:.3},{:.2}", att.0, rx.0);
    }

    let dust = Weather::Dust(DustCondition {
        attenuation_db_per_km: 6.0,
        depths: DustDepths { scattering: 0.3, absorption: 0.3, cross_polarization: 0.1 },
    });
    println!("dust storm: {:.2} dB", dust.attenuation(&table, 28.0)?.0);
    Ok(())
}

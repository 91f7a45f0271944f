//! Artificial rain aimed at the legitimate link: when does the attack pay off?

use nrsec::attack::ar_ad_favorability;
use nrsec::weather::{RainCoefficientTable, RainCondition, RainDepths, Weather};
use nrsec::SecrecyMetrics;

fn main() -> nrsec::Result<()> {
    let table = RainCoefficientTable::default();
    let baseline = SecrecyMetrics::from_sinrs(400.0, 20.0, 0.0);
    let depths = RainDepths { scattering: 0.4, absorption: 0.4, refraction: 0.1, polarization: 0.1 };

    println!("rate_mm_h,attenuation_db,capacity_user,secrecy_capacity,favorable");
    for rate in (0..=50).step_by(5) {
        let rain = Weather::Rain(RainCondition { rate_mm_h: f64::from(rate), elevation_deg: 10.0, tilt_deg: 45.0, depths });
        let att = rain.attenuation(&table, 28.0)?;
        let out = ar_ad_favorability(&baseline, att, 3.0, false)?;
        println!("{rate},{:.3},{:.4},{:.4},{}", att.0, out.capacity_user, out.secrecy_capacity, out.favorable);
    }
    Ok(())
}

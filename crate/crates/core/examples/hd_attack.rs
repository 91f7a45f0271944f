//! Half-duplex versus full-duplex RRC intruder: closed-form miss rates, a
//! simulated intercept rate and a short TTI trace.

use nrsec::attack::{miss_rates, rrc_hd_simulation, rrc_trace, write_trace, AttackParams};
use nrsec::RandomStream;

fn main() -> nrsec::Result<()> {
    println!("p_dl,p_total,miss_rate_fd,miss_rate_hd,hd_advantage");
    for p_dl in [0.3, 0.5, 0.7, 0.9] {
        let out = miss_rates(&AttackParams::new(p_dl, 0.6, 6, 2))?;
        println!("{p_dl},{:.4},{:.4},{:.4},{}", out.p_total, out.miss_rate_fd, out.miss_rate_hd, out.hd_advantage);
    }

    let p = AttackParams::new(0.7, 0.6, 6, 0);
    let sim = rrc_hd_simulation(&p, RandomStream::new(13, 0), 50_000)?;
    println!("intercept rate {:.4} ± {:.4}", sim.intercept_rate.mean, sim.intercept_rate.stderr);
    println!("interceptions per trial: {:?}", sim.histogram);

    let rows = rrc_trace(&AttackParams { intervals: 2, ..p }, RandomStream::new(13, 1), 1)?;
    write_trace(&rows, std::io::stdout().lock())
}

//! Periodic auto- and cross-correlation of two roots, and the factored form
//! of the cross-correlation.

use zckit::sequence::{autocorrelation, correlation_sweep, cross_correlation_factors};
use zckit::ZcParams;

fn main() -> zckit::Result<()> {
    let n = 31;
    let pu = ZcParams::new(n, 3)?;
    let pv = ZcParams::new(n, 7)?;

    let side_lobe = (1..n as i64)
        .map(|tau| autocorrelation(&pu, tau).norm())
        .fold(0.0, f64::max);
    println!(
        "R_33[0] = {:.3}, largest side lobe {side_lobe:.1e}",
        autocorrelation(&pu, 0)
    );

    let cross = correlation_sweep(&pu, &pv)?;
    let (lo, hi) = cross
        .iter()
        .map(|r| r.norm())
        .fold((f64::MAX, 0.0f64), |(lo, hi), m| (lo.min(m), hi.max(m)));
    println!(
        "|R_37[tau]| in [{lo:.12}, {hi:.12}], sqrt(N) = {:.12}",
        (n as f64).sqrt()
    );

    for tau in [0, 5, 17] {
        let f = cross_correlation_factors(&pu, &pv, tau)?;
        println!(
            "tau={tau:2}: direct {:.6}  factored {:.6}  (difference root {}, phase {})",
            cross[tau as usize],
            f.value(),
            f.difference.u(),
            f.difference.q()
        );
    }
    Ok(())
}

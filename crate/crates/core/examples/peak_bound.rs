//! Peak amplitude of every root against the logarithmic bound.

use zckit::continuous::{peak_bound, peak_bound_intermediate, LowpassSignal, Period};
use zckit::ZcParams;

fn main() -> zckit::Result<()> {
    let period = Period::new(1.0)?;
    for n in [7u64, 13, 139] {
        let mut best = (0, 0.0f64);
        for u in 1..n {
            let peak = LowpassSignal::new(&ZcParams::new(n, u)?, period)?.peak(64)?;
            if peak.amplitude > best.1 + 1e-12 {
                best = (u, peak.amplitude);
            }
        }
        println!(
            "N={n:3}: max peak {:.6} (u={}) <= {:.6} <= {:.6}",
            best.1,
            best.0,
            peak_bound_intermediate(n),
            peak_bound(n)
        );
    }
    Ok(())
}

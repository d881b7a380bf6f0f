//! Brute-force against closed-form timings for a few lengths.
//!
//!     cargo run --release --example benchmark

use zckit::bench::{run, MIN_ITERATIONS};
use zckit::PrimeModulus;

fn main() -> zckit::Result<()> {
    println!("     N   X[0] brute   X[0] closed   speedup   DFT naive   DFT closed   speedup");
    for n in [139u64, 839, 4093] {
        let r = run(PrimeModulus::new(n)?, MIN_ITERATIONS)?;
        println!(
            "{n:6} {:10.0}ns {:11.0}ns {:8.0}x {:9.0}ns {:10.0}ns {:8.0}x",
            r.zero_brute_ns,
            r.zero_closed_ns,
            r.zero_speedup,
            r.full_naive_ns,
            r.full_closed_ns,
            r.full_speedup
        );
    }
    Ok(())
}

//! Generate a sequence and write it as CSV.
//!
//!     cargo run --example generate -- 139 25 > zc.csv

use zckit::io::write_sequence_csv;
use zckit::{generate, ZcParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>());
    let n = args.next().transpose()?.unwrap_or(139);
    let u = args.next().transpose()?.unwrap_or(25);

    let params = ZcParams::new(n, u)?;
    let seq = generate(&params);
    eprintln!(
        "N={n} u={u}: first sample {}, last {}",
        seq[0],
        seq[seq.len() - 1]
    );
    write_sequence_csv(std::io::stdout().lock(), &seq)?;
    Ok(())
}

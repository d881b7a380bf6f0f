//! Band-limited waveform of a sequence: dense samples as CSV on stdout and a
//! summary on stderr.
//!
//!     cargo run --example lowpass_waveform -- 13 5 > wave.csv

use zckit::continuous::{lowpass_autocorr, LowpassSignal, Period, WaveformGrid};
use zckit::io::write_waveform_csv;
use zckit::{generate, ZcParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>());
    let n = args.next().transpose()?.unwrap_or(13);
    let u = args.next().transpose()?.unwrap_or(5);

    let params = ZcParams::new(n, u)?;
    let period = Period::new(1e-3)?;
    let signal = LowpassSignal::new(&params, period)?;
    let grid = WaveformGrid::new(period, 16, n)?;
    let wave = signal.sample(&grid)?;

    let x = generate(&params);
    let chip_error = wave
        .chip_samples()
        .zip(x.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    eprintln!("mean power {:.12}", wave.mean_power());
    eprintln!("chip-instant error {chip_error:.1e}");
    eprintln!(
        "R(T/(2N)) = {:.6}",
        lowpass_autocorr(&params, period.seconds() / (2 * n) as f64, period)?.re
    );
    write_waveform_csv(std::io::stdout().lock(), &wave)?;
    Ok(())
}

//! Integer-exponent form of the spectrum for N = 3 mod 4: every coefficient
//! is sqrt(N)·exp(jπχ/2N) for an integer χ.

use zckit::dft::{chi_exponent, dft_chi_form, dft_closed};
use zckit::PrimeModulus;

fn main() -> zckit::Result<()> {
    let m = PrimeModulus::new(11)?;
    let u = 4;
    let closed = dft_closed(m, u)?;
    for k in 0..m.value() {
        let chi = chi_exponent(m, u, k)?;
        let x = dft_chi_form(m, u, k)?;
        println!(
            "k={k:2} chi={chi:2}  {:>+.6}  |diff| {:.1e}",
            x,
            (x - closed[k as usize]).norm()
        );
    }
    match chi_exponent(PrimeModulus::new(13)?, 1, 0) {
        Err(e) => println!("N=13: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

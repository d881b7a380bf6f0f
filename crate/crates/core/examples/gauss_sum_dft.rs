//! Zero-frequency coefficient from the generalized Gauss sum, and the full
//! spectrum built from it.

use zckit::dft::{compare, dft_closed, dft_naive, dft_zero_brute, dft_zero_closed, rotation_angle};
use zckit::number_theory::{eta_coefficient, legendre_symbol, quadratic_gauss_sum};
use zckit::{generate, PrimeModulus, ZcParams};

fn main() -> zckit::Result<()> {
    let m = PrimeModulus::new(7)?;
    println!(
        "g_7 = {:.6}, eta = {}",
        quadratic_gauss_sum(m),
        eta_coefficient(m)
    );
    for u in 1..7 {
        println!(
            "u={u}: X[0] closed {:.10}  brute {:.10}  l(2u)={:+}  rotation {:.1} deg",
            dft_zero_closed(m, u)?,
            dft_zero_brute(m, u)?,
            legendre_symbol(2 * u as i64, m),
            rotation_angle(m, u).to_degrees()
        );
    }

    let m = PrimeModulus::new(839)?;
    let naive = dft_naive(&generate(&ZcParams::new(839, 25)?));
    let closed = dft_closed(m, 25)?;
    let (abs, rel) = compare(&closed.coefficients, &naive.coefficients);
    println!("N=839 u=25 full spectrum: max abs error {abs:.2e}, rel {rel:.2e}");
    Ok(())
}

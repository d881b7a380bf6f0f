//! DFT of prime-length ZC sequences.
//!
//! For an odd prime `N` the DFT of `x_u[n] = exp(-jπ·u·n(n+1)/N)` is
//! `X_u[k] = X_u[0]·conj(x_u[u⁻¹k])`, and the zero-frequency coefficient has
//! the closed form
//!
//! ```text
//! X_u[0] = ℓ(2u) · η · √N · exp(j2π·u·α³ / N),    α = (N + 1) / 2
//! ```
//!
//! with `ℓ` the Legendre symbol and `η = 1` or `-j` for `N ≡ 1` or `3 (mod 4)`.
//! Evaluating it costs one symbol lookup, one square root and one complex
//! exponential regardless of `N`. All phase integers (`u·α³ mod N`, the χ
//! exponent mod `4N`, modulation exponents mod `2N`) are reduced exactly
//! before conversion to `f64`.
//!
//! [`dft_naive`] is the `O(N²)` definition and serves as the oracle for
//! everything else in this module.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Result, ZcError};
use crate::number_theory::{
    eta_coefficient, legendre_of_residue, mod_inverse, mul_mod, reduce, unit_phase, LegendreTable,
    PrimeModulus,
};
use crate::sequence::{generate, sample_at, ComplexSequence, Origin, ZcParams};

/// How a set of DFT coefficients was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DftMethod {
    Naive,
    ClosedForm,
    ChiForm,
}

impl DftMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            DftMethod::Naive => "naive",
            DftMethod::ClosedForm => "closed",
            DftMethod::ChiForm => "chi",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DftResult {
    pub coefficients: ComplexSequence,
    pub method: DftMethod,
}

impl DftResult {
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }
}

impl std::ops::Index<usize> for DftResult {
    type Output = Complex64;

    fn index(&self, k: usize) -> &Complex64 {
        &self.coefficients[k]
    }
}

/// `exp(-j2πr/N)` for `r = 0..N`.
fn twiddles(len: usize) -> Vec<Complex64> {
    (0..len as i128)
        .map(|r| unit_phase(-2 * r, len as u64))
        .collect()
}

/// Direct `O(N²)` evaluation of `X[k] = Σ_n x[n]·exp(-j2πkn/N)`.
pub fn dft_naive(x: &ComplexSequence) -> DftResult {
    let len = x.len();
    let w = twiddles(len);
    let coefficients = (0..len)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(n, xn)| xn * w[(k * n) % len])
                .sum()
        })
        .collect();
    DftResult {
        coefficients: ComplexSequence::new(coefficients, Origin::Dft),
        method: DftMethod::Naive,
    }
}

/// Direct inverse, `x[n] = (1/N)·Σ_k X[k]·exp(j2πkn/N)`.
pub fn idft_naive(spectrum: &ComplexSequence) -> ComplexSequence {
    let len = spectrum.len();
    let w = twiddles(len);
    let scale = 1.0 / len as f64;
    let samples = (0..len)
        .map(|n| {
            spectrum
                .iter()
                .enumerate()
                .map(|(k, xk)| xk * w[(k * n) % len].conj())
                .sum::<Complex64>()
                * scale
        })
        .collect();
    ComplexSequence::new(samples, Origin::Imported)
}

fn check_root(m: PrimeModulus, u: u64) -> Result<()> {
    if u == 0 || u >= m.value() {
        return Err(ZcError::InvalidRoot { u, n_zc: m.value() });
    }
    Ok(())
}

/// `X_u[0] = Σ_n x_u[n]` summed term by term, `O(N)`.
pub fn dft_zero_brute(m: PrimeModulus, u: u64) -> Result<Complex64> {
    let params = ZcParams::new(m.value(), u)?;
    Ok((0..m.value() as i64).map(|n| sample_at(&params, n)).sum())
}

/// `u·α³ mod N`, the number of rotation steps of `2π/N`.
pub fn rotation_steps(m: PrimeModulus, u: u64) -> u64 {
    let modulus = m.value();
    let alpha = m.half() % modulus;
    let cube = mul_mod(mul_mod(alpha, alpha, modulus), alpha, modulus);
    mul_mod(u % modulus, cube, modulus)
}

fn zero_closed(m: PrimeModulus, u: u64, legendre_2u: i8) -> Complex64 {
    let modulus = m.value();
    let base = eta_coefficient(m) * (f64::from(legendre_2u) * (modulus as f64).sqrt());
    base * unit_phase(2 * rotation_steps(m, u) as i128, modulus)
}

/// Zero-frequency coefficient in `O(1)`, with `ℓ(2u)` from Euler's criterion.
pub fn dft_zero_closed(m: PrimeModulus, u: u64) -> Result<Complex64> {
    check_root(m, u)?;
    Ok(zero_closed(
        m,
        u,
        legendre_of_residue(mul_mod(2, u, m.value()), m),
    ))
}

/// Zero-frequency coefficient with `ℓ(2u)` read from a prebuilt table.
pub fn dft_zero_closed_with(table: &LegendreTable, u: u64) -> Result<Complex64> {
    let m = table.modulus();
    check_root(m, u)?;
    Ok(zero_closed(
        m,
        u,
        table.lookup_residue(mul_mod(2, u, m.value())),
    ))
}

/// Full DFT in `O(N)`: one closed-form `X_u[0]` and one pass of
/// `conj(x_u[u⁻¹k])`.
pub fn dft_closed(m: PrimeModulus, u: u64) -> Result<DftResult> {
    let zero = dft_zero_closed(m, u)?;
    Ok(spread_zero(m, u, zero))
}

pub fn dft_closed_with(table: &LegendreTable, u: u64) -> Result<DftResult> {
    let zero = dft_zero_closed_with(table, u)?;
    Ok(spread_zero(table.modulus(), u, zero))
}

fn spread_zero(m: PrimeModulus, u: u64, zero: Complex64) -> DftResult {
    let modulus = m.value();
    let params = ZcParams::new(modulus, u).expect("root already checked");
    let u_inv = mod_inverse(u as i64, m).expect("root already checked");
    let coefficients = (0..modulus)
        .map(|k| zero * sample_at(&params, mul_mod(u_inv, k, modulus) as i64).conj())
        .collect();
    DftResult {
        coefficients: ComplexSequence::new(coefficients, Origin::Dft),
        method: DftMethod::ClosedForm,
    }
}

/// The integer χ in `X_u[k] = √N·exp(jπχ / 2N)`, valid for `N ≡ 3 (mod 4)`.
///
/// `χ = [4u·α³ - ℓ(2u)·N + 2k(w·k + 1)] mod 4N` where `w` is the *odd*
/// representative of `u⁻¹` in `1..2N`. With an even representative the last
/// term is off by `2N` (a sign flip) whenever `k` is odd.
pub fn chi_exponent(m: PrimeModulus, u: u64, k: u64) -> Result<u64> {
    if !m.is_three_mod_four() {
        return Err(ZcError::WrongResidueClass(m.value()));
    }
    check_root(m, u)?;
    let modulus = m.value();
    if k >= modulus {
        return Err(ZcError::IndexOutOfRange { k, n_zc: modulus });
    }
    let four_n = 4 * modulus as i128;
    let two_n = 2 * modulus;
    let mut w = mod_inverse(u as i64, m)?;
    if w % 2 == 0 {
        w += modulus;
    }
    // 2k(wk + 1) mod 4N = 2·(k(wk + 1) mod 2N)
    let tail = mul_mod(k, (mul_mod(w, k, two_n) + 1) % two_n, two_n);
    let chi = 4 * rotation_steps(m, u) as i128
        - i128::from(legendre_of_residue(mul_mod(2, u, modulus), m)) * modulus as i128
        + 2 * tail as i128;
    Ok(chi.rem_euclid(four_n) as u64)
}

/// A single DFT coefficient from its χ exponent.
pub fn dft_chi_form(m: PrimeModulus, u: u64, k: u64) -> Result<Complex64> {
    let chi = chi_exponent(m, u, k)?;
    let modulus = m.value();
    Ok((modulus as f64).sqrt() * unit_phase(chi as i128, 2 * modulus))
}

/// All coefficients via [`dft_chi_form`].
pub fn dft_chi(m: PrimeModulus, u: u64) -> Result<DftResult> {
    let coefficients = (0..m.value())
        .map(|k| dft_chi_form(m, u, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(DftResult {
        coefficients: ComplexSequence::new(coefficients, Origin::Dft),
        method: DftMethod::ChiForm,
    })
}

/// `exp(-jπ·k(u⁻¹ - 1)(N + 1) / N)`, the factor in
/// `conj(x_u[u⁻¹k]) = conj(x_{u⁻¹}[k]) · factor`.
pub fn dual_root_modulation(m: PrimeModulus, u: u64, k: u64) -> Result<Complex64> {
    check_root(m, u)?;
    let modulus = m.value();
    let two_n = 2 * modulus;
    let u_inv = mod_inverse(u as i64, m)?;
    let exponent = mul_mod(
        mul_mod(k % two_n, (u_inv - 1) % two_n, two_n),
        (modulus + 1) % two_n,
        two_n,
    );
    Ok(unit_phase(-(exponent as i128), modulus))
}

/// `X_u[0]` for every root `u = 1..N-1`, sharing one Legendre table.
pub fn dft_zero_table(m: PrimeModulus) -> Vec<Complex64> {
    let table = LegendreTable::build(m);
    (1..m.value())
        .map(|u| dft_zero_closed_with(&table, u).expect("root in range"))
        .collect()
}

/// Counterclockwise angle of the closed-form rotation, in `[0, 2π)`.
pub fn rotation_angle(m: PrimeModulus, u: u64) -> f64 {
    2.0 * PI * rotation_steps(m, u) as f64 / m.value() as f64
}

/// Largest absolute and relative coefficient-wise error of `got` against
/// `reference`. Relative error is taken against `max |reference[k]|`.
pub fn compare(got: &ComplexSequence, reference: &ComplexSequence) -> (f64, f64) {
    let scale = reference.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let max_abs = got
        .iter()
        .zip(reference.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let max_rel = if scale > 0.0 {
        max_abs / scale
    } else {
        max_abs
    };
    (max_abs, max_rel)
}

/// Convenience: the reference naive DFT of `generate(N, u)`.
pub fn dft_naive_of(m: PrimeModulus, u: u64) -> Result<DftResult> {
    Ok(dft_naive(&generate(&ZcParams::new(m.value(), u)?)))
}

/// Residue of `n` mod `N` as used for negative frequencies (`X[-k] = X[N-k]`).
pub fn wrap_index(k: i64, n_zc: u64) -> usize {
    reduce(k as i128, n_zc) as usize
}

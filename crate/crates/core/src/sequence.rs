//! Zadoff-Chu sequence generation and periodic correlation.
//!
//! `x_u[n] = exp(-jπ·u·n(n + c + 2q) / N)` with `c = N mod 2`. The integer
//! `u·n(n + c + 2q)` is reduced modulo `2N` before it ever becomes a float, so
//! every sample carries at most one rounding from the final `sin_cos`. Summing
//! phases in floating point instead destroys the exact zero autocorrelation
//! at lengths around a thousand.

use num_complex::Complex64;

use crate::error::{Result, ZcError};
use crate::number_theory::{gcd, inverse_mod, mul_mod, reduce, unit_phase};

/// Largest supported period; keeps `2N` and its products inside `u128`.
pub const MAX_LENGTH: u64 = 1 << 62;

/// Period, root and phase parameter of a ZC sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZcParams {
    n_zc: u64,
    u: u64,
    q: i64,
}

impl ZcParams {
    pub fn new(n_zc: u64, u: u64) -> Result<Self> {
        Self::with_q(n_zc, u, 0)
    }

    pub fn with_q(n_zc: u64, u: u64, q: i64) -> Result<Self> {
        if !(3..=MAX_LENGTH).contains(&n_zc) {
            return Err(ZcError::InvalidLength(n_zc));
        }
        if u == 0 || u >= n_zc || gcd(u, n_zc) != 1 {
            return Err(ZcError::InvalidRoot { u, n_zc });
        }
        Ok(Self { n_zc, u, q })
    }

    #[inline]
    pub fn n_zc(&self) -> u64 {
        self.n_zc
    }

    #[inline]
    pub fn u(&self) -> u64 {
        self.u
    }

    #[inline]
    pub fn q(&self) -> i64 {
        self.q
    }

    /// Parity of the period, `N mod 2`.
    #[inline]
    pub fn c(&self) -> u64 {
        self.n_zc % 2
    }

    /// Same sequence family with a different phase parameter.
    pub fn with_phase(self, q: i64) -> Self {
        Self { q, ..self }
    }

    /// `u·n(n + c + 2q) mod 2N`; `n` may be any integer.
    pub(crate) fn phase_exponent(&self, n: i128) -> u64 {
        let n_zc = self.n_zc;
        let two_n = 2 * n_zc;
        let n = reduce(n, n_zc);
        let q = reduce(self.q as i128, n_zc);
        let tail = (n + self.c() + 2 * q) % two_n;
        mul_mod(mul_mod(self.u, n, two_n), tail, two_n)
    }
}

/// Where a sequence came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Generated,
    Dft,
    Correlation,
    Imported,
}

/// One period of a discrete complex sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSequence {
    samples: Vec<Complex64>,
    origin: Origin,
}

impl ComplexSequence {
    pub fn new(samples: Vec<Complex64>, origin: Origin) -> Self {
        Self { samples, origin }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex64> {
        self.samples.iter()
    }
}

impl std::ops::Index<usize> for ComplexSequence {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.samples[i]
    }
}

/// One full period of `x_u[n]`.
pub fn generate(params: &ZcParams) -> ComplexSequence {
    let samples = (0..params.n_zc as i128)
        .map(|n| sample_from_exponent(params.phase_exponent(n), params.n_zc))
        .collect();
    ComplexSequence::new(samples, Origin::Generated)
}

/// `x_u[n]` for any integer `n`; the index is reduced modulo `N` first.
pub fn sample_at(params: &ZcParams, n: i64) -> Complex64 {
    sample_from_exponent(params.phase_exponent(n as i128), params.n_zc)
}

#[inline]
fn sample_from_exponent(exponent: u64, n_zc: u64) -> Complex64 {
    unit_phase(-(exponent as i128), n_zc)
}

/// `Σ_n x_u[n]`.
pub fn sequence_sum(params: &ZcParams) -> Complex64 {
    generate(params).iter().sum()
}

/// `R_{u,u}[τ] = Σ_n x_u[n]·conj(x_u[n + τ])`.
pub fn autocorrelation(params: &ZcParams, tau: i64) -> Complex64 {
    correlate(params, params, tau)
}

/// `R_{u,v}[τ] = Σ_n x_u[n]·conj(x_v[n + τ])`. Both sequences must share
/// the period; their phase parameters may differ.
pub fn cross_correlation(params_u: &ZcParams, params_v: &ZcParams, tau: i64) -> Result<Complex64> {
    if params_u.n_zc != params_v.n_zc {
        return Err(ZcError::LengthMismatch(params_u.n_zc, params_v.n_zc));
    }
    Ok(correlate(params_u, params_v, tau))
}

fn correlate(a: &ZcParams, b: &ZcParams, tau: i64) -> Complex64 {
    let x = generate(a);
    let y = generate(b);
    let n_zc = a.n_zc;
    let shift = reduce(tau as i128, n_zc) as usize;
    x.iter()
        .enumerate()
        .map(|(n, xn)| xn * y[(n + shift) % n_zc as usize].conj())
        .sum()
}

/// Every lag `τ = 0..N-1` of the periodic cross-correlation.
pub fn correlation_sweep(params_u: &ZcParams, params_v: &ZcParams) -> Result<ComplexSequence> {
    if params_u.n_zc != params_v.n_zc {
        return Err(ZcError::LengthMismatch(params_u.n_zc, params_v.n_zc));
    }
    let x = generate(params_u);
    let y = generate(params_v);
    let len = x.len();
    let lags = (0..len)
        .map(|tau| (0..len).map(|n| x[n] * y[(n + tau) % len].conj()).sum())
        .collect();
    Ok(ComplexSequence::new(lags, Origin::Correlation))
}

/// Pieces of the factorization `R_{u,v}[τ] = conj(x_v[τ])·Σ_n x_{u-v}[n]`,
/// where the difference sequence carries its own phase parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossFactorization {
    /// `conj(x_v[τ])`.
    pub prefactor: Complex64,
    /// Root `u - v mod N` with phase `(u - v)⁻¹·(u·q_u - v·τ - v·q_v) mod N`.
    pub difference: ZcParams,
}

impl CrossFactorization {
    pub fn value(&self) -> Complex64 {
        self.prefactor * sequence_sum(&self.difference)
    }
}

/// Factored cross-correlation; needs `gcd(u - v, N) = 1`.
pub fn cross_correlation_factors(
    params_u: &ZcParams,
    params_v: &ZcParams,
    tau: i64,
) -> Result<CrossFactorization> {
    let n_zc = params_u.n_zc;
    if n_zc != params_v.n_zc {
        return Err(ZcError::LengthMismatch(n_zc, params_v.n_zc));
    }
    let root = reduce(params_u.u as i128 - params_v.u as i128, n_zc);
    let zeta = inverse_mod(root, n_zc).ok_or(ZcError::InvalidRoot { u: root, n_zc })?;
    let (u, v) = (params_u.u as i128, params_v.u as i128);
    let inner = u * params_u.q as i128 - v * tau as i128 - v * params_v.q as i128;
    let q = mul_mod(zeta, reduce(inner, n_zc), n_zc) as i64;
    Ok(CrossFactorization {
        prefactor: sample_at(params_v, tau).conj(),
        difference: ZcParams::with_q(n_zc, root, q)?,
    })
}

/// `x_u^{(q)}[n] = rotation · x_u[n + shift]`, with `x_u` the `q = 0`
/// sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QShift {
    pub shift: i64,
    pub rotation: Complex64,
}

pub fn q_shift_decompose(params: &ZcParams) -> QShift {
    let n_zc = params.n_zc;
    let two_n = 2 * n_zc;
    let q = reduce(params.q as i128, two_n);
    let exponent = mul_mod(mul_mod(params.u, q, two_n), (q + params.c()) % two_n, two_n);
    QShift {
        shift: params.q,
        rotation: unit_phase(exponent as i128, n_zc),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn params(n: u64, u: u64) -> ZcParams {
        ZcParams::new(n, u).unwrap()
    }

    fn odd_primes(limit: u64) -> impl Iterator<Item = u64> {
        (3..=limit).filter(|&n| crate::number_theory::is_odd_prime(n))
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn params_validation() {
        assert_eq!(
            ZcParams::new(6, 2),
            Err(ZcError::InvalidRoot { u: 2, n_zc: 6 })
        );
        assert!(ZcParams::new(7, 0).is_err());
        assert!(ZcParams::new(7, 7).is_err());
        assert_eq!(ZcParams::new(2, 1), Err(ZcError::InvalidLength(2)));
        assert_eq!(params(9, 2).c(), 1);
        assert_eq!(params(10, 3).c(), 0);
    }

    #[test]
    fn generate_examples() {
        let x = generate(&params(5, 4));
        assert_eq!(x[0], Complex64::new(1.0, 0.0));

        let x = generate(&params(7, 1));
        assert_eq!(x.len(), 7);
        let expected = Complex64::from_polar(1.0, -12.0 * PI / 7.0);
        assert!(close(x[3], expected, 1e-15));
        assert!(close(x[6], Complex64::new(1.0, 0.0), 1e-15));
    }

    #[test]
    fn generate_matches_naive_float_phase_at_small_n() {
        let p = ZcParams::with_q(139, 25, 0).unwrap();
        let x = generate(&p);
        // reference values from an independent float evaluation
        let expected = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.426597, -0.904442),
            Complex64::new(-0.969254, 0.246062),
            Complex64::new(0.878907, -0.476993),
            Complex64::new(0.300406, 0.953811),
        ];
        for (got, want) in x.iter().zip(expected) {
            assert!(close(*got, want, 1e-5));
        }
    }

    #[test]
    fn sample_at_examples() {
        let p = params(7, 1);
        assert_eq!(sample_at(&p, 7), sample_at(&p, 0));
        assert_eq!(sample_at(&p, 0), Complex64::new(1.0, 0.0));
        assert_eq!(sample_at(&p, -1), sample_at(&p, 6));
        let p = params(5, 4);
        assert_eq!(sample_at(&p, 12), generate(&p)[2]);
    }

    #[test]
    fn unimodular_for_composite_and_even_lengths() {
        for (n, u) in [(9, 2), (10, 3), (12, 5), (839, 25), (1193, 7)] {
            for s in generate(&ZcParams::with_q(n, u, 3).unwrap()).iter() {
                assert!((s.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn autocorrelation_examples() {
        let p = params(7, 3);
        assert!(close(
            autocorrelation(&p, 0),
            Complex64::new(7.0, 0.0),
            1e-12
        ));
        assert!(autocorrelation(&p, 3).norm() < 1e-12);
        assert!(close(
            autocorrelation(&p, 14),
            Complex64::new(7.0, 0.0),
            1e-12
        ));
        assert!(autocorrelation(&p, -3).norm() < 1e-12);
    }

    #[test]
    fn autocorrelation_is_delta_for_all_small_primes() {
        for n in odd_primes(139) {
            let tol = 1e-9 * n as f64;
            for u in 1..n {
                let lags = correlation_sweep(&params(n, u), &params(n, u)).unwrap();
                assert!((lags[0] - Complex64::new(n as f64, 0.0)).norm() <= tol);
                for r in &lags.samples()[1..] {
                    assert!(r.norm() <= tol, "N={n} u={u}");
                }
            }
        }
    }

    #[test]
    fn autocorrelation_stays_sharp_at_prach_lengths() {
        for (n, u) in [(839, 129), (1193, 1192)] {
            let p = params(n, u);
            for tau in [1, 2, 419, n as i64 - 1] {
                assert!(autocorrelation(&p, tau).norm() <= 1e-9 * n as f64);
            }
        }
    }

    #[test]
    fn cross_correlation_examples() {
        let sqrt7 = 7f64.sqrt();
        let (a, b) = (params(7, 1), params(7, 3));
        assert!((cross_correlation(&a, &b, 0).unwrap().norm() - sqrt7).abs() < 1e-12);
        assert!((cross_correlation(&a, &b, 5).unwrap().norm() - sqrt7).abs() < 1e-12);
        let c = params(7, 4);
        assert!(close(
            cross_correlation(&c, &c, 0).unwrap(),
            Complex64::new(7.0, 0.0),
            1e-12
        ));
        assert_eq!(
            cross_correlation(&a, &params(11, 3), 0),
            Err(ZcError::LengthMismatch(7, 11))
        );
    }

    #[test]
    fn cross_correlation_is_flat_for_all_small_primes() {
        for n in odd_primes(139) {
            let sqrt_n = (n as f64).sqrt();
            for u in 1..n {
                for v in (1..n).filter(|&v| v != u) {
                    let lags = correlation_sweep(&params(n, u), &params(n, v)).unwrap();
                    for r in lags.iter() {
                        assert!(
                            (r.norm() - sqrt_n).abs() <= 1e-8 * sqrt_n,
                            "N={n} u={u} v={v}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn factorization_matches_direct_sum() {
        for (n, qs) in [
            (7u64, [0i64, 3]),
            (13, [-2, 5]),
            (15, [1, 0]),
            (31, [4, -9]),
        ] {
            for u in 1..n {
                for v in 1..n {
                    let (Ok(pu), Ok(pv)) =
                        (ZcParams::with_q(n, u, qs[0]), ZcParams::with_q(n, v, qs[1]))
                    else {
                        continue;
                    };
                    if cross_correlation_factors(&pu, &pv, 0).is_err() {
                        continue;
                    }
                    for tau in [-1i64, 0, 2, n as i64 + 3] {
                        let f = cross_correlation_factors(&pu, &pv, tau).unwrap();
                        let direct = cross_correlation(&pu, &pv, tau).unwrap();
                        assert!(
                            (f.value() - direct).norm() <= 1e-9 * direct.norm(),
                            "N={n} u={u} v={v} tau={tau}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn factorization_requires_coprime_difference() {
        let (a, b) = (params(9, 1), params(9, 4));
        assert!(cross_correlation_factors(&a, &b, 0).is_err());
        assert!(cross_correlation_factors(&a, &a, 0).is_err());
    }

    #[test]
    fn sum_magnitude_is_sqrt_n_for_every_coprime_odd_length() {
        for n in (3..200u64).step_by(2) {
            for u in (1..n).filter(|&u| gcd(u, n) == 1) {
                let s = sequence_sum(&params(n, u)).norm();
                let sqrt_n = (n as f64).sqrt();
                assert!((s - sqrt_n).abs() <= 1e-9 * sqrt_n, "N={n} u={u}");
            }
        }
    }

    #[test]
    fn q_shift_examples() {
        let d = q_shift_decompose(&params(7, 1));
        assert_eq!(d.shift, 0);
        assert!(close(d.rotation, Complex64::new(1.0, 0.0), 1e-15));

        let d = q_shift_decompose(&ZcParams::with_q(7, 1, 7).unwrap());
        assert_eq!(d.shift, 7);
        assert!(close(d.rotation, Complex64::new(1.0, 0.0), 1e-15));

        let d = q_shift_decompose(&ZcParams::with_q(5, 2, 1).unwrap());
        assert_eq!(d.shift, 1);
        assert!(close(
            d.rotation,
            Complex64::from_polar(1.0, 4.0 * PI / 5.0),
            1e-15
        ));
    }

    proptest! {
        #[test]
        fn periodicity_is_exact(
            pick in 0usize..64,
            u_seed in 1u64..10_000,
            q in -50i64..50,
            n in -5_000i64..5_000,
            k in -10i64..=10,
        ) {
            let lengths = [5u64, 7, 9, 10, 12, 13, 15, 139, 839];
            let len = lengths[pick % lengths.len()];
            let u = (1..len).cycle().skip(u_seed as usize % len as usize)
                .find(|&u| gcd(u, len) == 1).unwrap();
            let p = ZcParams::with_q(len, u, q).unwrap();
            prop_assert_eq!(sample_at(&p, n + k * len as i64), sample_at(&p, n));
        }

        #[test]
        fn q_shift_identity_holds(
            pick in 0usize..16,
            u_seed in 1u64..1_000,
            q in -300i64..300,
        ) {
            let lengths = [5u64, 7, 9, 13, 15, 31, 139];
            let len = lengths[pick % lengths.len()];
            let u = (1..len).cycle().skip(u_seed as usize % len as usize)
                .find(|&u| gcd(u, len) == 1).unwrap();
            let p = ZcParams::with_q(len, u, q).unwrap();
            let base = p.with_phase(0);
            let d = q_shift_decompose(&p);
            let x = generate(&p);
            for n in 0..len as i64 {
                let rebuilt = d.rotation * sample_at(&base, n + d.shift);
                prop_assert!((x[n as usize] - rebuilt).norm() < 1e-12);
            }
        }
    }
}

//! Self-check of every identity the library relies on, for one length.

use num_complex::Complex64;
use serde::Serialize;

use crate::continuous::{
    lowpass_autocorr, lowpass_autocorr_numeric, lowpass_crosscorr, peak_bound,
    peak_bound_intermediate, LowpassSignal, Period, WaveformGrid,
};
use crate::dft::{
    compare, dft_chi, dft_closed_with, dft_naive, dft_zero_brute, dft_zero_closed_with,
    dual_root_modulation,
};
use crate::error::{Result, ZcError};
use crate::io::SCHEMA_VERSION;
use crate::number_theory::{gcd, legendre_symbol, mod_inverse, LegendreTable, PrimeModulus};
use crate::sequence::{
    autocorrelation, cross_correlation, cross_correlation_factors, generate, q_shift_decompose,
    sample_at, sequence_sum, ZcParams, MAX_LENGTH,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl Check {
    fn measured(name: &str, max_error: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            max_error,
            tolerance,
            pass: max_error <= tolerance,
            skipped: None,
        }
    }

    fn skipped(name: &str, tolerance: f64, reason: &str) -> Self {
        Self {
            name: name.into(),
            max_error: 0.0,
            tolerance,
            pass: true,
            skipped: Some(reason.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub n_zc: u64,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn roots(n_zc: u64) -> Vec<ZcParams> {
    (1..n_zc)
        .filter(|&u| gcd(u, n_zc) == 1)
        .map(|u| ZcParams::new(n_zc, u).expect("coprime root"))
        .collect()
}

fn max_of(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, f64::max)
}

/// Lags checked for every root pair; all lags are covered for `u = 1`.
fn probe_lags(n_zc: u64) -> Vec<i64> {
    let mut lags = vec![0, 1, (n_zc / 2) as i64, n_zc as i64 - 1];
    lags.dedup();
    lags
}

pub fn verify(n_zc: u64) -> Result<VerifyReport> {
    if !(3..=MAX_LENGTH).contains(&n_zc) {
        return Err(ZcError::InvalidLength(n_zc));
    }
    let all = roots(n_zc);
    let nf = n_zc as f64;
    let sqrt_n = nf.sqrt();
    let mut checks = Vec::new();

    checks.push(Check::measured(
        "unimodular",
        max_of(
            all.iter()
                .flat_map(|p| generate(p).into_samples())
                .map(|x| (x.norm() - 1.0).abs()),
        ),
        1e-12,
    ));

    checks.push(Check::measured(
        "periodic",
        max_of(all.iter().flat_map(|p| {
            (0..n_zc as i64).flat_map(move |n| {
                [-3i64, 1, 7].map(|k| (sample_at(p, n + k * n_zc as i64) - sample_at(p, n)).norm())
            })
        })),
        1e-12,
    ));

    checks.push(Check::measured(
        "autocorrelation_delta",
        max_of(all.iter().flat_map(|p| {
            (0..n_zc as i64).map(move |tau| {
                let ideal = if tau == 0 { nf } else { 0.0 };
                (autocorrelation(p, tau) - ideal).norm() / nf
            })
        })),
        1e-9,
    ));

    let lags = probe_lags(n_zc);
    let sequences: Vec<Vec<Complex64>> = all.iter().map(|p| generate(p).into_samples()).collect();
    let len = n_zc as usize;
    let mut flat = 0.0f64;
    let mut factored = 0.0f64;
    for (pu, xu) in all.iter().zip(&sequences) {
        for (pv, xv) in all.iter().zip(&sequences) {
            if pu.u() == pv.u() || gcd((pu.u() + n_zc - pv.u()) % n_zc, n_zc) != 1 {
                continue;
            }
            let sweep: Vec<i64> = if pv.u() == 1 {
                (0..n_zc as i64).collect()
            } else {
                lags.clone()
            };
            for &tau in &sweep {
                let shift = tau as usize;
                let direct: Complex64 =
                    (0..len).map(|n| xu[n] * xv[(n + shift) % len].conj()).sum();
                flat = flat.max((direct.norm() - sqrt_n).abs() / sqrt_n);
                let via = cross_correlation_factors(pu, pv, tau)?.value();
                factored = factored.max((via - direct).norm() / sqrt_n);
            }
        }
    }
    let (p1, p2) = (&all[0], &all[all.len() - 1]);
    for tau in [0, 1, n_zc as i64 - 1] {
        let direct = (0..len)
            .map(|n| sequences[0][n] * sequences[all.len() - 1][(n + tau as usize) % len].conj())
            .sum::<Complex64>();
        factored = factored.max((cross_correlation(p1, p2, tau)? - direct).norm() / sqrt_n);
    }
    checks.push(Check::measured("cross_correlation_flat", flat, 1e-9));
    checks.push(Check::measured(
        "cross_correlation_factorization",
        factored,
        1e-9,
    ));

    checks.push(Check::measured(
        "sum_magnitude",
        max_of(
            all.iter()
                .map(|p| (sequence_sum(p).norm() - sqrt_n).abs() / sqrt_n),
        ),
        1e-9,
    ));

    checks.push(Check::measured(
        "phase_shift",
        max_of(all.iter().flat_map(|p| {
            [1i64, -2, 5].into_iter().flat_map(move |q| {
                let shifted = p.with_phase(q);
                let d = q_shift_decompose(&shifted);
                (0..n_zc as i64).map(move |n| {
                    (sample_at(&shifted, n) - d.rotation * sample_at(p, n + d.shift)).norm()
                })
            })
        })),
        1e-12,
    ));

    let Ok(m) = PrimeModulus::new(n_zc) else {
        for (name, tol) in [
            ("legendre_table", 0.0),
            ("dft_zero_closed_form", 1e-9),
            ("dft_closed_vs_naive", 1e-8),
            ("dft_chi_form", 1e-9),
            ("dft_magnitude", 1e-9),
            ("dual_root_modulation", 1e-9),
            ("lowpass_interpolation", 1e-9),
            ("lowpass_unit_power", 1e-9),
            ("lowpass_autocorrelation", 1e-9),
            ("lowpass_crosscorrelation", 1e-9),
            ("peak_bound_chain", 1e-12),
        ] {
            checks.push(Check::skipped(name, tol, "not prime"));
        }
        return Ok(finish(n_zc, checks));
    };
    prime_checks(m, &all, &mut checks)?;
    Ok(finish(n_zc, checks))
}

fn finish(n_zc: u64, checks: Vec<Check>) -> VerifyReport {
    VerifyReport {
        schema_version: SCHEMA_VERSION,
        n_zc,
        pass: checks.iter().all(|c| c.pass),
        checks,
    }
}

fn prime_checks(m: PrimeModulus, all: &[ZcParams], checks: &mut Vec<Check>) -> Result<()> {
    let n_zc = m.value();
    let nf = n_zc as f64;
    let sqrt_n = nf.sqrt();
    let table = LegendreTable::build(m);

    let mismatches = (-(n_zc as i64)..2 * n_zc as i64)
        .filter(|&k| table.lookup(k) != legendre_symbol(k, m))
        .count();
    checks.push(Check::measured("legendre_table", mismatches as f64, 0.0));

    let mut zero = 0.0f64;
    for p in all {
        let closed = dft_zero_closed_with(&table, p.u())?;
        zero = zero.max((closed - dft_zero_brute(m, p.u())?).norm() / sqrt_n);
    }
    checks.push(Check::measured("dft_zero_closed_form", zero, 1e-9));

    let mut full = 0.0f64;
    let mut chi = 0.0f64;
    let mut magnitude = 0.0f64;
    let mut dual = 0.0f64;
    for p in all {
        let naive = dft_naive(&generate(p));
        let closed = dft_closed_with(&table, p.u())?;
        full = full.max(compare(&closed.coefficients, &naive.coefficients).1);
        magnitude = max_of(
            closed
                .coefficients
                .iter()
                .map(|x| (x.norm() - sqrt_n).abs() / sqrt_n)
                .chain([magnitude]),
        );
        if m.is_three_mod_four() {
            chi = chi.max(compare(&dft_chi(m, p.u())?.coefficients, &naive.coefficients).1);
        }
        dual = dual.max(dual_root_error(m, p, &closed.coefficients.into_samples())?);
    }
    checks.push(Check::measured("dft_closed_vs_naive", full, 1e-8));
    if m.is_three_mod_four() {
        checks.push(Check::measured("dft_chi_form", chi, 1e-9));
    } else {
        checks.push(Check::skipped("dft_chi_form", 1e-9, "N = 1 mod 4"));
    }
    checks.push(Check::measured("dft_magnitude", magnitude, 1e-9));
    checks.push(Check::measured("dual_root_modulation", dual, 1e-9));

    let period = Period::new(1.0)?;
    let mut interp = 0.0f64;
    let mut power = 0.0f64;
    let mut chain = 0.0f64;
    let intermediate = peak_bound_intermediate(n_zc);
    let bound = peak_bound(n_zc);
    for p in all {
        let signal = LowpassSignal::new(p, period)?;
        for n in 0..n_zc {
            let t = n as f64 / nf;
            interp = interp.max((signal.eval(t) - sample_at(p, n as i64)).norm());
        }
        let grid = WaveformGrid::new(period, 4, n_zc)?;
        power = power.max((signal.sample(&grid)?.mean_power() - 1.0).abs());
        let peak = signal.peak(16)?.amplitude;
        chain = chain.max(peak - intermediate).max(intermediate - bound);
    }
    checks.push(Check::measured("lowpass_interpolation", interp, 1e-9));
    checks.push(Check::measured("lowpass_unit_power", power, 1e-9));

    let p1 = &all[0];
    let mut auto = 0.0f64;
    for i in 0..50 {
        let tau = i as f64 / 50.0;
        let numeric = lowpass_autocorr_numeric(p1, tau, period, 2)?;
        auto = auto.max((numeric - lowpass_autocorr(p1, tau, period)?).norm());
    }
    checks.push(Check::measured("lowpass_autocorrelation", auto, 1e-9));

    let lags = probe_lags(n_zc);
    let mut cross = 0.0f64;
    for pv in &all[1..] {
        let sweep: Vec<i64> = if pv.u() == 2 {
            (0..n_zc as i64).collect()
        } else {
            lags.clone()
        };
        for tau in sweep {
            let r = lowpass_crosscorr(p1, pv, tau as f64 / nf, period)?;
            cross = cross.max((r.norm() - 1.0 / sqrt_n).abs());
        }
    }
    checks.push(Check::measured("lowpass_crosscorrelation", cross, 1e-9));

    checks.push(Check::measured("peak_bound_chain", chain.max(0.0), 1e-12));
    Ok(())
}

/// `X_u[k]` against `X_u[0]·conj(x_{u⁻¹}[k])·modulation`.
fn dual_root_error(m: PrimeModulus, p: &ZcParams, spectrum: &[Complex64]) -> Result<f64> {
    let base = ZcParams::new(m.value(), mod_inverse(p.u() as i64, m)?)?;
    let mut worst = 0.0f64;
    for (k, x) in spectrum.iter().enumerate() {
        let k = k as u64;
        let predicted =
            spectrum[0] * sample_at(&base, k as i64).conj() * dual_root_modulation(m, p.u(), k)?;
        worst = worst.max((predicted - x).norm() / (m.value() as f64).sqrt());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes_pass() {
        for n in [3, 5, 7, 11, 13, 31] {
            let report = verify(n).unwrap();
            let failed: Vec<_> = report.failures().collect();
            assert!(report.pass, "N={n}: {failed:?}");
            assert!(report
                .checks
                .iter()
                .all(|c| c.skipped.is_none() || c.name == "dft_chi_form"));
        }
    }

    #[test]
    fn chi_skipped_for_one_mod_four() {
        let report = verify(13).unwrap();
        let chi = report
            .checks
            .iter()
            .find(|c| c.name == "dft_chi_form")
            .unwrap();
        assert!(chi.skipped.is_some());
        let report = verify(11).unwrap();
        let chi = report
            .checks
            .iter()
            .find(|c| c.name == "dft_chi_form")
            .unwrap();
        assert!(chi.skipped.is_none());
    }

    #[test]
    fn composite_length_skips_spectral_checks() {
        let report = verify(9).unwrap();
        assert!(report.pass);
        let skipped: Vec<_> = report
            .checks
            .iter()
            .filter(|c| c.skipped.is_some())
            .collect();
        assert!(skipped.iter().any(|c| c.name == "dft_closed_vs_naive"));
        assert!(skipped
            .iter()
            .all(|c| c.skipped.as_deref() == Some("not prime")));
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "cross_correlation_flat" && c.skipped.is_none()));
    }

    #[test]
    fn rejects_short_lengths() {
        assert_eq!(verify(2), Err(ZcError::InvalidLength(2)));
    }
}

//! Time-continuous ZC signals of period `T`.
//!
//! Two interpolations of the discrete sequence are provided: the constant
//! modulus chirp, and the low-pass (OFDM) signal
//!
//! ```text
//! x(t) = (1/N) Σ_{k=-N₀}^{N₀} X_u[k] exp(j2πkt/T),    N₀ = (N - 1)/2
//! ```
//!
//! which is equivalently `Σ_n x_u[n]·D_N(t/T - n/N)` with `D_N` the Dirichlet
//! kernel. Both evaluation paths are exposed so they can be checked against
//! each other. Dense grids are synthesized with an inverse FFT of the
//! zero-padded spectrum; single points use the direct sums.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::dft::dft_closed;
use crate::error::{Result, ZcError};
use crate::number_theory::{unit_phase, PrimeModulus};
use crate::sequence::{generate, q_shift_decompose, ZcParams};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Oversampling used for peak searches unless told otherwise.
pub const DEFAULT_OVERSAMPLING: usize = 64;

/// Signal period in seconds.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Period(f64);

impl Period {
    pub fn new(seconds: f64) -> Result<Self> {
        if seconds.is_finite() && seconds > 0.0 {
            Ok(Self(seconds))
        } else {
            Err(ZcError::InvalidPeriod(seconds))
        }
    }

    #[inline]
    pub fn seconds(self) -> f64 {
        self.0
    }

    /// `t / T` folded into `[0, 1)`.
    #[inline]
    fn phase_of(self, t: f64) -> f64 {
        (t / self.0).rem_euclid(1.0)
    }
}

/// Uniform sampling of one period, `oversampling` points per chip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveformGrid {
    period: Period,
    oversampling: usize,
    n_zc: u64,
}

impl WaveformGrid {
    pub fn new(period: Period, oversampling: usize, n_zc: u64) -> Result<Self> {
        if oversampling == 0 {
            return Err(ZcError::InvalidOversampling);
        }
        if n_zc < 3 {
            return Err(ZcError::InvalidLength(n_zc));
        }
        Ok(Self {
            period,
            oversampling,
            n_zc,
        })
    }

    pub fn period(&self) -> Period {
        self.period
    }

    pub fn oversampling(&self) -> usize {
        self.oversampling
    }

    pub fn n_zc(&self) -> u64 {
        self.n_zc
    }

    /// Points per period.
    pub fn len(&self) -> usize {
        self.oversampling * self.n_zc as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `t_i = i·T / (oversampling·N)`.
    pub fn instant(&self, i: usize) -> f64 {
        i as f64 * self.period.0 / self.len() as f64
    }

    pub fn instants(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| self.instant(i))
    }

    /// Grid index of the chip instant `nT/N`.
    pub fn chip_index(&self, n: usize) -> usize {
        n * self.oversampling
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalKind {
    Chirp,
    Lowpass,
}

/// A signal sampled over one period of a [`WaveformGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousSignal {
    pub grid: WaveformGrid,
    pub samples: Vec<Complex64>,
    pub kind: SignalKind,
}

impl ContinuousSignal {
    pub fn mean_power(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() / self.samples.len() as f64
    }

    pub fn peak_sample(&self) -> f64 {
        self.samples.iter().map(|s| s.norm()).fold(0.0, f64::max)
    }

    /// Samples at the chip instants `nT/N`.
    pub fn chip_samples(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.samples.iter().step_by(self.grid.oversampling).copied()
    }
}

/// Chirp interpolation: `exp(-jπu·τ(τ + c + 2q)/N)` with `τ = N·(t mod T)/T`.
/// For `c = 1, q = 0` this is the usual prime-length chirp.
pub fn chirp_eval(params: &ZcParams, t: f64, period: Period) -> Complex64 {
    let n_zc = params.n_zc() as f64;
    let x = n_zc * period.phase_of(t);
    let offset = params.c() as f64 + 2.0 * params.q() as f64;
    let turns = (params.u() as f64 * x * (x + offset) / n_zc).rem_euclid(2.0);
    Complex64::from_polar(1.0, -PI * turns)
}

/// Highest instantaneous frequency of the chirp, `u(2N + 1)/(2T)` Hz.
pub fn chirp_max_frequency(params: &ZcParams, period: Period) -> f64 {
    params.u() as f64 * (2 * params.n_zc() + 1) as f64 / (2.0 * period.0)
}

pub fn chirp_signal(params: &ZcParams, grid: &WaveformGrid) -> ContinuousSignal {
    let samples = grid
        .instants()
        .map(|t| chirp_eval(params, t, grid.period))
        .collect();
    ContinuousSignal {
        grid: *grid,
        samples,
        kind: SignalKind::Chirp,
    }
}

/// `D_N(z) = sin(πNz) / (N sin(πz))`, and `1` at integers. `n_zc` must be
/// odd, which makes the kernel even with period 1.
pub fn dirichlet_kernel(n_zc: u64, z: f64) -> f64 {
    debug_assert!(n_zc % 2 == 1, "Dirichlet kernel needs an odd length");
    let r = z - z.round();
    if r.abs() < 1e-12 {
        return 1.0;
    }
    let n = n_zc as f64;
    (PI * n * r).sin() / (n * (PI * r).sin())
}

/// `Σ_n |D_N(z - n/N)|`, the triangle-inequality envelope of `|x(t)|` at
/// `z = t/T`.
pub fn dirichlet_envelope(n_zc: u64, z: f64) -> f64 {
    let n = n_zc as f64;
    (0..n_zc)
        .map(|k| dirichlet_kernel(n_zc, z - k as f64 / n).abs())
        .sum()
}

/// Envelope evaluated at its maxima, the half-chip offsets:
/// `Σ_n |D_N((2n + 1)/(2N))|`.
pub fn peak_bound_intermediate(n_zc: u64) -> f64 {
    let n = n_zc as f64;
    (0..n_zc)
        .map(|k| dirichlet_kernel(n_zc, (2 * k + 1) as f64 / (2.0 * n)).abs())
        .sum()
}

/// `(2/π)·ln N + (4/π)·ln 2 + (2/π)·γ`.
pub fn peak_bound(n_zc: u64) -> f64 {
    let c = 2.0 / PI;
    c * (n_zc as f64).ln() + 2.0 * c * 2f64.ln() + c * EULER_GAMMA
}

/// Low-pass ZC signal for an odd prime length.
#[derive(Debug, Clone)]
pub struct LowpassSignal {
    params: ZcParams,
    period: Period,
    /// DFT coefficients in natural order, `X[k]` for `k = 0..N`.
    spectrum: Vec<Complex64>,
    sequence: Vec<Complex64>,
}

impl LowpassSignal {
    pub fn new(params: &ZcParams, period: Period) -> Result<Self> {
        let m = PrimeModulus::new(params.n_zc())?;
        let n_zc = m.value();
        let base = dft_closed(m, params.u())?;
        let spectrum = if params.q() == 0 {
            base.coefficients.into_samples()
        } else {
            // x^(q)[n] = r·x[n + q]  =>  X^(q)[k] = r·exp(j2πkq/N)·X[k]
            let shift = q_shift_decompose(params);
            base.coefficients
                .iter()
                .enumerate()
                .map(|(k, xk)| {
                    shift.rotation * unit_phase(2 * k as i128 * shift.shift as i128, n_zc) * xk
                })
                .collect()
        };
        Ok(Self {
            params: *params,
            period,
            spectrum,
            sequence: generate(params).into_samples(),
        })
    }

    pub fn params(&self) -> &ZcParams {
        &self.params
    }

    pub fn period(&self) -> Period {
        self.period
    }

    pub fn spectrum(&self) -> &[Complex64] {
        &self.spectrum
    }

    fn half_band(&self) -> i64 {
        (self.spectrum.len() as i64 - 1) / 2
    }

    fn coefficient(&self, k: i64) -> Complex64 {
        self.spectrum[k.rem_euclid(self.spectrum.len() as i64) as usize]
    }

    /// Fourier-sum evaluation.
    pub fn eval(&self, t: f64) -> Complex64 {
        self.eval_phase(self.period.phase_of(t))
    }

    fn eval_phase(&self, s: f64) -> Complex64 {
        let n0 = self.half_band();
        let sum: Complex64 = (-n0..=n0)
            .map(|k| self.coefficient(k) * Complex64::from_polar(1.0, 2.0 * PI * k as f64 * s))
            .sum();
        sum / self.spectrum.len() as f64
    }

    /// Dirichlet-interpolation evaluation, `Σ_n x[n]·D_N(t/T - n/N)`.
    pub fn eval_dirichlet(&self, t: f64) -> Complex64 {
        let n_zc = self.sequence.len() as u64;
        let s = self.period.phase_of(t);
        self.sequence
            .iter()
            .enumerate()
            .map(|(n, xn)| xn * dirichlet_kernel(n_zc, s - n as f64 / n_zc as f64))
            .sum()
    }

    /// Samples over one period of `grid` through an inverse FFT of the
    /// zero-padded spectrum.
    pub fn sample(&self, grid: &WaveformGrid) -> Result<ContinuousSignal> {
        if grid.n_zc != self.params.n_zc() {
            return Err(ZcError::LengthMismatch(grid.n_zc, self.params.n_zc()));
        }
        let samples = synthesize(&self.spectrum, grid.len(), 0.0);
        Ok(ContinuousSignal {
            grid: *grid,
            samples,
            kind: SignalKind::Lowpass,
        })
    }

    /// Largest `|x(t)|`: dense grid, then golden-section refinement around
    /// the strongest grid maxima.
    pub fn peak(&self, oversampling: usize) -> Result<Peak> {
        let grid = WaveformGrid::new(self.period, oversampling, self.params.n_zc())?;
        let samples = self.sample(&grid)?.samples;
        let len = samples.len();
        let mags: Vec<f64> = samples.iter().map(|s| s.norm()).collect();

        let mut maxima: Vec<usize> = (0..len)
            .filter(|&i| mags[i] >= mags[(i + len - 1) % len] && mags[i] >= mags[(i + 1) % len])
            .collect();
        maxima.sort_by(|&a, &b| mags[b].total_cmp(&mags[a]));

        let step = 1.0 / len as f64;
        let mut best = Peak {
            amplitude: 0.0,
            time: 0.0,
        };
        for &i in maxima.iter().take(4) {
            let centre = i as f64 * step;
            let (s, amp) = golden_max(|s| self.eval_phase(s).norm(), centre - step, centre + step);
            let (s, amp) = if amp >= mags[i] {
                (s, amp)
            } else {
                (centre, mags[i])
            };
            if amp > best.amplitude {
                best = Peak {
                    amplitude: amp,
                    time: s.rem_euclid(1.0) * self.period.0,
                };
            }
        }
        Ok(best)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub amplitude: f64,
    /// Location within `[0, T)`.
    pub time: f64,
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - ratio * (hi - lo);
    let mut b = lo + ratio * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    for _ in 0..80 {
        if hi - lo < 1e-14 {
            break;
        }
        if fa < fb {
            lo = a;
            a = b;
            fa = fb;
            b = lo + ratio * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - ratio * (hi - lo);
            fa = f(a);
        }
    }
    if fa > fb {
        (a, fa)
    } else {
        (b, fb)
    }
}

fn inverse_plan(len: usize) -> Arc<dyn Fft<f64>> {
    FftPlanner::new().plan_fft_inverse(len)
}

/// `(1/N)·Σ_k X[k]·exp(j2πk(i/M + shift))` for `i = 0..M`, `|k| ≤ N₀`.
fn synthesize(spectrum: &[Complex64], points: usize, shift: f64) -> Vec<Complex64> {
    let n_zc = spectrum.len();
    let n0 = (n_zc as i64 - 1) / 2;
    let mut buf = vec![Complex64::new(0.0, 0.0); points];
    for k in -n0..=n0 {
        let xk = spectrum[k.rem_euclid(n_zc as i64) as usize];
        let rot = Complex64::from_polar(1.0, 2.0 * PI * k as f64 * shift);
        buf[k.rem_euclid(points as i64) as usize] = xk * rot;
    }
    inverse_plan(points).process(&mut buf);
    let scale = 1.0 / n_zc as f64;
    buf.iter_mut().for_each(|v| *v *= scale);
    buf
}

/// One point of the low-pass signal.
pub fn lowpass_eval(params: &ZcParams, t: f64, period: Period) -> Result<Complex64> {
    Ok(LowpassSignal::new(params, period)?.eval(t))
}

/// Same point through the Dirichlet-kernel interpolation.
pub fn lowpass_eval_dirichlet(params: &ZcParams, t: f64, period: Period) -> Result<Complex64> {
    Ok(LowpassSignal::new(params, period)?.eval_dirichlet(t))
}

/// Continuous autocorrelation, `R(τ) = D_N(τ/T)`.
pub fn lowpass_autocorr(params: &ZcParams, tau: f64, period: Period) -> Result<Complex64> {
    PrimeModulus::new(params.n_zc())?;
    Ok(Complex64::new(
        dirichlet_kernel(params.n_zc(), tau / period.0),
        0.0,
    ))
}

/// Autocorrelation by the rectangle (periodic trapezoid) rule on
/// `oversampling·N` points. Exact once there are at least `N` points.
pub fn lowpass_autocorr_numeric(
    params: &ZcParams,
    tau: f64,
    period: Period,
    oversampling: usize,
) -> Result<Complex64> {
    lowpass_crosscorr_numeric(
        params,
        params,
        tau,
        period,
        oversampling * params.n_zc() as usize,
    )
}

fn check_pair(params_u: &ZcParams, params_v: &ZcParams) -> Result<()> {
    if params_u.n_zc() != params_v.n_zc() {
        return Err(ZcError::LengthMismatch(params_u.n_zc(), params_v.n_zc()));
    }
    PrimeModulus::new(params_u.n_zc())?;
    Ok(())
}

/// `R_{u,v}(τ) = (1/T)∫ x_u(t)·conj(x_v(t + τ)) dt` evaluated as the
/// frequency-domain sum `(1/N²)·Σ_k X_u[k]·conj(X_v[k])·exp(-j2πkτ/T)`.
pub fn lowpass_crosscorr(
    params_u: &ZcParams,
    params_v: &ZcParams,
    tau: f64,
    period: Period,
) -> Result<Complex64> {
    check_pair(params_u, params_v)?;
    let a = LowpassSignal::new(params_u, period)?;
    let b = LowpassSignal::new(params_v, period)?;
    let s = period.phase_of(tau);
    let n0 = a.half_band();
    let sum: Complex64 = (-n0..=n0)
        .map(|k| {
            a.coefficient(k)
                * b.coefficient(k).conj()
                * Complex64::from_polar(1.0, -2.0 * PI * k as f64 * s)
        })
        .sum();
    let n = a.spectrum.len() as f64;
    Ok(sum / (n * n))
}

/// Cross-correlation by the rectangle rule over `steps` points per period.
pub fn lowpass_crosscorr_numeric(
    params_u: &ZcParams,
    params_v: &ZcParams,
    tau: f64,
    period: Period,
    steps: usize,
) -> Result<Complex64> {
    check_pair(params_u, params_v)?;
    if steps == 0 {
        return Err(ZcError::InvalidOversampling);
    }
    let a = LowpassSignal::new(params_u, period)?;
    let b = LowpassSignal::new(params_v, period)?;
    let xa = synthesize(&a.spectrum, steps, 0.0);
    let xb = synthesize(&b.spectrum, steps, period.phase_of(tau));
    let sum: Complex64 = xa.iter().zip(&xb).map(|(p, q)| p * q.conj()).sum();
    Ok(sum / steps as f64)
}

/// Peak amplitude of the low-pass signal (independent of `T`).
pub fn peak_amplitude(params: &ZcParams, period: Period, oversampling: usize) -> Result<f64> {
    Ok(LowpassSignal::new(params, period)?
        .peak(oversampling)?
        .amplitude)
}

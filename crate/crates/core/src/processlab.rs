//! Synthesis of stationary Gaussian test processes and the log-log slope
//! fit used to read a spectral exponent back off an estimated spectrum.
//!
//! Two generators share one FFT engine: exact circulant embedding for a
//! prescribed covariance model (eigenvalues clipped at zero, with a hard
//! failure if the clipped spectral mass exceeds 1%), and spectral shaping
//! with amplitude ∝ f^{−γ/2} between `f_low` and `f_high` (flat below
//! `f_low`, zero above `f_high`, zero at DC) for a prescribed power law.
//! Output windows are seed-deterministic: window k of a spec is always the
//! same bit pattern.

use crate::covariance::CovarianceModel;
use crate::error::{require, Error, Result};
use crate::spectral::{SignalWindow, SpectrumSeries, SpectrumUnit};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

const MAX_CLIPPED_MASS: f64 = 0.01;

/// What to synthesize: an explicit covariance or a banded power-law
/// spectrum S(f) = |f|^{−γ} for f_low ≤ |f| ≤ f_high.
#[derive(Debug, Clone, PartialEq)]
pub enum SynthesisVariant {
    Covariance(CovarianceModel),
    PowerLaw { gamma: f64, f_low: f64, f_high: f64 },
}

/// A complete, validated recipe for generating windows.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisSpec {
    variant: SynthesisVariant,
    n: usize,
    dt: f64,
    seed: u64,
}

impl SynthesisSpec {
    /// Validates the recipe: n must be a power of two ≥ 64, dt positive,
    /// γ ∈ [0, 2], 0 < f_low < f_high ≤ 1/(2dt), and a covariance model
    /// must be synthesizable (the logarithmic model is not a covariance).
    pub fn new(variant: SynthesisVariant, n: usize, dt: f64, seed: u64) -> Result<Self> {
        require(
            n >= 64 && n.is_power_of_two(),
            "n",
            format!("must be a power of two >= 64, got {n}"),
        )?;
        require(
            dt.is_finite() && dt > 0.0,
            "dt",
            format!("must be positive and finite, got {dt}"),
        )?;
        match &variant {
            SynthesisVariant::Covariance(model) => {
                model.validate()?;
                require(
                    model.synthesizable(),
                    "model",
                    "logarithmic covariance is not positive semidefinite and cannot be synthesized",
                )?;
            }
            SynthesisVariant::PowerLaw { gamma, f_low, f_high } => {
                require(
                    gamma.is_finite() && (0.0..=2.0).contains(gamma),
                    "gamma",
                    format!("must lie in [0, 2], got {gamma}"),
                )?;
                require(
                    f_low.is_finite() && *f_low > 0.0,
                    "f_low",
                    format!("must be positive, got {f_low}"),
                )?;
                let nyquist = 0.5 / dt;
                require(
                    f_high.is_finite() && *f_high > *f_low && *f_high <= nyquist,
                    "f_high",
                    format!("must satisfy f_low < f_high <= {nyquist} (Nyquist), got {f_high}"),
                )?;
            }
        }
        Ok(Self { variant, n, dt, seed })
    }

    pub fn variant(&self) -> &SynthesisVariant {
        &self.variant
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

// Clips negative circulant eigenvalues to zero; fails if the clipped
// fraction of total spectral mass exceeds MAX_CLIPPED_MASS.
fn clip_eigenvalues(mut lambda: Vec<f64>) -> Result<(Vec<f64>, f64)> {
    let total: f64 = lambda.iter().map(|l| l.abs()).sum();
    let clipped: f64 = lambda.iter().filter(|l| **l < 0.0).map(|l| l.abs()).sum();
    let fraction = if total > 0.0 { clipped / total } else { 0.0 };
    if fraction > MAX_CLIPPED_MASS {
        return Err(Error::numerical(
            "synthesize",
            format!(
                "circulant embedding is too far from positive semidefinite: \
                 clipping removed {:.3}% of spectral mass (limit {:.0}%)",
                100.0 * fraction,
                100.0 * MAX_CLIPPED_MASS
            ),
        ));
    }
    for l in &mut lambda {
        if *l < 0.0 {
            *l = 0.0;
        }
    }
    Ok((lambda, fraction))
}

// Shared generator: a per-bin amplitude table, an FFT plan, and a post-FFT
// scale. A window is FFT(amplitude ∘ W)·scale with W a Hermitian-symmetric
// complex Gaussian spectrum, so the output is real with the target
// second-order statistics.
struct Engine {
    n: usize,
    dt: f64,
    seed: u64,
    fft_len: usize,
    amplitude: Vec<f64>,
    scale: f64,
    fft: Arc<dyn Fft<f64>>,
    #[allow(dead_code)]
    clipped_mass: f64,
}

impl Engine {
    fn new(spec: &SynthesisSpec) -> Result<Self> {
        let n = spec.n;
        let dt = spec.dt;
        let mut planner = FftPlanner::<f64>::new();
        match &spec.variant {
            SynthesisVariant::Covariance(model) => {
                // circulant embedding of the first n lags in a ring of 2n
                let m = 2 * n;
                let mut buf: Vec<Complex64> = (0..m)
                    .map(|k| {
                        let lag = k.min(m - k) as f64 * dt;
                        Complex64::new(model.eval(lag), 0.0)
                    })
                    .collect();
                let fft = planner.plan_fft_forward(m);
                fft.process(&mut buf);
                let (lambda, clipped_mass) =
                    clip_eigenvalues(buf.iter().map(|z| z.re).collect())?;
                Ok(Self {
                    n,
                    dt,
                    seed: spec.seed,
                    fft_len: m,
                    amplitude: lambda.iter().map(|l| l.sqrt()).collect(),
                    scale: 1.0 / (m as f64).sqrt(),
                    fft,
                    clipped_mass,
                })
            }
            SynthesisVariant::PowerLaw { gamma, f_low, f_high } => {
                // two-sided target S(f) = clamp(|f|)^{−γ}; discrete bins get
                // amplitude² = S(f_k)·n/dt so the estimator reads S back
                let df = 1.0 / (n as f64 * dt);
                let amplitude: Vec<f64> = (0..n)
                    .map(|k| {
                        if k == 0 {
                            return 0.0;
                        }
                        let f_abs = k.min(n - k) as f64 * df;
                        if f_abs > *f_high {
                            0.0
                        } else {
                            (f_abs.max(*f_low).powf(-gamma) * n as f64 / dt).sqrt()
                        }
                    })
                    .collect();
                Ok(Self {
                    n,
                    dt,
                    seed: spec.seed,
                    fft_len: n,
                    amplitude,
                    scale: 1.0 / n as f64,
                    fft: planner.plan_fft_inverse(n),
                    clipped_mass: 0.0,
                })
            }
        }
    }

    // Window `index` of the ensemble: an independent ChaCha substream per
    // window, identical bits for identical (spec, index).
    fn window(&self, index: u64) -> SignalWindow {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        let m = self.fft_len;
        let half = m / 2;
        let mut buf = vec![Complex64::ZERO; m];
        let g0: f64 = rng.sample(StandardNormal);
        buf[0] = Complex64::new(self.amplitude[0] * g0, 0.0);
        let gh: f64 = rng.sample(StandardNormal);
        buf[half] = Complex64::new(self.amplitude[half] * gh, 0.0);
        for k in 1..half {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let z = Complex64::new(re, im) * (self.amplitude[k] * std::f64::consts::FRAC_1_SQRT_2);
            buf[k] = z;
            buf[m - k] = z.conj();
        }
        self.fft.process(&mut buf);
        let samples: Vec<f64> = buf[..self.n].iter().map(|z| z.re * self.scale).collect();
        SignalWindow::new(self.dt, samples).expect("synthesized window is valid")
    }
}

/// Generates window 0 of the ensemble defined by `spec`.
pub fn synthesize(spec: &SynthesisSpec) -> Result<SignalWindow> {
    Ok(Engine::new(spec)?.window(0))
}

/// Generates windows 0..count of the ensemble defined by `spec`.
pub fn synthesize_ensemble(spec: &SynthesisSpec, count: usize) -> Result<Vec<SignalWindow>> {
    require(count >= 1, "count", "need at least one window")?;
    let engine = Engine::new(spec)?;
    Ok((0..count as u64).map(|k| engine.window(k)).collect())
}

/// Ensemble-mean power spectrum over `windows` synthesized windows on
/// `f_grid`, streaming one window at a time so arbitrarily large ensembles
/// use constant memory.
pub fn ensemble_power_spectrum(
    spec: &SynthesisSpec,
    windows: usize,
    f_grid: &[f64],
) -> Result<SpectrumSeries> {
    require(windows >= 1, "windows", "need at least one window")?;
    require(!f_grid.is_empty(), "f_grid", "must not be empty")?;
    require(
        f_grid.iter().all(|f| f.is_finite()),
        "f_grid",
        "frequencies must be finite",
    )?;
    let engine = Engine::new(spec)?;
    let n = spec.n;
    let dt = spec.dt;
    let t_m = dt * (n as f64 - 1.0);
    // trapezoid-weighted trig tables, one pair per grid frequency
    let tables: Vec<(Vec<f64>, Vec<f64>)> = f_grid
        .iter()
        .map(|f| {
            let omega = 2.0 * std::f64::consts::PI * f;
            let mut sin_w = Vec::with_capacity(n);
            let mut cos_w = Vec::with_capacity(n);
            for i in 0..n {
                let t = dt * i as f64;
                let w = if i == 0 || i == n - 1 { dt / 2.0 } else { dt };
                sin_w.push(w * (omega * t).sin());
                cos_w.push(w * (omega * t).cos());
            }
            (sin_w, cos_w)
        })
        .collect();
    let mut accum = vec![0.0f64; f_grid.len()];
    for index in 0..windows as u64 {
        let window = engine.window(index);
        let samples = window.samples();
        for (acc, (sin_w, cos_w)) in accum.iter_mut().zip(&tables) {
            let mut us = 0.0;
            let mut uc = 0.0;
            for ((&u, &s), &c) in samples.iter().zip(sin_w).zip(cos_w) {
                us += s * u;
                uc += c * u;
            }
            *acc += (us * us + uc * uc) / t_m;
        }
    }
    let values: Vec<f64> = accum.iter().map(|a| a / windows as f64).collect();
    SpectrumSeries::new(f_grid.to_vec(), values, SpectrumUnit::VoltsSquaredPerHz)
}

/// Least-squares slope of log S against log f over [f_min, f_max], negated,
/// so a spectrum S(f) ∝ 1/f^γ returns γ. Needs at least 8 grid points in
/// range, all with positive values.
pub fn slope_fit(spectrum: &SpectrumSeries, f_min: f64, f_max: f64) -> Result<f64> {
    require(
        f_min.is_finite() && f_max.is_finite() && 0.0 < f_min && f_min < f_max,
        "f_range",
        format!("need 0 < f_min < f_max, got [{f_min}, {f_max}]"),
    )?;
    let points: Vec<(f64, f64)> = spectrum
        .iter()
        .filter(|(f, _)| (f_min..=f_max).contains(f))
        .collect();
    require(
        points.len() >= 8,
        "f_range",
        format!("need at least 8 grid points in range, got {}", points.len()),
    )?;
    for (f, v) in &points {
        require(
            *v > 0.0,
            "spectrum",
            format!("nonpositive value {v} at f = {f} Hz cannot be log-fitted"),
        )?;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|(f, v)| (f.ln(), v.ln())).collect();
    let m = logs.len() as f64;
    let mean_x = logs.iter().map(|(x, _)| x).sum::<f64>() / m;
    let mean_y = logs.iter().map(|(_, y)| y).sum::<f64>() / m;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in &logs {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    Ok(-(sxy / sxx))
}

//! Numerical checks of the singular-kernel transforms behind the
//! triangular-window functional: the ln|τ| and |τ|ln|τ| finite-window
//! transforms (whose difference converges to −π/|ω| while each grows like
//! ln t_m), the sign-kernel transform with its elementary closed form, and
//! the tail-corrected sinc integral.

use crate::error::{require, Result};
use crate::scalar::{lit, Real};
use crate::spectral::quad::{ladder_panels, log_endpoint_head, oscillatory_transform};
use num_complex::Complex;

/// Fixed reference arguments for the sinc check carried by [`KernelCheck`].
pub const SINC_REFERENCE_TAU: f64 = 1.0;
pub const SINC_REFERENCE_CUTOFF: f64 = 1.0e3;

/// Everything [`kernel_asymptotics`] measures at one (ω, t_m) point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelCheck<T: Real = f64> {
    pub omega: T,
    pub t_m: T,
    /// ∫_{−t_m}^{t_m} ln|τ|·e^{iωτ} dτ (real by symmetry).
    pub log_transform: T,
    /// (1/t_m)·∫_{−t_m}^{t_m} |τ|·ln|τ|·e^{iωτ} dτ.
    pub weighted_log_transform: T,
    /// log_transform − weighted_log_transform.
    pub difference: T,
    /// The t_m → ∞ limit of the difference, −π/|ω|.
    pub predicted_limit: T,
    /// |difference − predicted_limit| / |predicted_limit|.
    pub difference_residual: T,
    /// |∫_{−t_m}^{t_m} (τ/|τ|)·e^{iωτ} dτ| evaluated numerically.
    pub sign_kernel_mag: T,
    /// Closed form |2(1 − cos ωt_m)/ω|.
    pub sign_kernel_exact_mag: T,
    /// Relative disagreement of the two sign-kernel values.
    pub sign_kernel_residual: T,
    /// Tail-corrected ∫_0^∞ sin(kτ)/k dk at the fixed reference (τ=1, K=10³).
    pub sinc_value: T,
    /// |sinc_value − π/2|.
    pub sinc_residual: T,
}

// ∫_0^{t_m} τ^p·ln τ·e^{iωτ} dτ: analytic series on [0, ε] past the
// logarithmic endpoint, ladder panels beyond.
fn half_axis_log_transform<T: Real>(p: u32, omega: T, t_m: T) -> Complex<T> {
    let eps = (lit::<T>(0.05) / omega.abs()).min(t_m);
    let head = log_endpoint_head(p, eps, omega);
    let width = T::PI() / omega.abs();
    let tail = ladder_panels(eps, t_m, width, &|t: T| {
        let amp = if p == 0 { t.ln() } else { t * t.ln() };
        let phase = omega * t;
        Complex::new(amp * phase.cos(), amp * phase.sin())
    });
    head + tail
}

/// Truncated sinc integral ∫_0^{k_max} sin(kτ)/k dk plus the two-term
/// asymptotic tail cos(Kτ)/(Kτ) + sin(Kτ)/(Kτ)²; converges to ±π/2 for
/// τ ≷ 0 (and 0 at τ = 0) as k_max → ∞.
pub fn sinc_integral<T: Real>(tau: T, k_max: T) -> Result<T> {
    require(
        tau.is_finite(),
        "tau",
        format!("must be finite, got {tau}"),
    )?;
    require(
        k_max.is_finite() && k_max > T::zero(),
        "k_max",
        format!("must be positive and finite, got {k_max}"),
    )?;
    if tau == T::zero() {
        return Ok(T::zero());
    }
    let x = tau.abs();
    // sin(kx)/k is smooth through k = 0 (→ x); panels aligned to half-periods
    let truncated = ladder_panels(T::zero(), k_max, T::PI() / x, &|k: T| {
        Complex::new((k * x).sin() / k, T::zero())
    })
    .re;
    let big = k_max * x;
    let tail = (big.cos() + big.sin() / big) / big;
    Ok((truncated + tail) * tau.signum())
}

/// Evaluates the kernel transforms at (ω, t_m) and packages the residuals
/// against their analytic limits.
pub fn kernel_asymptotics<T: Real>(omega: T, t_m: T) -> Result<KernelCheck<T>> {
    require(
        omega.is_finite() && omega != T::zero(),
        "omega",
        format!("must be finite and nonzero, got {omega}"),
    )?;
    require(
        t_m.is_finite() && t_m > T::zero(),
        "t_m",
        format!("must be positive and finite, got {t_m}"),
    )?;
    let two = lit::<T>(2.0);

    // ln|τ| and |τ|ln|τ| are even, so the negative half-axis contributes the
    // complex conjugate: the transform is 2·Re of the half-axis integral.
    let log_transform = two * half_axis_log_transform(0, omega, t_m).re;
    let weighted_log_transform = two * half_axis_log_transform(1, omega, t_m).re / t_m;
    let difference = log_transform - weighted_log_transform;
    let predicted_limit = -T::PI() / omega.abs();
    let difference_residual = (difference - predicted_limit).abs() / predicted_limit.abs();

    // τ/|τ| is odd: the transform is 2i·Im of the half-axis integral of e^{iωτ}.
    let half = oscillatory_transform(&|_| T::one(), omega, t_m);
    let sign_kernel_mag = (two * half.im).abs();
    let sign_kernel_exact_mag = (two * (T::one() - (omega * t_m).cos()) / omega).abs();
    let sign_kernel_residual = if sign_kernel_exact_mag > T::zero() {
        (sign_kernel_mag - sign_kernel_exact_mag).abs() / sign_kernel_exact_mag
    } else {
        sign_kernel_mag
    };

    let sinc_value = sinc_integral(lit::<T>(SINC_REFERENCE_TAU), lit::<T>(SINC_REFERENCE_CUTOFF))?;
    let sinc_residual = (sinc_value - T::FRAC_PI_2()).abs();

    Ok(KernelCheck {
        omega,
        t_m,
        log_transform,
        weighted_log_transform,
        difference,
        predicted_limit,
        difference_residual,
        sign_kernel_mag,
        sign_kernel_exact_mag,
        sign_kernel_residual,
        sinc_value,
        sinc_residual,
    })
}

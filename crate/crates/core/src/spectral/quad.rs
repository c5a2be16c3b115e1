//! Panel quadrature for finite-window oscillatory transforms.
//!
//! Strategy: 16-node Gauss-Legendre panels whose width is one half-period
//! π/|ω| of the oscillator (32 nodes per period), with the panel touching the
//! left endpoint subdivided on a dyadic ladder so that integrand structure on
//! scales far below a half-period (covariance decay, the run-up to a
//! logarithmic endpoint) is still resolved. Uniform composite rules lose
//! several digits at ωt_m ≳ 10⁴; this layout stays at rounding level.

use crate::scalar::{lit, Real};
use num_complex::Complex;

// Gauss-Legendre nodes on (0, 1] (positive half; the rule is symmetric) and
// their weights, for the 16-node rule on [-1, 1].
const GL16: [(f64, f64); 8] = [
    (9.50125098376374544e-2, 1.89450610455068585e-1),
    (2.81603550779258915e-1, 1.82603415044923612e-1),
    (4.58016777657227370e-1, 1.69156519395002619e-1),
    (6.17876244402643771e-1, 1.49595988816576764e-1),
    (7.55404408355002999e-1, 1.24628971255534030e-1),
    (8.65631202387831755e-1, 9.51585116824925914e-2),
    (9.44575023073232600e-1, 6.22535239386477063e-2),
    (9.89400934991649939e-1, 2.71524594117540374e-2),
];

/// Number of dyadic subdivisions of the leading panel.
const LADDER_SPLITS: u32 = 30;

/// Single 16-node Gauss-Legendre panel over [a, b].
fn gl16_panel<T: Real>(a: T, b: T, f: &dyn Fn(T) -> Complex<T>) -> Complex<T> {
    let half = lit::<T>(0.5);
    let mid = (a + b) * half;
    let h = (b - a) * half;
    let mut acc = Complex::new(T::zero(), T::zero());
    for (x, w) in GL16 {
        let dx = h * lit::<T>(x);
        let s = f(mid - dx) + f(mid + dx);
        acc = acc + s * lit::<T>(w);
    }
    acc * h
}

/// Composite rule over [a, b]: panels of the given width aligned to `a`, the
/// first one refined dyadically toward `a`. `width` is typically π/|ω|.
pub(crate) fn ladder_panels<T: Real>(
    a: T,
    b: T,
    width: T,
    f: &dyn Fn(T) -> Complex<T>,
) -> Complex<T> {
    let mut acc = Complex::new(T::zero(), T::zero());
    if !(b > a) {
        return acc;
    }
    let two = lit::<T>(2.0);
    let w0 = width.min(b - a);
    // dyadic ladder covering [a, a + w0]
    let mut lo = a;
    for k in (0..=LADDER_SPLITS).rev() {
        let hi = if k == 0 { a + w0 } else { a + w0 / two.powi(k as i32) };
        if hi > lo {
            acc = acc + gl16_panel(lo, hi, f);
            lo = hi;
        }
    }
    // regular half-period panels for the rest
    let start = a + w0;
    let mut m: u64 = 0;
    loop {
        let p_lo = start + width * lit::<T>(m as f64);
        if !(p_lo < b) {
            break;
        }
        let p_hi = (start + width * lit::<T>((m + 1) as f64)).min(b);
        if !(p_hi > p_lo) {
            break;
        }
        acc = acc + gl16_panel(p_lo, p_hi, f);
        m += 1;
    }
    acc
}

/// ∫_0^{upper} f(τ)·e^{iωτ} dτ with panels aligned to half-periods of ω.
pub(crate) fn oscillatory_transform<T: Real>(
    f: &dyn Fn(T) -> T,
    omega: T,
    upper: T,
) -> Complex<T> {
    let width = T::PI() / omega.abs();
    ladder_panels(T::zero(), upper, width, &|t| {
        let phase = omega * t;
        Complex::new(f(t) * phase.cos(), f(t) * phase.sin())
    })
}

/// ∫_0^ε τ^p·ln τ·e^{iωτ} dτ by power series (use with |ωε| ≲ 0.1):
/// Σ_j (iωε)^j/j! · ε^{p+1}·((p+j+1)·ln ε − 1)/(p+j+1)².
pub(crate) fn log_endpoint_head<T: Real>(p: u32, eps: T, omega: T) -> Complex<T> {
    let ln_eps = eps.ln();
    let rot = Complex::new(T::zero(), omega * eps); // iωε
    let mut term = Complex::new(T::one(), T::zero()); // (iωε)^j / j!
    let mut acc = Complex::new(T::zero(), T::zero());
    for j in 0..=14u32 {
        let q = lit::<T>((p + j + 1) as f64);
        acc = acc + term * ((q * ln_eps - T::one()) / (q * q));
        term = term * rot / lit::<T>((j + 1) as f64);
    }
    acc * eps.powi((p + 1) as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn panel_rule_is_exact_on_polynomials() {
        // degree 31 is within the algebraic accuracy of the 16-node rule
        let f = |t: f64| Complex::new(t.powi(7) - 3.0 * t.powi(3) + 2.0, t.powi(2));
        let got = gl16_panel(-1.0, 2.0, &f);
        // ∫_{-1}^{2} t⁷ dt = (2⁸ − 1)/8, ∫ t³ = (2⁴ − 1)/4, ∫ t² = 3
        let want_re = 255.0 / 8.0 - 3.0 * 15.0 / 4.0 + 2.0 * 3.0;
        assert_relative_eq!(got.re, want_re, max_relative = 1e-14);
        assert_relative_eq!(got.im, 3.0, max_relative = 1e-14);
    }

    #[test]
    fn oscillatory_transform_matches_closed_form() {
        // ∫_0^T e^{iωτ} dτ = (e^{iωT} − 1)/(iω)
        let (omega, t) = (3.0f64, 25.0);
        let got = oscillatory_transform(&|_| 1.0, omega, t);
        let want = (Complex::new(0.0, omega * t).exp() - Complex::new(1.0, 0.0))
            / Complex::new(0.0, omega);
        assert_relative_eq!(got.re, want.re, epsilon = 1e-13);
        assert_relative_eq!(got.im, want.im, epsilon = 1e-13);
    }

    #[test]
    fn exponential_amplitude_against_analytic_value() {
        // ∫_0^∞ e^{-τ} e^{iωτ} dτ = 1/(1 − iω); the tail beyond τ=60 is ~1e-26
        let omega = 2.0f64;
        let got = oscillatory_transform(&|t: f64| (-t).exp(), omega, 60.0);
        let want = Complex::new(1.0, 0.0) / Complex::new(1.0, -omega);
        assert_relative_eq!(got.re, want.re, epsilon = 1e-13);
        assert_relative_eq!(got.im, want.im, epsilon = 1e-13);
    }

    #[test]
    fn ladder_resolves_structure_much_finer_than_a_panel() {
        // covariance decay τ_c = 1e-3 against a half-period of ~π: the ladder
        // must recover ∫_0^T e^{-t/τc} dt = τc (1 − e^{-T/τc})
        let got = ladder_panels(0.0, 10.0, std::f64::consts::PI, &|t: f64| {
            Complex::new((-t / 1e-3).exp(), 0.0)
        });
        assert_relative_eq!(got.re, 1e-3, max_relative = 1e-12);
        assert_relative_eq!(got.im, 0.0, epsilon = 1e-18);
    }

    #[test]
    fn log_head_matches_quadrature_from_both_sides() {
        // compare the series on [0, ε] against panels on [δ, ε] plus the
        // series on [0, δ] with δ ≪ ε
        let (omega, eps, delta) = (1.0f64, 0.05, 1e-6);
        for p in [0u32, 1] {
            let head = log_endpoint_head(p, eps, omega);
            let inner = log_endpoint_head(p, delta, omega);
            let strip = ladder_panels(delta, eps, eps, &|t: f64| {
                let amp = t.powi(p as i32) * t.ln();
                Complex::new(amp * (omega * t).cos(), amp * (omega * t).sin())
            });
            let sum = inner + strip;
            assert_relative_eq!(head.re, sum.re, max_relative = 1e-11);
            assert_relative_eq!(head.im, sum.im, max_relative = 1e-11);
        }
    }

    #[test]
    fn works_in_f32() {
        let got = oscillatory_transform(&|_| 1.0f32, 2.0f32, 5.0f32);
        let want = (Complex::new(0.0f32, 10.0).exp() - Complex::new(1.0f32, 0.0))
            / Complex::new(0.0f32, 2.0);
        assert_relative_eq!(got.re, want.re, epsilon = 1e-5);
        assert_relative_eq!(got.im, want.im, epsilon = 1e-5);
    }
}

//! Declarative stationary autocovariance models, C(τ) = ⟨ΔU(t)ΔU(t+τ)⟩.
//!
//! These feed two consumers: the deterministic triangular-window functional
//! Σ(f), which accepts any model, and the Gaussian-process synthesizer, which
//! accepts only genuine covariances (the logarithmic model is a formal
//! example — ln(a + (τ/τ₀)²) can take arbitrary values at τ = 0 and is not
//! positive semidefinite in general).

use crate::error::{require, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub enum CovarianceModel<T: Real = f64> {
    /// Ornstein-Uhlenbeck: σ²·e^{−|τ|/τ_c} (σ² in V², τ_c in s).
    Ou { sigma2: T, tau_c: T },
    /// Logarithmic model ln(a + (τ/τ₀)²), dimensionless, a > 0, τ₀ in s.
    Log { a: T, tau0: T },
    /// Pointwise sum of sub-models; an empty sum is the zero function.
    Sum(Vec<CovarianceModel<T>>),
}

impl<T: Real> CovarianceModel<T> {
    /// Checks the parameter constraints annotated on each variant.
    pub fn validate(&self) -> Result<()> {
        match self {
            CovarianceModel::Ou { sigma2, tau_c } => {
                require(
                    sigma2.is_finite() && *sigma2 >= T::zero(),
                    "sigma2",
                    format!("must be finite and nonnegative, got {sigma2}"),
                )?;
                require(
                    tau_c.is_finite() && *tau_c > T::zero(),
                    "tau_c",
                    format!("must be positive and finite, got {tau_c}"),
                )
            }
            CovarianceModel::Log { a, tau0 } => {
                require(
                    a.is_finite() && *a > T::zero(),
                    "a",
                    format!("must be positive and finite, got {a}"),
                )?;
                require(
                    tau0.is_finite() && *tau0 > T::zero(),
                    "tau0",
                    format!("must be positive and finite, got {tau0}"),
                )
            }
            CovarianceModel::Sum(parts) => parts.iter().try_for_each(|m| m.validate()),
        }
    }

    /// Evaluates C(τ); even in τ by construction.
    pub fn eval(&self, tau: T) -> T {
        match self {
            CovarianceModel::Ou { sigma2, tau_c } => *sigma2 * (-tau.abs() / *tau_c).exp(),
            CovarianceModel::Log { a, tau0 } => {
                let x = tau / *tau0;
                (*a + x * x).ln()
            }
            CovarianceModel::Sum(parts) => parts
                .iter()
                .fold(T::zero(), |acc, m| acc + m.eval(tau)),
        }
    }

    /// Whether the model is an admissible input for stochastic synthesis.
    /// The logarithmic variant is excluded: it is a formal Σ(f) example, not
    /// a positive-semidefinite covariance.
    pub fn synthesizable(&self) -> bool {
        match self {
            CovarianceModel::Ou { .. } => true,
            CovarianceModel::Log { .. } => false,
            CovarianceModel::Sum(parts) => parts.iter().all(|m| m.synthesizable()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn ou_has_unit_decay_at_tau_c() {
        let m: CovarianceModel = CovarianceModel::Ou { sigma2: 2.0, tau_c: 0.5 };
        m.validate().unwrap();
        assert_relative_eq!(m.eval(0.0), 2.0);
        assert_relative_eq!(m.eval(0.5), 2.0 * (-1.0f64).exp(), max_relative = 1e-15);
    }

    #[test]
    fn log_model_matches_definition() {
        let m: CovarianceModel = CovarianceModel::Log { a: 1.0, tau0: 2.0 };
        m.validate().unwrap();
        assert_relative_eq!(m.eval(0.0), 0.0);
        assert_relative_eq!(m.eval(2.0), 2.0f64.ln(), max_relative = 1e-15);
    }

    #[test]
    fn empty_sum_is_the_zero_model() {
        let m: CovarianceModel = CovarianceModel::Sum(vec![]);
        m.validate().unwrap();
        assert_eq!(m.eval(0.0), 0.0);
        assert_eq!(m.eval(3.7), 0.0);
        assert!(m.synthesizable());
    }

    #[test]
    fn validation_names_the_bad_parameter() {
        let m: CovarianceModel = CovarianceModel::Ou { sigma2: 1.0, tau_c: -1.0 };
        assert!(m.validate().unwrap_err().to_string().contains("tau_c"));
        let m: CovarianceModel = CovarianceModel::Log { a: 0.0, tau0: 1.0 };
        assert!(m.validate().unwrap_err().to_string().contains("invalid a"));
        let nested: CovarianceModel = CovarianceModel::Sum(vec![
            CovarianceModel::Ou { sigma2: 1.0, tau_c: 1.0 },
            CovarianceModel::Log { a: 1.0, tau0: f64::NAN },
        ]);
        assert!(nested.validate().unwrap_err().to_string().contains("tau0"));
    }

    #[test]
    fn log_variant_is_not_synthesizable_even_inside_sums() {
        let ou: CovarianceModel = CovarianceModel::Ou { sigma2: 1.0, tau_c: 1.0 };
        assert!(ou.synthesizable());
        let mixed = CovarianceModel::Sum(vec![
            ou,
            CovarianceModel::Log { a: 2.0, tau0: 1.0 },
        ]);
        assert!(!mixed.synthesizable());
    }

    proptest! {
        #[test]
        fn models_are_even_in_tau(
            tau in -50.0..50.0f64,
            s2 in 0.0..10.0f64,
            tc in 0.01..10.0f64,
            a in 0.01..10.0f64,
            t0 in 0.01..10.0f64,
        ) {
            let m: CovarianceModel = CovarianceModel::Sum(vec![
                CovarianceModel::Ou { sigma2: s2, tau_c: tc },
                CovarianceModel::Log { a, tau0: t0 },
            ]);
            prop_assert_eq!(m.eval(tau), m.eval(-tau));
        }
    }
}

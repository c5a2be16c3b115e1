//! Lower bound on 1/f voltage noise from quantum indeterminacy.
//!
//! The crate computes the geometric factor g of a box-shaped sample, the
//! dimensionless coefficient κ = 2e⁴g/(πmℏc³) summed over carrier species,
//! and the resulting noise-floor spectrum S_F(f) = κU₀²/|f|; it also provides
//! the finite-window spectral machinery needed to check that construction
//! numerically: windowed sine/cosine transforms, the triangular-window
//! functional Σ(f), kernel asymptotics, a finite-dimensional operator toy
//! model of the uncertainty bound, and a synthesizer for Gaussian test
//! processes with prescribed covariance or 1/f^γ spectra.
//!
//! Geometry and estimator numerics are generic over the scalar type (`f32`
//! or `f64`) via [`Real`]; every generic type defaults to `f64`.

pub mod covariance;
pub mod error;
pub mod geometry;
pub mod noisefloor;
pub mod processlab;
pub mod quantumtoy;
pub mod scalar;
pub mod spectral;
pub mod units;

pub use covariance::CovarianceModel;
pub use error::{Error, Result};
pub use geometry::{
    box_potential, geometric_factor, mc_box_potential, BoxSample, ProbePair, ProbePlacement,
};
pub use noisefloor::{
    fundamental_spectrum, kappa, noise_floor, parse_sample_descriptor, table_one_report,
    write_report_csv, NoiseFloorResult, ReportRow, SampleRecord,
};
pub use processlab::{
    ensemble_power_spectrum, slope_fit, synthesize, synthesize_ensemble, SynthesisSpec,
    SynthesisVariant,
};
pub use quantumtoy::{
    commutator_identity, quadrature_operators, random_sweep, spectrum_and_bound, BoundCheck,
    CommutatorCheck, SweepRecord, SweepSummary, ToySystem,
};
pub use scalar::Real;
pub use spectral::kernels::{kernel_asymptotics, sinc_integral, KernelCheck};
pub use spectral::{
    power_estimate, power_spectrum, sigma_of_f, sigma_of_f_two_term, window_transforms,
    SignalWindow, SpectrumSeries, SpectrumUnit,
};
pub use units::{convert, CarrierSpecies, PhysicalConstants, Unit};

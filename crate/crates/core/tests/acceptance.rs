//! Acceptance checks: every headline claim of the library is exercised
//! end-to-end here, one test per criterion, each printing a single
//! PASS line with the measured numbers (visible with `--nocapture`).

use approx::assert_relative_eq;
use fnoise::covariance::CovarianceModel;
use fnoise::noisefloor::{table_one_report, SampleRecord};
use fnoise::processlab::{ensemble_power_spectrum, slope_fit, SynthesisSpec, SynthesisVariant};
use fnoise::quantumtoy::{random_sweep, SweepSummary};
use fnoise::spectral::kernels::kernel_asymptotics;
use fnoise::spectral::sigma_of_f;
use fnoise::units::CarrierSpecies;
use fnoise::{box_potential, geometric_factor, mc_box_potential, BoxSample, ProbePair};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::time::Instant;

// (name, width µm, length µm, thickness nm, g cm⁻¹, κ_th, κ_exp) as published
const PUBLISHED: [(&str, f64, f64, f64, f64, f64, f64); 5] = [
    ("V1", 1.0, 2.2, 10.0, 9630.0, 3.5e-10, 1.75e-9),
    ("V1.5", 1.5, 3.3, 10.0, 6420.0, 2.3e-10, 4.5e-10),
    ("V2", 2.0, 4.0, 10.0, 5140.0, 1.9e-10, 3.1e-10),
    ("V5", 5.0, 20.0, 20.0, 1260.0, 4.6e-11, 2.9e-9),
    ("V80", 80.0, 310.0, 20.0, 80.0, 1.9e-12, 4.1e-12),
];

fn published_records() -> Vec<SampleRecord> {
    PUBLISHED
        .iter()
        .map(|(name, w_um, l_um, a_nm, g, kth, kexp)| {
            let sample = BoxSample::new(w_um * 1e-4, l_um * 1e-4, a_nm * 1e-7).unwrap();
            let probes = ProbePair::end_face_midpoints(&sample);
            let species = vec![
                CarrierSpecies::new("electron", 0.06).unwrap(),
                CarrierSpecies::new("hole", 0.09).unwrap(),
            ];
            SampleRecord::new(*name, sample, probes, species)
                .unwrap()
                .with_paper_values(Some(*g), Some(*kth), Some(*kexp))
                .unwrap()
        })
        .collect()
}

#[test]
fn criterion_1_geometric_factors_match_published_values() {
    let start = Instant::now();
    let mut details = Vec::new();
    for (name, w_um, l_um, a_nm, g_published, _, _) in PUBLISHED {
        let sample = BoxSample::new(w_um * 1e-4, l_um * 1e-4, a_nm * 1e-7).unwrap();
        let probes = ProbePair::end_face_midpoints(&sample);
        let g = geometric_factor(&sample, &probes).unwrap();
        let dev = (g - g_published) / g_published;
        assert!(
            dev.abs() <= 0.05,
            "FAIL geometric factor {name}: {g:.4} vs published {g_published} ({:+.2}%)",
            100.0 * dev
        );
        details.push(format!("{name} {g:.1}/{g_published} ({:+.2}%)", 100.0 * dev));
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "closed form took {elapsed:?}");
    println!(
        "PASS geometric factors within 5%: {} [{elapsed:?}]",
        details.join(", ")
    );
}

#[test]
fn criterion_2_kappa_matches_published_values_and_flags_the_outlier() {
    let rows = table_one_report(&published_records()).unwrap();
    let mut details = Vec::new();
    for row in &rows[..4] {
        let k_th = row.kappa_th_paper.unwrap();
        let dev = (row.kappa_calc - k_th) / k_th;
        assert!(
            dev.abs() <= 0.03,
            "FAIL kappa {}: {:.4e} vs published {k_th:.2e} ({:+.2}%)",
            row.name,
            row.kappa_calc,
            100.0 * dev
        );
        assert_eq!(row.flagged, Some(false), "{} unexpectedly flagged", row.name);
        details.push(format!("{} {:.3e} ({:+.2}%)", row.name, row.kappa_calc, 100.0 * dev));
    }
    // the largest sample's published κ_th is inconsistent with κ ∝ g; the
    // computed value lands near 2.9e-12 and the row must carry a flag
    let v80 = &rows[4];
    assert_relative_eq!(v80.kappa_calc, 2.9e-12, max_relative = 0.03);
    assert_eq!(v80.flagged, Some(true), "V80 must be flagged, not forced");
    let v80_dev = (v80.kappa_calc - 1.9e-12) / 1.9e-12;
    println!(
        "PASS kappa within 3%: {}; V80 flagged ({:.3e} vs printed 1.9e-12, {:+.0}%)",
        details.join(", "),
        v80.kappa_calc,
        100.0 * v80_dev
    );
}

#[test]
fn criterion_3_kappa_per_g_ratio_is_universal() {
    let rows = table_one_report(&published_records()).unwrap();
    let mut ratios = Vec::new();
    for row in &rows {
        let dev = (row.kappa_per_g_cm - 3.64e-14) / 3.64e-14;
        assert!(
            dev.abs() <= 0.01,
            "FAIL kappa/g for {}: {:.6e} cm vs 3.64e-14 ({:+.3}%)",
            row.name,
            row.kappa_per_g_cm,
            100.0 * dev
        );
        ratios.push(row.kappa_per_g_cm);
    }
    let spread = ratios.iter().cloned().fold(f64::MIN, f64::max)
        - ratios.iter().cloned().fold(f64::MAX, f64::min);
    assert!(
        spread <= 1e-15 * ratios[0].abs(),
        "ratio should not depend on geometry, spread {spread:e}"
    );
    println!(
        "PASS kappa/g universal: {:.6e} cm vs 3.64e-14 within 1%, spread {spread:.1e} across 5 geometries",
        ratios[0]
    );
}

#[test]
fn criterion_4_kernel_asymptotics() {
    let start = Instant::now();
    // (ω rad/s, t_m s, allowed relative residual); phases ωt_m ∈ {10³, 10⁵}
    let cases = [
        (1.0, 1e3, 0.01),
        (0.3, 1e3 / 0.3, 0.01),
        (1.0, 1e5, 1e-3),
        (2.0, 5e4, 1e-3),
    ];
    let mut details = Vec::new();
    for (omega, t_m, tol) in cases {
        let check = kernel_asymptotics::<f64>(omega, t_m).unwrap();
        assert!(
            check.difference_residual <= tol,
            "FAIL difference kernel at omega={omega}, t_m={t_m}: residual {:.3e} > {tol}",
            check.difference_residual
        );
        assert!(
            check.sign_kernel_residual <= 1e-10,
            "FAIL sign kernel at omega={omega}, t_m={t_m}: residual {:.3e}",
            check.sign_kernel_residual
        );
        assert!(
            check.sinc_residual <= 1e-8,
            "FAIL sinc tail: |value - pi/2| = {:.3e}",
            check.sinc_residual
        );
        details.push(format!(
            "omega*t_m={:.0e}: diff {:.2e}, sign {:.1e}, sinc {:.1e}",
            omega * t_m,
            check.difference_residual,
            check.sign_kernel_residual,
            check.sinc_residual
        ));
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "kernel checks took {elapsed:?}");
    println!("PASS kernel asymptotics: {} [{elapsed:?}]", details.join("; "));
}

#[test]
fn criterion_5_log_model_sigma_reaches_its_limit() {
    // Σ(f)·|f| → −1 for the logarithmic model; evaluated at ωτ₀ = 10⁻²
    // with ωt_m = 10⁴ (f = ω/2π in Hz)
    let model = CovarianceModel::Log { a: 1.0, tau0: 1.0 };
    let omega = 1e-2;
    let t_m = 1e6;
    let sigma = sigma_of_f(&model, omega, t_m).unwrap();
    let f = omega / (2.0 * PI);
    let product = sigma * f.abs();
    assert!(
        (product + 1.0).abs() <= 0.02,
        "FAIL sigma limit: sigma*|f| = {product:.6} vs -1 (|dev| = {:.4})",
        (product + 1.0).abs()
    );
    println!(
        "PASS sigma limit: sigma*|f| = {product:.6} vs -1 ({:.2}% off, allowed 2%)",
        100.0 * (product + 1.0).abs()
    );
}

#[test]
fn criterion_6_quantum_bound_sweep() {
    let start = Instant::now();
    let records = random_sweep(1000, 20260815, 6, 128).unwrap();
    let summary = SweepSummary::from_records(&records).unwrap();
    assert!(
        summary.min_sum_slack >= -1e-10,
        "FAIL sum bound violated: min slack {:.3e}",
        summary.min_sum_slack
    );
    assert!(
        summary.min_product_slack >= -1e-10,
        "FAIL product bound violated: min slack {:.3e}",
        summary.min_product_slack
    );
    assert!(
        summary.max_commutator_residual <= 1e-10,
        "FAIL commutator identity: max relative residual {:.3e}",
        summary.max_commutator_residual
    );
    assert!(
        summary.max_odd_defect <= 1e-12,
        "FAIL odd symmetry in omega: max defect {:.3e}",
        summary.max_odd_defect
    );
    assert!(
        summary.max_commutator_real_part <= 1e-12,
        "FAIL commutator should be purely imaginary: max real part {:.3e}",
        summary.max_commutator_real_part
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "sweep took {elapsed:?}");
    println!(
        "PASS quantum bounds on {} systems: min slacks {:.2e}/{:.2e}, \
         identity residual {:.1e}, odd defect {:.1e} [{elapsed:?}]",
        summary.count,
        summary.min_sum_slack,
        summary.min_product_slack,
        summary.max_commutator_residual,
        summary.max_odd_defect
    );
}

#[test]
fn criterion_7_estimator_pipeline_recovers_known_spectra() {
    let start = Instant::now();

    // OU ensemble vs the analytic Lorentzian 2σ²τ_c/(1+(ωτ_c)²)
    let (sigma2, tau_c) = (1.0, 1.0);
    let spec = SynthesisSpec::new(
        SynthesisVariant::Covariance(CovarianceModel::Ou { sigma2, tau_c }),
        4096,
        0.02,
        1984,
    )
    .unwrap();
    let omegas = [0.1, 1.0, 10.0];
    let f_grid: Vec<f64> = omegas.iter().map(|w| w / (2.0 * PI)).collect();
    let spectrum = ensemble_power_spectrum(&spec, 20_000, &f_grid).unwrap();
    let mut ou_details = Vec::new();
    for (omega, (_, measured)) in omegas.iter().zip(spectrum.iter()) {
        let analytic = 2.0 * sigma2 * tau_c / (1.0 + (omega * tau_c).powi(2));
        let ratio = measured / analytic;
        assert!(
            (ratio - 1.0).abs() <= 0.05,
            "FAIL Lorentzian at omega*tau_c={omega}: measured/analytic = {ratio:.4}"
        );
        ou_details.push(format!("{omega}: {ratio:.4}"));
    }

    // 1/f^gamma synthesis: fitted slope over the inner decade [1e-2, 1e-1] Hz
    let fit_grid: Vec<f64> = (0..24).map(|i| 1e-2 * 10f64.powf(i as f64 / 23.0)).collect();
    let mut slope_details = Vec::new();
    for (idx, gamma) in [0.8, 1.0, 1.2].into_iter().enumerate() {
        let spec = SynthesisSpec::new(
            SynthesisVariant::PowerLaw {
                gamma,
                f_low: 1e-3,
                f_high: 0.5,
            },
            4096,
            1.0,
            7001 + idx as u64,
        )
        .unwrap();
        let spectrum = ensemble_power_spectrum(&spec, 500, &fit_grid).unwrap();
        let fitted = slope_fit(&spectrum, 9e-3, 1.1e-1).unwrap();
        assert!(
            (fitted - gamma).abs() <= 0.05,
            "FAIL slope recovery: gamma = {gamma}, fitted {fitted:.4}"
        );
        slope_details.push(format!("{gamma} -> {fitted:.4}"));
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "pipeline took {elapsed:?}");
    println!(
        "PASS estimator pipeline: Lorentzian ratios at omega*tau_c {{{}}}; \
         slopes {{{}}} [{elapsed:?}]",
        ou_details.join(", "),
        slope_details.join(", ")
    );
}

#[test]
fn criterion_8_potential_against_monte_carlo_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let mut worst_sigmas: f64 = 0.0;
    for case in 0..20u64 {
        let dims: Vec<f64> = (0..3).map(|_| 10f64.powf(rng.random_range(-2.0..0.0))).collect();
        let sample = BoxSample::new(dims[0], dims[1], dims[2]).unwrap();
        // even cases: interior points; odd cases: points in a shell outside
        let span = if case % 2 == 0 { 0.0..1.0 } else { -0.5..1.5 };
        let p = [
            sample.l() * rng.random_range(span.clone()),
            sample.w() * rng.random_range(span.clone()),
            sample.a() * rng.random_range(span),
        ];
        let exact = box_potential(&sample, p).unwrap();
        let (mc, se) = mc_box_potential(&sample, p, 200_000, 1000 + case).unwrap();
        let sigmas = (exact - mc).abs() / se;
        assert!(
            sigmas <= 4.0,
            "FAIL Monte Carlo case {case}: closed form {exact:.6e} vs {mc:.6e} ± {se:.1e} ({sigmas:.2} sigma)"
        );
        worst_sigmas = worst_sigmas.max(sigmas);
    }

    // quadratic scaling of the self-potential under uniform dilation
    let sample = BoxSample::new(0.3, 1.1, 0.07).unwrap();
    let p = [0.9, 0.2, 0.01];
    let base = box_potential(&sample, p).unwrap();
    for lambda in [0.5, 3.7, 1e3] {
        let scaled = box_potential(
            &sample.scaled(lambda).unwrap(),
            [lambda * p[0], lambda * p[1], lambda * p[2]],
        )
        .unwrap();
        assert_relative_eq!(scaled, lambda * lambda * base, max_relative = 1e-9);
    }
    println!(
        "PASS potential oracle: 20 randomized cases within 4 sigma (worst {worst_sigmas:.2}); \
         dilation scaling exact to 1e-9"
    );
}

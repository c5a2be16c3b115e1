//! Finite-dimensional check of the operator construction behind the noise
//! bound: quadrature operators built from a time-indexed Hermitian family,
//! the spectrum/bound pair they induce, and the commutator double-sum
//! identity. Everything here is exact operator algebra on a shared discrete
//! grid, so the identities hold to rounding error rather than quadrature
//! error.

use crate::error::{require, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

type CMatrix = DMatrix<Complex64>;

const HERMITICITY_TOL: f64 = 1.0e-12;
const TRACE_TOL: f64 = 1.0e-12;
const EIGENVALUE_FLOOR: f64 = -1.0e-12;

fn hermiticity_defect(m: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            worst = worst.max(d);
        }
    }
    worst
}

/// A density matrix plus a Hermitian operator family sampled on the uniform
/// time grid t_i = i·dt, with a real bias `u0` subtracted before any
/// quadrature (ΔU(t_i) = U(t_i) − u0·I).
#[derive(Debug, Clone, PartialEq)]
pub struct ToySystem {
    rho: CMatrix,
    family: Vec<CMatrix>,
    dt: f64,
    u0: f64,
}

impl ToySystem {
    /// Validates the state and family: ρ must be Hermitian (entrywise to
    /// 10⁻¹²), positive semidefinite (eigenvalues ≥ −10⁻¹²) with unit trace
    /// (±10⁻¹²); every family member must be square of the same dimension
    /// d ≥ 2 and Hermitian to the same tolerance.
    pub fn new(rho: CMatrix, family: Vec<CMatrix>, dt: f64, u0: f64) -> Result<Self> {
        let d = rho.nrows();
        require(
            rho.is_square() && d >= 2,
            "dim",
            format!("rho must be square with dimension >= 2, got {}x{}", d, rho.ncols()),
        )?;
        require(
            hermiticity_defect(&rho) <= HERMITICITY_TOL,
            "rho",
            "density matrix is not Hermitian",
        )?;
        let trace = rho.trace();
        require(
            (trace - Complex64::ONE).norm() <= TRACE_TOL,
            "rho",
            format!("trace must be 1, got {trace}"),
        )?;
        let min_eig = rho
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        require(
            min_eig >= EIGENVALUE_FLOOR,
            "rho",
            format!("not positive semidefinite: smallest eigenvalue {min_eig}"),
        )?;
        require(!family.is_empty(), "family", "need at least one time node")?;
        for (i, u) in family.iter().enumerate() {
            require(
                u.nrows() == d && u.ncols() == d,
                "family",
                format!("operator at node {i} is {}x{}, expected {d}x{d}", u.nrows(), u.ncols()),
            )?;
            require(
                hermiticity_defect(u) <= HERMITICITY_TOL,
                "family",
                format!("operator at node {i} is not Hermitian"),
            )?;
        }
        require(
            dt.is_finite() && dt > 0.0,
            "dt",
            format!("must be positive and finite, got {dt}"),
        )?;
        require(u0.is_finite(), "u0", format!("must be finite, got {u0}"))?;
        Ok(Self { rho, family, dt, u0 })
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    /// Number of time nodes.
    pub fn nodes(&self) -> usize {
        self.family.len()
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn u0(&self) -> f64 {
        self.u0
    }

    pub fn rho(&self) -> &CMatrix {
        &self.rho
    }

    /// Window length t_m = (n−1)·dt spanned by the grid.
    pub fn duration(&self) -> f64 {
        self.dt * (self.family.len() - 1) as f64
    }

    // Bias-subtracted operators ΔU(t_i) = U(t_i) − u0·I.
    fn delta_ops(&self) -> Vec<CMatrix> {
        let bias = CMatrix::identity(self.dim(), self.dim()) * Complex64::new(self.u0, 0.0);
        self.family.iter().map(|u| u - &bias).collect()
    }

    // Trapezoidal weights on the grid: dt/2 at the ends, dt inside, and a
    // single weight dt when there is only one node.
    fn weights(&self) -> Vec<f64> {
        let n = self.family.len();
        if n == 1 {
            return vec![self.dt];
        }
        (0..n)
            .map(|i| if i == 0 || i == n - 1 { self.dt / 2.0 } else { self.dt })
            .collect()
    }
}

fn expectation(rho: &CMatrix, op: &CMatrix) -> Complex64 {
    (rho * op).trace()
}

/// Quadrature operators (Û_s, Û_c) = Σ_i w_i·ΔU(t_i)·{sin, cos}(ωt_i) with
/// trapezoidal weights; both are Hermitian because the family is.
pub fn quadrature_operators(sys: &ToySystem, omega: f64) -> Result<(CMatrix, CMatrix)> {
    require(
        omega.is_finite(),
        "omega",
        format!("must be finite, got {omega}"),
    )?;
    let d = sys.dim();
    let weights = sys.weights();
    let mut us = CMatrix::zeros(d, d);
    let mut uc = CMatrix::zeros(d, d);
    for (i, delta) in sys.delta_ops().iter().enumerate() {
        let t = sys.dt * i as f64;
        let ws = Complex64::new(weights[i] * (omega * t).sin(), 0.0);
        let wc = Complex64::new(weights[i] * (omega * t).cos(), 0.0);
        us += delta * ws;
        uc += delta * wc;
    }
    Ok((us, uc))
}

/// Spectrum estimate, its commutator lower bound, and the slack of both
/// inequality forms at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck {
    /// tr(ρÛ_s²): raw second moment of the sine quadrature.
    pub sine_moment: f64,
    /// tr(ρÛ_c²).
    pub cosine_moment: f64,
    /// tr(ρ[Û_s, Û_c]) — purely imaginary up to rounding.
    pub commutator: Complex64,
    /// S_est = (sine_moment + cosine_moment)/t_m.
    pub s_est: f64,
    /// S_F_est = |commutator|/t_m: the indeterminacy floor.
    pub s_f_est: f64,
    /// S_est − S_F_est (the sum-form inequality).
    pub slack: f64,
    /// sine_moment·cosine_moment − ¼|commutator|² (the product form).
    pub product_slack: f64,
}

/// Evaluates S_est = (tr(ρÛ_s²)+tr(ρÛ_c²))/t_m against the indeterminacy
/// floor S_F_est = |tr(ρ[Û_s,Û_c])|/t_m, returning both inequality slacks.
pub fn spectrum_and_bound(sys: &ToySystem, omega: f64) -> Result<BoundCheck> {
    require(
        sys.nodes() >= 2,
        "family",
        "need at least two time nodes for a spectrum",
    )?;
    let (us, uc) = quadrature_operators(sys, omega)?;
    let sine_moment = expectation(&sys.rho, &(&us * &us)).re;
    let cosine_moment = expectation(&sys.rho, &(&uc * &uc)).re;
    let commutator = expectation(&sys.rho, &(&us * &uc - &uc * &us));
    let t_m = sys.duration();
    let s_est = (sine_moment + cosine_moment) / t_m;
    let s_f_est = commutator.norm() / t_m;
    Ok(BoundCheck {
        sine_moment,
        cosine_moment,
        commutator,
        s_est,
        s_f_est,
        slack: s_est - s_f_est,
        product_slack: sine_moment * cosine_moment - 0.25 * commutator.norm_sqr(),
    })
}

/// Two independent evaluations of tr(ρ[Û_s, Û_c]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorCheck {
    /// Matrix-product route: trace of ρ[Û_s, Û_c].
    pub lhs: Complex64,
    /// Double-sum route: Σ_{ij} w_i w_j tr(ρΔU(t_i)ΔU(t_j))·sin(ω(t_i−t_j)).
    pub rhs: Complex64,
    pub abs_diff: f64,
}

/// Checks the algebraic identity equating the commutator expectation with
/// the antisymmetrized double sum over the grid; both sides share the grid,
/// so the difference is pure rounding error.
pub fn commutator_identity(sys: &ToySystem, omega: f64) -> Result<CommutatorCheck> {
    require(
        omega.is_finite(),
        "omega",
        format!("must be finite, got {omega}"),
    )?;
    let (us, uc) = quadrature_operators(sys, omega)?;
    let lhs = expectation(&sys.rho, &(&us * &uc - &uc * &us));

    let deltas = sys.delta_ops();
    let weights = sys.weights();
    let n = deltas.len();
    // correlators G_ij = tr(ρΔU_i ΔU_j) via P_i = ρΔU_i, then tr(P_i ΔU_j)
    let products: Vec<CMatrix> = deltas.iter().map(|d| &sys.rho * d).collect();
    let mut rhs = Complex64::ZERO;
    for i in 0..n {
        for j in 0..n {
            let mut g = Complex64::ZERO;
            for a in 0..sys.dim() {
                for b in 0..sys.dim() {
                    g += products[i][(a, b)] * deltas[j][(b, a)];
                }
            }
            let phase = (omega * sys.dt * (i as f64 - j as f64)).sin();
            rhs += g * Complex64::new(weights[i] * weights[j] * phase, 0.0);
        }
    }
    Ok(CommutatorCheck {
        lhs,
        rhs,
        abs_diff: (lhs - rhs).norm(),
    })
}

/// Result of checking one randomly generated system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub index: usize,
    pub dim: usize,
    pub nodes: usize,
    pub omega: f64,
    /// S_est − S_F_est.
    pub sum_slack: f64,
    /// tr(ρÛ_s²)·tr(ρÛ_c²) − ¼|tr(ρ[Û_s,Û_c])|².
    pub product_slack: f64,
    /// |lhs − rhs| of the commutator identity / max(|lhs|, 1).
    pub commutator_residual: f64,
    /// |Re tr(ρ[Û_s,Û_c])| — should vanish for Hermitian operators.
    pub commutator_real_part: f64,
    /// |tr(ρ[Û_s,Û_c])(ω) + tr(ρ[Û_s,Û_c])(−ω)| — oddness defect in ω.
    pub odd_defect: f64,
}

// One seed-deterministic random system plus a probe frequency: Ginibre-
// normalized (or pure) ρ, independently symmetrized Gaussian operators per
// node, O(1) window and frequency so the checked quantities are well scaled.
fn random_system(rng: &mut ChaCha8Rng, max_dim: usize, max_nodes: usize) -> (ToySystem, f64) {
    let d = 2 + (rng.random::<u32>() as usize) % (max_dim - 1);
    let n = 2 + (rng.random::<u32>() as usize) % (max_nodes - 1);
    let pure = rng.random::<bool>();

    let normal = |rng: &mut ChaCha8Rng| -> f64 { rng.sample(StandardNormal) };
    let rho = if pure {
        let v = DMatrix::from_fn(d, 1, |_, _| Complex64::new(normal(rng), normal(rng)));
        let norm2 = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        (&v * v.adjoint()) / Complex64::new(norm2, 0.0)
    } else {
        let m = DMatrix::from_fn(d, d, |_, _| Complex64::new(normal(rng), normal(rng)));
        let mm = &m * m.adjoint();
        let trace = mm.trace();
        mm / trace
    };

    let family: Vec<CMatrix> = (0..n)
        .map(|_| {
            let a = DMatrix::from_fn(d, d, |_, _| Complex64::new(normal(rng), normal(rng)));
            (&a + a.adjoint()) * Complex64::new(0.5, 0.0)
        })
        .collect();

    let u0 = 2.0 * rng.random::<f64>() - 1.0;
    let t_m = 10.0f64.powf(rng.random::<f64>() - 0.5);
    let dt = t_m / (n - 1) as f64;
    let omega = 10.0f64.powf(rng.random::<f64>() - 0.5);

    let sys = ToySystem::new(rho, family, dt, u0).expect("generated system is valid");
    (sys, omega)
}

/// Generates `count` seed-deterministic random systems with d ≤ `max_dim`
/// and n ≤ `max_nodes`, and evaluates every inequality and identity on each.
pub fn random_sweep(
    count: usize,
    seed: u64,
    max_dim: usize,
    max_nodes: usize,
) -> Result<Vec<SweepRecord>> {
    require(count >= 1, "count", "need at least one system")?;
    require(max_dim >= 2, "max_dim", format!("must be >= 2, got {max_dim}"))?;
    require(
        max_nodes >= 2,
        "max_nodes",
        format!("must be >= 2, got {max_nodes}"),
    )?;
    let mut records = Vec::with_capacity(count);
    for index in 0..count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(1 + index as u64);
        let (sys, omega) = random_system(&mut rng, max_dim, max_nodes);
        let bound = spectrum_and_bound(&sys, omega)?;
        let identity = commutator_identity(&sys, omega)?;
        let (us_neg, uc_neg) = quadrature_operators(&sys, -omega)?;
        let commutator_neg = expectation(&sys.rho, &(&us_neg * &uc_neg - &uc_neg * &us_neg));
        records.push(SweepRecord {
            index,
            dim: sys.dim(),
            nodes: sys.nodes(),
            omega,
            sum_slack: bound.slack,
            product_slack: bound.product_slack,
            commutator_residual: identity.abs_diff / identity.lhs.norm().max(1.0),
            commutator_real_part: bound.commutator.re.abs(),
            odd_defect: (bound.commutator + commutator_neg).norm(),
        });
    }
    Ok(records)
}

/// Aggregate slack/residual statistics over a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSummary {
    pub count: usize,
    pub min_sum_slack: f64,
    pub median_sum_slack: f64,
    pub min_product_slack: f64,
    pub median_product_slack: f64,
    pub max_commutator_residual: f64,
    pub max_commutator_real_part: f64,
    pub max_odd_defect: f64,
}

impl SweepSummary {
    pub fn from_records(records: &[SweepRecord]) -> Result<Self> {
        require(!records.is_empty(), "records", "need at least one record")?;
        let median = |mut v: Vec<f64>| -> f64 {
            v.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
            let m = v.len() / 2;
            if v.len() % 2 == 1 {
                v[m]
            } else {
                0.5 * (v[m - 1] + v[m])
            }
        };
        let fold_min = |f: fn(&SweepRecord) -> f64| {
            records.iter().map(f).fold(f64::INFINITY, f64::min)
        };
        let fold_max = |f: fn(&SweepRecord) -> f64| {
            records.iter().map(f).fold(f64::NEG_INFINITY, f64::max)
        };
        Ok(Self {
            count: records.len(),
            min_sum_slack: fold_min(|r| r.sum_slack),
            median_sum_slack: median(records.iter().map(|r| r.sum_slack).collect()),
            min_product_slack: fold_min(|r| r.product_slack),
            median_product_slack: median(records.iter().map(|r| r.product_slack).collect()),
            max_commutator_residual: fold_max(|r| r.commutator_residual),
            max_commutator_real_part: fold_max(|r| r.commutator_real_part),
            max_odd_defect: fold_max(|r| r.odd_defect),
        })
    }
}

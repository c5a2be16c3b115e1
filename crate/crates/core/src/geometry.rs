//! Box self-potential and the geometric factor g entering the noise floor.
//!
//! The sample is a rectangular box occupying [0,l]×[0,w]×[0,a] (length along
//! x, width along y, thickness along z, all in cm). Its Newtonian
//! self-potential Φ(p) = ∫_box d³r / |r − p| has an exact corner-sum closed
//! form; the geometric factor is g = (Φ(x₁) + Φ(x₂)) / (3Ω) for the two
//! voltage-probe points, with units cm⁻¹.

use crate::error::{require, Error, Result};
use crate::scalar::{lit, Real};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Box-shaped sample; dimensions in cm, volume Ω = w·l·a in cm³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxSample<T: Real = f64> {
    w: T,
    l: T,
    a: T,
}

impl<T: Real> BoxSample<T> {
    /// Width, length and thickness in cm; all must be positive and finite.
    pub fn new(w_cm: T, l_cm: T, a_cm: T) -> Result<Self> {
        for (v, field) in [(w_cm, "w"), (l_cm, "l"), (a_cm, "a")] {
            require(
                v.is_finite() && v > T::zero(),
                field,
                format!("box dimension must be positive and finite, got {v}"),
            )?;
        }
        Ok(BoxSample { w: w_cm, l: l_cm, a: a_cm })
    }

    pub fn w(&self) -> T {
        self.w
    }

    pub fn l(&self) -> T {
        self.l
    }

    pub fn a(&self) -> T {
        self.a
    }

    /// Volume Ω (cm³).
    pub fn volume(&self) -> T {
        self.w * self.l * self.a
    }

    /// Uniformly scaled copy (λ·w, λ·l, λ·a).
    pub fn scaled(&self, lambda: T) -> Result<Self> {
        BoxSample::new(self.w * lambda, self.l * lambda, self.a * lambda)
    }

    fn contains(&self, p: [T; 3]) -> bool {
        p[0] >= T::zero()
            && p[0] <= self.l
            && p[1] >= T::zero()
            && p[1] <= self.w
            && p[2] >= T::zero()
            && p[2] <= self.a
    }
}

/// How the probe points were chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbePlacement {
    /// Midpoints of the two end faces at x = 0 and x = l, centered in width
    /// and thickness (the default; reproduces the published g column).
    EndFaceMidpoints,
    /// Caller-supplied coordinates.
    Explicit,
}

/// The two voltage-probe points x₁, x₂ (cm), constrained to the closed box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbePair<T: Real = f64> {
    x1: [T; 3],
    x2: [T; 3],
    placement: ProbePlacement,
}

impl<T: Real> ProbePair<T> {
    /// Default placement: (0, w/2, a/2) and (l, w/2, a/2).
    pub fn end_face_midpoints(sample: &BoxSample<T>) -> Self {
        let half = lit::<T>(0.5);
        ProbePair {
            x1: [T::zero(), sample.w * half, sample.a * half],
            x2: [sample.l, sample.w * half, sample.a * half],
            placement: ProbePlacement::EndFaceMidpoints,
        }
    }

    /// Explicit probe coordinates; both points must lie in the closed box.
    /// Coincident probes are allowed (degenerate two-terminal limit).
    pub fn explicit(sample: &BoxSample<T>, x1: [T; 3], x2: [T; 3]) -> Result<Self> {
        for (p, field) in [(x1, "x1"), (x2, "x2")] {
            require(
                p.iter().all(|c| c.is_finite()),
                field,
                "probe coordinates must be finite",
            )?;
            require(
                sample.contains(p),
                field,
                format!(
                    "probe ({}, {}, {}) lies outside the closed box [0,{}]x[0,{}]x[0,{}]",
                    p[0], p[1], p[2], sample.l, sample.w, sample.a
                ),
            )?;
        }
        Ok(ProbePair { x1, x2, placement: ProbePlacement::Explicit })
    }

    pub fn x1(&self) -> [T; 3] {
        self.x1
    }

    pub fn x2(&self) -> [T; 3] {
        self.x2
    }

    pub fn placement(&self) -> ProbePlacement {
        self.placement
    }

    /// Copy with the probes swapped.
    pub fn swapped(&self) -> Self {
        ProbePair { x1: self.x2, x2: self.x1, placement: self.placement }
    }
}

// One signed corner contribution of the closed-form prism potential:
//   F(x,y,z) = xy·ln(z+r) + yz·ln(x+r) + zx·ln(y+r)
//              − ½x²·atan(yz/xr) − ½y²·atan(zx/yr) − ½z²·atan(xy/zr)
// with r = |(x,y,z)|. Terms whose prefactor vanishes are defined by their
// limit, 0. The arctangents must use the principal branch (atan, not atan2):
// the corner cancellation for points outside the box breaks otherwise.
fn corner_term<T: Real>(x: T, y: T, z: T) -> T {
    let r = (x * x + y * y + z * z).sqrt();
    if r == T::zero() {
        return T::zero();
    }
    let half = lit::<T>(0.5);
    let mut t = T::zero();
    if x * y != T::zero() && z + r > T::zero() {
        t = t + x * y * (z + r).ln();
    }
    if y * z != T::zero() && x + r > T::zero() {
        t = t + y * z * (x + r).ln();
    }
    if z * x != T::zero() && y + r > T::zero() {
        t = t + z * x * (y + r).ln();
    }
    if x != T::zero() {
        t = t - half * x * x * (y * z / (x * r)).atan();
    }
    if y != T::zero() {
        t = t - half * y * y * (z * x / (y * r)).atan();
    }
    if z != T::zero() {
        t = t - half * z * z * (x * y / (z * r)).atan();
    }
    t
}

/// Self-potential Φ(p) = ∫_box d³r / |r − p| (cm²), exact corner-sum closed
/// form. `p` may lie inside, on, or outside the box; the 1/|r−p| singularity
/// is integrable and the on-surface limits are handled.
pub fn box_potential<T: Real>(sample: &BoxSample<T>, p: [T; 3]) -> Result<T> {
    require(
        p.iter().all(|c| c.is_finite()),
        "p",
        "evaluation point must be finite",
    )?;
    let xs = [T::zero() - p[0], sample.l - p[0]];
    let ys = [T::zero() - p[1], sample.w - p[1]];
    let zs = [T::zero() - p[2], sample.a - p[2]];
    let mut total = T::zero();
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            for (k, &z) in zs.iter().enumerate() {
                // sign: product over axes of +1 (upper limit) / −1 (lower)
                let negative = (i == 0) ^ (j == 0) ^ (k == 0);
                let term = corner_term(x, y, z);
                total = if negative { total - term } else { total + term };
            }
        }
    }
    Ok(total)
}

/// Number of samples drawn per RNG stream by [`mc_box_potential`]; the
/// estimate is a fixed-order sum over streams, so it does not depend on how
/// the work is sharded.
const MC_BATCH: u64 = 4096;

/// Monte Carlo oracle for [`box_potential`]: uniform sampling over the box,
/// Φ ≈ Ω·mean(1/|rᵢ − p|). Returns (estimate, standard error), both cm².
/// Deterministic for a fixed seed.
pub fn mc_box_potential<T: Real>(
    sample: &BoxSample<T>,
    p: [T; 3],
    n: u64,
    seed: u64,
) -> Result<(T, T)> {
    require(
        p.iter().all(|c| c.is_finite()),
        "p",
        "evaluation point must be finite",
    )?;
    require(n >= 1000, "n", format!("need at least 1000 samples, got {n}"))?;
    let mut sum = T::zero();
    let mut sum_sq = T::zero();
    let batches = n.div_ceil(MC_BATCH);
    for b in 0..batches {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b);
        let count = MC_BATCH.min(n - b * MC_BATCH);
        let mut bs = T::zero();
        let mut bs2 = T::zero();
        for _ in 0..count {
            // draws are made in f64 so the stream is identical for every T
            let x = sample.l * lit::<T>(rng.random::<f64>());
            let y = sample.w * lit::<T>(rng.random::<f64>());
            let z = sample.a * lit::<T>(rng.random::<f64>());
            let dx = x - p[0];
            let dy = y - p[1];
            let dz = z - p[2];
            let inv = (dx * dx + dy * dy + dz * dz).sqrt().recip();
            bs = bs + inv;
            bs2 = bs2 + inv * inv;
        }
        sum = sum + bs;
        sum_sq = sum_sq + bs2;
    }
    let nt = lit::<T>(n as f64);
    let mean = sum / nt;
    let var = (sum_sq - nt * mean * mean) / (nt - T::one());
    let se = (var / nt).sqrt();
    let omega = sample.volume();
    Ok((omega * mean, omega * se))
}

/// Geometric factor g = (Φ(x₁) + Φ(x₂)) / (3Ω) in cm⁻¹.
pub fn geometric_factor<T: Real>(sample: &BoxSample<T>, probes: &ProbePair<T>) -> Result<T> {
    let phi1 = box_potential(sample, probes.x1())?;
    let phi2 = box_potential(sample, probes.x2())?;
    let g = (phi1 + phi2) / (lit::<T>(3.0) * sample.volume());
    if !(g.is_finite() && g > T::zero()) {
        return Err(Error::numerical(
            "geometric_factor",
            format!("expected a positive finite g, got {g}"),
        ));
    }
    Ok(g)
}

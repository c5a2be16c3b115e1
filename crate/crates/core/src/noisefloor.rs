//! The noise-floor coefficient κ = 2e⁴g/(πmℏc³) (dimensionless, Gaussian
//! CGS, summed over carrier species), the resulting fundamental spectrum
//! S_F(f) = κU₀²/|f|, and the sample comparison report matching computed κ
//! against published per-sample values.

use crate::error::{require, Error, Result};
use crate::geometry::{geometric_factor, BoxSample, ProbePair};
use crate::spectral::{SpectrumSeries, SpectrumUnit};
use crate::units::{convert, CarrierSpecies, PhysicalConstants, Unit};
use std::io::Write;

/// κ for one geometric factor, with the per-species breakdown.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseFloorResult {
    g_per_cm: f64,
    kappa: f64,
    per_species: Vec<(String, f64)>,
    u0_statvolt: Option<f64>,
}

impl NoiseFloorResult {
    /// Geometric factor the coefficient was computed from (cm⁻¹).
    pub fn g_per_cm(&self) -> f64 {
        self.g_per_cm
    }

    /// Total dimensionless coefficient (sum of the species contributions).
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// (label, κ contribution) per carrier species.
    pub fn per_species(&self) -> &[(String, f64)] {
        &self.per_species
    }

    /// Bias voltage in statvolt, when one was attached.
    pub fn u0_statvolt(&self) -> Option<f64> {
        self.u0_statvolt
    }
}

// κ from raw CGS ingredients; separated out so unit-consistency can be
// checked by rescaling every base unit.
fn kappa_from_parts(e: f64, hbar: f64, c: f64, m0: f64, g: f64, mass_ratio: f64) -> f64 {
    2.0 * e.powi(4) * g / (std::f64::consts::PI * mass_ratio * m0 * hbar * c.powi(3))
}

/// κ with a per-species breakdown; optionally carries a bias in statvolt.
pub fn noise_floor(
    g_per_cm: f64,
    species: &[CarrierSpecies],
    u0_statvolt: Option<f64>,
) -> Result<NoiseFloorResult> {
    require(
        g_per_cm.is_finite() && g_per_cm > 0.0,
        "g",
        format!("geometric factor must be positive and finite, got {g_per_cm}"),
    )?;
    require(!species.is_empty(), "species", "need at least one carrier species")?;
    if let Some(u0) = u0_statvolt {
        require(u0.is_finite(), "u0", format!("bias must be finite, got {u0}"))?;
    }
    let constants = PhysicalConstants::codata();
    let per_species: Vec<(String, f64)> = species
        .iter()
        .map(|s| {
            let contribution = kappa_from_parts(
                constants.e_esu(),
                constants.hbar_erg_s(),
                constants.c_cm_per_s(),
                constants.m0_g(),
                g_per_cm,
                s.mass_ratio(),
            );
            (s.label().to_string(), contribution)
        })
        .collect();
    let kappa = per_species.iter().map(|(_, k)| k).sum();
    Ok(NoiseFloorResult {
        g_per_cm,
        kappa,
        per_species,
        u0_statvolt,
    })
}

/// Dimensionless κ = (2e⁴g/(πℏc³))·Σᵢ 1/mᵢ over the carrier species.
pub fn kappa(g_per_cm: f64, species: &[CarrierSpecies]) -> Result<f64> {
    Ok(noise_floor(g_per_cm, species, None)?.kappa)
}

/// Fundamental spectrum S_F(f) = κU₀²/|f| in V²/Hz on the given grid.
/// The bias is supplied in volts; κ is dimensionless, so no further unit
/// conversion enters. Zero frequency is singular and rejected.
pub fn fundamental_spectrum(
    kappa: f64,
    u0_volts: f64,
    f_grid: &[f64],
) -> Result<SpectrumSeries> {
    require(
        kappa.is_finite() && kappa > 0.0,
        "kappa",
        format!("must be positive and finite, got {kappa}"),
    )?;
    require(
        u0_volts.is_finite(),
        "u0",
        format!("bias must be finite, got {u0_volts}"),
    )?;
    require(
        f_grid.iter().all(|f| *f != 0.0),
        "f_grid",
        "S_F is singular at f = 0; remove the zero-frequency point",
    )?;
    let level = kappa * u0_volts * u0_volts;
    let values: Vec<f64> = f_grid.iter().map(|f| level / f.abs()).collect();
    SpectrumSeries::new(f_grid.to_vec(), values, SpectrumUnit::VoltsSquaredPerHz)
}

/// One physical sample: geometry, probe placement, carrier content, and
/// optional published reference values for the comparison report.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    name: String,
    sample: BoxSample,
    probes: ProbePair,
    species: Vec<CarrierSpecies>,
    g_paper_per_cm: Option<f64>,
    kappa_th_paper: Option<f64>,
    kappa_exp_paper: Option<f64>,
}

impl SampleRecord {
    pub fn new(
        name: impl Into<String>,
        sample: BoxSample,
        probes: ProbePair,
        species: Vec<CarrierSpecies>,
    ) -> Result<Self> {
        let name = name.into();
        require(!name.trim().is_empty(), "name", "must not be empty")?;
        require(!species.is_empty(), "species", "need at least one carrier species")?;
        Ok(Self {
            name,
            sample,
            probes,
            species,
            g_paper_per_cm: None,
            kappa_th_paper: None,
            kappa_exp_paper: None,
        })
    }

    /// Attaches published reference values; each must be nonnegative.
    pub fn with_paper_values(
        mut self,
        g_paper_per_cm: Option<f64>,
        kappa_th_paper: Option<f64>,
        kappa_exp_paper: Option<f64>,
    ) -> Result<Self> {
        for (value, field) in [
            (g_paper_per_cm, "g_paper_per_cm"),
            (kappa_th_paper, "kappa_th_paper"),
            (kappa_exp_paper, "kappa_exp_paper"),
        ] {
            if let Some(v) = value {
                require(
                    v.is_finite() && v >= 0.0,
                    field,
                    format!("published value must be nonnegative, got {v}"),
                )?;
            }
        }
        self.g_paper_per_cm = g_paper_per_cm;
        self.kappa_th_paper = kappa_th_paper;
        self.kappa_exp_paper = kappa_exp_paper;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sample(&self) -> &BoxSample {
        &self.sample
    }

    pub fn probes(&self) -> &ProbePair {
        &self.probes
    }

    pub fn species(&self) -> &[CarrierSpecies] {
        &self.species
    }

    pub fn g_paper_per_cm(&self) -> Option<f64> {
        self.g_paper_per_cm
    }

    pub fn kappa_th_paper(&self) -> Option<f64> {
        self.kappa_th_paper
    }

    pub fn kappa_exp_paper(&self) -> Option<f64> {
        self.kappa_exp_paper
    }
}

/// One line of the sample comparison report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub name: String,
    /// Geometric factor computed from the descriptor geometry (cm⁻¹).
    pub g_calc_per_cm: f64,
    pub g_paper_per_cm: Option<f64>,
    /// κ computed from g_calc and the descriptor masses.
    pub kappa_calc: f64,
    pub kappa_th_paper: Option<f64>,
    pub kappa_exp_paper: Option<f64>,
    /// κ_calc/g_calc (cm) — constant across samples with equal masses.
    pub kappa_per_g_cm: f64,
    /// Set when |κ_calc − κ_th_paper|/κ_th_paper > 0.10; `None` when no
    /// published κ is available to compare against.
    pub flagged: Option<bool>,
}

/// Relative κ disagreement above which a row is flagged.
pub const FLAG_THRESHOLD: f64 = 0.10;

/// Computes g and κ for each record and compares against the published
/// values carried by the record. An empty input produces an empty report.
pub fn table_one_report(records: &[SampleRecord]) -> Result<Vec<ReportRow>> {
    records
        .iter()
        .map(|record| {
            let g_calc = geometric_factor(&record.sample, &record.probes)?;
            let kappa_calc = kappa(g_calc, &record.species)?;
            let flagged = record
                .kappa_th_paper
                .map(|k_th| (kappa_calc - k_th).abs() / k_th > FLAG_THRESHOLD);
            Ok(ReportRow {
                name: record.name.clone(),
                g_calc_per_cm: g_calc,
                g_paper_per_cm: record.g_paper_per_cm,
                kappa_calc,
                kappa_th_paper: record.kappa_th_paper,
                kappa_exp_paper: record.kappa_exp_paper,
                kappa_per_g_cm: kappa_calc / g_calc,
                flagged,
            })
        })
        .collect()
}

/// Writes the report as CSV; absent published values become empty cells.
pub fn write_report_csv<W: Write>(mut out: W, rows: &[ReportRow]) -> Result<()> {
    let io_err = |e: std::io::Error| Error::validation("output", e.to_string());
    writeln!(
        out,
        "name,g_calc_per_cm,g_paper_per_cm,kappa_calc,kappa_th_paper,kappa_exp_paper,kappa_per_g_cm,flagged"
    )
    .map_err(io_err)?;
    let opt = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
    for row in rows {
        writeln!(
            out,
            "{},{:e},{},{:e},{},{},{:e},{}",
            row.name,
            row.g_calc_per_cm,
            opt(row.g_paper_per_cm),
            row.kappa_calc,
            opt(row.kappa_th_paper),
            opt(row.kappa_exp_paper),
            row.kappa_per_g_cm,
            row.flagged.map(|f| f.to_string()).unwrap_or_default(),
        )
        .map_err(io_err)?;
    }
    Ok(())
}

// Descriptor keys: geometry and masses are required, published values and
// probe overrides optional.
const REQUIRED_KEYS: [&str; 6] = [
    "name",
    "width_um",
    "length_um",
    "thickness_nm",
    "electron_mass_ratio",
    "hole_mass_ratio",
];
const OPTIONAL_KEYS: [&str; 5] = [
    "g_paper_per_cm",
    "kappa_th_paper",
    "kappa_exp_paper",
    "probe1_um",
    "probe2_um",
];

fn parse_number(value: &str, key: &str) -> Result<f64> {
    value
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::validation(key, format!("cannot parse '{}' as a number", value.trim())))
}

fn parse_point_um(value: &str, key: &str) -> Result<[f64; 3]> {
    let parts: Vec<&str> = value.split(',').collect();
    require(
        parts.len() == 3,
        key,
        format!("expected 'x,y,z' in µm, got '{value}'"),
    )?;
    let mut point = [0.0; 3];
    for (slot, part) in point.iter_mut().zip(&parts) {
        *slot = convert(parse_number(part, key)?, Unit::Micrometer, Unit::Centimeter)?;
    }
    Ok(point)
}

/// Parses a `key=value` sample descriptor (`#` starts a comment). Geometry
/// arrives in µm/nm and is converted to cm; probe overrides (`probe1_um`,
/// `probe2_um`, comma-separated µm triples) must come as a pair, otherwise
/// probes default to the end-face midpoints.
pub fn parse_sample_descriptor(text: &str) -> Result<SampleRecord> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::validation("descriptor", format!("expected key=value, got '{line}'")))?;
        let key = key.trim().to_string();
        require(
            REQUIRED_KEYS.contains(&key.as_str()) || OPTIONAL_KEYS.contains(&key.as_str()),
            &key,
            "unknown descriptor key",
        )?;
        require(
            pairs.iter().all(|(k, _)| *k != key),
            &key,
            "key appears more than once",
        )?;
        pairs.push((key, value.trim().to_string()));
    }
    let get = |key: &str| pairs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
    for key in REQUIRED_KEYS {
        require(get(key).is_some(), key, "required key is missing")?;
    }

    let name = get("name").unwrap();
    let mut dims_cm = [0.0; 3];
    for (slot, (key, unit)) in dims_cm.iter_mut().zip([
        ("width_um", Unit::Micrometer),
        ("length_um", Unit::Micrometer),
        ("thickness_nm", Unit::Nanometer),
    ]) {
        let raw = parse_number(get(key).unwrap(), key)?;
        require(
            raw.is_finite() && raw > 0.0,
            key,
            format!("dimension must be positive, got {raw}"),
        )?;
        *slot = convert(raw, unit, Unit::Centimeter)?;
    }
    let sample = BoxSample::new(dims_cm[0], dims_cm[1], dims_cm[2])?;

    let mut species = Vec::new();
    for (key, label) in [
        ("electron_mass_ratio", "electron"),
        ("hole_mass_ratio", "hole"),
    ] {
        let ratio = parse_number(get(key).unwrap(), key)?;
        require(
            ratio.is_finite() && ratio > 0.0,
            key,
            format!("mass ratio must be positive, got {ratio}"),
        )?;
        species.push(CarrierSpecies::new(label, ratio)?);
    }

    let probes = match (get("probe1_um"), get("probe2_um")) {
        (None, None) => ProbePair::end_face_midpoints(&sample),
        (Some(p1), Some(p2)) => ProbePair::explicit(
            &sample,
            parse_point_um(p1, "probe1_um")?,
            parse_point_um(p2, "probe2_um")?,
        )?,
        (Some(_), None) => {
            return Err(Error::validation("probe2_um", "probe1_um given without probe2_um"))
        }
        (None, Some(_)) => {
            return Err(Error::validation("probe1_um", "probe2_um given without probe1_um"))
        }
    };

    let optional = |key: &str| -> Result<Option<f64>> {
        get(key).map(|v| parse_number(v, key)).transpose()
    };
    SampleRecord::new(name, sample, probes, species)?.with_paper_values(
        optional("g_paper_per_cm")?,
        optional("kappa_th_paper")?,
        optional("kappa_exp_paper")?,
    )
}

//! Physical constants and the unit conversions used at the I/O boundary.
//!
//! All internal computation is Gaussian CGS: the noise coefficient
//! κ = 2e⁴g/(πmℏc³) is dimensionless only with the charge in esu and the
//! geometry factor in cm⁻¹. SI units appear exclusively at interfaces.

use crate::error::{require, Error, Result};

/// Elementary charge (esu), CODATA 2018.
pub const ELEMENTARY_CHARGE_ESU: f64 = 4.803_204_712_57e-10;
/// Reduced Planck constant (erg·s), CODATA 2018.
pub const HBAR_ERG_S: f64 = 1.054_571_817e-27;
/// Speed of light (cm/s), exact.
pub const SPEED_OF_LIGHT_CM_PER_S: f64 = 2.997_924_58e10;
/// Free electron mass (g), CODATA 2018.
pub const ELECTRON_MASS_G: f64 = 9.109_383_7015e-28;

/// One statvolt in volts (exact: c in cm/s divided by 10⁸).
pub const VOLTS_PER_STATVOLT: f64 = 299.792_458;
/// One electronvolt in ergs (exact SI definition of the eV).
pub const ERG_PER_EV: f64 = 1.602_176_634e-12;

/// Gaussian-CGS constants bundle; immutable once constructed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    e_esu: f64,
    hbar_erg_s: f64,
    c_cm_per_s: f64,
    m0_g: f64,
}

impl PhysicalConstants {
    /// The compiled-in CODATA values (the only supported set; reproducibility
    /// of the sample table depends on them).
    pub const fn codata() -> Self {
        PhysicalConstants {
            e_esu: ELEMENTARY_CHARGE_ESU,
            hbar_erg_s: HBAR_ERG_S,
            c_cm_per_s: SPEED_OF_LIGHT_CM_PER_S,
            m0_g: ELECTRON_MASS_G,
        }
    }

    /// Elementary charge (esu).
    pub fn e_esu(&self) -> f64 {
        self.e_esu
    }

    /// Reduced Planck constant (erg·s).
    pub fn hbar_erg_s(&self) -> f64 {
        self.hbar_erg_s
    }

    /// Speed of light (cm/s).
    pub fn c_cm_per_s(&self) -> f64 {
        self.c_cm_per_s
    }

    /// Free electron mass (g).
    pub fn m0_g(&self) -> f64 {
        self.m0_g
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata()
    }
}

/// One charge-carrier species: a label and its effective mass in units of m₀.
#[derive(Debug, Clone, PartialEq)]
pub struct CarrierSpecies {
    label: String,
    mass_ratio: f64,
}

impl CarrierSpecies {
    pub fn new(label: impl Into<String>, mass_ratio: f64) -> Result<Self> {
        require(
            mass_ratio.is_finite() && mass_ratio > 0.0,
            "mass_ratio",
            format!("must be a positive finite number, got {mass_ratio}"),
        )?;
        Ok(CarrierSpecies {
            label: label.into(),
            mass_ratio,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Effective mass divided by the free electron mass (dimensionless).
    pub fn mass_ratio(&self) -> f64 {
        self.mass_ratio
    }

    /// Effective mass in grams.
    pub fn mass_g(&self, constants: &PhysicalConstants) -> f64 {
        self.mass_ratio * constants.m0_g()
    }
}

/// Units supported by [`convert`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    Volt,
    Statvolt,
    Micrometer,
    Nanometer,
    Centimeter,
    Kilogram,
    Gram,
    ElectronvoltSecond,
    ErgSecond,
}

impl Unit {
    pub fn symbol(&self) -> &'static str {
        match self {
            Unit::Volt => "V",
            Unit::Statvolt => "statvolt",
            Unit::Micrometer => "um",
            Unit::Nanometer => "nm",
            Unit::Centimeter => "cm",
            Unit::Kilogram => "kg",
            Unit::Gram => "g",
            Unit::ElectronvoltSecond => "eV*s",
            Unit::ErgSecond => "erg*s",
        }
    }
}

// Multiplicative factor for each supported directed pair; the reverse
// direction divides by the same factor so round trips stay within 1 ulp.
fn forward_factor(from: Unit, to: Unit) -> Option<f64> {
    use Unit::*;
    match (from, to) {
        (Volt, Statvolt) => Some(1.0 / VOLTS_PER_STATVOLT),
        (Micrometer, Centimeter) => Some(1.0e-4),
        (Nanometer, Centimeter) => Some(1.0e-7),
        (Kilogram, Gram) => Some(1.0e3),
        (ElectronvoltSecond, ErgSecond) => Some(ERG_PER_EV),
        _ => None,
    }
}

/// Converts `value` between the supported unit pairs
/// {V↔statvolt, μm↔cm, nm↔cm, kg↔g, eV·s↔erg·s}; exact scale factors only.
pub fn convert(value: f64, from: Unit, to: Unit) -> Result<f64> {
    require(
        value.is_finite(),
        "value",
        format!("must be finite, got {value}"),
    )?;
    if from == to {
        return Ok(value);
    }
    if let Some(k) = forward_factor(from, to) {
        Ok(value * k)
    } else if let Some(k) = forward_factor(to, from) {
        Ok(value / k)
    } else {
        Err(Error::validation(
            "unit pair",
            format!("{} -> {} is not supported", from.symbol(), to.symbol()),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_relative_eq, assert_ulps_eq};
    use proptest::prelude::*;

    #[test]
    fn volt_to_statvolt_matches_si_definition() {
        let sv = convert(1.0, Unit::Volt, Unit::Statvolt).unwrap();
        assert_relative_eq!(sv, 3.335_640_952e-3, max_relative = 1e-9);
        assert_relative_eq!(
            convert(1.0, Unit::Statvolt, Unit::Volt).unwrap(),
            299.792_458,
            max_relative = 1e-15
        );
    }

    #[test]
    fn length_prefix_conversions() {
        assert_eq!(convert(0.0, Unit::Micrometer, Unit::Centimeter).unwrap(), 0.0);
        assert_relative_eq!(
            convert(10.0, Unit::Nanometer, Unit::Centimeter).unwrap(),
            1.0e-6,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            convert(2.2, Unit::Micrometer, Unit::Centimeter).unwrap(),
            2.2e-4,
            max_relative = 1e-15
        );
    }

    #[test]
    fn unsupported_pair_is_a_validation_error() {
        let err = convert(1.0, Unit::Volt, Unit::Centimeter).unwrap_err();
        assert!(matches!(err, Error::Validation { .. }));
        assert!(err.to_string().contains("V -> cm"));
        // μm↔nm is deliberately absent from the table.
        assert!(convert(1.0, Unit::Micrometer, Unit::Nanometer).is_err());
    }

    #[test]
    fn non_finite_value_rejected() {
        assert!(convert(f64::NAN, Unit::Volt, Unit::Statvolt).is_err());
        assert!(convert(f64::INFINITY, Unit::Kilogram, Unit::Gram).is_err());
    }

    #[test]
    fn constants_match_codata_to_six_digits() {
        let c = PhysicalConstants::codata();
        assert_relative_eq!(c.e_esu(), 4.803_204e-10, max_relative = 1e-6);
        assert_relative_eq!(c.hbar_erg_s(), 1.054_572e-27, max_relative = 1e-6);
        assert_relative_eq!(c.c_cm_per_s(), 2.997_924_58e10, max_relative = 1e-12);
        assert_relative_eq!(c.m0_g(), 9.109_384e-28, max_relative = 1e-6);
    }

    #[test]
    fn carrier_species_rejects_nonpositive_mass() {
        assert!(CarrierSpecies::new("electrons", 0.06).is_ok());
        let err = CarrierSpecies::new("holes", -0.09).unwrap_err();
        assert!(err.to_string().contains("mass_ratio"));
    }

    proptest! {
        // Round trip is one multiply followed by one divide: each rounds at
        // most half an ulp, so the result stays within 1 ulp of the input.
        #[test]
        fn round_trip_within_one_ulp(
            value in -1.0e12..1.0e12f64,
            pair in 0usize..5,
        ) {
            let (a, b) = [
                (Unit::Volt, Unit::Statvolt),
                (Unit::Micrometer, Unit::Centimeter),
                (Unit::Nanometer, Unit::Centimeter),
                (Unit::Kilogram, Unit::Gram),
                (Unit::ElectronvoltSecond, Unit::ErgSecond),
            ][pair];
            let there = convert(value, a, b).unwrap();
            let back = convert(there, b, a).unwrap();
            assert_ulps_eq!(back, value, max_ulps = 1);
            let there2 = convert(back, a, b).unwrap();
            assert_ulps_eq!(there2, there, max_ulps = 1);
        }
    }
}

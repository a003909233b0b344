//! Unit-tagged quantities and frequency conventions.
//!
//! Every frequency held inside the crate is angular (rad/s). Configuration
//! files, data records and reports use ordinary frequency (Hz) with the 2π
//! conversion applied exactly once at the I/O boundary, by the functions in
//! this module.

use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Ordinary frequency (Hz) to angular frequency (rad/s).
#[inline]
pub fn angular_from_hz(hz: f64) -> f64 {
    TAU * hz
}

/// Angular frequency (rad/s) to ordinary frequency (Hz).
#[inline]
pub fn hz_from_angular(angular: f64) -> f64 {
    angular / TAU
}

/// A number with an explicit unit tag, as it appears in JSON documents.
///
/// Bare numbers are not accepted anywhere in configuration; the tag is
/// validated against the dimension expected by each field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: f64,
    pub unit: String,
}

impl Quantity {
    pub fn new(value: f64, unit: &str) -> Self {
        Quantity { value, unit: unit.to_string() }
    }
}

/// Dimension classes a config field may carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitClass {
    Length,
    /// Ordinary frequency; `rad/s` tags are divided by 2π on ingestion.
    Frequency,
    Time,
    Power,
    Temperature,
    MagneticField,
    Rate,
    Intensity,
    Mass,
    Dimensionless,
    Angle,
}

impl UnitClass {
    /// SI value of `1 <unit>` for this class, or `None` if the tag does not
    /// belong to the class. Frequencies convert to Hz, not rad/s.
    fn si_factor(self, unit: &str) -> Option<f64> {
        let table: &[(&str, f64)] = match self {
            UnitClass::Length => &[
                ("m", 1.0),
                ("mm", 1e-3),
                ("um", 1e-6),
                ("µm", 1e-6),
                ("nm", 1e-9),
            ],
            UnitClass::Frequency => &[
                ("Hz", 1.0),
                ("kHz", 1e3),
                ("MHz", 1e6),
                ("GHz", 1e9),
                ("THz", 1e12),
                ("rad/s", 1.0 / TAU),
            ],
            UnitClass::Time => &[
                ("s", 1.0),
                ("ms", 1e-3),
                ("us", 1e-6),
                ("µs", 1e-6),
                ("ns", 1e-9),
            ],
            UnitClass::Power => &[
                ("W", 1.0),
                ("mW", 1e-3),
                ("uW", 1e-6),
                ("µW", 1e-6),
                ("nW", 1e-9),
            ],
            UnitClass::Temperature => &[("K", 1.0), ("mK", 1e-3), ("uK", 1e-6), ("µK", 1e-6), ("nK", 1e-9)],
            UnitClass::MagneticField => &[("T", 1.0), ("mT", 1e-3), ("G", 1e-4), ("mG", 1e-7)],
            UnitClass::Rate => &[("1/s", 1.0), ("/s", 1.0)],
            UnitClass::Intensity => &[("W/m^2", 1.0), ("mW/cm^2", 10.0)],
            UnitClass::Mass => &[("kg", 1.0), ("u", 1.66053906660e-27)],
            UnitClass::Dimensionless => &[("1", 1.0), ("", 1.0)],
            UnitClass::Angle => &[("rad", 1.0), ("deg", std::f64::consts::PI / 180.0)],
        };
        table.iter().find(|(tag, _)| *tag == unit).map(|(_, k)| *k)
    }

    /// Canonical unit tag used when serialising SI values back out.
    pub fn canonical_tag(self) -> &'static str {
        match self {
            UnitClass::Length => "m",
            UnitClass::Frequency => "Hz",
            UnitClass::Time => "s",
            UnitClass::Power => "W",
            UnitClass::Temperature => "K",
            UnitClass::MagneticField => "T",
            UnitClass::Rate => "1/s",
            UnitClass::Intensity => "W/m^2",
            UnitClass::Mass => "kg",
            UnitClass::Dimensionless => "1",
            UnitClass::Angle => "rad",
        }
    }
}

impl Quantity {
    /// Convert to the SI value for the given dimension class.
    ///
    /// `field` names the owner in error messages.
    pub fn to_si(&self, class: UnitClass, field: &str) -> Result<f64> {
        match class.si_factor(&self.unit) {
            Some(k) => Ok(self.value * k),
            None => Err(Error::UnknownUnit { field: field.to_string(), unit: self.unit.clone() }),
        }
    }

    /// Like [`Quantity::to_si`] but additionally requires a strictly positive value.
    pub fn to_si_positive(&self, class: UnitClass, field: &str) -> Result<f64> {
        let v = self.to_si(class, field)?;
        if v <= 0.0 {
            return Err(Error::NonPositive { field: field.to_string(), value: v });
        }
        Ok(v)
    }

    /// Wrap an SI value in the canonical unit tag of its class.
    pub fn from_si(value: f64, class: UnitClass) -> Self {
        Quantity::new(value, class.canonical_tag())
    }
}

/// Canonical decimal rendering at 9 significant digits.
///
/// Reports compare and print floats through this single function so that the
/// emitted artifacts are byte-identical across runs and platforms.
pub fn fmt_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000e0".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".to_string() } else { "-inf".to_string() };
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    format!("{x:.8e}")
}

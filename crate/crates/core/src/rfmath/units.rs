//! Newtypes for the quantities that appear in a link budget.
//!
//! Values in decibels are only an I/O representation; arithmetic that
//! combines powers goes through [`PowerDbm::to_mw`] / [`PowerDbm::from_mw`].

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Power in decibel-milliwatts.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PowerDbm(pub f64);

impl PowerDbm {
    /// No power at all; used for absent signals.
    pub const SILENT: PowerDbm = PowerDbm(f64::NEG_INFINITY);

    pub fn from_mw(mw: f64) -> Self {
        PowerDbm(10.0 * mw.log10())
    }

    /// Linear power in mW. [`PowerDbm::SILENT`] maps to 0.
    pub fn to_mw(self) -> f64 {
        10f64.powf(self.0 / 10.0)
    }

    pub fn dbm(self) -> f64 {
        self.0
    }

    /// Sum of incoherent powers.
    pub fn sum<I: IntoIterator<Item = PowerDbm>>(powers: I) -> PowerDbm {
        PowerDbm::from_mw(powers.into_iter().map(PowerDbm::to_mw).sum())
    }
}

impl Add<Gain> for PowerDbm {
    type Output = PowerDbm;
    fn add(self, rhs: Gain) -> PowerDbm {
        PowerDbm(self.0 + rhs.0)
    }
}

impl Sub<Gain> for PowerDbm {
    type Output = PowerDbm;
    fn sub(self, rhs: Gain) -> PowerDbm {
        PowerDbm(self.0 - rhs.0)
    }
}

impl fmt::Display for PowerDbm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.2} dBm", self.0)
    }
}

/// A frequency in hertz. Always finite and strictly positive once constructed
/// through [`FrequencyHz::new`].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FrequencyHz(pub f64);

impl FrequencyHz {
    pub fn new(hz: f64) -> Result<Self> {
        if !hz.is_finite() {
            return Err(Error::domain("frequency", "must be finite", hz));
        }
        if hz <= 0.0 {
            return Err(Error::domain("frequency", "must be positive", hz));
        }
        Ok(FrequencyHz(hz))
    }

    pub fn mhz(mhz: f64) -> Self {
        FrequencyHz(mhz * 1e6)
    }

    pub fn hz(self) -> f64 {
        self.0
    }

    pub fn wavelength(self) -> f64 {
        SPEED_OF_LIGHT / self.0
    }
}

impl fmt::Display for FrequencyHz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.4} MHz", self.0 / 1e6)
    }
}

/// Non-negative distance in meters.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Distance(pub f64);

impl Distance {
    pub fn new(m: f64) -> Result<Self> {
        if !m.is_finite() || m < 0.0 {
            return Err(Error::domain("distance", "must be finite and non-negative", m));
        }
        Ok(Distance(m))
    }

    pub fn meters(self) -> f64 {
        self.0
    }
}

/// Gain (or loss, when negative) in decibels.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Gain(pub f64);

impl Gain {
    pub fn db(self) -> f64 {
        self.0
    }

    pub fn linear(self) -> f64 {
        10f64.powf(self.0 / 10.0)
    }

    pub fn from_linear(ratio: f64) -> Self {
        Gain(10.0 * ratio.log10())
    }
}

/// Checked dBm → mW conversion. Rejects non-finite input.
pub fn dbm_to_mw(p: PowerDbm) -> Result<f64> {
    if !p.0.is_finite() {
        return Err(Error::domain("power", "must be finite", p.0));
    }
    Ok(p.to_mw())
}

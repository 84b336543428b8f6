//! Path loss, the bistatic backscatter link budget and the thermal noise floor.

use std::f64::consts::PI;

use super::units::{Distance, FrequencyHz, Gain, PowerDbm, SPEED_OF_LIGHT};
use crate::error::{Error, Result};

/// Thermal noise density at 290 K.
pub const THERMAL_NOISE_DBM_PER_HZ: f64 = -174.0;

fn check_distance(quantity: &'static str, d: Distance) -> Result<f64> {
    let m = d.meters();
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::domain(quantity, "must be strictly positive", m));
    }
    Ok(m)
}

fn check_frequency(f: FrequencyHz) -> Result<f64> {
    FrequencyHz::new(f.hz()).map(FrequencyHz::hz)
}

/// Friis free-space path loss `20·log10(4π·d·f/c)` in dB.
pub fn free_space_path_loss(d: Distance, f: FrequencyHz) -> Result<f64> {
    path_loss(d, f, 2.0)
}

/// Log-distance path loss with a 1 m reference:
/// `20·log10(4π·f/c) + 10·n·log10(d)`. Identical to the Friis loss at `n = 2`.
pub fn path_loss(d: Distance, f: FrequencyHz, exponent: f64) -> Result<f64> {
    let d = check_distance("distance", d)?;
    let f = check_frequency(f)?;
    check_exponent(exponent)?;
    Ok(20.0 * (4.0 * PI * f / SPEED_OF_LIGHT).log10() + 10.0 * exponent * d.log10())
}

fn check_exponent(exponent: f64) -> Result<()> {
    if !exponent.is_finite() || exponent < 2.0 {
        return Err(Error::domain("path-loss exponent", "must be at least 2", exponent));
    }
    Ok(())
}

/// Received backscatter power for a tag `d1` from the carrier generator and
/// `d2` from the receiver:
///
/// ```text
/// P_r = (P_t·G_t / 4π·d1^n) · K · (λ²·G_r / (4π·d2^n·4π))
/// ```
///
/// With `exponent = 2` this is the free-space bistatic radar equation. `K`
/// lumps the tag's radar cross-section, antenna gains and return loss.
/// Evaluated in linear units.
#[allow(clippy::too_many_arguments)]
pub fn bistatic_received_power(
    p_t: PowerDbm,
    g_t: Gain,
    g_r: Gain,
    k: Gain,
    f: FrequencyHz,
    d1: Distance,
    d2: Distance,
    exponent: f64,
) -> Result<PowerDbm> {
    let d1 = check_distance("tag-to-carrier distance", d1)?;
    let d2 = check_distance("tag-to-receiver distance", d2)?;
    let f = check_frequency(f)?;
    check_exponent(exponent)?;
    if !p_t.dbm().is_finite() {
        return Err(Error::domain("transmit power", "must be finite", p_t.dbm()));
    }
    let lambda = SPEED_OF_LIGHT / f;
    let density = p_t.to_mw() * g_t.linear() / (4.0 * PI * d1.powf(exponent));
    let aperture = lambda * lambda * g_r.linear() / (4.0 * PI);
    let p_r = density * k.linear() * aperture / (4.0 * PI * d2.powf(exponent));
    Ok(PowerDbm::from_mw(p_r))
}

/// Thermal noise floor `−174 dBm/Hz + 10·log10(B) + NF`.
pub fn noise_floor(bandwidth_hz: f64, noise_figure: Gain) -> Result<PowerDbm> {
    if !(bandwidth_hz > 0.0) || !bandwidth_hz.is_finite() {
        return Err(Error::domain("bandwidth", "must be strictly positive", bandwidth_hz));
    }
    Ok(PowerDbm(
        THERMAL_NOISE_DBM_PER_HZ + 10.0 * bandwidth_hz.log10() + noise_figure.db(),
    ))
}

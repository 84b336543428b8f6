//! Power-domain view of the spectrum: tones, backscatter products and
//! interferers as `(center, bandwidth, power)` triples.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rfmath::{FrequencyHz, Gain, PowerDbm, RejectionCurve};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Carrier,
    BackscatterUpper,
    BackscatterLowerMirror,
    Interference,
    ShiftedAmbient,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralComponent {
    pub center: FrequencyHz,
    pub bandwidth_hz: f64,
    pub power: PowerDbm,
    pub origin: Origin,
}

impl SpectralComponent {
    pub fn low_hz(&self) -> f64 {
        self.center.hz() - self.bandwidth_hz / 2.0
    }

    pub fn high_hz(&self) -> f64 {
        self.center.hz() + self.bandwidth_hz / 2.0
    }
}

/// A contiguous frequency allocation, e.g. an ISM band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Band {
    #[serde(rename = "low_hz")]
    pub low: FrequencyHz,
    #[serde(rename = "high_hz")]
    pub high: FrequencyHz,
}

impl Band {
    pub fn new(low: FrequencyHz, high: FrequencyHz) -> Result<Self> {
        FrequencyHz::new(low.hz())?;
        FrequencyHz::new(high.hz())?;
        if low >= high {
            return Err(Error::domain("band", "low edge must be below high edge", low.hz()));
        }
        Ok(Band { low, high })
    }

    /// 2400–2483.5 MHz.
    pub fn ism_2400() -> Self {
        Band {
            low: FrequencyHz::mhz(2400.0),
            high: FrequencyHz::mhz(2483.5),
        }
    }

    /// 863–870 MHz (European SRD band).
    pub fn srd_868() -> Self {
        Band {
            low: FrequencyHz::mhz(863.0),
            high: FrequencyHz::mhz(870.0),
        }
    }

    pub fn contains(&self, f: FrequencyHz) -> bool {
        self.low <= f && f <= self.high
    }
}

fn check_offset(delta_f: f64) -> Result<()> {
    if !(delta_f > 0.0) || !delta_f.is_finite() {
        return Err(Error::domain("frequency offset", "must be strictly positive", delta_f));
    }
    Ok(())
}

fn shift(c: &SpectralComponent, by: f64, origin: Origin) -> Result<SpectralComponent> {
    Ok(SpectralComponent {
        center: FrequencyHz::new(c.center.hz() + by)?,
        origin,
        ..*c
    })
}

/// The two products of square-wave mixing a carrier at the tag: one at
/// `f_c + Δf` (decoded) and its mirror at `f_c − Δf`. Both carry
/// `carrier.power − per_product_loss`; the tag factor and path losses are
/// applied by the caller's link budget.
pub fn mixing_products(
    carrier: &SpectralComponent,
    delta_f: f64,
    per_product_loss: Gain,
) -> Result<(SpectralComponent, SpectralComponent)> {
    check_offset(delta_f)?;
    let mut upper = shift(carrier, delta_f, Origin::BackscatterUpper)?;
    let mut lower = shift(carrier, -delta_f, Origin::BackscatterLowerMirror)?;
    upper.power = carrier.power - per_product_loss;
    lower.power = carrier.power - per_product_loss;
    Ok((upper, lower))
}

/// A tag cannot tell a carrier from any other transmission it sees; ambient
/// signals get shifted by `±Δf` just the same.
pub fn shifted_ambient(ambient: &SpectralComponent, delta_f: f64) -> Result<(SpectralComponent, SpectralComponent)> {
    check_offset(delta_f)?;
    Ok((
        shift(ambient, delta_f, Origin::ShiftedAmbient)?,
        shift(ambient, -delta_f, Origin::ShiftedAmbient)?,
    ))
}

/// Fraction of a component's power that falls outside `band`, assuming a
/// flat power spectral density. Zero-bandwidth components count as point
/// masses (the band edges are inside the band).
pub fn out_of_band_fraction(c: &SpectralComponent, band: &Band) -> f64 {
    let (lo, hi) = (band.low.hz(), band.high.hz());
    if c.bandwidth_hz <= 0.0 {
        return if band.contains(c.center) { 0.0 } else { 1.0 };
    }
    let inside = (c.high_hz().min(hi) - c.low_hz().max(lo)).max(0.0);
    (1.0 - inside / c.bandwidth_hz).clamp(0.0, 1.0)
}

const QUADRATURE_STEPS: usize = 256;

/// Power a receiver tuned to `tuned_hz` with a `rx_bandwidth_hz` passband
/// collects from `c`.
///
/// The part of the component inside the passband passes unattenuated (so a
/// wideband component is weighted by its fractional overlap); everything
/// outside is attenuated by the rejection curve at its offset from the
/// tuned frequency. Flat spectral density is assumed.
pub fn received_power(c: &SpectralComponent, tuned_hz: f64, rx_bandwidth_hz: f64, curve: &RejectionCurve) -> PowerDbm {
    let half = rx_bandwidth_hz / 2.0;
    if c.bandwidth_hz <= 0.0 {
        let offset = (c.center.hz() - tuned_hz).abs();
        if offset <= half {
            return c.power;
        }
        return PowerDbm(c.power.dbm() - curve.at(offset));
    }

    let (lo, hi) = (c.low_hz(), c.high_hz());
    let (pass_lo, pass_hi) = (tuned_hz - half, tuned_hz + half);
    let in_pass = (hi.min(pass_hi) - lo.max(pass_lo)).max(0.0);

    let mut weight = in_pass;
    // Portions below and above the passband.
    for (a, b) in [(lo, hi.min(pass_lo)), (lo.max(pass_hi), hi)] {
        if b > a {
            let step = (b - a) / QUADRATURE_STEPS as f64;
            weight += (0..QUADRATURE_STEPS)
                .map(|i| {
                    let f = a + (i as f64 + 0.5) * step;
                    curve.attenuation(f - tuned_hz) * step
                })
                .sum::<f64>();
        }
    }
    PowerDbm::from_mw(c.power.to_mw() * weight / c.bandwidth_hz)
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rfmath::{FrequencyHz, Gain, PowerDbm, RejectionCurve};

/// Receiver and band configuration for one narrowband transceiver setting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadioProfile {
    pub name: String,
    #[serde(rename = "band_center_hz")]
    pub band_center: FrequencyHz,
    #[serde(rename = "sensitivity_dbm")]
    pub sensitivity: PowerDbm,
    pub rejection: RejectionCurve,
    pub bitrate_bps: f64,
    pub fsk_deviation_hz: f64,
    pub rx_bandwidth_hz: f64,
    #[serde(rename = "noise_figure_db")]
    pub noise_figure: Gain,
    /// Offset Δf between carrier and the backscatter product the receiver decodes.
    pub intermediate_freq_hz: f64,
}

pub const LOREA_868: &str = "LoRea-868";
pub const LOREA_24: &str = "LoRea-2.4";
pub const LOREA_24_FAST: &str = "LoRea-2.4-fast";
pub const LOREA_24_HISENS: &str = "LoRea-2.4-hisens";
pub const RFID_BASELINE: &str = "RFID-baseline";

pub const PRESET_NAMES: [&str; 5] = [LOREA_868, LOREA_24, LOREA_24_FAST, LOREA_24_HISENS, RFID_BASELINE];

impl RadioProfile {
    /// Looks up a shipped profile by name.
    pub fn preset(name: &str) -> Option<RadioProfile> {
        let p = match name {
            LOREA_868 => RadioProfile {
                name: LOREA_868.into(),
                band_center: FrequencyHz(868e6),
                sensitivity: PowerDbm(-124.0),
                rejection: RejectionCurve::cc1310(),
                bitrate_bps: 2_900.0,
                fsk_deviation_hz: 13e3,
                rx_bandwidth_hz: 58e3,
                noise_figure: Gain(6.0),
                intermediate_freq_hz: 100e3,
            },
            LOREA_24 => RadioProfile {
                name: LOREA_24.into(),
                band_center: FrequencyHz(2.44e9),
                sensitivity: PowerDbm(-104.0),
                rejection: RejectionCurve::cc2500(),
                bitrate_bps: 2_900.0,
                fsk_deviation_hz: 190e3,
                rx_bandwidth_hz: 812e3,
                noise_figure: Gain(10.0),
                intermediate_freq_hz: 2e6,
            },
            // Sensitivity scaled from the 2.9 kbps setting by the bitrate ratio
            // (10·log10(197/2.9) ≈ 18.3 dB).
            LOREA_24_FAST => RadioProfile {
                name: LOREA_24_FAST.into(),
                sensitivity: PowerDbm(-86.0),
                bitrate_bps: 197e3,
                rx_bandwidth_hz: 1.2e6,
                ..RadioProfile::preset(LOREA_24)?
            },
            LOREA_24_HISENS => RadioProfile {
                name: LOREA_24_HISENS.into(),
                sensitivity: PowerDbm(-124.0),
                ..RadioProfile::preset(LOREA_24)?
            },
            // Commercial monostatic reader: poor sensitivity, no frequency
            // separation between carrier and reply to speak of.
            RFID_BASELINE => RadioProfile {
                name: RFID_BASELINE.into(),
                band_center: FrequencyHz(2.44e9),
                sensitivity: PowerDbm(-84.0),
                rejection: RejectionCurve::flat(),
                bitrate_bps: 640e3,
                fsk_deviation_hz: 320e3,
                rx_bandwidth_hz: 1.28e6,
                noise_figure: Gain(10.0),
                intermediate_freq_hz: 640e3,
            },
            _ => return None,
        };
        Some(p)
    }

    pub fn validate(&self) -> Result<()> {
        let field = |name: &str, msg: &str| Error::schema(name.to_string(), msg.to_string());
        FrequencyHz::new(self.band_center.hz()).map_err(|_| field("band_center_hz", "must be a positive frequency"))?;
        if !self.sensitivity.dbm().is_finite() {
            return Err(field("sensitivity_dbm", "must be finite"));
        }
        for (name, v) in [
            ("bitrate_bps", self.bitrate_bps),
            ("rx_bandwidth_hz", self.rx_bandwidth_hz),
            ("intermediate_freq_hz", self.intermediate_freq_hz),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(field(name, "must be positive"));
            }
        }
        if !(self.fsk_deviation_hz >= 0.0) {
            return Err(field("fsk_deviation_hz", "must be non-negative"));
        }
        if self.fsk_deviation_hz >= self.rx_bandwidth_hz {
            return Err(field("fsk_deviation_hz", "must be smaller than rx_bandwidth_hz"));
        }
        if !self.noise_figure.db().is_finite() {
            return Err(field("noise_figure_db", "must be finite"));
        }
        Ok(())
    }

    /// `B / R`, the factor between SNR in the receiver bandwidth and SNR per bit.
    pub fn processing_gain(&self) -> f64 {
        self.rx_bandwidth_hz / self.bitrate_bps
    }
}

/// Occupied bandwidth of a binary FSK signal, `2·(deviation + bitrate)`.
pub fn carson_bandwidth(fsk_deviation_hz: f64, bitrate_bps: f64) -> f64 {
    2.0 * (fsk_deviation_hz + bitrate_bps)
}

//! Bit and packet error models for binary FSK.

use libm::erfc;
use serde::{Deserialize, Serialize};

use super::profile::RadioProfile;
use crate::error::{Error, Result};
use crate::rfmath::PowerDbm;

/// Which demodulator the error model assumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BerModel {
    /// Envelope (noncoherent) detection: `½·exp(−γ/2)`.
    #[default]
    NoncoherentFsk,
    /// Coherent orthogonal BFSK: `Q(√γ)`.
    CoherentFsk,
}

impl BerModel {
    /// Bit error probability for an SNR per bit `γ = Eb/N0` (linear).
    pub fn ber(self, snr_per_bit: f64) -> Result<f64> {
        if snr_per_bit.is_nan() || snr_per_bit < 0.0 {
            return Err(Error::domain("SNR per bit", "must be non-negative", snr_per_bit));
        }
        Ok(match self {
            BerModel::NoncoherentFsk => 0.5 * (-snr_per_bit / 2.0).exp(),
            BerModel::CoherentFsk => 0.5 * erfc((snr_per_bit / 2.0).sqrt()),
        })
    }
}

/// Noncoherent binary FSK bit error rate.
pub fn fsk_ber(snr_per_bit_linear: f64) -> Result<f64> {
    BerModel::NoncoherentFsk.ber(snr_per_bit_linear)
}

/// Probability that at least one of `payload_bits` independent bits is wrong.
pub fn packet_error_rate(ber: f64, payload_bits: u32) -> Result<f64> {
    if !(0.0..=1.0).contains(&ber) {
        return Err(Error::domain("bit error rate", "must lie in [0, 1]", ber));
    }
    if payload_bits == 0 {
        return Err(Error::domain("payload bits", "must be at least 1", 0.0));
    }
    // 1 − (1 − p)^n without cancellation for tiny p.
    Ok(-f64::exp_m1(payload_bits as f64 * f64::ln_1p(-ber)))
}

/// SNR per bit from the SINR measured in the receiver bandwidth.
pub fn snr_per_bit(sinr_linear: f64, profile: &RadioProfile) -> f64 {
    sinr_linear * profile.processing_gain()
}

/// Whether a received power reaches the profile's sensitivity (inclusive).
pub fn snr_to_sensitivity_check(p_r: PowerDbm, profile: &RadioProfile) -> bool {
    p_r >= profile.sensitivity
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phy::profile::{LOREA_24, LOREA_868};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn ber_anchors() {
        assert_eq!(fsk_ber(0.0).unwrap(), 0.5);
        assert_relative_eq!(fsk_ber(10.0).unwrap(), 3.369e-3, max_relative = 1e-3);
        assert!(fsk_ber(1e4).unwrap() < 1e-300);
        assert!(fsk_ber(-0.1).is_err());
        assert!(fsk_ber(f64::NAN).is_err());
    }

    #[test]
    fn coherent_beats_noncoherent() {
        assert_eq!(BerModel::CoherentFsk.ber(0.0).unwrap(), 0.5);
        for g in [1.0, 5.0, 10.0, 20.0] {
            assert!(BerModel::CoherentFsk.ber(g).unwrap() < fsk_ber(g).unwrap());
        }
    }

    #[test]
    fn per_anchors() {
        assert_eq!(packet_error_rate(0.0, 512).unwrap(), 0.0);
        assert_relative_eq!(packet_error_rate(1e-3, 512).unwrap(), 0.4009, max_relative = 1e-3);
        assert!(packet_error_rate(0.5, 1).unwrap() >= 0.5);
        assert!(packet_error_rate(0.5, 288).unwrap() >= 0.5);
        assert_eq!(packet_error_rate(1.0, 8).unwrap(), 1.0);
        assert!(packet_error_rate(1.5, 8).is_err());
        assert!(packet_error_rate(0.1, 0).is_err());
    }

    #[test]
    fn sensitivity_check() {
        let lorea = RadioProfile::preset(LOREA_868).unwrap();
        assert!(snr_to_sensitivity_check(PowerDbm(-118.0), &lorea));
        assert!(snr_to_sensitivity_check(PowerDbm(-124.0), &lorea));
        let p = RadioProfile::preset(LOREA_24).unwrap();
        assert!(!snr_to_sensitivity_check(PowerDbm(-110.0), &p));
        assert!(!snr_to_sensitivity_check(PowerDbm::SILENT, &p));
    }

    proptest! {
        #[test]
        fn ber_strictly_decreasing(a in 0.0f64..60.0, d in 1e-3f64..10.0) {
            let lo = fsk_ber(a).unwrap();
            let hi = fsk_ber(a + d).unwrap();
            prop_assert!(hi < lo);
            prop_assert!(lo > 0.0 && lo <= 0.5);
        }

        #[test]
        fn per_monotone(ber in 0.0f64..1.0, dber in 0.0f64..0.1, n in 1u32..4096, dn in 0u32..1024) {
            let base = packet_error_rate(ber, n).unwrap();
            prop_assert!((0.0..=1.0).contains(&base));
            prop_assert!(packet_error_rate((ber + dber).min(1.0), n).unwrap() >= base - 1e-15);
            prop_assert!(packet_error_rate(ber, n + dn).unwrap() >= base - 1e-15);
        }
    }
}

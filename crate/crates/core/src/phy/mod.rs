//! Modulation-level modeling: mixing products, FSK error rates, spectral
//! occupancy and the shipped radio profiles.

mod fsk;
mod profile;
mod spectrum;

pub use fsk::{fsk_ber, packet_error_rate, snr_per_bit, snr_to_sensitivity_check, BerModel};
pub use profile::{
    carson_bandwidth, RadioProfile, LOREA_24, LOREA_24_FAST, LOREA_24_HISENS, LOREA_868, PRESET_NAMES, RFID_BASELINE,
};
pub use spectrum::{
    mixing_products, out_of_band_fraction, received_power, shifted_ambient, Band, Origin, SpectralComponent,
};

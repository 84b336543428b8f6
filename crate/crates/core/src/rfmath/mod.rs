//! RF quantities and link-budget primitives.
//!
//! Everything here is a pure function over `Copy` value types.

mod budget;
mod rejection;
mod units;

pub use budget::{bistatic_received_power, free_space_path_loss, noise_floor, path_loss, THERMAL_NOISE_DBM_PER_HZ};
pub use rejection::{carrier_rejection, RejectionCurve};
pub use units::{dbm_to_mw, Distance, FrequencyHz, Gain, PowerDbm, SPEED_OF_LIGHT};

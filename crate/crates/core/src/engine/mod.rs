//! Spectral environment, link quality and the packet-level simulator.

mod environment;
mod link;
mod protocol;
mod report;
mod simulate;

pub use environment::{
    spectral_environment, spectral_environment_with, Conditions, ReceiverSpectrum, SourcedComponent,
};
pub use link::{backscatter_power, expected_link, link_state, sinr, Expectation, LinkState};
pub use protocol::{avoidance_step, unison_aggregate, AvoidanceState, HopCommand};
pub use report::{Event, EventKind, ReceiverSeries, SimReport, WindowStats};
pub use simulate::{simulate, simulate_with_seed};

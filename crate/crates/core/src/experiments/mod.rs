//! Parameter sweeps, range searches and signal profiles over the engine.

mod profile;
mod runner;
mod search;
mod sweep;

pub use profile::{linspace, profile_from_scenario, signal_profile, ProfilePoint, SignalProfile};
pub use runner::{
    run_experiment, timestamp, write_atomic, write_outputs, ExperimentData, ExperimentReport, Format, SeriesCurve,
    Verdict,
};
pub use search::{max_range_search, Criterion, Geometry, RangeOutcome};
pub use sweep::{
    apply_parameter, run_sweep, GridPoint, RangeResult, SweepSpec, CARRIER_RECEIVER_DISTANCE, CARRIER_TAG_DISTANCE,
    TAG_RECEIVER_DISTANCE,
};
